#pragma once

#include <vector>

#include "memsforge/complex_matrix.hpp"

namespace memsforge {

/// Eigendecomposition of a Hermitian matrix: A = V diag(eigenvalues) V^dag,
/// eigenvalues sorted descending, eigenvector i in column i of `eigenvectors`.
struct EigDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

inline constexpr double kHermitianTol = 1e-10;

/// Cyclic Jacobi diagonalization for complex Hermitian matrices. Off-diagonal
/// Frobenius threshold 1e-13 (relative to the matrix scale), capped at 100
/// sweeps. Throws contract_error on non-Hermitian input, numerical_error on
/// non-convergence.
EigDecomposition hermitian_eig(const ComplexMatrix& a);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero;
/// anything below -1e-10 is a not-PSD numerical_error.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// Trace over the field factor of a composite density matrix with index
/// ordering (qubit1, qubit2, field), field fastest: index = q*fock_dim + n
/// with q = 2*q1 + q2. Input dimension must be 4*fock_dim. Preserves trace
/// and Hermiticity exactly.
ComplexMatrix partial_trace_field(const ComplexMatrix& rho_c, std::size_t fock_dim);

}  // namespace memsforge
