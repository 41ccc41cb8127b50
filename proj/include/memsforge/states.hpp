#pragma once

#include <string>

#include "memsforge/complex_matrix.hpp"

namespace memsforge {

// Two-qubit basis ordering, fixed everywhere: index = 2*(qubit1 bit) + (qubit2 bit),
// i.e. {|00>, |01>, |10>, |11>} with qubit 1 first.
inline constexpr std::size_t kBasis00 = 0;
inline constexpr std::size_t kBasis01 = 1;
inline constexpr std::size_t kBasis10 = 2;
inline constexpr std::size_t kBasis11 = 3;

/// Validated 4x4 density matrix: unit trace within 1e-9, Hermitian within
/// 1e-9, eigenvalues >= -1e-8.
class TwoQubitState {
public:
    explicit TwoQubitState(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const { return matrix_; }
    cplx entry(std::size_t i, std::size_t j) const { return matrix_(i, j); }

    static TwoQubitState pure(std::size_t basis_index);
    static TwoQubitState pure(const std::vector<cplx>& amplitudes);
    static TwoQubitState maximally_mixed();

    std::string to_json() const;
    static TwoQubitState from_json(const std::string& text);

private:
    ComplexMatrix matrix_;
};

enum class MemsFamily { rho1, rho2 };

/// One-parameter boundary-family coordinates: rho1 needs r in [2/3, 1],
/// rho2 needs r in [0, 2/3].
struct MemsParameter {
    double r;
    MemsFamily family;
};

TwoQubitState mems(const MemsParameter& p);
TwoQubitState werner(double p);

/// Projection of a Hermitian matrix onto the density-matrix set: negative
/// eigenvalues clamped to zero, trace renormalized. For rounded literature
/// matrices that sit slightly outside the physical set.
TwoQubitState nearest_density_matrix(const ComplexMatrix& m);

/// Bit flip then phase flip on qubit 2 (the local unitary 1 (x) Z*X).
/// Leaves concurrence and linear entropy unchanged.
TwoQubitState bit_phase_flip_q2(const TwoQubitState& s);

/// Independent phase-damping channels on both qubits with per-qubit coherence
/// retention q in [0,1]: an element connecting basis states that differ on k
/// qubits is multiplied by q^k, diagonals untouched.
TwoQubitState dephase_qubits(const TwoQubitState& s, double q);

const char* family_name(MemsFamily f);

}  // namespace memsforge
