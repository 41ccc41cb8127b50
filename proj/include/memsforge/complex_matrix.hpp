#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "memsforge/errors.hpp"

namespace memsforge {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Small dimensions only (4 to ~100);
// everything is value-semantic and allocation-happy by design.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {
        if (dim < 1) throw contract_error("ComplexMatrix: dim must be >= 1");
    }

    static ComplexMatrix identity(std::size_t dim);
    // Row-major entries, size dim*dim.
    static ComplexMatrix from_rows(std::size_t dim, const std::vector<cplx>& entries);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;

    cplx trace() const;
    double max_abs() const;              // max_{ij} |a_ij|
    double frobenius_norm() const;
    double off_diagonal_norm() const;    // Frobenius norm of the off-diagonal part
    double hermiticity_defect() const;   // max_{ij} |a_ij - conj(a_ji)|

    bool same_shape(const ComplexMatrix& other) const { return dim_ == other.dim_; }

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(double s, ComplexMatrix a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// max_{ij} |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// 2x2 building blocks in the {|0>, |1>} basis, |0> = ground.
namespace ops {
ComplexMatrix id2();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();   // |1><0|
ComplexMatrix sigma_minus();  // |0><1|
}  // namespace ops

}  // namespace memsforge
