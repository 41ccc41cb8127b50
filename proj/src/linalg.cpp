#include "memsforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace memsforge {

namespace {

constexpr double kOffDiagThreshold = 1e-13;
constexpr int kMaxSweeps = 100;

void require_hermitian(const ComplexMatrix& a, const char* who) {
    if (a.hermiticity_defect() > kHermitianTol)
        throw contract_error(std::string(who) + ": input is not Hermitian within 1e-10");
}

}  // namespace

EigDecomposition hermitian_eig(const ComplexMatrix& a) {
    require_hermitian(a, "hermitian_eig");

    const std::size_t n = a.dim();
    ComplexMatrix m = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, m.frobenius_norm());

    int sweep = 0;
    while (m.off_diagonal_norm() > kOffDiagThreshold * scale) {
        if (++sweep > kMaxSweeps)
            throw numerical_error("hermitian_eig: Jacobi iteration did not converge in 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double mag = std::abs(apq);
                if (mag <= kOffDiagThreshold * scale * 1e-3) continue;

                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                // Plane rotation R: R(p,p)=c, R(p,q)=s, R(q,p)=-conj(s), R(q,q)=c,
                // with s = sin(theta) e^{i phi}, phi the phase of a_pq, chosen so
                // that (R^dag A R)(p,q) = 0.
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double sr = std::sin(theta);
                const cplx phase = apq / mag;
                const cplx s = sr * phase;

                // Columns p,q of A and of the accumulated V.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = m(k, p), akq = m(k, q);
                    m(k, p) = c * akp - std::conj(s) * akq;
                    m(k, q) = s * akp + c * akq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(s) * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
                // Rows p,q of A (left action of R^dag).
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = m(p, k), aqk = m(q, k);
                    m(p, k) = c * apk - s * aqk;
                    m(q, k) = std::conj(s) * apk + c * aqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = cplx{m(p, p).real(), 0.0};
                m(q, q) = cplx{m(q, q).real(), 0.0};
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i).real() > m(j, j).real(); });

    EigDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = m(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    require_hermitian(a, "psd_sqrt");
    const EigDecomposition eig = hermitian_eig(a);

    const std::size_t n = a.dim();
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ev = eig.eigenvalues[i];
        if (ev < -kHermitianTol)
            throw numerical_error("psd_sqrt: matrix is not PSD, eigenvalue " + std::to_string(ev));
        roots[i] = std::sqrt(std::max(0.0, ev));
    }

    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) acc += roots[k] * v(i, k) * std::conj(v(j, k));
            s(i, j) = acc;
            s(j, i) = std::conj(acc);  // keep the result exactly Hermitian
        }
    return s;
}

ComplexMatrix partial_trace_field(const ComplexMatrix& rho_c, std::size_t fock_dim) {
    if (fock_dim < 1) throw contract_error("partial_trace_field: fock_dim must be >= 1");
    if (rho_c.dim() != 4 * fock_dim)
        throw contract_error("partial_trace_field: composite dimension is not 4*fock_dim");

    ComplexMatrix rho_q(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t n = 0; n < fock_dim; ++n)
                acc += rho_c(i * fock_dim + n, j * fock_dim + n);
            rho_q(i, j) = acc;
        }
    return rho_q;
}

}  // namespace memsforge
