#include "memsforge/measures.hpp"

#include <algorithm>
#include <cmath>

#include "memsforge/linalg.hpp"

namespace memsforge {

namespace {

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
    static const ComplexMatrix yy = kron(ops::sigma_y(), ops::sigma_y());
    return yy * rho.conjugate() * yy;
}

double clamp01(double x, double slack) {
    if (x < -slack || x > 1.0 + slack)
        throw numerical_error("measure left [0,1] beyond tolerance: " + std::to_string(x));
    return std::clamp(x, 0.0, 1.0);
}

// Eigenvalues at round-off scale get amplified by the square root; anything
// below 1e-12 of the leading eigenvalue is treated as an exact zero.
double sqrt_clamped(double ev, double scale) {
    if (ev < 1e-12 * std::max(1.0, scale)) return 0.0;
    return std::sqrt(ev);
}

double fidelity_once(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix sa = psd_sqrt(a);
    ComplexMatrix m = sa * b * sa;
    m = 0.5 * (m + m.adjoint());
    const auto eig = hermitian_eig(m);
    double f = 0.0;
    for (double ev : eig.eigenvalues) f += sqrt_clamped(ev, eig.eigenvalues.front());
    return f;
}

}  // namespace

double concurrence(const TwoQubitState& s) {
    ComplexMatrix rho = 0.5 * (s.matrix() + s.matrix().adjoint());
    const ComplexMatrix sr = psd_sqrt(rho);
    ComplexMatrix m = sr * spin_flip(rho) * sr;
    m = 0.5 * (m + m.adjoint());
    const auto eig = hermitian_eig(m);

    double c = 0.0;
    for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        const double root = sqrt_clamped(eig.eigenvalues[i], eig.eigenvalues.front());
        c += (i == 0) ? root : -root;
    }
    return clamp01(std::max(0.0, c), 1e-9);
}

double linear_entropy(const TwoQubitState& s) {
    const ComplexMatrix& rho = s.matrix();
    double purity = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) purity += std::norm(rho(i, j));
    return clamp01((4.0 / 3.0) * (1.0 - purity), 1e-9);
}

CsPoint cs_point(const TwoQubitState& s) { return {concurrence(s), linear_entropy(s)}; }

double fidelity(const TwoQubitState& a, const TwoQubitState& b) {
    const double fab = fidelity_once(a.matrix(), b.matrix());
    const double fba = fidelity_once(b.matrix(), a.matrix());
    const double f = (std::abs(fab - fba) > 1e-10) ? 0.5 * (fab + fba) : fab;
    return clamp01(f, 1e-8);
}

std::vector<BoundaryPoint> mems_boundary(std::size_t samples) {
    if (samples < 2) throw contract_error("mems_boundary: need at least 2 samples");
    std::vector<BoundaryPoint> out;
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(samples - 1);
        const MemsFamily family = (r < 2.0 / 3.0) ? MemsFamily::rho2 : MemsFamily::rho1;
        const TwoQubitState s = mems({r, family});
        out.push_back({r, family, concurrence(s), linear_entropy(s)});
    }
    return out;
}

BoundaryCurve::BoundaryCurve(std::size_t samples) : points_(mems_boundary(samples)) {
    // S is monotone decreasing in r along the boundary; store ascending in S.
    std::reverse(points_.begin(), points_.end());
}

double BoundaryCurve::concurrence_at(double S) const {
    const auto& pts = points_;
    if (S <= pts.front().S) return pts.front().C;
    if (S >= pts.back().S) return 0.0;  // beyond the entangled branch

    auto hi = std::lower_bound(pts.begin(), pts.end(), S,
                               [](const BoundaryPoint& p, double s) { return p.S < s; });
    const auto lo = hi - 1;
    const double span = hi->S - lo->S;
    if (span <= 0.0) return std::min(lo->C, hi->C);
    const double t = (S - lo->S) / span;
    return lo->C + t * (hi->C - lo->C);
}

double BoundaryCurve::gap(const CsPoint& p) const { return concurrence_at(p.S) - p.C; }

}  // namespace memsforge
