#include "memsforge/unitary.hpp"

#include <cmath>
#include <functional>

#include "memsforge/parallel.hpp"

namespace memsforge {

namespace {

// Golden-section maximization on [a, b]; f assumed unimodal near the seed.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol,
                  double* arg_out) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    const double x = 0.5 * (a + b);
    if (arg_out) *arg_out = x;
    return f(x);
}

std::vector<double> family_r_grid(MemsFamily family) {
    std::vector<double> grid;
    if (family == MemsFamily::rho1) {
        for (int i = 0; i <= 10; ++i) grid.push_back(2.0 / 3.0 + i * (1.0 / 30.0));
    } else {
        // Interior of the rho2 branch; r = 2/3 is the junction state shared
        // with rho1 and is scanned as part of that family.
        for (int i = 0; i <= 9; ++i) grid.push_back(i * (2.0 / 30.0));
    }
    return grid;
}

}  // namespace

AmplitudeTriple amplitudes(const UnitaryParams& p) {
    if (p.lambda < 0.0 || !std::isfinite(p.lambda) || !std::isfinite(p.tau) || p.tau < 0.0)
        throw contract_error("amplitudes: lambda and tau must be finite and non-negative");
    const double l2 = p.lambda * p.lambda;
    const double w = std::sqrt(1.0 + l2);
    const double c = std::cos(w * p.tau);
    const double s = std::sin(w * p.tau);
    AmplitudeTriple a;
    a.beta = cplx{(1.0 + l2 * c) / (1.0 + l2), 0.0};
    a.alpha = cplx{-p.lambda * (1.0 - c) / (1.0 + l2), 0.0};
    a.chi = cplx{0.0, -p.lambda * s / w};
    return a;
}

TwoQubitState unitary_state(const UnitaryParams& p) {
    const AmplitudeTriple a = amplitudes(p);
    ComplexMatrix m(4);
    m(kBasis00, kBasis00) = std::norm(a.chi);
    m(kBasis01, kBasis01) = std::norm(a.beta);
    m(kBasis10, kBasis10) = std::norm(a.alpha);
    m(kBasis01, kBasis10) = a.beta * std::conj(a.alpha);
    m(kBasis10, kBasis01) = a.alpha * std::conj(a.beta);
    return TwoQubitState(m);
}

std::vector<TrajectoryRecord> unitary_trajectory(double lambda, double tau_max, int steps) {
    if (steps < 2) throw contract_error("unitary_trajectory: steps must be >= 2");
    std::vector<TrajectoryRecord> out;
    out.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double tau = tau_max * static_cast<double>(i) / static_cast<double>(steps - 1);
        const TwoQubitState s = unitary_state({lambda, tau});
        const CsPoint p = cs_point(s);
        out.push_back({tau, p.C, p.S, std::nullopt});
    }
    return out;
}

double best_family_fidelity(const TwoQubitState& s, MemsFamily family,
                            const std::vector<double>& r_grid) {
    const TwoQubitState aligned = bit_phase_flip_q2(s);
    double best = 0.0;
    for (double r : r_grid) best = std::max(best, fidelity(aligned, mems({r, family})));
    return best;
}

TouchPoint find_rho1_touch(double tau_max, double tau_step, bool parallel) {
    const auto grid = family_r_grid(MemsFamily::rho1);
    const int ntau = static_cast<int>(tau_max / tau_step) + 1;

    std::vector<TouchPoint> per_lambda(41, TouchPoint{0.0, 0.0, 1.0, 1.0});
    run_indexed(41, parallel, [&](std::size_t il) {
        const double lambda = 0.05 * static_cast<double>(il);
        if (lambda == 0.0) return;  // trajectory stuck at |01><01|
        for (int it = 0; it < ntau; ++it) {
            const double tau = it * tau_step;
            const double f = best_family_fidelity(unitary_state({lambda, tau}),
                                                  MemsFamily::rho1, grid);
            if (1.0 - f < per_lambda[il].infidelity)
                per_lambda[il] = {lambda, tau, 1.0, 1.0 - f};
        }
    });
    TouchPoint best{0.0, 0.0, 1.0, 1.0};
    for (const auto& cand : per_lambda)
        if (cand.infidelity < best.infidelity) best = cand;

    // Coordinate-wise golden refinement around the grid seed.
    double lambda = best.lambda, tau = best.tau, r = best.r;
    const auto f_of = [&](double l, double t, double rr) {
        return fidelity(bit_phase_flip_q2(unitary_state({l, t})), mems({rr, MemsFamily::rho1}));
    };
    for (int pass = 0; pass < 4; ++pass) {
        golden_max([&](double l) { return f_of(l, tau, r); }, std::max(0.0, lambda - 0.05),
                   std::min(2.0, lambda + 0.05), 1e-7, &lambda);
        golden_max([&](double t) { return f_of(lambda, t, r); }, std::max(0.0, tau - tau_step),
                   tau + tau_step, 1e-7, &tau);
        golden_max([&](double rr) { return f_of(lambda, tau, rr); }, 2.0 / 3.0, 1.0, 1e-8, &r);
    }
    const double f = f_of(lambda, tau, r);
    return {lambda, tau, r, 1.0 - f};
}

double max_concurrence_refined(double tau_max, double tau_step, bool parallel) {
    const int ntau = static_cast<int>(tau_max / tau_step) + 1;
    std::vector<double> best_c(41, 0.0), best_tau(41, 0.0);
    run_indexed(41, parallel, [&](std::size_t il) {
        const double lambda = 0.05 * static_cast<double>(il);
        for (int it = 0; it < ntau; ++it) {
            const double tau = it * tau_step;
            const double c = concurrence(unitary_state({lambda, tau}));
            if (c > best_c[il]) {
                best_c[il] = c;
                best_tau[il] = tau;
            }
        }
    });
    std::size_t seed = 0;
    for (std::size_t il = 1; il < best_c.size(); ++il)
        if (best_c[il] > best_c[seed]) seed = il;

    const auto c_of = [](double l, double t) { return concurrence(unitary_state({l, t})); };
    double lambda = 0.05 * static_cast<double>(seed), tau = best_tau[seed];
    for (int pass = 0; pass < 4; ++pass) {
        golden_max([&](double l) { return c_of(l, tau); }, std::max(0.0, lambda - 0.05),
                   std::min(2.0, lambda + 0.05), 1e-8, &lambda);
        golden_max([&](double t) { return c_of(lambda, t); }, std::max(0.0, tau - tau_step),
                   tau + tau_step, 1e-8, &tau);
    }
    return std::max(best_c[seed], c_of(lambda, tau));
}

double max_rho2_interior_fidelity(double tau_max, double tau_step, bool parallel) {
    const auto grid = family_r_grid(MemsFamily::rho2);
    const int ntau = static_cast<int>(tau_max / tau_step) + 1;
    std::vector<double> best(41, 0.0);
    run_indexed(41, parallel, [&](std::size_t il) {
        const double lambda = 0.05 * static_cast<double>(il);
        for (int it = 0; it < ntau; ++it) {
            const double tau = it * tau_step;
            best[il] = std::max(best[il],
                                best_family_fidelity(unitary_state({lambda, tau}),
                                                     MemsFamily::rho2, grid));
        }
    });
    double m = 0.0;
    for (double b : best) m = std::max(m, b);
    return m;
}

}  // namespace memsforge
