#include "memsforge/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace memsforge {

namespace {

constexpr double kZeroConcurrence = 1e-6;

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

DynamicsParams vacuum_params(double lambda, double gamma_tilde) {
    DynamicsParams p;
    p.lambda = lambda;
    p.gamma_tilde = gamma_tilde;
    return p;
}

/// Fidelity of the flip-aligned state against mems(rho2, r), maximized over r.
double best_rho2_fidelity(const TwoQubitState& s, double* r_out) {
    const TwoQubitState aligned = bit_phase_flip_q2(s);
    const auto f = [&](double r) { return fidelity(aligned, mems({r, MemsFamily::rho2})); };
    double r = 0.0;
    const double val = golden_max(f, 0.0, 2.0 / 3.0, 1e-8, &r);
    // The maximum often sits on the r = 2/3 edge; golden section stops just
    // inside, so probe the endpoint too.
    const double edge = f(2.0 / 3.0);
    if (edge >= val) {
        if (r_out) *r_out = 2.0 / 3.0;
        return edge;
    }
    if (r_out) *r_out = r;
    return val;
}

TwoQubitState end_state(const DynamicsParams& p, double tau_max, double dtau) {
    const auto run = integrate(p, initial_state_01(), tau_max, dtau,
                               static_cast<int>(std::lround(tau_max / dtau)));
    return run.back().second;
}

double squeezed_safe_dtau(const DynamicsParams& p) {
    if (!p.squeezed()) return 0.01;
    const double w2 = 1.0 + p.lambda * p.lambda;
    const double scale =
        4.0 / p.gamma_tilde * (2.0 * p.squeeze_N + 1.0 + 2.0 * p.squeeze_M) * w2;
    return std::min(0.01, 0.5 / std::max(1.0, scale));
}

std::vector<double> grid_or(const std::optional<AxisSpec>& axis, double fallback) {
    if (axis) return axis_values(*axis);
    return {fallback};
}

int auto_nmax(double nbar) {
    if (nbar == 0.0) return 1;
    // Smallest truncation whose thermal tail stays under the adequacy bar.
    const double ratio = nbar / (1.0 + nbar);
    for (int n = 2; n <= 24; ++n) {
        const double tail = 1.5 * std::pow(ratio, n) / (1.0 + nbar);
        if (tail <= 1e-6) return n;
    }
    return 24;
}

void append_state_row(Table& t, std::vector<Cell> prefix, double tau, const TwoQubitState& s) {
    const CsPoint p = cs_point(s);
    prefix.emplace_back(tau);
    prefix.emplace_back(p.C);
    prefix.emplace_back(p.S);
    prefix.emplace_back(s.entry(kBasis00, kBasis00).real());
    prefix.emplace_back(s.entry(kBasis01, kBasis01).real());
    prefix.emplace_back(s.entry(kBasis10, kBasis10).real());
    prefix.emplace_back(s.entry(kBasis11, kBasis11).real());
    prefix.emplace_back(s.entry(kBasis01, kBasis10).real());
    t.add_row(std::move(prefix));
}

const std::vector<std::string> kTrajectoryColumns = {
    "tau", "C", "S", "rho0000", "rho0101", "rho1010", "rho1111", "rho0110_re"};

}  // namespace

std::vector<double> axis_values(const AxisSpec& a) {
    if (a.step <= 0.0) throw contract_error("axis: step must be > 0");
    if (a.stop < a.start) throw contract_error("axis: stop must be >= start");
    std::vector<double> out;
    const long n = std::lround((a.stop - a.start) / a.step);
    for (long i = 0; i <= n; ++i) {
        const double v = a.start + i * a.step;
        if (v <= a.stop + 1e-9) out.push_back(std::min(v, a.stop));
    }
    if (out.empty()) throw contract_error("axis: empty grid");
    return out;
}

SweepMode parse_mode(const std::string& name) {
    if (name == "unitary") return SweepMode::unitary;
    if (name == "dissipative") return SweepMode::dissipative;
    if (name == "phase-damping") return SweepMode::phase_damping;
    if (name == "squeezed") return SweepMode::squeezed;
    if (name == "full-oracle") return SweepMode::full_oracle;
    if (name == "boundary") return SweepMode::boundary;
    if (name == "fidelity-scan") return SweepMode::fidelity_scan;
    if (name == "lambda-opt") return SweepMode::lambda_opt;
    throw contract_error("unknown mode '" + name + "'");
}

LambdaOptResult find_lambda_opt(const std::string& objective, double gamma_tilde) {
    const bool fidelity_objective = (objective == "max-fidelity-rho2");
    if (!fidelity_objective && objective != "max-C-subject-to-S")
        throw contract_error("find_lambda_opt: unknown objective '" + objective + "'");

    LambdaOptResult res{0.0, 0.0, 0.0, false, {}};

    const auto value = [&](double lambda) {
        const TwoQubitState ss = steady_state(vacuum_params(lambda, gamma_tilde));
        double v;
        if (fidelity_objective) {
            v = best_rho2_fidelity(ss, nullptr);
        } else {
            v = (linear_entropy(ss) < 0.7) ? concurrence(ss) : -1.0;
        }
        res.evaluations.emplace_back(lambda, v);
        return v;
    };

    // Coarse unimodality scan, then golden section inside the bracket.
    const double lo = 0.1, hi = 2.0;
    const int coarse = 20;
    std::vector<double> vals(coarse + 1);
    int best_i = 0;
    for (int i = 0; i <= coarse; ++i) {
        const double l = lo + (hi - lo) * i / coarse;
        vals[i] = value(l);
        if (vals[i] > vals[best_i]) best_i = i;
    }
    bool bracket_ok = best_i > 0 && best_i < coarse;
    for (int i = 1; i < best_i; ++i) bracket_ok = bracket_ok && vals[i] >= vals[i - 1] - 1e-12;
    for (int i = best_i + 1; i <= coarse; ++i) bracket_ok = bracket_ok && vals[i] <= vals[i - 1] + 1e-12;

    double lambda_opt = lo + (hi - lo) * best_i / coarse;
    if (bracket_ok) {
        const double a = lo + (hi - lo) * (best_i - 1) / coarse;
        const double b = lo + (hi - lo) * (best_i + 1) / coarse;
        golden_max(value, a, b, 1e-5, &lambda_opt);
    } else {
        res.used_fallback = true;
        double best_v = -2.0;
        for (double l = lo; l <= hi + 1e-12; l += 0.005) {
            const double v = value(l);
            if (v > best_v) {
                best_v = v;
                lambda_opt = l;
            }
        }
    }

    const TwoQubitState ss = steady_state(vacuum_params(lambda_opt, gamma_tilde));
    res.lambda_opt = lambda_opt;
    if (fidelity_objective) {
        res.best_value = best_rho2_fidelity(ss, &res.best_r);
    } else {
        res.best_value = concurrence(ss);
        res.best_r = res.best_value;  // boundary family parameter equals C there
    }
    return res;
}

Table fidelity_scan(const std::vector<double>& r_grid, double lambda, double gamma_tilde,
                    double tau_max, bool parallel) {
    const DynamicsParams p = vacuum_params(lambda, gamma_tilde);
    const auto run = integrate(p, initial_state_01(), tau_max, 0.01, 100);

    Table t;
    t.columns = {"tau", "r", "F"};
    std::vector<std::vector<double>> fvals(run.size(), std::vector<double>(r_grid.size()));
    run_indexed(run.size(), parallel, [&](std::size_t i) {
        const TwoQubitState aligned = bit_phase_flip_q2(run[i].second);
        for (std::size_t j = 0; j < r_grid.size(); ++j)
            fvals[i][j] = fidelity(aligned, mems({r_grid[j], MemsFamily::rho2}));
    });
    for (std::size_t i = 0; i < run.size(); ++i)
        for (std::size_t j = 0; j < r_grid.size(); ++j)
            t.add_row({run[i].first, r_grid[j], fvals[i][j]});
    return t;
}

Table thermal_and_squeezed_decay_scan(const std::vector<double>& nbar_values,
                                      const std::vector<double>& N_values, double lambda,
                                      double gamma_tilde, double tau_max, bool parallel) {
    const TwoQubitState target = mems({2.0 / 3.0, MemsFamily::rho2});

    std::vector<double> thermal(nbar_values.size());
    run_indexed(nbar_values.size(), parallel, [&](std::size_t i) {
        DynamicsParams p = vacuum_params(lambda, gamma_tilde);
        p.nbar = nbar_values[i];
        thermal[i] = fidelity(bit_phase_flip_q2(end_state(p, tau_max, 0.01)), target);
    });

    std::vector<double> squeezed(N_values.size());
    run_indexed(N_values.size(), parallel, [&](std::size_t i) {
        DynamicsParams p = vacuum_params(lambda, gamma_tilde);
        p.squeeze_N = N_values[i];
        p.squeeze_M = std::sqrt(N_values[i] * (N_values[i] + 1.0));  // ideal squeezing
        squeezed[i] = fidelity(bit_phase_flip_q2(end_state(p, tau_max, squeezed_safe_dtau(p))),
                               target);
    });

    Table t;
    t.columns = {"bath", "param", "F"};
    for (std::size_t i = 0; i < nbar_values.size(); ++i)
        t.add_row({std::string("thermal"), nbar_values[i], thermal[i]});
    for (std::size_t i = 0; i < N_values.size(); ++i)
        t.add_row({std::string("squeezed"), N_values[i], squeezed[i]});
    return t;
}

PhaseDampingScan phase_damping_scan(const std::vector<double>& Gamma_values, double lambda,
                                    double gamma_tilde, double tau_max, double dtau,
                                    bool parallel) {
    std::vector<CsPoint> points(Gamma_values.size());
    run_indexed(Gamma_values.size(), parallel, [&](std::size_t i) {
        DynamicsParams p = vacuum_params(lambda, gamma_tilde);
        p.Gamma_tilde = Gamma_values[i];
        points[i] = cs_point(end_state(p, tau_max, dtau));
    });

    PhaseDampingScan out;
    out.curve.columns = {"Gamma", "C", "S"};
    for (std::size_t i = 0; i < Gamma_values.size(); ++i) {
        out.curve.add_row({Gamma_values[i], points[i].C, points[i].S});
        if (!out.first_zero && points[i].C <= kZeroConcurrence)
            out.first_zero = Gamma_values[i];
    }
    return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    SweepResult res;
    Table& t = res.table;

    switch (cfg.mode) {
        case SweepMode::boundary: {
            t.columns = {"r", "family", "C", "S"};
            const auto pts = mems_boundary(cfg.boundary_samples);
            for (const auto& p : pts)
                t.add_row({p.r, std::string(family_name(p.family)), p.C, p.S});
            break;
        }

        case SweepMode::unitary: {
            const auto lambdas = grid_or(cfg.lambda_grid, cfg.params.lambda);
            const double tau_step = cfg.dtau * cfg.stride;
            const int steps = static_cast<int>(std::lround(cfg.tau_max / tau_step)) + 1;
            std::vector<std::vector<TrajectoryRecord>> rows(lambdas.size());
            run_indexed(lambdas.size(), cfg.parallel, [&](std::size_t i) {
                rows[i] = unitary_trajectory(lambdas[i], cfg.tau_max, steps);
            });
            t.columns = {"lambda", "tau", "C", "S"};
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                for (const auto& r : rows[i]) t.add_row({lambdas[i], r.tau, r.C, r.S});
            break;
        }

        case SweepMode::dissipative: {
            const auto lambdas = grid_or(cfg.lambda_grid, cfg.params.lambda);
            const auto nbars = grid_or(cfg.nbar_grid, cfg.params.nbar);
            const bool tagged = lambdas.size() > 1 || nbars.size() > 1;
            std::vector<std::vector<std::pair<double, TwoQubitState>>> runs(lambdas.size() *
                                                                            nbars.size());
            run_indexed(runs.size(), cfg.parallel, [&](std::size_t k) {
                DynamicsParams p = cfg.params;
                p.lambda = lambdas[k / nbars.size()];
                p.nbar = nbars[k % nbars.size()];
                runs[k] = integrate(p, initial_state_01(), cfg.tau_max, cfg.dtau, cfg.stride);
            });
            t.columns = tagged ? std::vector<std::string>{"lambda", "nbar"}
                               : std::vector<std::string>{};
            t.columns.insert(t.columns.end(), kTrajectoryColumns.begin(),
                             kTrajectoryColumns.end());
            for (std::size_t k = 0; k < runs.size(); ++k)
                for (const auto& [tau, s] : runs[k]) {
                    std::vector<Cell> prefix;
                    if (tagged) {
                        prefix.emplace_back(lambdas[k / nbars.size()]);
                        prefix.emplace_back(nbars[k % nbars.size()]);
                    }
                    append_state_row(t, std::move(prefix), tau, s);
                }
            break;
        }

        case SweepMode::phase_damping: {
            const AxisSpec grid = cfg.Gamma_grid.value_or(AxisSpec{1e-3, 0.1, 1e-3});
            const auto gammas = axis_values(grid);
            if (cfg.phase_damping_trajectories) {
                // Open C-S trajectories per dephasing rate.
                std::vector<std::vector<std::pair<double, TwoQubitState>>> runs(gammas.size());
                run_indexed(gammas.size(), cfg.parallel, [&](std::size_t i) {
                    DynamicsParams p = cfg.params;
                    p.Gamma_tilde = gammas[i];
                    runs[i] =
                        integrate(p, initial_state_01(), cfg.tau_max, cfg.dtau, cfg.stride);
                });
                t.columns = {"Gamma", "tau", "C", "S"};
                for (std::size_t i = 0; i < gammas.size(); ++i)
                    for (const auto& [tau, s] : runs[i]) {
                        const CsPoint p = cs_point(s);
                        t.add_row({gammas[i], tau, p.C, p.S});
                    }
                break;
            }
            const auto scan = phase_damping_scan(gammas, cfg.params.lambda,
                                                 cfg.params.gamma_tilde, cfg.tau_max, cfg.dtau,
                                                 cfg.parallel);
            t = scan.curve;
            if (scan.first_zero)
                res.report_lines.push_back("first Gamma with zero steady-state concurrence: " +
                                           format_number(*scan.first_zero));
            else
                res.report_lines.push_back(
                    "no grid Gamma reached zero steady-state concurrence");
            break;
        }

        case SweepMode::squeezed: {
            std::vector<double> nbars = cfg.nbar_grid
                                            ? axis_values(*cfg.nbar_grid)
                                            : axis_values(AxisSpec{0.0, 1.0, 0.1});
            std::vector<double> Ns = cfg.N_values;
            if (Ns.empty()) Ns = {0.0, 1e-3, 0.01, 0.1, 0.5, 1.0};
            t = thermal_and_squeezed_decay_scan(nbars, Ns, cfg.params.lambda,
                                                cfg.params.gamma_tilde, cfg.tau_max,
                                                cfg.parallel);
            break;
        }

        case SweepMode::fidelity_scan: {
            std::vector<double> rs;
            for (int i = 0; i <= 10; ++i) rs.push_back(i * (2.0 / 30.0));
            t = fidelity_scan(rs, cfg.params.lambda, cfg.params.gamma_tilde, cfg.tau_max,
                              cfg.parallel);
            break;
        }

        case SweepMode::lambda_opt: {
            const auto r = find_lambda_opt(cfg.objective, cfg.params.gamma_tilde);
            t.columns = {"eval", "lambda", "objective"};
            for (std::size_t i = 0; i < r.evaluations.size(); ++i)
                t.add_row({static_cast<double>(i), r.evaluations[i].first,
                           r.evaluations[i].second});
            res.report_lines.push_back("lambda_opt = " + format_number(r.lambda_opt));
            res.report_lines.push_back("objective value = " + format_number(r.best_value));
            res.report_lines.push_back("best r = " + format_number(r.best_r));
            if (r.used_fallback)
                res.report_lines.push_back("golden bracket failed; dense-grid fallback used");
            break;
        }

        case SweepMode::full_oracle: {
            const int nmax = cfg.nmax > 0 ? cfg.nmax : auto_nmax(cfg.params.nbar);
            const CompositeState s0 =
                CompositeState::qubits_vacuum_field(initial_state_01(), nmax);
            const double dtau =
                std::min(cfg.dtau, composite_default_dtau(cfg.params.gamma_tilde, nmax,
                                                          cfg.params.nbar));
            const auto run = evolve_composite(cfg.params.lambda, cfg.params.gamma_tilde,
                                              cfg.params.nbar, s0, cfg.tau_max, dtau,
                                              cfg.stride);
            t.columns = kTrajectoryColumns;
            t.columns.push_back("nmax");
            t.columns.push_back("top_fock_pop");
            for (const auto& s : run) {
                std::vector<Cell> row;
                const CsPoint p = cs_point(s.qubits);
                row.emplace_back(s.tau);
                row.emplace_back(p.C);
                row.emplace_back(p.S);
                row.emplace_back(s.qubits.entry(kBasis00, kBasis00).real());
                row.emplace_back(s.qubits.entry(kBasis01, kBasis01).real());
                row.emplace_back(s.qubits.entry(kBasis10, kBasis10).real());
                row.emplace_back(s.qubits.entry(kBasis11, kBasis11).real());
                row.emplace_back(s.qubits.entry(kBasis01, kBasis10).real());
                row.emplace_back(static_cast<double>(nmax));
                row.emplace_back(s.top_fock_pop);
                t.add_row(std::move(row));
            }
            break;
        }
    }
    return res;
}

double audit_cs_rows(const Table& t, const BoundaryCurve& curve) {
    const auto ic = std::find(t.columns.begin(), t.columns.end(), "C");
    const auto is = std::find(t.columns.begin(), t.columns.end(), "S");
    if (ic == t.columns.end() || is == t.columns.end())
        throw contract_error("audit_cs_rows: table has no C/S columns");
    const std::size_t ci = ic - t.columns.begin();
    const std::size_t si = is - t.columns.begin();

    double min_gap = 1.0;
    for (const auto& row : t.rows) {
        const CsPoint p{std::get<double>(row[ci]), std::get<double>(row[si])};
        min_gap = std::min(min_gap, curve.gap(p));
    }
    return min_gap;
}

}  // namespace memsforge
