#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "memsforge/emit.hpp"
#include "memsforge/full_model.hpp"
#include "memsforge/measures.hpp"
#include "memsforge/parallel.hpp"
#include "memsforge/reduced.hpp"
#include "memsforge/unitary.hpp"

namespace memsforge {

/// Inclusive 1-D grid start, start+step, ..., stop (stop included within 1e-9).
struct AxisSpec {
    double start;
    double stop;
    double step;
};

std::vector<double> axis_values(const AxisSpec& a);

enum class SweepMode {
    unitary,
    dissipative,
    phase_damping,
    squeezed,
    full_oracle,
    boundary,
    fidelity_scan,
    lambda_opt,
};

SweepMode parse_mode(const std::string& name);

struct SweepConfig {
    SweepMode mode = SweepMode::dissipative;
    DynamicsParams params;                  // scalar physics parameters
    std::optional<AxisSpec> lambda_grid;    // default per mode
    std::optional<AxisSpec> nbar_grid;
    std::optional<AxisSpec> Gamma_grid;
    std::vector<double> N_values;           // squeezed scan points
    double tau_max = 100.0;
    double dtau = 0.01;
    int stride = 10;
    std::size_t boundary_samples = 2001;
    int nmax = -1;                          // full-oracle truncation; -1 = auto
    std::string objective = "max-fidelity-rho2";
    bool parallel = true;
    bool phase_damping_trajectories = false;  // emit (Gamma, tau, C, S) rows instead
};

// --- reproduction scans -----------------------------------------------------

struct LambdaOptResult {
    double lambda_opt;
    double best_value;   // objective at the optimum
    double best_r;       // maximizing rho2 parameter (fidelity objective)
    bool used_fallback;  // golden bracket failed, dense grid used
    std::vector<std::pair<double, double>> evaluations;  // (lambda, objective)
};

/// Golden-section search over lambda in [0.1, 2] on the steady-state
/// objective; falls back to a dense grid when the coarse scan is not
/// unimodal. Objectives: "max-fidelity-rho2" (default) maximizes over
/// r in [0, 2/3] the fidelity between the flip-aligned steady state and
/// mems(rho2, r); "max-C-subject-to-S" maximizes concurrence subject to
/// S < 0.7.
LambdaOptResult find_lambda_opt(const std::string& objective, double gamma_tilde);

/// Rows (tau, r, F) for the vacuum trajectory at the given coupling; the flip
/// alignment is applied before every comparison with mems(rho2, r).
Table fidelity_scan(const std::vector<double>& r_grid, double lambda, double gamma_tilde,
                    double tau_max, bool parallel = true);

/// Rows (bath, param, F) at tau = 100, r = 2/3, lambda = lambda_opt: the
/// thermal curve F(nbar) and the ideally squeezed curve F(N) with
/// M = sqrt(N(N+1)).
Table thermal_and_squeezed_decay_scan(const std::vector<double>& nbar_values,
                                      const std::vector<double>& N_values, double lambda,
                                      double gamma_tilde, double tau_max, bool parallel = true);

struct PhaseDampingScan {
    Table curve;                        // Gamma, C, S at tau = tau_max
    std::optional<double> first_zero;   // smallest grid Gamma with C <= 1e-6
};

PhaseDampingScan phase_damping_scan(const std::vector<double>& Gamma_values, double lambda,
                                    double gamma_tilde, double tau_max, double dtau,
                                    bool parallel = true);

// --- sweep driver ------------------------------------------------------------

struct SweepResult {
    Table table;
    std::vector<std::string> report_lines;  // human-readable findings per mode
};

SweepResult run_sweep(const SweepConfig& cfg);

/// Checks every (C, S) row of a table against the MEMS boundary:
/// gap >= -1e-6. Returns the minimum gap found.
double audit_cs_rows(const Table& t, const BoundaryCurve& curve);

}  // namespace memsforge
