// mems-forge: parameter sweeps and figure-data emission for the biased
// two-qubit / lossy-cavity model. One subcommand per mode; physics parameters
// come from flags or a JSON preset, flags override the preset.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "memsforge/sweep.hpp"

namespace {

using namespace memsforge;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

const std::map<std::string, std::string> kBuiltinPresets = {
    // Circuit-QED operating point: ~5 GHz resonator below 100 mK.
    {"circuit-qed", R"({"nbar": 0.06, "gamma_tilde": 10.0, "lambda": 0.8})"},
};

nlohmann::json load_preset(const std::string& name_or_path) {
    std::string text;
    if (auto it = kBuiltinPresets.find(name_or_path); it != kBuiltinPresets.end()) {
        text = it->second;
    } else {
        std::ifstream in(name_or_path);
        if (!in) throw contract_error("preset '" + name_or_path + "' is neither built in nor a readable file");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw contract_error("preset '" + name_or_path + "' is not valid JSON");
    return j;
}

AxisSpec parse_axis(const std::string& text) {
    AxisSpec a{};
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a.start, &a.stop, &a.step) != 3)
        throw contract_error("grid '" + text + "' must have the form start:stop:step");
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mems-forge: dissipative two-qubit dynamics against the MEMS boundary"};
    app.require_subcommand(1);

    std::string preset, out_path, format = "csv", objective = "max-fidelity-rho2";
    std::string lambda_grid, nbar_grid, Gamma_grid, dump_state_path;
    std::vector<double> N_values;
    double lambda = -1.0, gamma = -1.0, nbar = -1.0, Gamma = -1.0, squeeze_N = -1.0;
    double tau_max = -1.0, dtau = -1.0;
    int stride = -1, nmax = -1;
    std::size_t boundary_samples = 2001;
    bool serial = false, auto_lambda = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", preset, "built-in preset name or JSON file path");
        sub->add_option("--lambda", lambda, "coupling ratio g2/g1");
        sub->add_option("--gamma", gamma, "cavity decay gamma/g1");
        sub->add_option("--nbar", nbar, "thermal occupation");
        sub->add_option("--Gamma", Gamma, "phase-damping rate Gamma/g1");
        sub->add_option("--N", squeeze_N, "squeezed-bath N (ideal M implied)");
        sub->add_option("--tau-max", tau_max, "integration horizon g1*t");
        sub->add_option("--dtau", dtau, "RK4 step");
        sub->add_option("--stride", stride, "emit every n-th step");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--serial", serial, "disable the OpenMP sweep parallelism");
        sub->add_option("--dump-final-state", dump_state_path,
                        "write the final two-qubit state as JSON");
    };

    CLI::App* c_unitary = app.add_subcommand("unitary", "closed-form single-excitation sweep");
    c_unitary->add_option("--lambda-grid", lambda_grid, "start:stop:step");
    add_common(c_unitary);

    CLI::App* c_diss = app.add_subcommand("dissipative", "reduced master-equation trajectories");
    c_diss->add_option("--lambda-grid", lambda_grid, "start:stop:step");
    c_diss->add_option("--nbar-grid", nbar_grid, "start:stop:step");
    add_common(c_diss);

    CLI::App* c_pd = app.add_subcommand("phase-damping", "concurrence against dephasing rate");
    c_pd->add_option("--Gamma-grid", Gamma_grid, "start:stop:step");
    bool pd_trajectories = false;
    c_pd->add_flag("--with-trajectories", pd_trajectories,
                   "emit tau-resolved (Gamma,tau,C,S) rows instead of the final curve");
    add_common(c_pd);

    CLI::App* c_sq = app.add_subcommand("squeezed", "thermal and squeezed fidelity decay");
    c_sq->add_option("--N-values", N_values, "squeezed-bath scan points");
    c_sq->add_option("--nbar-grid", nbar_grid, "start:stop:step for the thermal curve");
    add_common(c_sq);

    CLI::App* c_full = app.add_subcommand("full-oracle", "truncated-Fock composite model");
    c_full->add_option("--nmax", nmax, "Fock truncation (default: adequate for nbar)");
    add_common(c_full);

    CLI::App* c_bound = app.add_subcommand("boundary", "MEMS boundary curve");
    c_bound->add_option("--samples", boundary_samples, "boundary sample count");
    add_common(c_bound);

    CLI::App* c_fid = app.add_subcommand("fidelity-scan", "F(tau; r) against the rho2 family");
    add_common(c_fid);

    CLI::App* c_opt = app.add_subcommand("lambda-opt", "optimal coupling search");
    c_opt->add_option("--objective", objective, "max-fidelity-rho2 or max-C-subject-to-S")
        ->check(CLI::IsMember({"max-fidelity-rho2", "max-C-subject-to-S"}));
    add_common(c_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        SweepConfig cfg;
        cfg.parallel = !serial;
        cfg.objective = objective;
        cfg.boundary_samples = boundary_samples;
        cfg.nmax = nmax;
        cfg.N_values = N_values;
        cfg.phase_damping_trajectories = pd_trajectories;

        if (!preset.empty()) {
            const nlohmann::json j = load_preset(preset);
            cfg.params.lambda = j.value("lambda", cfg.params.lambda);
            cfg.params.gamma_tilde = j.value("gamma_tilde", cfg.params.gamma_tilde);
            cfg.params.nbar = j.value("nbar", cfg.params.nbar);
            cfg.params.Gamma_tilde = j.value("Gamma_tilde", cfg.params.Gamma_tilde);
            cfg.params.gammaq_tilde = j.value("gammaq_tilde", cfg.params.gammaq_tilde);
            cfg.params.squeeze_N = j.value("squeeze_N", cfg.params.squeeze_N);
            cfg.params.squeeze_M = j.value("squeeze_M", cfg.params.squeeze_M);
        }

        // Flags override the preset.
        if (gamma >= 0.0) cfg.params.gamma_tilde = gamma;
        if (nbar >= 0.0) cfg.params.nbar = nbar;
        if (Gamma >= 0.0) cfg.params.Gamma_tilde = Gamma;
        if (squeeze_N >= 0.0) {
            cfg.params.squeeze_N = squeeze_N;
            cfg.params.squeeze_M = std::sqrt(squeeze_N * (squeeze_N + 1.0));
        }
        if (lambda >= 0.0)
            cfg.params.lambda = lambda;
        else
            auto_lambda = true;

        const CLI::App* sub = app.get_subcommands().front();
        cfg.mode = parse_mode(sub->get_name());

        // Mode defaults mirroring the figure ranges.
        switch (cfg.mode) {
            case SweepMode::unitary:
                cfg.tau_max = 40.0;
                cfg.dtau = 0.01;
                cfg.stride = 5;
                if (lambda_grid.empty() && lambda < 0.0)
                    cfg.lambda_grid = AxisSpec{0.0, 2.0, 0.05};
                break;
            case SweepMode::dissipative:
                // Bare invocation reproduces the full lambda/nbar figure grid;
                // any explicit lambda or nbar collapses to a single run on
                // that parameter.
                cfg.tau_max = 100.0;
                if (lambda_grid.empty() && lambda < 0.0) {
                    cfg.lambda_grid = AxisSpec{0.0, 2.0, 0.05};
                    if (nbar_grid.empty() && nbar < 0.0)
                        cfg.nbar_grid = AxisSpec{0.0, 0.8, 0.4};
                }
                break;
            case SweepMode::phase_damping:
            case SweepMode::squeezed:
            case SweepMode::fidelity_scan:
                cfg.tau_max = 100.0;
                if (auto_lambda) {
                    cfg.params.lambda =
                        find_lambda_opt("max-fidelity-rho2", cfg.params.gamma_tilde).lambda_opt;
                    std::cerr << "# lambda set to lambda_opt = "
                              << format_number(cfg.params.lambda) << "\n";
                }
                break;
            default:
                break;
        }

        if (!lambda_grid.empty()) cfg.lambda_grid = parse_axis(lambda_grid);
        if (!nbar_grid.empty()) cfg.nbar_grid = parse_axis(nbar_grid);
        if (!Gamma_grid.empty()) cfg.Gamma_grid = parse_axis(Gamma_grid);
        if (tau_max > 0.0) cfg.tau_max = tau_max;
        if (dtau > 0.0) cfg.dtau = dtau;
        if (stride > 0) cfg.stride = stride;

        if (cfg.params.bad_cavity_warning())
            std::cerr << "# warning: gamma/g1 = " << cfg.params.gamma_tilde
                      << " is outside the bad-cavity regime (expected >= 5)\n";

        const SweepResult result = run_sweep(cfg);

        const EmitFormat fmt = (format == "json") ? EmitFormat::json : EmitFormat::csv;
        if (out_path.empty())
            emit(result.table, std::cout, fmt);
        else
            emit_file(result.table, out_path, fmt);

        for (const auto& line : result.report_lines) std::cerr << "# " << line << "\n";

        if (!dump_state_path.empty()) {
            if (cfg.mode != SweepMode::dissipative || cfg.lambda_grid || cfg.nbar_grid)
                throw contract_error(
                    "--dump-final-state needs a single-trajectory dissipative run");
            const auto run = integrate(cfg.params, initial_state_01(), cfg.tau_max, cfg.dtau,
                                       static_cast<int>(cfg.tau_max / cfg.dtau));
            std::ofstream os(dump_state_path);
            if (!os) throw contract_error("cannot open '" + dump_state_path + "'");
            os << run.back().second.to_json() << "\n";
        }
        return 0;
    } catch (const contract_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
