#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "memsforge/sweep.hpp"
#include "test_helpers.hpp"

using namespace memsforge;
using namespace memsforge::testing;

namespace {

bool tables_equal(const Table& a, const Table& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i] != b.rows[i]) return false;
    return true;
}

std::string emit_string(const Table& t, EmitFormat fmt) {
    std::ostringstream os;
    emit(t, os, fmt);
    return os.str();
}

}  // namespace

TEST_CASE("axis grids") {
    const auto g = axis_values({0.0, 1.0, 0.25});
    CHECK(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK_THROWS_AS(axis_values({0.0, 1.0, 0.0}), contract_error);
    CHECK_THROWS_AS(axis_values({1.0, 0.0, 0.1}), contract_error);
    CHECK_THROWS_AS(parse_mode("warp-drive"), contract_error);
}

TEST_CASE("serial and parallel sweeps produce identical tables") {
    SweepConfig cfg;
    cfg.mode = SweepMode::dissipative;
    cfg.lambda_grid = AxisSpec{0.2, 1.0, 0.2};
    cfg.nbar_grid = AxisSpec{0.0, 0.8, 0.4};
    cfg.tau_max = 20.0;
    cfg.stride = 100;

    cfg.parallel = false;
    const Table serial = run_sweep(cfg).table;
    cfg.parallel = true;
    const Table parallel = run_sweep(cfg).table;
    CHECK(tables_equal(serial, parallel));
    CHECK(emit_string(serial, EmitFormat::csv) == emit_string(parallel, EmitFormat::csv));
}

TEST_CASE("repeated runs are bitwise deterministic") {
    SweepConfig cfg;
    cfg.mode = SweepMode::lambda_opt;
    const std::string a = emit_string(run_sweep(cfg).table, EmitFormat::csv);
    const std::string b = emit_string(run_sweep(cfg).table, EmitFormat::csv);
    CHECK(a == b);
}

TEST_CASE("emitted files have a header row and one line per record") {
    Table t;
    t.columns = {"x", "y"};
    t.add_row({1.0, 2.0});
    const std::string text = emit_string(t, EmitFormat::csv);
    CHECK(text == "x,y\n1,2\n");

    Table empty;
    empty.columns = {"x"};
    std::ostringstream os;
    CHECK_THROWS_AS(emit(empty, os, EmitFormat::csv), contract_error);
}

TEST_CASE("boundary mode uses the documented schema") {
    SweepConfig cfg;
    cfg.mode = SweepMode::boundary;
    cfg.boundary_samples = 11;
    const Table t = run_sweep(cfg).table;
    CHECK(t.columns == std::vector<std::string>{"r", "family", "C", "S"});
    CHECK(t.rows.size() == 11);
    CHECK(std::get<std::string>(t.rows.front()[1]) == "rho2");
    CHECK(std::get<std::string>(t.rows.back()[1]) == "rho1");
}

TEST_CASE("single-trajectory dissipative output uses the trajectory schema") {
    SweepConfig cfg;
    cfg.mode = SweepMode::dissipative;
    cfg.params.lambda = 0.8;
    cfg.tau_max = 5.0;
    cfg.stride = 100;
    const Table t = run_sweep(cfg).table;
    CHECK(t.columns ==
          std::vector<std::string>{"tau", "C", "S", "rho0000", "rho0101", "rho1010", "rho1111",
                                   "rho0110_re"});
}

TEST_CASE("csv round trip preserves values") {
    SweepConfig cfg;
    cfg.mode = SweepMode::boundary;
    cfg.boundary_samples = 41;
    const Table t = run_sweep(cfg).table;

    std::stringstream ss(emit_string(t, EmitFormat::csv));
    const Table back = parse_csv(ss);
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (std::holds_alternative<double>(t.rows[i][c])) {
                const double a = std::get<double>(t.rows[i][c]);
                const double b = std::get<double>(back.rows[i][c]);
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
            } else {
                CHECK(t.rows[i][c] == back.rows[i][c]);
            }
        }
}

TEST_CASE("fidelity scan starts flat at sqrt(1/3) and orders by r at late times") {
    std::vector<double> rs;
    for (int i = 0; i <= 10; ++i) rs.push_back(i * (2.0 / 30.0));
    const Table t = fidelity_scan(rs, 0.8135, 10.0, 100.0, true);

    const double expect0 = std::sqrt(1.0 / 3.0);
    std::vector<double> first(rs.size()), last(rs.size());
    for (const auto& row : t.rows) {
        const double tau = std::get<double>(row[0]);
        const double r = std::get<double>(row[1]);
        const double f = std::get<double>(row[2]);
        const std::size_t j = static_cast<std::size_t>(std::lround(r / (2.0 / 30.0)));
        if (tau == 0.0) first[j] = f;
        if (tau == 100.0) last[j] = f;
    }
    for (double f : first) CHECK(f == doctest::Approx(expect0).epsilon(1e-9));
    for (std::size_t j = 1; j < last.size(); ++j) CHECK(last[j] > last[j - 1]);
    CHECK(last.back() > 0.994);
}

TEST_CASE("optimal coupling search") {
    const auto fid = find_lambda_opt("max-fidelity-rho2", 10.0);
    CHECK(fid.lambda_opt == doctest::Approx(0.8135).epsilon(0.01));
    CHECK(fid.best_value > 0.994);
    CHECK(fid.best_r == doctest::Approx(2.0 / 3.0).epsilon(0.05));
    CHECK_FALSE(fid.used_fallback);

    const auto maxc = find_lambda_opt("max-C-subject-to-S", 10.0);
    CHECK(maxc.lambda_opt == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(0.02));
    CHECK(maxc.best_value == doctest::Approx(0.649519).epsilon(1e-3));

    // The vacuum steady state has no gamma dependence, so neither does the
    // optimum.
    const auto fid50 = find_lambda_opt("max-fidelity-rho2", 50.0);
    CHECK(std::abs(fid50.lambda_opt - fid.lambda_opt) <= 1e-9);

    CHECK_THROWS_AS(find_lambda_opt("maximize-vibes", 10.0), contract_error);
}

TEST_CASE("thermal and squeezed decay scans share endpoints and stay ordered") {
    const Table t = thermal_and_squeezed_decay_scan({0.0, 0.5, 1.0}, {0.0, 0.01, 0.1, 1.0},
                                                    0.8135, 10.0, 100.0, true);
    double f_thermal0 = 0, f_squeezed0 = 0, f_thermal1 = 0, f_squeezed1 = 0, f0 = 0;
    for (const auto& row : t.rows) {
        const std::string bath = std::get<std::string>(row[0]);
        const double param = std::get<double>(row[1]);
        const double f = std::get<double>(row[2]);
        if (bath == "thermal" && param == 0.0) f_thermal0 = f;
        if (bath == "squeezed" && param == 0.0) {
            f_squeezed0 = f;
            f0 = f;
        }
        if (bath == "thermal" && param == 1.0) f_thermal1 = f;
        if (bath == "squeezed" && param == 1.0) f_squeezed1 = f;
        if (bath == "squeezed" && param > 0.0) CHECK(f < f0);
    }
    CHECK(std::abs(f_thermal0 - f_squeezed0) <= 1e-9);
    CHECK(f_thermal0 > 0.994);
    CHECK(f_squeezed1 > f_thermal1);
}

TEST_CASE("phase damping scan is monotone and reports the marked drop") {
    const auto scan =
        phase_damping_scan({0.0, 0.001, 0.002, 0.005, 0.01}, 0.8135, 10.0, 100.0, 0.01, true);
    double c0 = 0.0, prev = 1.0;
    for (const auto& row : scan.curve.rows) {
        const double gamma = std::get<double>(row[0]);
        const double c = std::get<double>(row[1]);
        if (gamma == 0.0) c0 = c;
        CHECK(c <= prev + 1e-12);
        prev = c;
    }
    CHECK(c0 == doctest::Approx(0.589).epsilon(0.01 / 0.589));
    // Already at Gamma = 0.001 the drop is well past 10%.
    CHECK(std::get<double>(scan.curve.rows[1][1]) < 0.9 * c0);
}

TEST_CASE("phase-damping trajectories variant emits tau-resolved rows") {
    SweepConfig cfg;
    cfg.mode = SweepMode::phase_damping;
    cfg.params.lambda = 0.8;
    cfg.Gamma_grid = AxisSpec{2e-3, 4e-3, 2e-3};
    cfg.phase_damping_trajectories = true;
    cfg.tau_max = 10.0;
    cfg.stride = 200;
    const Table t = run_sweep(cfg).table;
    CHECK(t.columns == std::vector<std::string>{"Gamma", "tau", "C", "S"});
    CHECK(t.rows.size() == 2 * 6);  // two Gamma values, six samples each
}

TEST_CASE("every emitted C-S point respects the boundary") {
    const BoundaryCurve curve;

    SweepConfig unitary;
    unitary.mode = SweepMode::unitary;
    unitary.lambda_grid = AxisSpec{0.0, 2.0, 0.25};
    unitary.tau_max = 40.0;
    unitary.dtau = 0.01;
    unitary.stride = 20;
    CHECK(audit_cs_rows(run_sweep(unitary).table, curve) >= -1e-6);

    SweepConfig diss;
    diss.mode = SweepMode::dissipative;
    diss.lambda_grid = AxisSpec{0.2, 1.8, 0.4};
    diss.nbar_grid = AxisSpec{0.0, 0.8, 0.8};
    diss.tau_max = 40.0;
    diss.stride = 50;
    CHECK(audit_cs_rows(run_sweep(diss).table, curve) >= -1e-6);
}

TEST_CASE("settled trajectories do not fold back") {
    SweepConfig cfg;
    cfg.mode = SweepMode::dissipative;
    cfg.params.lambda = 0.8135;
    cfg.tau_max = 100.0;
    cfg.stride = 10;
    const Table t = run_sweep(cfg).table;

    double prev_c = 0.0, prev_s = 0.0;
    bool started = false;
    for (const auto& row : t.rows) {
        const double tau = std::get<double>(row[0]);
        const double c = std::get<double>(row[1]);
        const double s = std::get<double>(row[2]);
        if (tau >= 30.0) {
            if (started) {
                CHECK(std::abs(c - prev_c) <= 1e-3);
                CHECK(std::abs(s - prev_s) <= 1e-3);
            }
            started = true;
            prev_c = c;
            prev_s = s;
        }
    }
}
