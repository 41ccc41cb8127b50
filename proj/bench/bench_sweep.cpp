// Timing comparison between the serial reference sweep path and the
// OpenMP-parallel one. The physics kernels are identical; only the grid loop
// differs, so the outputs must match bitwise (checked here as well).

#include <chrono>
#include <cstdio>

#include "memsforge/sweep.hpp"

using namespace memsforge;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool tables_equal(const Table& a, const Table& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i] != b.rows[i]) return false;
    return true;
}

void bench_mode(const char* name, SweepConfig cfg) {
    SweepResult serial, parallel;
    cfg.parallel = false;
    const double ts = seconds([&] { serial = run_sweep(cfg); });
    cfg.parallel = true;
    const double tp = seconds([&] { parallel = run_sweep(cfg); });
    const bool same = tables_equal(serial.table, parallel.table);
    std::printf("%-14s  serial %8.3f s   openmp %8.3f s   speedup %5.2fx   identical: %s\n",
                name, ts, tp, ts / tp, same ? "yes" : "NO");
}

}  // namespace

int main() {
    std::printf("grid sweeps, serial reference vs OpenMP\n\n");

    SweepConfig unitary;
    unitary.mode = SweepMode::unitary;
    unitary.tau_max = 40.0;
    unitary.dtau = 0.01;
    unitary.stride = 5;
    unitary.lambda_grid = AxisSpec{0.0, 2.0, 0.05};
    bench_mode("unitary", unitary);

    SweepConfig dissipative;
    dissipative.mode = SweepMode::dissipative;
    dissipative.tau_max = 100.0;
    dissipative.lambda_grid = AxisSpec{0.0, 2.0, 0.1};
    dissipative.nbar_grid = AxisSpec{0.0, 0.8, 0.4};
    bench_mode("dissipative", dissipative);

    SweepConfig damping;
    damping.mode = SweepMode::phase_damping;
    damping.params.lambda = 0.8;
    damping.tau_max = 100.0;
    bench_mode("phase-damping", damping);

    SweepConfig squeezed;
    squeezed.mode = SweepMode::squeezed;
    squeezed.params.lambda = 0.8;
    squeezed.tau_max = 100.0;
    bench_mode("squeezed", squeezed);

    return 0;
}
