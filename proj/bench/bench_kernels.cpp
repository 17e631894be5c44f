// Compares the OpenMP grid/sampling kernels against their serial reference
// implementations: identical per-point arithmetic, so outputs must match
// bitwise while wall time drops with the worker count.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "heavytail/grid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace heavytail;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s serial %8.3f s   openmp %8.3f s   speedup %5.2fx   %s\n", name, serial_s,
                parallel_s, serial_s / parallel_s, identical ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled: serial and \"parallel\" paths coincide\n");
#endif
    const auto spec = density::DensitySpec::symmetric_pareto(3.0);

    {
        // non-integer tail index: every grid point evaluates the parabolic
        // cylinder kernel, the heaviest per-point load
        const auto heavy = density::DensitySpec::symmetric_pareto(4.5);
        const auto xs = grid::make_grid({-4.0, 4.0, 2001});
        auto t0 = Clock::now();
        const auto serial = grid::expansion_grid(heavy, xs, 30, -1, false);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = grid::expansion_grid(heavy, xs, 30, -1, true);
        const double tp = seconds_since(t0);
        bool same = true;
        for (size_t i = 0; i < xs.size(); ++i)
            same = same && serial[i].total == parallel[i].total;
        report("expansion grid", ts, tp, same);
    }

    {
        const auto xs = grid::make_grid({-2.0, 2.0, 2001});
        auto t0 = Clock::now();
        const auto serial = grid::inversion_grid(spec, xs, 30, {}, false);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = grid::inversion_grid(spec, xs, 30, {}, true);
        const double tp = seconds_since(t0);
        report("inversion grid", ts, tp, serial == parallel);
    }

    {
        oracle::OracleConfig cfg;
        cfg.mc_samples = 2000000;
        cfg.mc_seed = 2024;
        cfg.parallel = false;
        auto t0 = Clock::now();
        const auto serial = oracle::sample_sum(spec, 10, cfg);
        const double ts = seconds_since(t0);
        cfg.parallel = true;
        t0 = Clock::now();
        const auto parallel = oracle::sample_sum(spec, 10, cfg);
        const double tp = seconds_since(t0);
        report("monte carlo sampling", ts, tp, serial == parallel);
    }

    return 0;
}
