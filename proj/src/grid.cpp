#include "heavytail/grid.hpp"

#include <cstdlib>

#include "heavytail/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heavytail::grid {

std::vector<double> make_grid(const GridSpec& g) {
    if (g.count < 1) throw DomainError("make_grid: count must be >= 1");
    std::vector<double> xs(g.count);
    if (g.count == 1) {
        xs[0] = g.min;
        return xs;
    }
    const double step = (g.max - g.min) / (g.count - 1);
    for (int i = 0; i < g.count; ++i) xs[i] = g.min + step * i;
    return xs;
}

std::vector<edgeworth::ExpansionResult> expansion_grid(const density::DensitySpec& spec,
                                                       const std::vector<double>& xs, int n,
                                                       int max_order, bool parallel) {
    std::vector<edgeworth::ExpansionResult> out(xs.size());
    const long m = static_cast<long>(xs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (long i = 0; i < m; ++i)
        out[static_cast<size_t>(i)] = edgeworth::corrected_density(spec, xs[i], n, max_order);
    (void)parallel;
    return out;
}

std::vector<double> inversion_grid(const density::DensitySpec& spec, const std::vector<double>& xs,
                                   int n, const oracle::OracleConfig& cfg, bool parallel) {
    double x_max = 1.0;
    for (double x : xs) x_max = std::max(x_max, std::fabs(x));
    const oracle::InversionGridEngine engine(spec, n, x_max, cfg);
    std::vector<double> out(xs.size());
    const long m = static_cast<long>(xs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long i = 0; i < m; ++i) out[static_cast<size_t>(i)] = engine.density(xs[i]);
    (void)parallel;
    return out;
}

void set_max_threads(int threads) {
#ifdef _OPENMP
    if (threads >= 1) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int max_threads_from_env() {
    const char* env = std::getenv("HEAVYTAIL_THREADS");
    if (!env) return 0;
    const int v = std::atoi(env);
    return v >= 1 ? v : 0;
}

}  // namespace heavytail::grid
