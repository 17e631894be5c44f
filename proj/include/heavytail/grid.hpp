#ifndef HEAVYTAIL_GRID_HPP
#define HEAVYTAIL_GRID_HPP

#include <vector>

#include "heavytail/edgeworth.hpp"
#include "heavytail/oracles.hpp"

namespace heavytail::grid {

struct GridSpec {
    double min = -3.0;
    double max = 3.0;
    int count = 121;  // inclusive endpoints
};

std::vector<double> make_grid(const GridSpec& g);

/// Corrected-density expansion over a grid. Each point is independent; the
/// parallel path is an OpenMP parallel-for over the same per-point kernel, so
/// serial and parallel runs produce bitwise identical results.
std::vector<edgeworth::ExpansionResult> expansion_grid(const density::DensitySpec& spec,
                                                       const std::vector<double>& xs, int n,
                                                       int max_order = -1, bool parallel = true);

/// Inversion-oracle density over a grid through a shared characteristic
/// function table (built once, serially), evaluated per point in parallel.
std::vector<double> inversion_grid(const density::DensitySpec& spec,
                                   const std::vector<double>& xs, int n,
                                   const oracle::OracleConfig& cfg = {}, bool parallel = true);

/// Worker cap applied to OpenMP parallel regions; values < 1 leave the
/// runtime default untouched. Reads HEAVYTAIL_THREADS when called with 0.
void set_max_threads(int threads);
int max_threads_from_env();

}  // namespace heavytail::grid

#endif
