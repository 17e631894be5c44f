#ifndef HEAVYTAIL_ORACLES_HPP
#define HEAVYTAIL_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "heavytail/density_model.hpp"

namespace heavytail::oracle {

struct OracleConfig {
    double quad_abs_tol = 1e-10;
    int quad_panel_limit = 4000;
    double inversion_cutoff = 1e-14;  // stop once |phi(theta/sqrt n)|^n falls below
    long long mc_samples = 1000000;
    std::uint64_t mc_seed = 0x9e3779b97f4a7c15ull;
    int histogram_bins = 80;        // informational; grids carry their own spacing
    double kde_bandwidth = 0.0;     // 0 = histogram estimate
    bool parallel = true;           // chunk-parallel Monte Carlo
};

/// Characteristic function phi(theta) = E e^{i theta X} by adaptive
/// quadrature, oscillation-period panels, absolute error ~quad_abs_tol.
std::complex<double> charfn_numeric(const density::DensitySpec& spec, double theta,
                                    const OracleConfig& cfg = {});

/// phi(theta) minus its Taylor polynomial through order j_max (j_max = -1
/// uses every finite moment), computed without subtractive cancellation by
/// integrating the single-signed Taylor remainder of e^{i theta x} against
/// the density. This is the measurement tool for the non-analytic component.
std::complex<double> charfn_residual(const density::DensitySpec& spec, double theta,
                                     int j_max = -1, const OracleConfig& cfg = {});

/// Density of S_n/sqrt(n) at x through Fourier inversion of phi(theta/sqrt n)^n.
/// Primary ground truth for density comparisons.
double density_by_inversion(const density::DensitySpec& spec, double x, int n,
                            const OracleConfig& cfg = {});

/// Shared-table inversion engine for grid evaluation: the characteristic
/// function values are computed once on fixed Gauss-Legendre panels, then each
/// density(x) is a weighted sum. Agrees with density_by_inversion to ~1e-9.
class InversionGridEngine {
public:
    InversionGridEngine(const density::DensitySpec& spec, int n, double x_max,
                        const OracleConfig& cfg = {});
    double density(double x) const;
    double x_max() const { return x_max_; }

private:
    std::vector<double> theta_;
    std::vector<double> weight_;
    std::vector<std::complex<double>> w_;
    bool symmetric_;
    double x_max_;
};

/// n-fold convolution density on a uniform lattice via FFT, interpolated onto
/// the requested points. Independent cross-oracle for density_by_inversion.
std::vector<double> convolution_density(const density::DensitySpec& spec, int n,
                                        const std::vector<double>& xs,
                                        double half_width = 512.0, double spacing = 1.0 / 256.0);

/// Increment sampler by numerically inverted CDF: 4096-node cache on an
/// atan-compressed grid, Hermite-cubic cell inversion, analytic power-law
/// inversion beyond the grid.
class IncrementSampler {
public:
    explicit IncrementSampler(const density::DensitySpec& spec);
    double quantile(double u) const;

private:
    std::vector<double> x_, cdf_, pdf_;
    double tail_mass_left_, tail_mass_right_;
    double tail_scale_left_, tail_scale_right_;   // slowly varying value at the edge
    double tail_index_left_, tail_index_right_;
};

/// mc_samples iid realizations of S_n/sqrt(n). Sample count is partitioned
/// into fixed-size chunks with per-chunk derived seeds, so the stream is
/// reproducible independent of worker count.
std::vector<double> sample_sum(const density::DensitySpec& spec, int n,
                               const OracleConfig& cfg);

/// Histogram (or Gaussian-kernel, when kde_bandwidth > 0) density estimate on
/// a uniform grid; optional per-point standard errors for the histogram.
std::vector<double> mc_density(const std::vector<double>& samples,
                               const std::vector<double>& grid, const OracleConfig& cfg,
                               std::vector<double>* stderr_out = nullptr);

}  // namespace heavytail::oracle

#endif
