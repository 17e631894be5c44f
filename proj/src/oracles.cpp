#include "heavytail/oracles.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heavytail::oracle {

namespace {

// Panel edges for \int_0^T g(x) trig(theta x) dx: geometric spacing while the
// phase is slow, half-period spacing once it oscillates.
std::vector<double> oscillation_edges(double freq, double T) {
    std::vector<double> edges;
    edges.push_back(0.0);
    double t = 0.0;
    const double half_period = freq > 1e-300 ? M_PI / freq : T;
    while (t < T) {
        double step = std::max(0.5, t);           // geometric growth
        step = std::min(step, half_period);       // but resolve the oscillation
        t += step;
        if (t >= T) break;
        edges.push_back(t);
    }
    edges.push_back(T);
    return edges;
}

// Taylor remainder of cos(v) after the v^{2m} term; single-signed in v.
double cos_remainder(double v, int m) {
    const double v2 = v * v;
    if (std::fabs(v) < 12.0) {
        double term = 1.0;
        for (int k = 1; k <= m; ++k) term *= -v2 / ((2.0 * k - 1.0) * (2.0 * k));
        double sum = 0.0;
        for (int k = m + 1; k < m + 80; ++k) {
            term *= -v2 / ((2.0 * k - 1.0) * (2.0 * k));
            sum += term;
            if (std::fabs(term) < 1e-20 * (std::fabs(sum) + 1e-300)) break;
        }
        return sum;
    }
    double poly = 0.0, term = 1.0;
    for (int k = 0; k <= m; ++k) {
        poly += term;
        term *= -v2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    return std::cos(v) - poly;
}

// Taylor remainder of sin(v) after the v^{2m+1} term; single-signed in v.
double sin_remainder(double v, int m) {
    const double v2 = v * v;
    if (std::fabs(v) < 12.0) {
        double term = v;
        for (int k = 1; k <= m; ++k) term *= -v2 / ((2.0 * k) * (2.0 * k + 1.0));
        double sum = 0.0;
        for (int k = m + 1; k < m + 80; ++k) {
            term *= -v2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
            if (std::fabs(term) < 1e-20 * (std::fabs(sum) + 1e-300)) break;
        }
        return sum;
    }
    double poly = 0.0, term = v;
    for (int k = 0; k <= m; ++k) {
        poly += term;
        term *= -v2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return std::sin(v) - poly;
}

// \int_start^inf x^j g(x) dx for a tail with decay index idx.
double tail_moment(const std::function<double(double)>& g, int j, double idx, double start,
                   double abs_tol) {
    auto integrand = [&](double x) { return std::pow(x, j) * g(x); };
    auto bound = [&](double x) { return 2.0 * g(x) * std::pow(x, j + 1) / (idx - j); };
    quad::Options opt;
    opt.abs_tol = abs_tol;
    opt.rel_tol = 1e-11;
    opt.max_panels = 6000;
    opt.throw_on_failure = false;
    return quad::integrate_semi_infinite_log(integrand, start, bound, opt).value;
}

std::complex<double> ipow(std::complex<double> z, long n) {
    std::complex<double> acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::complex<double> charfn_numeric(const density::DensitySpec& spec, double theta,
                                    const OracleConfig& cfg) {
    if (theta == 0.0) return {1.0, 0.0};
    const double at = std::fabs(theta);
    auto even_part = [&spec](double u) { return spec.pdf(u) + spec.pdf(-u); };
    auto odd_part = [&spec](double u) { return spec.pdf(u) - spec.pdf(-u); };
    // stop once both the mass bound and the integration-by-parts bound allow
    const double idx = spec.min_index();
    auto remaining_bound = [&](double t) {
        const double mass = 2.0 * even_part(t) * t / idx;
        const double osc = 2.0 * even_part(t) / at;
        return std::min(mass, osc);
    };
    quad::Options opt;
    opt.abs_tol = cfg.quad_abs_tol * 0.05;
    opt.rel_tol = 1e-13;
    opt.max_panels = 400;
    opt.throw_on_failure = false;
    double re = 0.0, im = 0.0;
    double t0 = 0.0;
    const double half_period = M_PI / at;
    int panels = 0;
    while (true) {
        double step = std::min(std::max(0.5, t0), half_period);
        const double t1 = t0 + step;
        re += quad::integrate([&](double u) { return std::cos(theta * u) * even_part(u); }, t0, t1,
                              opt)
                  .value;
        if (!spec.is_symmetric())
            im += quad::integrate([&](double u) { return std::sin(theta * u) * odd_part(u); }, t0,
                                  t1, opt)
                      .value;
        t0 = t1;
        if (remaining_bound(t0) < cfg.quad_abs_tol * 0.5) break;
        if (++panels > cfg.quad_panel_limit)
            throw QuadratureNonConvergence("charfn_numeric: panel limit at theta=" +
                                           std::to_string(theta));
    }
    return {re, im};
}

std::complex<double> charfn_residual(const density::DensitySpec& spec, double theta, int j_max,
                                     const OracleConfig& cfg) {
    if (j_max < 0) j_max = spec.cumulants().max_order;
    if (theta == 0.0) return {0.0, 0.0};
    const double at = std::fabs(theta);
    const int m_cos = j_max / 2;            // cos terms through v^{2 m_cos}
    const int m_sin = (j_max - 1) / 2;      // sin terms through v^{2 m_sin + 1}
    auto even_part = [&spec](double u) { return spec.pdf(u) + spec.pdf(-u); };
    auto odd_part = [&spec](double u) { return spec.pdf(u) - spec.pdf(-u); };

    // oscillatory head [0, T], then the polynomial part integrated exactly as
    // tail moments; the leftover cos/sin tail is bounded by 2 g(T)/|theta|
    const double T = std::max(64.0, 128.0 / at);
    const auto edges = oscillation_edges(at, T);
    quad::Options opt;
    opt.abs_tol = 1e-300;  // rely on relative accuracy: the integrand is single-signed
    opt.rel_tol = 1e-11;
    opt.max_panels = std::max(50, cfg.quad_panel_limit / 8);
    opt.throw_on_failure = false;
    double re = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        re += quad::integrate(
                  [&](double u) { return cos_remainder(theta * u, m_cos) * even_part(u); },
                  edges[i], edges[i + 1], opt)
                  .value;
    // minus the even Taylor terms against the tail
    double theta_pow = 1.0;
    double fact = 1.0;
    for (int j = 0; j <= j_max; ++j) {
        if (j > 0) {
            theta_pow *= at;
            fact *= j;
        }
        if (j % 2 != 0) continue;
        const double cj = ((j / 2) % 2 == 0 ? 1.0 : -1.0) * theta_pow / fact;
        re -= cj * tail_moment(even_part, j, spec.min_index(), T, 1e-16 * std::max(1.0, theta_pow));
    }
    double im = 0.0;
    if (!spec.is_symmetric()) {
        for (size_t i = 0; i + 1 < edges.size(); ++i)
            im += quad::integrate(
                      [&](double u) { return sin_remainder(theta * u, m_sin) * odd_part(u); },
                      edges[i], edges[i + 1], opt)
                      .value;
        double tp = 1.0, fc = 1.0;
        for (int j = 0; j <= j_max; ++j) {
            if (j > 0) {
                tp *= theta;  // signed: odd powers keep theta's sign
                fc *= j;
            }
            if (j % 2 != 1) continue;
            const double cj = (((j - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * tp / fc;
            im -= cj * tail_moment(odd_part, j, spec.min_index(), T, 1e-16 * std::max(1.0, tp));
        }
    }
    return {re, im};
}

namespace {

// Direct single-point inversion: (1/pi) Re \int_0^inf e^{-i theta x} w(theta) dtheta,
// w(theta) = phi(theta/sqrt n)^n, panels at the cos zeros, Aitken-assisted
// stop for large x.
double inversion_point(const density::DensitySpec& spec, double x, int n,
                       const OracleConfig& cfg) {
    const double sqn = std::sqrt(static_cast<double>(n));
    auto w = [&](double theta) -> std::complex<double> {
        return ipow(charfn_numeric(spec, theta / sqn, cfg), n);
    };
    const double ax = std::fabs(x);
    quad::Options opt;
    opt.abs_tol = cfg.quad_abs_tol * 0.1;
    opt.rel_tol = 1e-12;
    opt.max_panels = 200;
    opt.throw_on_failure = false;
    double acc = 0.0;
    std::vector<double> partials;
    double t0 = 0.0;
    int below_cutoff_streak = 0;
    const double half_period = ax > 1e-12 ? M_PI / ax : 4.0;
    int panels = 0;
    while (true) {
        const double t1 = t0 + std::min(half_period, 1.0);
        const double part = quad::integrate(
                                [&](double t) {
                                    const std::complex<double> v = w(t);
                                    return v.real() * std::cos(t * x) + v.imag() * std::sin(t * x);
                                },
                                t0, t1, opt)
                                .value;
        acc += part;
        partials.push_back(acc);
        t0 = t1;
        const double wmag = std::abs(w(t0));
        if (wmag < cfg.inversion_cutoff) {
            if (++below_cutoff_streak >= 2) break;
        } else {
            below_cutoff_streak = 0;
        }
        if (++panels > cfg.quad_panel_limit)
            throw QuadratureNonConvergence("density_by_inversion: panel limit reached");
    }
    // Aitken tail assist on alternating partial sums
    if (ax >= 4.0 && partials.size() >= 3) {
        const size_t k = partials.size();
        const double s0 = partials[k - 3], s1 = partials[k - 2], s2 = partials[k - 1];
        const double denom = (s2 - s1) - (s1 - s0);
        if (std::fabs(denom) > 1e-300) {
            const double aitken = s2 - (s2 - s1) * (s2 - s1) / denom;
            if (std::fabs(aitken - s2) < 10.0 * std::fabs(s2 - s1)) acc = aitken;
        }
    }
    return acc / M_PI;
}

}  // namespace

double density_by_inversion(const density::DensitySpec& spec, double x, int n,
                            const OracleConfig& cfg) {
    if (n < 1) throw DomainError("density_by_inversion: requires n >= 1");
    return inversion_point(spec, x, n, cfg);
}

InversionGridEngine::InversionGridEngine(const density::DensitySpec& spec, int n, double x_max,
                                         const OracleConfig& cfg)
    : symmetric_(spec.is_symmetric()), x_max_(std::fabs(x_max)) {
    if (n < 1) throw DomainError("InversionGridEngine: requires n >= 1");
    const double sqn = std::sqrt(static_cast<double>(n));
    const double h = std::min(0.2, M_PI / (4.0 * std::max(1.0, x_max_)));
    static const quad::GaussLegendre gl(24);
    // the characteristic-function quadrature carries ~1e-13 absolute noise, so
    // a stop threshold below that level would never trigger
    const double stop_mag = std::max(cfg.inversion_cutoff * 0.01, 1e-13);
    int below = 0;
    for (int panel = 0;; ++panel) {
        const double a = panel * h;
        const double b = a + h;
        double maxmag = 0.0;
        for (size_t i = 0; i < gl.nodes.size(); ++i) {
            const double theta = 0.5 * (a + b) + 0.5 * h * gl.nodes[i];
            const std::complex<double> v = ipow(charfn_numeric(spec, theta / sqn, cfg), n);
            theta_.push_back(theta);
            weight_.push_back(0.5 * h * gl.weights[i]);
            w_.push_back(v);
            maxmag = std::max(maxmag, std::abs(v));
        }
        if (maxmag < stop_mag) {
            if (++below >= 2) break;
        } else {
            below = 0;
        }
        if (b > 400.0)
            throw QuadratureNonConvergence("InversionGridEngine: characteristic function decays "
                                           "too slowly");
    }
}

double InversionGridEngine::density(double x) const {
    if (std::fabs(x) > x_max_ * (1.0 + 1e-12) + 1e-12)
        throw DomainError("InversionGridEngine: x outside the prepared range");
    double acc = 0.0;
    const size_t m = theta_.size();
    for (size_t i = 0; i < m; ++i) {
        const double c = std::cos(theta_[i] * x);
        if (symmetric_) {
            acc += weight_[i] * w_[i].real() * c;
        } else {
            acc += weight_[i] * (w_[i].real() * c + w_[i].imag() * std::sin(theta_[i] * x));
        }
    }
    return acc / M_PI;
}

std::vector<double> convolution_density(const density::DensitySpec& spec, int n,
                                        const std::vector<double>& xs, double half_width,
                                        double spacing) {
    const std::size_t N = static_cast<std::size_t>(std::llround(2.0 * half_width / spacing));
    std::vector<std::complex<double>> buf(N);
    // wrap-around ordering: index j holds x = j*spacing for j < N/2,
    // x = (j - N)*spacing above, so the lattice convolution stays centered
    for (std::size_t j = 0; j < N; ++j) {
        const double x = (j < N / 2) ? j * spacing : (static_cast<double>(j) - N) * spacing;
        buf[j] = spec.pdf(x) * spacing;
    }
    fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(N),
                                     reinterpret_cast<fftw_complex*>(buf.data()),
                                     reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    for (auto& v : buf) v = ipow(v, n);
    fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(N),
                                     reinterpret_cast<fftw_complex*>(buf.data()),
                                     reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
                                     FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    const double norm = 1.0 / (static_cast<double>(N) * spacing);
    const double sqn = std::sqrt(static_cast<double>(n));
    std::vector<double> out(xs.size());
    for (size_t q = 0; q < xs.size(); ++q) {
        // density of S_n at y = x * sqrt(n), then rescale to S_n/sqrt(n)
        const double y = xs[q] * sqn;
        const double pos = y / spacing;
        const long j0 = static_cast<long>(std::floor(pos)) - 1;
        double value = 0.0;
        // 4-point Lagrange interpolation on the lattice
        for (long j = j0; j < j0 + 4; ++j) {
            double basis = 1.0;
            for (long k = j0; k < j0 + 4; ++k)
                if (k != j) basis *= (pos - k) / static_cast<double>(j - k);
            const long wrapped = ((j % static_cast<long>(N)) + N) % N;
            value += basis * buf[wrapped].real();
        }
        out[q] = value * norm * sqn;
    }
    return out;
}

IncrementSampler::IncrementSampler(const density::DensitySpec& spec) {
    const int kNodes = 4096;
    const double x_edge = 1000.0;
    const double t_max = std::atan(x_edge);
    x_.resize(kNodes);
    pdf_.resize(kNodes);
    cdf_.resize(kNodes);
    for (int i = 0; i < kNodes; ++i) {
        const double t = -t_max + 2.0 * t_max * i / (kNodes - 1);
        x_[i] = std::tan(t);
        pdf_[i] = spec.pdf(x_[i]);
    }
    tail_index_left_ = spec.gamma();
    tail_index_right_ = spec.beta();
    tail_scale_left_ = spec.tail_minus()(x_edge);
    tail_scale_right_ = spec.tail_plus()(x_edge);
    // mass below the left grid edge
    auto left_tail = [&spec](double u) { return spec.pdf(-u); };
    auto bound_l = [&](double u) { return 2.0 * spec.pdf(-u) * u / tail_index_left_; };
    quad::Options opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-11;
    opt.max_panels = 6000;
    opt.throw_on_failure = false;
    tail_mass_left_ = quad::integrate_semi_infinite_log(left_tail, x_edge, bound_l, opt).value;
    auto right_tail = [&spec](double u) { return spec.pdf(u); };
    auto bound_r = [&](double u) { return 2.0 * spec.pdf(u) * u / tail_index_right_; };
    tail_mass_right_ = quad::integrate_semi_infinite_log(right_tail, x_edge, bound_r, opt).value;
    cdf_[0] = tail_mass_left_;
    for (int i = 1; i < kNodes; ++i) {
        cdf_[i] = cdf_[i - 1] +
                  quad::kronrod_panel([&spec](double x) { return spec.pdf(x); }, x_[i - 1], x_[i])
                      .value;
    }
    // absorb residual quadrature drift so that cdf + right tail mass == 1
    const double total = cdf_.back() + tail_mass_right_;
    const double scale = 1.0 / total;
    for (double& v : cdf_) v *= scale;
    tail_mass_left_ *= scale;
    tail_mass_right_ *= scale;
}

double IncrementSampler::quantile(double u) const {
    // analytic power-law inversion beyond the cached grid
    if (u < cdf_.front()) {
        const double g = tail_index_left_;
        const double v = std::pow(tail_scale_left_ / (g * std::max(u, 1e-300)), 1.0 / g);
        return -v;
    }
    if (u > cdf_.back()) {
        const double s = 1.0 - u;
        const double b = tail_index_right_;
        const double v = std::pow(tail_scale_right_ / (b * std::max(s, 1e-300)), 1.0 / b);
        return v;
    }
    // binary search for the cell
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    size_t i = static_cast<size_t>(std::max<long>(0, (it - cdf_.begin()) - 1));
    if (i >= x_.size() - 1) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double f0 = cdf_[i], f1 = cdf_[i + 1];
    const double d0 = pdf_[i] * h, d1 = pdf_[i + 1] * h;  // slopes in cell coordinates
    // Hermite cubic of the cdf on [0,1]; Newton with bisection safeguard
    auto H = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * f1 +
               (s3 - s2) * d1;
    };
    auto Hp = [&](double s) {
        const double s2 = s * s;
        return (6 * s2 - 6 * s) * f0 + (3 * s2 - 4 * s + 1) * d0 + (-6 * s2 + 6 * s) * f1 +
               (3 * s2 - 2 * s) * d1;
    };
    double lo = 0.0, hi = 1.0;
    double s = (f1 > f0) ? (u - f0) / (f1 - f0) : 0.5;
    for (int it2 = 0; it2 < 40; ++it2) {
        const double val = H(s) - u;
        if (std::fabs(val) < 1e-16) break;
        if (val > 0.0)
            hi = s;
        else
            lo = s;
        const double dp = Hp(s);
        double next = dp > 0.0 ? s - val / dp : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - s) < 1e-15) {
            s = next;
            break;
        }
        s = next;
    }
    return x_[i] + h * s;
}

std::vector<double> sample_sum(const density::DensitySpec& spec, int n, const OracleConfig& cfg) {
    if (cfg.mc_samples < 1) throw DomainError("sample_sum: requires mc_samples >= 1");
    if (n < 1) throw DomainError("sample_sum: requires n >= 1");
    IncrementSampler sampler(spec);
    const long long total = cfg.mc_samples;
    const long long chunk = 1 << 16;
    const long long num_chunks = (total + chunk - 1) / chunk;
    std::vector<double> out(static_cast<size_t>(total));
    const double inv_sqn = 1.0 / std::sqrt(static_cast<double>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
#endif
    for (long long c = 0; c < num_chunks; ++c) {
        std::uint64_t state = cfg.mc_seed + 0x632be59bd9b4e019ull * static_cast<std::uint64_t>(c);
        std::mt19937_64 rng(splitmix64(state));
        const long long begin = c * chunk;
        const long long end = std::min(total, begin + chunk);
        for (long long s = begin; s < end; ++s) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += sampler.quantile(uniform01(rng));
            out[static_cast<size_t>(s)] = acc * inv_sqn;
        }
    }
    return out;
}

std::vector<double> mc_density(const std::vector<double>& samples, const std::vector<double>& grid,
                               const OracleConfig& cfg, std::vector<double>* stderr_out) {
    if (samples.empty() || grid.size() < 2) throw DomainError("mc_density: empty input");
    const size_t g = grid.size();
    std::vector<double> out(g, 0.0);
    const double n = static_cast<double>(samples.size());
    if (cfg.kde_bandwidth > 0.0) {
        const double bw = cfg.kde_bandwidth;
        const double norm = 1.0 / (n * bw * std::sqrt(2.0 * M_PI));
        for (size_t i = 0; i < g; ++i) {
            double acc = 0.0;
            for (double s : samples) {
                const double z = (s - grid[i]) / bw;
                acc += std::exp(-0.5 * z * z);
            }
            out[i] = acc * norm;
        }
        if (stderr_out) stderr_out->assign(g, 0.0);
        return out;
    }
    const double w = grid[1] - grid[0];
    const double lo = grid.front() - 0.5 * w;
    std::vector<long long> counts(g, 0);
    for (double s : samples) {
        const double pos = (s - lo) / w;
        if (pos < 0.0 || pos >= static_cast<double>(g)) continue;
        counts[static_cast<size_t>(pos)]++;
    }
    if (stderr_out) stderr_out->assign(g, 0.0);
    for (size_t i = 0; i < g; ++i) {
        const double p = counts[i] / n;
        out[i] = p / w;
        if (stderr_out) (*stderr_out)[i] = std::sqrt(p * (1.0 - p) / n) / w;
    }
    return out;
}

}  // namespace heavytail::oracle
