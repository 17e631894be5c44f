#include "heavytail/special_functions.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"

namespace heavytail {

int ParityClass::integer_value() const {
    return static_cast<int>(std::llround(value));
}

ParityClass classify_index(double alpha) {
    const double r = std::round(alpha);
    if (std::fabs(alpha - r) < kIntegerTolerance) {
        const long k = std::lround(r);
        return {(k % 2 == 0) ? Parity::EvenInteger : Parity::OddInteger, alpha};
    }
    return {Parity::NonInteger, alpha};
}

namespace sf {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kSqrtPiOver2 = 1.2533141373155002512;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

std::complex<double> unit_imag_power(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double hermite(int k, double x) {
    if (k < 0) throw DomainError("hermite: negative order");
    if (k == 0) return 1.0;
    double hm1 = 1.0;
    double h = x;
    for (int j = 1; j < k; ++j) {
        const double hp1 = x * h - j * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

namespace {

// Maclaurin series, |z| < 1:  D(z) = sum (-2)^n z^{2n+1} / (2n+1)!!
double dawson_maclaurin(double z) {
    const double z2 = z * z;
    double term = z;
    double sum = z;
    for (int n = 1; n < 60; ++n) {
        term *= -2.0 * z2 / (2.0 * n + 1.0);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

// Cancellation-free confluent form, moderate z:
//   D(z) = z e^{-z^2} sum_n z^{2n} / (n! (2n+1)),  all terms positive.
double dawson_midrange(double z) {
    const double z2 = z * z;
    double term = 1.0;
    double sum = 1.0 / 1.0;
    double factorial_part = 1.0;
    for (int n = 1; n < 400; ++n) {
        factorial_part *= z2 / n;
        term = factorial_part / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-18 * sum && n > z2) break;
    }
    return z * std::exp(-z2) * sum;
}

// Asymptotic expansion, large |z|:  D(z) ~ (1/2z) sum (2k-1)!!/(2z^2)^k.
double dawson_asymptotic(double z) {
    const double r = 1.0 / (2.0 * z * z);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= (2.0 * k - 1.0) * r;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum / (2.0 * z);
}

}  // namespace

double dawson(double z) {
    const double az = std::fabs(z);
    double v;
    if (az < 1.0)
        v = dawson_maclaurin(az);
    else if (az < 7.0)
        v = dawson_midrange(az);
    else
        v = dawson_asymptotic(az);
    return z < 0.0 ? -v : v;
}

namespace {

constexpr int kMaxDawsonPolyOrder = 24;

std::vector<DawsonDerivativePolys> build_dawson_polys() {
    std::vector<DawsonDerivativePolys> polys(kMaxDawsonPolyOrder + 1);
    polys[0] = {0, {1}, {0}};
    polys[1] = {1, {0, -1}, {1}};
    for (int m = 1; m < kMaxDawsonPolyOrder; ++m) {
        const auto& pm = polys[m];
        const auto& pm1 = polys[m - 1];
        DawsonDerivativePolys next;
        next.order = m + 1;
        next.p_coeffs.assign(m + 2, 0);
        next.q_coeffs.assign(m + 2, 0);
        // r_{m+1} = -(x r_m + m r_{m-1}) for both coefficient families
        for (size_t d = 0; d < pm.p_coeffs.size(); ++d) next.p_coeffs[d + 1] -= pm.p_coeffs[d];
        for (size_t d = 0; d < pm.q_coeffs.size(); ++d) next.q_coeffs[d + 1] -= pm.q_coeffs[d];
        for (size_t d = 0; d < pm1.p_coeffs.size(); ++d) next.p_coeffs[d] -= m * pm1.p_coeffs[d];
        for (size_t d = 0; d < pm1.q_coeffs.size(); ++d) next.q_coeffs[d] -= m * pm1.q_coeffs[d];
        while (next.q_coeffs.size() > 1 && next.q_coeffs.back() == 0) next.q_coeffs.pop_back();
        polys[m + 1] = std::move(next);
    }
    return polys;
}

const std::vector<DawsonDerivativePolys>& dawson_polys_table() {
    static const std::vector<DawsonDerivativePolys> table = build_dawson_polys();
    return table;
}

double horner_i64(const std::vector<std::int64_t>& c, double x) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + static_cast<double>(c[i]);
    return acc;
}

}  // namespace

const DawsonDerivativePolys& dawson_derivative_polys(int n) {
    if (n < 0) throw DomainError("dawson_derivative_polys: negative order");
    if (n > kMaxDawsonPolyOrder)
        throw DomainError("dawson_derivative_polys: order beyond exact-integer range");
    return dawson_polys_table()[n];
}

double dawson_scaled_derivative(int n, double x) {
    const auto& poly = dawson_derivative_polys(n);
    const double e = dawson(x / kSqrt2);
    return horner_i64(poly.p_coeffs, x) * e + horner_i64(poly.q_coeffs, x) / kSqrt2;
}

namespace {

// Asymptotic expansion of D_nu(z) for large positive z:
//   D_nu(z) ~ z^nu e^{-z^2/4} sum_k (-1)^k nu(nu-1)...(nu-2k+1) / (k! 2^k z^{2k}).
// Terminates exactly for integer nu. Returns false when the series cannot be
// certified below the requested relative tolerance (bound: first omitted term).
bool parabolic_cylinder_asymptotic(double nu, double z, double rel_tol, double* out) {
    const double z2 = z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 80; ++k) {
        const double factor = -(nu - 2.0 * k) * (nu - 2.0 * k - 1.0) / (2.0 * (k + 1.0) * z2);
        const double next = term * factor;
        if (next == 0.0) {  // integer nu: exact termination
            *out = std::pow(z, nu) * std::exp(-0.25 * z2) * sum;
            return true;
        }
        if (std::fabs(next) < rel_tol * std::fabs(sum)) {
            *out = std::pow(z, nu) * std::exp(-0.25 * z2) * sum;
            return true;
        }
        if (std::fabs(next) >= std::fabs(term) && k > 0) return false;  // divergence onset
        term = next;
        sum += term;
    }
    return false;
}

// Integral \int_0^inf e^{-t^2/2} t^nu cos(z t - nu pi/2) dt split at the zeros
// of the cosine, adaptive Gauss-Kronrod per panel, Kahan-summed. The upper
// limit is capped at T = max(40, 4|z| + 40); panels stop early once the
// envelope e^{-t^2/2} t^nu drops below ~1e-20.
double parabolic_cylinder_integral(double nu, double z) {
    const double phase0 = -0.5 * nu * M_PI;
    auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(-0.5 * t * t + nu * std::log(t)) * std::cos(z * t + phase0);
    };
    auto envelope_negligible = [&](double t) {
        return t > 3.0 && (-0.5 * t * t + nu * std::log(t)) < -46.0;
    };
    const double az = std::fabs(z);
    const double T = std::max(40.0, 4.0 * az + 40.0);
    std::vector<double> edges;
    edges.push_back(0.0);
    if (az > 1e-12) {
        // zeros of cos(z t + phase0) form the progression t0 + k pi/|z|
        const double step = M_PI / az;
        double t0 = std::fmod((M_PI / 2 - phase0) / z, step);
        if (t0 <= 0.0) t0 += step;
        for (double t = t0; t < T; t += step) {
            edges.push_back(t);
            if (envelope_negligible(t)) break;
        }
    } else {
        for (double t = 2.0; t < T; t += 2.0) {
            edges.push_back(t);
            if (envelope_negligible(t)) break;
        }
    }
    if (!envelope_negligible(edges.back()) && edges.back() < T) edges.push_back(T);
    quad::Options opt;
    opt.abs_tol = 1e-16;
    opt.rel_tol = 1e-13;
    opt.max_panels = 200;
    opt.throw_on_failure = false;
    double total = 0.0, comp = 0.0;  // Kahan accumulation across panels
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double part = quad::integrate(f, edges[i], edges[i + 1], opt).value;
        const double y = part - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

}  // namespace

double parabolic_cylinder(double nu, double z) {
    if (nu <= -1.0) throw DomainError("parabolic_cylinder: requires nu > -1");
    if (z >= 6.0) {
        double v;
        if (parabolic_cylinder_asymptotic(nu, z, 1e-12, &v)) return v;
    }
    const double integral = parabolic_cylinder_integral(nu, z);
    return std::sqrt(2.0 / M_PI) * std::exp(0.25 * z * z) * integral;
}

namespace {

void require_alpha_above_two(double alpha, const char* who) {
    if (alpha <= 2.0) throw DomainError(std::string(who) + ": requires alpha > 2");
}

}  // namespace

double fourier_kernel_even_fn(double alpha, double x, const ParityClass& parity) {
    require_alpha_above_two(alpha, "fourier_kernel_even_fn");
    switch (parity.tag) {
        case Parity::OddInteger: {
            const int a = parity.integer_value();
            const double sign = ((a - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            return 2.0 * kSqrt2 * sign * dawson_scaled_derivative(a, x);
        }
        case Parity::EvenInteger: {
            const int a = parity.integer_value();
            const double sign = (a / 2) % 2 == 0 ? 1.0 : -1.0;
            return sign * kSqrt2Pi * std::exp(-0.5 * x * x) * hermite(a, x);
        }
        case Parity::NonInteger:
        default: {
            const double sec = 1.0 / std::cos(0.5 * alpha * M_PI);
            return kSqrtPiOver2 * sec * std::exp(-0.25 * x * x) *
                   (parabolic_cylinder(alpha, x) + parabolic_cylinder(alpha, -x));
        }
    }
}

std::complex<double> fourier_kernel_odd_fn(double alpha, double x, const ParityClass& parity) {
    require_alpha_above_two(alpha, "fourier_kernel_odd_fn");
    // One convention throughout: the value of the defining integral
    // \int e^{-i theta x - theta^2/2} sgn(theta) |theta|^alpha dtheta
    //   = -2i \int_0^inf sin(theta x) theta^alpha e^{-theta^2/2} dtheta.
    switch (parity.tag) {
        case Parity::EvenInteger: {
            const int a = parity.integer_value();
            return -2.0 * kSqrt2 * unit_imag_power(a + 1) * dawson_scaled_derivative(a, x);
        }
        case Parity::OddInteger: {
            const int a = parity.integer_value();
            return -kSqrt2Pi * std::exp(-0.5 * x * x) * unit_imag_power(a) * hermite(a, x);
        }
        case Parity::NonInteger:
        default: {
            const double csc = 1.0 / std::sin(0.5 * alpha * M_PI);
            const double real_part = -kSqrtPiOver2 * csc * std::exp(-0.25 * x * x) *
                                     (parabolic_cylinder(alpha, x) - parabolic_cylinder(alpha, -x));
            return {0.0, real_part};
        }
    }
}

}  // namespace sf
}  // namespace heavytail
