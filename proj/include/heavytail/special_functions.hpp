#ifndef HEAVYTAIL_SPECIAL_FUNCTIONS_HPP
#define HEAVYTAIL_SPECIAL_FUNCTIONS_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace heavytail {

/// Classification of a tail index by its parity, using a fixed integer
/// tolerance. The correction formulas change form across these cases, so the
/// split happens once here and downstream code trusts it.
enum class Parity { EvenInteger, OddInteger, NonInteger };

struct ParityClass {
    Parity tag;
    double value;
    bool is_integer() const { return tag != Parity::NonInteger; }
    int integer_value() const;  // valid only when is_integer()
};

inline constexpr double kIntegerTolerance = 1e-9;

ParityClass classify_index(double alpha);

namespace sf {

/// Probabilists' Hermite polynomial H_k(x):
///   H_0 = 1, H_1 = x, H_{k+1} = x H_k - k H_{k-1}.
double hermite(int k, double x);

/// Dawson's integral D(z) = e^{-z^2} \int_0^z e^{t^2} dt.
/// Relative accuracy ~1e-13 for |z| <= 30 (series / cancellation-free
/// confluent series / asymptotic expansion, by regime).
double dawson(double z);

/// Exact polynomials for the derivatives of E(x) = D(x/sqrt(2)):
///   E^(n)(x) = p_n(x) E(x) + q_n(x)/sqrt(2),
/// generated by E' = 1/sqrt(2) - x E and E^(m+1) = -(x E^(m) + m E^(m-1)).
/// Coefficients are exact 64-bit integers (they stay well within range for
/// n <= 24; higher orders are rejected).
struct DawsonDerivativePolys {
    int order;
    std::vector<std::int64_t> p_coeffs;  // p_n, ascending powers
    std::vector<std::int64_t> q_coeffs;  // q_n * sqrt(2), ascending powers
};

const DawsonDerivativePolys& dawson_derivative_polys(int n);

/// d^n/dx^n D(x/sqrt(2)), evaluated through the exact derivative polynomials.
double dawson_scaled_derivative(int n, double x);

/// Classical parabolic cylinder function for nu > -1:
///   D_nu(z) = sqrt(2/pi) e^{z^2/4} \int_0^inf e^{-t^2/2} t^nu cos(zt - nu pi/2) dt.
/// Quadrature between consecutive zeros of the cosine; certified asymptotic
/// series for large positive z where the oscillatory integral cancels below
/// double precision.
double parabolic_cylinder(double nu, double z);

/// Gaussian-weighted Fourier kernel of the even weight |theta|^alpha:
///   \int e^{-i theta x - theta^2/2} |theta|^alpha dtheta
/// by the closed forms (alpha > 2):
///   odd alpha    : 2 sqrt(2) (-1)^{(alpha-1)/2} d^alpha/dx^alpha D(x/sqrt 2)
///   even alpha   : (-1)^{alpha/2} sqrt(2 pi) e^{-x^2/2} H_alpha(x)
///   non-integer  : sqrt(pi/2) sec(alpha pi/2) e^{-x^2/4} [D_a(x) + D_a(-x)]
double fourier_kernel_even_fn(double alpha, double x, const ParityClass& parity);

/// Sign-weighted companion kernel:
///   \int e^{-i theta x - theta^2/2} sgn(theta) |theta|^alpha dtheta
///     = -2i \int_0^inf sin(theta x) theta^alpha e^{-theta^2/2} dtheta
/// by the closed forms (alpha > 2; purely imaginary):
///   even alpha   : -2 sqrt(2) i^{alpha+1} d^alpha/dx^alpha D(x/sqrt 2)
///   odd alpha    : -sqrt(2 pi) e^{-x^2/2} i^alpha H_alpha(x)
///   non-integer  : -i sqrt(pi/2) csc(alpha pi/2) e^{-x^2/4} [D_a(x) - D_a(-x)]
std::complex<double> fourier_kernel_odd_fn(double alpha, double x, const ParityClass& parity);

/// i^k for integer k.
std::complex<double> unit_imag_power(long k);

/// Standard normal density.
double std_normal_pdf(double x);

/// Complementary standard normal distribution function.
double std_normal_sf(double x);

}  // namespace sf
}  // namespace heavytail

#endif
