#include <doctest.h>

#include <cmath>
#include <complex>

#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"
#include "heavytail/special_functions.hpp"

using namespace heavytail;
using namespace heavytail::sf;

namespace {

// Independent oracle: D(z) = int_0^z e^{t^2 - z^2} dt by adaptive quadrature.
double dawson_quadrature(double z) {
    if (z == 0.0) return 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-13;
    return quad::integrate_value([z](double t) { return std::exp(t * t - z * z); }, 0.0,
                                 std::fabs(z), opt) *
           (z < 0 ? -1.0 : 1.0);
}

// Independent oracle for the even kernel: 2 int_0^inf cos(theta x) theta^a e^{-theta^2/2}.
double even_kernel_quadrature(double alpha, double x) {
    quad::Options opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-11;
    double acc = 0.0;
    for (double a = 0.0; a < 14.0; a += 0.5)
        acc += quad::integrate_value(
            [&](double t) { return std::cos(t * x) * std::pow(t, alpha) * std::exp(-0.5 * t * t); },
            a, a + 0.5, opt);
    return 2.0 * acc;
}

// Defining integral \int e^{-i t x - t^2/2} sgn(t)|t|^a dt
//   = -2i \int_0^inf sin(t x) t^a e^{-t^2/2} dt.
std::complex<double> odd_kernel_quadrature(double alpha, double x) {
    quad::Options opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-11;
    double acc = 0.0;
    for (double a = 0.0; a < 14.0; a += 0.5)
        acc += quad::integrate_value(
            [&](double t) { return std::sin(t * x) * std::pow(t, alpha) * std::exp(-0.5 * t * t); },
            a, a + 0.5, opt);
    return {0.0, -2.0 * acc};
}

// Parabolic cylinder by the defining integral, forced through quadrature.
double pc_quadrature(double nu, double z) {
    quad::Options opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-12;
    double acc = 0.0;
    for (double a = 0.0; a < 16.0; a += 0.25)
        acc += quad::integrate_value(
            [&](double t) {
                return std::exp(-0.5 * t * t) * std::pow(t, nu) * std::cos(z * t - 0.5 * nu * M_PI);
            },
            a, a + 0.25, opt);
    return std::sqrt(2.0 / M_PI) * std::exp(0.25 * z * z) * acc;
}

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

}  // namespace

TEST_CASE("parity classification") {
    CHECK(classify_index(3.0).tag == Parity::OddInteger);
    CHECK(classify_index(4.0).tag == Parity::EvenInteger);
    CHECK(classify_index(3.5).tag == Parity::NonInteger);
    CHECK(classify_index(4.0 + 0.5e-9).tag == Parity::EvenInteger);
    CHECK(classify_index(4.0 + 1.0e-8).tag == Parity::NonInteger);
}

TEST_CASE("hermite polynomial values") {
    CHECK(hermite(3, 2.0) == doctest::Approx(2.0));   // x^3 - 3x at 2
    CHECK(hermite(0, 5.0) == doctest::Approx(1.0));
    CHECK(hermite(6, 0.0) == doctest::Approx(-15.0)); // x^6 - 15x^4 + 45x^2 - 15
    CHECK(hermite(4, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("hermite derivative identity H_k' = k H_{k-1}") {
    const double h = 1e-5;
    for (int k = 1; k <= 10; ++k) {
        for (double x = -4.0; x <= 4.0; x += 0.5) {
            const double fd = (hermite(k, x + h) - hermite(k, x - h)) / (2 * h);
            const double want = k * hermite(k - 1, x);
            CHECK(std::fabs(fd - want) <= 1e-6 * std::max(1.0, std::fabs(want)));
        }
    }
}

TEST_CASE("dawson basic values") {
    CHECK(dawson(0.0) == 0.0);
    // frozen from the quadrature oracle
    CHECK(dawson(1.0) == doctest::Approx(0.5380795069127684).epsilon(1e-12));
    CHECK(dawson(1.0) == doctest::Approx(dawson_quadrature(1.0)).epsilon(1e-12));
    for (double z : {0.3, 0.9241, 2.0, 3.7, 5.5, 6.5, 7.5, 9.0})
        CHECK(rel_err(dawson(z), dawson_quadrature(z)) < 1e-12);
}

TEST_CASE("dawson odd symmetry") {
    for (double z : {0.1, 0.7, 1.5, 3.0, 8.0, 20.0}) CHECK(dawson(-z) == -dawson(z));
}

TEST_CASE("dawson ODE D' = 1 - 2 z D") {
    const double h = 1e-4;
    for (double z = -5.0; z <= 5.0; z += 0.25) {
        const double fd = (dawson(z + h) - dawson(z - h)) / (2 * h);
        const double want = 1.0 - 2.0 * z * dawson(z);
        CHECK(std::fabs(fd - want) <= 1e-8 * std::max(1.0, std::fabs(want)) + 1e-8);
    }
}

TEST_CASE("dawson large-argument regime") {
    // asymptotic leading behavior 1/(2z)
    for (double z : {10.0, 20.0, 30.0}) {
        const double v = dawson(z);
        CHECK(v * 2.0 * z > 1.0);
        CHECK(v * 2.0 * z < 1.0 + 2.0 / (z * z));
    }
    // both sides of each regime boundary stay on the oracle
    for (double z : {0.9999999, 1.0000001, 6.9999999, 7.0000001})
        CHECK(rel_err(dawson(z), dawson_quadrature(z)) < 1e-12);
}

TEST_CASE("dawson derivative polynomials are exact") {
    const auto& p3 = dawson_derivative_polys(3);
    CHECK(p3.p_coeffs == std::vector<std::int64_t>{0, 3, 0, -1});
    CHECK(p3.q_coeffs == std::vector<std::int64_t>{-2, 0, 1});
    const auto& p4 = dawson_derivative_polys(4);
    CHECK(p4.p_coeffs == std::vector<std::int64_t>{3, 0, -6, 0, 1});
    CHECK(p4.q_coeffs == std::vector<std::int64_t>{0, 5, 0, -1});
    for (int n = 0; n <= 20; ++n) {
        const auto& poly = dawson_derivative_polys(n);
        CHECK(static_cast<int>(poly.p_coeffs.size()) == n + 1);
        CHECK(poly.p_coeffs.back() == (n % 2 == 0 ? 1 : -1));
    }
    CHECK_THROWS_AS(dawson_derivative_polys(25), DomainError);
}

TEST_CASE("dawson scaled derivative values") {
    CHECK(dawson_scaled_derivative(0, 0.0) == 0.0);
    CHECK(dawson_scaled_derivative(1, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    // recurrence consistency against central differences of the previous order
    const double h = 1e-3;
    for (int n = 1; n <= 6; ++n) {
        for (double x : {0.0, 0.5, 1.5, 3.0}) {
            double fd = (dawson_scaled_derivative(n - 1, x + h) -
                         dawson_scaled_derivative(n - 1, x - h)) /
                        (2 * h);
            // 6th-order correction via Richardson on h and h/2
            double fd2 = (dawson_scaled_derivative(n - 1, x + h / 2) -
                          dawson_scaled_derivative(n - 1, x - h / 2)) /
                         h;
            const double extrap = (4.0 * fd2 - fd) / 3.0;
            const double want = dawson_scaled_derivative(n, x);
            CHECK(std::fabs(extrap - want) <= 1e-6 * std::max(1.0, std::fabs(want)));
        }
    }
}

TEST_CASE("parabolic cylinder against closed forms") {
    for (double z : {0.0, 1.0, 2.0})
        CHECK(rel_err(parabolic_cylinder(0.0, z), std::exp(-0.25 * z * z)) < 1e-11);
    CHECK(std::fabs(parabolic_cylinder(1.0, 0.0)) < 1e-13);
    // integer order: D_n(z) = He_n(z) e^{-z^2/4}. The oscillatory integral
    // cancels down to ~1e-17 absolute, so deep in the left tail (where the
    // value itself is ~e^{-z^2/4}-small) the achievable error is the
    // cancellation floor 1e-16 * e^{z^2/4}.
    for (int nn : {1, 2, 3, 5}) {
        for (double z : {-8.0, -3.0, -1.0, 0.5, 1.0, 3.0, 5.0}) {
            const double want = hermite(nn, z) * std::exp(-0.25 * z * z);
            if (std::fabs(want) < 1e-14) continue;
            const double err = std::fabs(parabolic_cylinder(nn, z) - want);
            const double floor = 1e-15 * std::exp(0.25 * z * z);
            CHECK(err <= std::max(1e-9 * std::fabs(want), floor));
        }
    }
    CHECK_THROWS_AS(parabolic_cylinder(-1.5, 0.0), DomainError);
}

TEST_CASE("parabolic cylinder quadrature vs asymptotic consistency") {
    for (double nu : {0.5, 2.5, 4.7}) {
        for (double z : {-6.0, -2.0, 0.7, 2.0, 4.0}) {
            CHECK(rel_err(parabolic_cylinder(nu, z), pc_quadrature(nu, z)) < 1e-9);
        }
    }
}

TEST_CASE("parabolic cylinder large-z behavior") {
    const double nu = 2.5, z = 8.0;
    const double ratio = parabolic_cylinder(nu, z) / (std::pow(z, nu) * std::exp(-0.25 * z * z));
    CHECK(std::fabs(ratio - 1.0) < 0.05);
}

TEST_CASE("even kernel closed forms match quadrature") {
    for (double alpha : {2.5, 3.0, 4.0, 4.5, 5.0}) {
        const ParityClass parity = classify_index(alpha);
        for (double x : {0.0, 0.7, 1.5, 3.0}) {
            const double want = even_kernel_quadrature(alpha, x);
            const double got = fourier_kernel_even_fn(alpha, x, parity);
            CHECK(rel_err(got, want) < 1e-6);
        }
    }
}

TEST_CASE("odd kernel closed forms match quadrature") {
    for (double alpha : {2.5, 3.0, 4.0, 4.5, 5.0}) {
        const ParityClass parity = classify_index(alpha);
        for (double x : {0.3, 0.7, 1.5, 3.0}) {
            const auto want = odd_kernel_quadrature(alpha, x);
            const auto got = fourier_kernel_odd_fn(alpha, x, parity);
            CHECK(std::fabs(got.real()) < 1e-12);
            CHECK(std::fabs(got.imag() - want.imag()) <=
                  1e-6 * std::max(1.0, std::fabs(want.imag())));
        }
    }
}

TEST_CASE("odd kernel vanishes at the origin for non-integer alpha") {
    for (double alpha : {2.5, 3.7, 4.5}) {
        const auto v = fourier_kernel_odd_fn(alpha, 0.0, classify_index(alpha));
        CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("kernel parity in x") {
    for (double alpha : {2.5, 3.0, 4.0}) {
        const ParityClass parity = classify_index(alpha);
        for (double x : {0.4, 1.1, 2.6}) {
            CHECK(fourier_kernel_even_fn(alpha, x, parity) ==
                  doctest::Approx(fourier_kernel_even_fn(alpha, -x, parity)).epsilon(1e-13));
            const auto plus = fourier_kernel_odd_fn(alpha, x, parity);
            const auto minus = fourier_kernel_odd_fn(alpha, -x, parity);
            CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-13));
        }
    }
}

TEST_CASE("even-alpha kernel equals the Gaussian derivative identity") {
    // (-1)^{a/2} sqrt(2 pi) e^{-x^2/2} H_a(x) with H_a eta = (-1)^a eta^(a)
    const double x = 1.3;
    const int a = 4;
    const double kernel = fourier_kernel_even_fn(a, x, classify_index(a));
    const double eta = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    CHECK(kernel == doctest::Approx(2.0 * M_PI * eta * hermite(a, x)).epsilon(1e-12));
}

TEST_CASE("kernels reject alpha <= 2") {
    CHECK_THROWS_AS(fourier_kernel_even_fn(2.0, 0.0, classify_index(2.0)), DomainError);
    CHECK_THROWS_AS(fourier_kernel_odd_fn(1.5, 0.0, classify_index(1.5)), DomainError);
}

TEST_CASE("kernel dispatch near integer indices") {
    // within the integer tolerance the classified branch fires and the value
    // stays continuous in alpha; just outside, the non-integer branch holds
    // full accuracy (the sec/csc growth is compensated by the cancellation of
    // the parabolic cylinder pair)
    const double x = 1.5;
    const double near = 3.0 + 5e-10;
    const ParityClass p_near = classify_index(near);
    CHECK(p_near.tag == Parity::OddInteger);
    CHECK(fourier_kernel_even_fn(near, x, p_near) ==
          fourier_kernel_even_fn(3.0, x, classify_index(3.0)));
    CHECK(std::fabs(fourier_kernel_even_fn(near, x, p_near) - even_kernel_quadrature(near, x)) <
          1e-8 * std::fabs(even_kernel_quadrature(near, x)));
    const double outside = 3.001;
    const ParityClass p_out = classify_index(outside);
    CHECK(p_out.tag == Parity::NonInteger);
    CHECK(std::fabs(fourier_kernel_even_fn(outside, x, p_out) -
                    even_kernel_quadrature(outside, x)) <
          1e-9 * std::fabs(even_kernel_quadrature(outside, x)));
}
