#ifndef HEAVYTAIL_SLOWLY_VARYING_HPP
#define HEAVYTAIL_SLOWLY_VARYING_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace heavytail::density {

/// A slowly varying function L together with its derivative and the running
/// integral zeta_L(x) = \int_1^x L(u)/u du.
///
/// Bundled kinds: a positive constant (zeta = c log x, exact), integer powers
/// of the logarithm (zeta = log^{p+1}(x)/(p+1), exact), and user-supplied
/// closures. For custom L without an explicit zeta closure the integral is
/// precomputed on a geometric grid at construction, so evaluation is pure and
/// lock-free afterwards.
class SlowlyVarying {
public:
    enum class Kind { Constant, LogPower, Custom };

    static SlowlyVarying constant(double c);
    static SlowlyVarying log_power(int p);
    static SlowlyVarying custom(std::string name,
                                std::function<double(double)> eval,
                                std::function<double(double)> deriv,
                                std::function<double(double)> zeta = {});

    double operator()(double x) const;
    double deriv(double x) const;

    /// zeta_L(x) for x >= 1; throws DomainError below 1.
    double zeta(double x) const;

    Kind kind() const;
    const std::string& name() const;
    /// Constant value when kind() == Constant.
    double constant_value() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit SlowlyVarying(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// Bounded smooth interpolation between two positive levels:
///   L(u) = c0 + (c_inf - c0) u^2/(1 + u^2).
/// L(0) = c0 with L'(0) = 0, so a two-sided density pairing this with a
/// constant level c0 on the other side stays continuously differentiable at
/// the origin while the tails differ.
SlowlyVarying make_smooth_ramp(double c0, double c_inf);

/// Test utility for the Karamata-type bound: checks
///   L(x/theta)/L(1/theta) <= C x^{rho1}   (x > 1)
///   L(x/theta)/L(1/theta) <= C x^{-rho2}  (x <= 1)
/// with C = 10, for every x in xs. Returns false on any violation.
bool karamata_bound_check(const SlowlyVarying& L, double rho1, double rho2, double theta,
                          const std::vector<double>& xs);

}  // namespace heavytail::density

#endif
