#ifndef HEAVYTAIL_QUADRATURE_HPP
#define HEAVYTAIL_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace heavytail::quad {

using Integrand = std::function<double(double)>;

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_panels = 4000;
    bool throw_on_failure = true;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration over a finite interval.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Convenience wrapper returning the value only.
double integrate_value(const Integrand& f, double a, double b, const Options& opt = {});

/// Single non-adaptive K15 application on [a, b]; error is |K15-G7| based.
Result kronrod_panel(const Integrand& f, double a, double b);

/// Integrates f over [a, inf) through the substitution x = a*exp(v).
/// Intended for integrands with power-law decay; `decay_bound(x)` must give a
/// decreasing envelope of |integral of f over [x, inf)| used as stop rule.
Result integrate_semi_infinite_log(const Integrand& f, double a,
                                   const std::function<double(double)>& decay_bound,
                                   const Options& opt = {});

/// Sum of integrals of f over consecutive intervals cut at `edges`, adaptive
/// per panel. Stops early once `tail_bound(edge)` falls below the tolerance.
/// Used for oscillatory integrands split at the zeros of the oscillation.
Result integrate_panels(const Integrand& f, const std::vector<double>& edges,
                        const Options& opt = {});

/// Nodes/weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int n);
};

}  // namespace heavytail::quad

#endif
