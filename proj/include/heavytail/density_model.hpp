#ifndef HEAVYTAIL_DENSITY_MODEL_HPP
#define HEAVYTAIL_DENSITY_MODEL_HPP

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "heavytail/slowly_varying.hpp"
#include "heavytail/special_functions.hpp"

namespace heavytail::density {

/// Moments and cumulants up to the largest finite integer order K
/// (the largest integer strictly below the minimal tail index).
struct CumulantSet {
    int max_order = 0;            // K
    std::vector<double> moments;  // moments[j] = m_j, j = 0..K
    std::vector<double> kappa;    // kappa[j] = kappa_j, j = 0..K
};

/// kappa_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) kappa_k m_{n-k}
std::vector<double> moments_to_cumulants(const std::vector<double>& m);
/// Exact inverse of the recursion above.
std::vector<double> cumulants_to_moments(const std::vector<double>& kappa);

/// A heavy-tailed density standardized to unit mass, zero mean and unit
/// variance. Three admissible shapes:
///   SymmetricPareto : f(x) = a / (b + |x|^{1+alpha})
///   SymmetricRV     : f(x) proportional to L(|x|) / (1 + |x|^{1+alpha}),
///                     rescaled to unit variance
///   TwoSided        : right tail index beta with L_+, left tail index gamma
///                     with L_-, affinely standardized
/// Immutable after construction; cumulants and the canonical tail functions
/// (including their zeta caches) are built eagerly, so all reads are pure.
class DensitySpec {
public:
    enum class Form { SymmetricPareto, SymmetricRV, TwoSided };

    static DensitySpec symmetric_pareto(double alpha);
    static DensitySpec symmetric_rv(double alpha, SlowlyVarying L);
    static DensitySpec two_sided(double beta, double gamma, SlowlyVarying L_plus,
                                 SlowlyVarying L_minus);
    /// Builds a two-sided spec directly from canonical standardized tail
    /// functions, skipping the affine fit (the inputs must already describe a
    /// standardized density). Used to transplant a symmetric spec onto the
    /// two-sided evaluation path.
    static DensitySpec two_sided_prestandardized(double beta, double gamma,
                                                 SlowlyVarying L_plus, SlowlyVarying L_minus);

    double pdf(double x) const;
    Form form() const;
    bool is_symmetric() const;
    double beta() const;       // right tail index
    double gamma() const;      // left tail index
    double min_index() const;  // alpha = min(beta, gamma)
    ParityClass min_index_parity() const;

    /// Canonical slowly varying tail factors of the standardized density:
    /// pdf(x) = tail_plus(x)/(1+x^{1+beta}) for x >= 0 and
    /// pdf(x) = tail_minus(-x)/(1+(-x)^{1+gamma}) for x < 0, exactly.
    const SlowlyVarying& tail_plus() const;
    const SlowlyVarying& tail_minus() const;

    /// Pareto constants; valid only for Form::SymmetricPareto.
    double pareto_a() const;
    double pareto_b() const;

    const CumulantSet& cumulants() const;

    /// The spec of -X (tails swapped). Used by the negative-x mirror rule.
    DensitySpec mirrored() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit DensitySpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// Solves for (a_f, b_f) such that a_f/(b_f + |x|^{1+alpha}) has unit mass and
/// unit variance, through the Mellin integrals
///   \int_0^inf y^{s-1}/(1+y^{1+alpha}) dy = (pi/(1+alpha)) / sin(pi s/(1+alpha)).
std::pair<double, double> standardize_pareto(double alpha);

/// j-th moment of the spec; closed form (Mellin) for the Pareto family,
/// adaptive quadrature otherwise. Throws MomentDiverges for j at or beyond the
/// minimal tail index.
double moment(const DensitySpec& spec, int j);

/// Moments and cumulants for every finite integer order.
CumulantSet cumulants(const DensitySpec& spec);

/// zeta_L(x) = \int_1^x L(u)/u du, x >= 1.
double zeta_eval(const SlowlyVarying& L, double x);

/// Even/odd split f = r + s with the canonical slowly varying factors
/// r(x) = L_r(x)/(1+|x|^{1+alpha}), s(x) = L_s(x)/(1+|x|^{1+alpha}),
/// alpha = min(beta, gamma); L_r is even, L_s is odd (signed).
struct OddEvenDecomposition {
    double alpha = 0.0;
    std::function<double(double)> r;
    std::function<double(double)> s;
    std::function<double(double)> L_r;
    std::function<double(double)> L_s;
    std::vector<double> m_r;  // moments of r, orders 0..floor(alpha-1)
    std::vector<double> m_s;  // moments of s, same orders
};

OddEvenDecomposition decompose(const DensitySpec& spec);

}  // namespace heavytail::density

#endif
