#ifndef HEAVYTAIL_EDGEWORTH_HPP
#define HEAVYTAIL_EDGEWORTH_HPP

#include <string>
#include <vector>

#include "heavytail/density_model.hpp"

namespace heavytail::edgeworth {

/// Ordinary Edgeworth polynomial G_j(x): the Hermite-weighted inversion of
/// sum_k xi_{k,j}/k!, i.e. G_j(x) = sum_k xi_{k,j} H_{j+2k-2}(x) / k!.
/// In particular G_3 = kappa_3 H_3/3! and G_4 = kappa_3^2 H_6/72 + kappa_4 H_4/4!.
double edgeworth_polynomial(int j, const density::CumulantSet& cumulants, double x);

/// Coefficient G_alpha(x) of the non-analytic correction in the symmetric
/// case (alpha > 2):
///   odd alpha    : -(sqrt 2 / Gamma(a+1)) d^a/dx^a D(x/sqrt 2)
///   non-integer  : -sqrt(pi/2) e^{-x^2/4} [D_a(x) + D_a(-x)] / (Gamma(a+1) sin(a pi))
///   even alpha   : sqrt(2/pi) e^{-x^2/2} H_a(x) / Gamma(a+1)
double g_alpha(double alpha, const ParityClass& parity, double x);

struct CorrectionInfo {
    std::string case_tag;
    bool sv_arg_clamped = false;
};

/// The non-analytic correction F(x, n) for x > 0, dispatching on the tail
/// configuration (symmetric / heavier right / heavier left) and the parity of
/// the relevant index. Negative x is handled one level up by the tail-swap
/// mirror rule, never here.
double correction_F(const density::DensitySpec& spec, double x, int n,
                    CorrectionInfo* info = nullptr);

/// Per-x breakdown of the corrected density approximation.
struct ExpansionResult {
    double x = 0.0;
    int n = 0;
    double gaussian = 0.0;  // eta(x)
    std::vector<std::pair<int, double>> edgeworth_terms;  // (j, G_j(x)/n^{j/2-1})
    double correction = 0.0;  // F(x, n)
    double total = 0.0;       // gaussian*(1 + sum terms) + correction
    std::string case_tag;
    bool sv_arg_clamped = false;
};

/// Corrected density approximation of S_n/sqrt(n) at x. For x < 0 the
/// evaluation runs on the tail-swapped spec at -x. `max_order` caps the
/// ordinary Edgeworth orders included (-1 = all available; 0 = none).
ExpansionResult corrected_density(const density::DensitySpec& spec, double x, int n,
                                  int max_order = -1);

/// Heavy-tail density equivalent L(sqrt(n) x)/(x^{1+alpha} n^{alpha/2-1});
/// defined for non-even tail index only.
double tail_equivalent(const density::DensitySpec& spec, double x, int n);

/// Gaussian-plus-single-big-jump tail approximation
///   Phi_bar(x_raw/sqrt n) + n P(X > x_raw),
/// with the increment tail probability evaluated by quadrature.
double rozovskii_tail(const density::DensitySpec& spec, double x_raw, int n);

/// Validity boundary sqrt((alpha-2) log n) of the refined moderate-deviation
/// expansion.
double moderate_region_bound(double alpha, int n);

}  // namespace heavytail::edgeworth

#endif
