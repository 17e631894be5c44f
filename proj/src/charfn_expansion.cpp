#include "heavytail/charfn_expansion.hpp"

#include <cmath>
#include <mutex>

#include "heavytail/errors.hpp"

namespace heavytail::charfn {

namespace {

std::int64_t factorial(int n) {
    std::int64_t v = 1;
    for (int i = 2; i <= n; ++i) v *= i;
    return v;
}

void enumerate_parts(int k, int remaining, int min_part, std::vector<int>& current,
                     std::vector<XiTerm>& out) {
    if (k == 0) {
        if (remaining != 0) return;
        // ordering count k!/prod(mult!) and weight 1/prod(j!)
        const int n = static_cast<int>(current.size());
        Rational orderings(factorial(n));
        Rational weight(1);
        int run = 1;
        for (int i = 0; i < n; ++i) {
            weight = weight / Rational(factorial(current[i]));
            if (i + 1 < n && current[i + 1] == current[i]) {
                ++run;
            } else {
                orderings = orderings / Rational(factorial(run));
                run = 1;
            }
        }
        out.push_back({current, orderings * weight});
        return;
    }
    for (int j = min_part; (j - 2) * k <= remaining; ++j) {
        if (j - 2 > remaining) break;
        current.push_back(j);
        enumerate_parts(k - 1, remaining - (j - 2), j, current, out);
        current.pop_back();
    }
}

}  // namespace

const std::vector<XiTerm>& xi_kq_terms(int k, int q) {
    if (k < 1 || q < 3 || k > q) throw DomainError("xi_kq_terms: requires 3 <= q and 1 <= k <= q");
    static std::map<std::pair<int, int>, std::vector<XiTerm>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({k, q});
    if (it != cache.end()) return it->second;
    std::vector<XiTerm> terms;
    std::vector<int> current;
    enumerate_parts(k, q - 2, 3, current, terms);
    return cache.emplace(std::make_pair(k, q), std::move(terms)).first->second;
}

XiMonomial xi_kq(int k, int q, const density::CumulantSet& cumulants) {
    const auto& terms = xi_kq_terms(k, q);
    XiMonomial mono;
    mono.degree = q + 2 * k - 2;
    if (terms.empty()) return mono;
    double coeff = 0.0;
    for (const auto& term : terms) {
        double prod = term.coeff.to_double();
        for (int j : term.parts) {
            if (j >= static_cast<int>(cumulants.kappa.size()))
                throw InsufficientCumulants("xi_kq: cumulant of order " + std::to_string(j) +
                                            " not available");
            prod *= cumulants.kappa[j];
        }
        coeff += prod;
    }
    mono.coeff = coeff;
    mono.empty = false;
    return mono;
}

std::complex<double> CharFnExpansion::chi(double theta) const {
    std::complex<double> acc(0.0, 0.0);
    const std::complex<double> it(0.0, theta);
    for (const auto& [j, c] : chi_coeffs_) acc += c * std::pow(it, j);
    return acc;
}

std::complex<double> CharFnExpansion::xi(double theta) const {
    if (theta == 0.0) return {0.0, 0.0};
    const double at = std::fabs(theta);
    const double pow_t = std::pow(at, alpha_);
    const double inv = 1.0 / at;
    const double zeta_arg = std::max(inv, 1.0);
    const double sgn = theta > 0.0 ? 1.0 : -1.0;
    switch (xi_case_) {
        case XiCase::SymmetricNonEven:
            return {xi_coefficient_ * pow_t * sv_r_(inv), 0.0};
        case XiCase::SymmetricEven:
            return {xi_coefficient_ * pow_t * sv_r_.zeta(zeta_arg), 0.0};
        case XiCase::TwoSidedEven: {
            // (2 (-1)^{a/2} / Gamma(a+1)) |t|^a [zeta_{L_r} + i sgn(t) (pi/2) L_s]
            const double re = xi_coefficient_ * pow_t * sv_r_.zeta(zeta_arg);
            const double im = xi_coefficient_ * pow_t * sgn * 0.5 * M_PI * sv_s_plus_(inv);
            return {re, im};
        }
        case XiCase::TwoSidedOdd: {
            // (2 i^a / Gamma(a+1)) |t|^a [sgn(t) zeta_{L_s} + i (pi/2) L_r]
            //   = c |t|^a [ i sgn(t) zeta_{L_s} - (pi/2) L_r ],  c = 2(-1)^{(a-1)/2}/Gamma(a+1)
            const double re = -xi_coefficient_ * pow_t * 0.5 * M_PI * sv_r_(inv);
            const double im = xi_coefficient_ * pow_t * sgn * sv_s_plus_.zeta(zeta_arg);
            return {re, im};
        }
        case XiCase::TwoSidedNonInteger:
        default: {
            // -2pi/(Gamma(a+1) sin(a pi)) |t|^a [cos(a pi/2) L_r - i sgn(t) sin(a pi/2) L_s]
            const double re = xi_coefficient_ * pow_t * std::cos(0.5 * alpha_ * M_PI) * sv_r_(inv);
            const double im =
                -xi_coefficient_ * pow_t * sgn * std::sin(0.5 * alpha_ * M_PI) * sv_s_plus_(inv);
            return {re, im};
        }
    }
}

std::complex<double> CharFnExpansion::psi(double theta) const { return chi(theta) + xi(theta); }

CharFnExpansion build_expansion(const density::DensitySpec& spec) {
    CharFnExpansion exp;
    const auto& cs = spec.cumulants();
    for (int j = 2; j <= cs.max_order; ++j)
        if (cs.kappa[j] != 0.0 || j == 2)
            exp.chi_coeffs_[j] = cs.kappa[j] / static_cast<double>(factorial(j));
    const double alpha = spec.min_index();
    exp.alpha_ = alpha;
    const ParityClass parity = spec.min_index_parity();
    const double gamma_ap1 = std::tgamma(alpha + 1.0);
    exp.symmetric_ = spec.is_symmetric();
    if (spec.is_symmetric()) {
        exp.sv_r_ = spec.tail_plus();
        if (parity.tag == Parity::EvenInteger) {
            exp.xi_case_ = XiCase::SymmetricEven;
            const double sign = (parity.integer_value() / 2) % 2 == 0 ? 1.0 : -1.0;
            exp.xi_coefficient_ = 2.0 * sign / gamma_ap1;
        } else {
            exp.xi_case_ = XiCase::SymmetricNonEven;
            exp.xi_coefficient_ = -M_PI / (gamma_ap1 * std::sin(0.5 * alpha * M_PI));
        }
        return exp;
    }
    // two-sided: exact canonical even/odd slowly varying factors
    const double m = 1.0 + alpha;
    auto pdf_plus = [spec](double u) { return spec.pdf(u); };
    auto pdf_minus = [spec](double u) { return spec.pdf(-u); };
    auto L_r = [pdf_plus, pdf_minus, m](double u) {
        return 0.5 * (pdf_plus(u) + pdf_minus(u)) * (1.0 + std::pow(u, m));
    };
    auto L_s = [pdf_plus, pdf_minus, m](double u) {
        return 0.5 * (pdf_plus(u) - pdf_minus(u)) * (1.0 + std::pow(u, m));
    };
    auto numeric_deriv = [](std::function<double(double)> g) {
        return [g](double u) {
            const double h = 1e-4 * std::max(1.0, u);
            return (g(u + h) - g(u - h)) / (2.0 * h);
        };
    };
    exp.sv_r_ = density::SlowlyVarying::custom("L_r", L_r, numeric_deriv(L_r));
    exp.sv_s_plus_ = density::SlowlyVarying::custom("L_s", L_s, numeric_deriv(L_s));
    exp.has_s_component_ = true;
    switch (parity.tag) {
        case Parity::EvenInteger: {
            exp.xi_case_ = XiCase::TwoSidedEven;
            const double sign = (parity.integer_value() / 2) % 2 == 0 ? 1.0 : -1.0;
            exp.xi_coefficient_ = 2.0 * sign / gamma_ap1;
            break;
        }
        case Parity::OddInteger: {
            exp.xi_case_ = XiCase::TwoSidedOdd;
            const double sign = ((parity.integer_value() - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            exp.xi_coefficient_ = 2.0 * sign / gamma_ap1;
            break;
        }
        case Parity::NonInteger:
        default:
            exp.xi_case_ = XiCase::TwoSidedNonInteger;
            exp.xi_coefficient_ = -2.0 * M_PI / (gamma_ap1 * std::sin(alpha * M_PI));
            break;
    }
    return exp;
}

}  // namespace heavytail::charfn
