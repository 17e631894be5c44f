#include "heavytail/density_model.hpp"

#include <cmath>

#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"

namespace heavytail::density {

namespace {

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

/// Mellin integral \int_0^inf y^{s-1}/(1+y^{1+alpha}) dy for 0 < s < 1+alpha.
double mellin_integral(double s, double alpha) {
    const double m = 1.0 + alpha;
    return (M_PI / m) / std::sin(M_PI * s / m);
}

int largest_integer_below(double x) {
    // tolerance-aware: integers within kIntegerTolerance count as attained
    const double r = std::round(x);
    if (std::fabs(x - r) < kIntegerTolerance) return static_cast<int>(r) - 1;
    return static_cast<int>(std::floor(x));
}

using Density = std::function<double(double)>;

/// \int_0^inf x^j f(x) dx for a density whose right tail decays like
/// x^{-(1+idx)} times a slowly varying factor. [0,1] adaptive, [1,inf) in
/// log coordinates with a power-law envelope stop rule.
double half_line_moment(const Density& f, int j, double idx, double abs_tol) {
    quad::Options head;
    head.abs_tol = abs_tol * 0.25;
    head.rel_tol = 1e-12;
    auto g = [&](double x) { return std::pow(x, j) * f(x); };
    const double head_part = quad::integrate(j == 0 ? Density(f) : Density(g), 0.0, 1.0, head).value;
    quad::Options tail;
    tail.abs_tol = abs_tol * 0.75;
    tail.rel_tol = 1e-12;
    tail.max_panels = 6000;
    auto bound = [&](double x) {
        // envelope of the remaining integral, slack factor 2 for slow variation
        return 2.0 * f(x) * std::pow(x, j + 1) / (idx - j);
    };
    const double tail_part = quad::integrate_semi_infinite_log(g, 1.0, bound, tail).value;
    return head_part + tail_part;
}

struct BasicStats {
    double mass, mean, variance;
};

BasicStats measure(const Density& f, double beta, double gamma) {
    auto left = [&](double u) { return f(-u); };
    const double m0 = half_line_moment(f, 0, beta, 1e-12) + half_line_moment(left, 0, gamma, 1e-12);
    const double m1 =
        half_line_moment(f, 1, beta, 1e-12) - half_line_moment(left, 1, gamma, 1e-12);
    const double m2 =
        half_line_moment(f, 2, beta, 1e-11) + half_line_moment(left, 2, gamma, 1e-11);
    BasicStats st;
    st.mass = m0;
    st.mean = m1 / m0;
    st.variance = m2 / m0 - st.mean * st.mean;
    return st;
}

void validate_positive(const Density& f, const char* who) {
    for (double x : {0.0, 0.25, -0.25, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0, 100.0, -100.0}) {
        if (!(f(x) > 0.0) || !std::isfinite(f(x)))
            throw DomainError(std::string(who) + ": density is not positive at x=" +
                              std::to_string(x));
    }
}

}  // namespace

std::vector<double> moments_to_cumulants(const std::vector<double>& m) {
    std::vector<double> kappa(m.size(), 0.0);
    if (!m.empty()) kappa[0] = 0.0;
    for (size_t n = 1; n < m.size(); ++n) {
        double acc = m[n];
        for (size_t k = 1; k < n; ++k)
            acc -= binomial(static_cast<int>(n - 1), static_cast<int>(k - 1)) * kappa[k] * m[n - k];
        kappa[n] = acc;
    }
    return kappa;
}

std::vector<double> cumulants_to_moments(const std::vector<double>& kappa) {
    std::vector<double> m(kappa.size(), 0.0);
    if (!m.empty()) m[0] = 1.0;
    for (size_t n = 1; n < kappa.size(); ++n) {
        double acc = kappa[n];
        for (size_t k = 1; k < n; ++k)
            acc += binomial(static_cast<int>(n - 1), static_cast<int>(k - 1)) * kappa[k] * m[n - k];
        m[n] = acc;
    }
    return m;
}

struct DensitySpec::Impl {
    Form form;
    double beta, gamma;
    double a = 0.0, b = 0.0;  // Pareto constants
    Density pdf;
    SlowlyVarying tail_plus = SlowlyVarying::constant(1.0);
    SlowlyVarying tail_minus = SlowlyVarying::constant(1.0);
    bool symmetric = false;
    CumulantSet cumulants;
};

namespace {

CumulantSet build_cumulants(const Density& pdf, double beta, double gamma, bool symmetric) {
    CumulantSet cs;
    const double idx = std::min(beta, gamma);
    cs.max_order = largest_integer_below(idx);
    cs.moments.assign(cs.max_order + 1, 0.0);
    cs.moments[0] = 1.0;
    if (cs.max_order >= 2) cs.moments[2] = 1.0;
    auto left = [&pdf](double u) { return pdf(-u); };
    for (int j = 3; j <= cs.max_order; ++j) {
        if (symmetric && j % 2 == 1) continue;
        const double right = half_line_moment(pdf, j, beta, 1e-10);
        const double leftm = half_line_moment(left, j, gamma, 1e-10);
        cs.moments[j] = symmetric ? 2.0 * right : right + (j % 2 == 0 ? leftm : -leftm);
    }
    cs.kappa = moments_to_cumulants(cs.moments);
    return cs;
}

CumulantSet build_pareto_cumulants(double a, double b, double alpha) {
    CumulantSet cs;
    cs.max_order = largest_integer_below(alpha);
    cs.moments.assign(cs.max_order + 1, 0.0);
    cs.moments[0] = 1.0;
    if (cs.max_order >= 2) cs.moments[2] = 1.0;  // exact by standardization
    for (int j = 4; j <= cs.max_order; j += 2)
        cs.moments[j] =
            2.0 * a * std::pow(b, (j + 1.0) / (1.0 + alpha) - 1.0) * mellin_integral(j + 1.0, alpha);
    cs.kappa = moments_to_cumulants(cs.moments);
    return cs;
}

SlowlyVarying pareto_tail(double a, double b, double alpha) {
    if (std::fabs(b - 1.0) < 1e-12) return SlowlyVarying::constant(a);
    const double m = 1.0 + alpha;
    return SlowlyVarying::custom(
        "pareto-tail",
        [a, b, m](double u) {
            const double um = std::pow(u, m);
            return a * (1.0 + um) / (b + um);
        },
        [a, b, m](double u) {
            const double um = std::pow(u, m);
            const double den = b + um;
            return a * m * std::pow(u, m - 1.0) * (b - 1.0) / (den * den);
        });
}

}  // namespace

std::pair<double, double> standardize_pareto(double alpha) {
    if (!(alpha > 2.0)) throw DomainError("standardize_pareto: variance diverges for alpha <= 2");
    const double i1 = mellin_integral(1.0, alpha);
    const double i3 = mellin_integral(3.0, alpha);
    const double b = std::pow(i1 / i3, 0.5 * (1.0 + alpha));
    const double a = std::pow(b, alpha / (1.0 + alpha)) / (2.0 * i1);
    return {a, b};
}

DensitySpec DensitySpec::symmetric_pareto(double alpha) {
    auto [a, b] = standardize_pareto(alpha);
    auto impl = std::make_shared<Impl>();
    impl->form = Form::SymmetricPareto;
    impl->beta = impl->gamma = alpha;
    impl->a = a;
    impl->b = b;
    const double m = 1.0 + alpha;
    impl->pdf = [a, b, m](double x) { return a / (b + std::pow(std::fabs(x), m)); };
    impl->tail_plus = impl->tail_minus = pareto_tail(a, b, alpha);
    impl->symmetric = true;
    impl->cumulants = build_pareto_cumulants(a, b, alpha);
    return DensitySpec(std::move(impl));
}

DensitySpec DensitySpec::symmetric_rv(double alpha, SlowlyVarying L) {
    if (!(alpha > 2.0)) throw DomainError("symmetric_rv: requires alpha > 2");
    const double m = 1.0 + alpha;
    Density base = [L, m](double x) {
        const double ax = std::fabs(x);
        return L(ax) / (1.0 + std::pow(ax, m));
    };
    validate_positive(base, "symmetric_rv");
    BasicStats st = measure(base, alpha, alpha);
    const double c = 1.0 / st.mass;
    const double s = std::sqrt(st.variance);
    auto impl = std::make_shared<Impl>();
    impl->form = Form::SymmetricRV;
    impl->beta = impl->gamma = alpha;
    impl->pdf = [base, c, s](double x) { return s * c * base(s * x); };
    Density pdf = impl->pdf;
    impl->tail_plus = impl->tail_minus = SlowlyVarying::custom(
        "rv-tail",
        [pdf, m](double u) { return pdf(u) * (1.0 + std::pow(u, m)); },
        [base, L, c, s, m](double u) {
            // d/du [ s c base(su) (1+u^m) ]
            const double su = s * u;
            const double sm = std::pow(su, m);
            const double den = 1.0 + sm;
            const double base_deriv =
                (L.deriv(su) * den - L(su) * m * std::pow(su, m - 1.0)) / (den * den);
            return s * c * (s * base_deriv * (1.0 + std::pow(u, m)) +
                            base(su) * m * std::pow(u, m - 1.0));
        });
    impl->symmetric = true;
    impl->cumulants = build_cumulants(impl->pdf, alpha, alpha, true);
    return DensitySpec(std::move(impl));
}

DensitySpec DensitySpec::two_sided(double beta, double gamma, SlowlyVarying L_plus,
                                   SlowlyVarying L_minus) {
    if (!(beta > 2.0) || !(gamma > 2.0)) throw DomainError("two_sided: requires beta, gamma > 2");
    const double mp = 1.0 + beta;
    const double mm = 1.0 + gamma;
    Density base = [L_plus, L_minus, mp, mm](double x) {
        if (x >= 0.0) return L_plus(x) / (1.0 + std::pow(x, mp));
        return L_minus(-x) / (1.0 + std::pow(-x, mm));
    };
    validate_positive(base, "two_sided");
    // admissibility: an integrable characteristic function needs the glued
    // halves to meet continuously at the origin
    if (std::fabs(L_plus(0.0) - L_minus(0.0)) > 1e-10 * (L_plus(0.0) + L_minus(0.0)))
        throw DomainError("two_sided: density jump at the origin (L_plus(0) != L_minus(0)); "
                          "the characteristic function would not be integrable");
    BasicStats st = measure(base, beta, gamma);
    const double c = 1.0 / st.mass;
    const double mu = st.mean;
    const double s = std::sqrt(st.variance);
    auto impl = std::make_shared<Impl>();
    impl->form = Form::TwoSided;
    impl->beta = beta;
    impl->gamma = gamma;
    impl->pdf = [base, c, mu, s](double x) { return s * c * base(s * x + mu); };
    Density pdf = impl->pdf;
    auto base_deriv = [L_plus, L_minus, mp, mm](double x) {
        if (x >= 0.0) {
            const double xm = std::pow(x, mp);
            const double den = 1.0 + xm;
            return (L_plus.deriv(x) * den - L_plus(x) * mp * std::pow(x, mp - 1.0)) / (den * den);
        }
        const double u = -x;
        const double um = std::pow(u, mm);
        const double den = 1.0 + um;
        return -(L_minus.deriv(u) * den - L_minus(u) * mm * std::pow(u, mm - 1.0)) / (den * den);
    };
    impl->tail_plus = SlowlyVarying::custom(
        "two-sided-right",
        [pdf, mp](double u) { return pdf(u) * (1.0 + std::pow(u, mp)); },
        [base, base_deriv, c, mu, s, mp](double u) {
            const double arg = s * u + mu;
            return s * c *
                   (s * base_deriv(arg) * (1.0 + std::pow(u, mp)) +
                    base(arg) * mp * std::pow(u, mp - 1.0));
        });
    impl->tail_minus = SlowlyVarying::custom(
        "two-sided-left",
        [pdf, mm](double u) { return pdf(-u) * (1.0 + std::pow(u, mm)); },
        [base, base_deriv, c, mu, s, mm](double u) {
            const double arg = -s * u + mu;
            return s * c *
                   (-s * base_deriv(arg) * (1.0 + std::pow(u, mm)) +
                    base(arg) * mm * std::pow(u, mm - 1.0));
        });
    impl->symmetric = false;
    impl->cumulants = build_cumulants(impl->pdf, beta, gamma, false);
    return DensitySpec(std::move(impl));
}

DensitySpec DensitySpec::two_sided_prestandardized(double beta, double gamma,
                                                   SlowlyVarying L_plus, SlowlyVarying L_minus) {
    if (!(beta > 2.0) || !(gamma > 2.0))
        throw DomainError("two_sided_prestandardized: requires beta, gamma > 2");
    const double mp = 1.0 + beta;
    const double mm = 1.0 + gamma;
    auto impl = std::make_shared<Impl>();
    impl->form = Form::TwoSided;
    impl->beta = beta;
    impl->gamma = gamma;
    impl->pdf = [L_plus, L_minus, mp, mm](double x) {
        if (x >= 0.0) return L_plus(x) / (1.0 + std::pow(x, mp));
        return L_minus(-x) / (1.0 + std::pow(-x, mm));
    };
    validate_positive(impl->pdf, "two_sided_prestandardized");
    impl->tail_plus = std::move(L_plus);
    impl->tail_minus = std::move(L_minus);
    impl->symmetric = false;
    impl->cumulants = build_cumulants(impl->pdf, beta, gamma, false);
    return DensitySpec(std::move(impl));
}

double DensitySpec::pdf(double x) const { return impl_->pdf(x); }
DensitySpec::Form DensitySpec::form() const { return impl_->form; }
bool DensitySpec::is_symmetric() const { return impl_->symmetric; }
double DensitySpec::beta() const { return impl_->beta; }
double DensitySpec::gamma() const { return impl_->gamma; }
double DensitySpec::min_index() const { return std::min(impl_->beta, impl_->gamma); }
ParityClass DensitySpec::min_index_parity() const { return classify_index(min_index()); }
const SlowlyVarying& DensitySpec::tail_plus() const { return impl_->tail_plus; }
const SlowlyVarying& DensitySpec::tail_minus() const { return impl_->tail_minus; }

double DensitySpec::pareto_a() const {
    if (impl_->form != Form::SymmetricPareto) throw DomainError("pareto_a: not a Pareto spec");
    return impl_->a;
}

double DensitySpec::pareto_b() const {
    if (impl_->form != Form::SymmetricPareto) throw DomainError("pareto_b: not a Pareto spec");
    return impl_->b;
}

const CumulantSet& DensitySpec::cumulants() const { return impl_->cumulants; }

DensitySpec DensitySpec::mirrored() const {
    if (impl_->symmetric) return *this;
    auto impl = std::make_shared<Impl>(*impl_);
    std::swap(impl->beta, impl->gamma);
    std::swap(impl->tail_plus, impl->tail_minus);
    Density orig = impl_->pdf;
    impl->pdf = [orig](double x) { return orig(-x); };
    // odd moments/cumulants flip sign
    for (size_t j = 1; j < impl->cumulants.moments.size(); j += 2) {
        impl->cumulants.moments[j] = -impl->cumulants.moments[j];
        impl->cumulants.kappa[j] = -impl->cumulants.kappa[j];
    }
    return DensitySpec(std::move(impl));
}

double moment(const DensitySpec& spec, int j) {
    if (j < 0) throw DomainError("moment: negative order");
    if (j >= spec.min_index() - kIntegerTolerance)
        throw MomentDiverges("moment: order " + std::to_string(j) +
                             " is at or beyond the tail index");
    if (j == 0) return 1.0;
    if (spec.is_symmetric() && j % 2 == 1) return 0.0;
    if (spec.form() == DensitySpec::Form::SymmetricPareto) {
        const double alpha = spec.min_index();
        return 2.0 * spec.pareto_a() *
               std::pow(spec.pareto_b(), (j + 1.0) / (1.0 + alpha) - 1.0) *
               mellin_integral(j + 1.0, alpha);
    }
    auto f = [&spec](double x) { return spec.pdf(x); };
    auto left = [&spec](double u) { return spec.pdf(-u); };
    const double right = half_line_moment(f, j, spec.beta(), 1e-10);
    if (spec.is_symmetric()) return 2.0 * right;
    const double leftm = half_line_moment(left, j, spec.gamma(), 1e-10);
    return right + (j % 2 == 0 ? leftm : -leftm);
}

CumulantSet cumulants(const DensitySpec& spec) { return spec.cumulants(); }

double zeta_eval(const SlowlyVarying& L, double x) { return L.zeta(x); }

OddEvenDecomposition decompose(const DensitySpec& spec) {
    if (spec.form() != DensitySpec::Form::TwoSided)
        throw DomainError("decompose: expects a two-sided spec");
    OddEvenDecomposition d;
    d.alpha = spec.min_index();
    const double m = 1.0 + d.alpha;
    auto pdf = [spec](double x) { return spec.pdf(x); };
    d.r = [pdf](double x) { return 0.5 * (pdf(x) + pdf(-x)); };
    d.s = [pdf](double x) { return 0.5 * (pdf(x) - pdf(-x)); };
    auto r = d.r;
    auto s = d.s;
    d.L_r = [r, m](double x) { return r(x) * (1.0 + std::pow(std::fabs(x), m)); };
    d.L_s = [s, m](double x) { return s(x) * (1.0 + std::pow(std::fabs(x), m)); };
    const int n_max = largest_integer_below(d.alpha);
    const auto& cs = spec.cumulants();
    d.m_r.assign(n_max + 1, 0.0);
    d.m_s.assign(n_max + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        if (n % 2 == 0)
            d.m_r[n] = cs.moments[n];
        else
            d.m_s[n] = cs.moments[n];
    }
    return d;
}

}  // namespace heavytail::density
