#include "heavytail/slowly_varying.hpp"

#include <cmath>

#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"

namespace heavytail::density {

namespace {

// Geometric grid for the cached zeta integral: nodes at x = e^{k h} up to
// x = 1e12, cumulative integrals of L(e^v) in v, exact local Kronrod panel
// from the nearest node to the query point.
struct ZetaCache {
    double h = 0.0;
    std::vector<double> prefix;  // prefix[k] = zeta(e^{k h})
};

ZetaCache build_zeta_cache(const std::function<double(double)>& eval) {
    ZetaCache cache;
    const double v_max = std::log(1e12);
    const int n = 512;
    cache.h = v_max / n;
    cache.prefix.resize(n + 1, 0.0);
    auto g = [&](double v) { return eval(std::exp(v)); };
    quad::Options opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-12;
    opt.throw_on_failure = false;
    for (int k = 0; k < n; ++k) {
        const double part = quad::integrate(g, k * cache.h, (k + 1) * cache.h, opt).value;
        cache.prefix[k + 1] = cache.prefix[k] + part;
    }
    return cache;
}

}  // namespace

struct SlowlyVarying::Impl {
    Kind kind;
    std::string name;
    double c = 0.0;  // Constant
    int p = 0;       // LogPower
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> zeta;  // optional closed form
    ZetaCache cache;                     // used when zeta is empty (Custom)
};

SlowlyVarying SlowlyVarying::constant(double c) {
    if (!(c > 0.0)) throw DomainError("SlowlyVarying::constant: requires c > 0");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Constant;
    impl->name = "const";
    impl->c = c;
    return SlowlyVarying(std::move(impl));
}

SlowlyVarying SlowlyVarying::log_power(int p) {
    if (p < 1 || p > 2) throw DomainError("SlowlyVarying::log_power: p must be 1 or 2");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::LogPower;
    impl->name = p == 1 ? "log" : "log^2";
    impl->p = p;
    return SlowlyVarying(std::move(impl));
}

SlowlyVarying SlowlyVarying::custom(std::string name,
                                    std::function<double(double)> eval,
                                    std::function<double(double)> deriv,
                                    std::function<double(double)> zeta) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->name = std::move(name);
    impl->eval = std::move(eval);
    impl->deriv = std::move(deriv);
    impl->zeta = std::move(zeta);
    if (!impl->zeta) impl->cache = build_zeta_cache(impl->eval);
    return SlowlyVarying(std::move(impl));
}

double SlowlyVarying::operator()(double x) const {
    switch (impl_->kind) {
        case Kind::Constant: return impl_->c;
        case Kind::LogPower: {
            const double l = std::log(x);
            return impl_->p == 1 ? l : l * l;
        }
        case Kind::Custom:
        default: return impl_->eval(x);
    }
}

double SlowlyVarying::deriv(double x) const {
    switch (impl_->kind) {
        case Kind::Constant: return 0.0;
        case Kind::LogPower: {
            const double l = std::log(x);
            return impl_->p == 1 ? 1.0 / x : 2.0 * l / x;
        }
        case Kind::Custom:
        default: return impl_->deriv(x);
    }
}

double SlowlyVarying::zeta(double x) const {
    if (x < 1.0) throw DomainError("SlowlyVarying::zeta: requires x >= 1");
    switch (impl_->kind) {
        case Kind::Constant: return impl_->c * std::log(x);
        case Kind::LogPower: {
            const double l = std::log(x);
            return impl_->p == 1 ? 0.5 * l * l : l * l * l / 3.0;
        }
        case Kind::Custom:
        default: {
            if (impl_->zeta) return impl_->zeta(x);
            const ZetaCache& cache = impl_->cache;
            const double v = std::log(x);
            auto g = [this](double vv) { return impl_->eval(std::exp(vv)); };
            const double v_cap = cache.h * (cache.prefix.size() - 1);
            if (v >= v_cap) {
                quad::Options opt;
                opt.abs_tol = 1e-12;
                opt.rel_tol = 1e-10;
                opt.throw_on_failure = false;
                return cache.prefix.back() + quad::integrate(g, v_cap, v, opt).value;
            }
            const int k = static_cast<int>(v / cache.h);
            return cache.prefix[k] + quad::kronrod_panel(g, k * cache.h, v).value;
        }
    }
}

SlowlyVarying::Kind SlowlyVarying::kind() const { return impl_->kind; }

const std::string& SlowlyVarying::name() const { return impl_->name; }

double SlowlyVarying::constant_value() const {
    if (impl_->kind != Kind::Constant)
        throw DomainError("SlowlyVarying::constant_value: not a constant kind");
    return impl_->c;
}

SlowlyVarying make_smooth_ramp(double c0, double c_inf) {
    if (!(c0 > 0.0) || !(c_inf > 0.0))
        throw DomainError("make_smooth_ramp: levels must be positive");
    return SlowlyVarying::custom(
        "ramp",
        [c0, c_inf](double u) {
            const double u2 = u * u;
            return c0 + (c_inf - c0) * u2 / (1.0 + u2);
        },
        [c0, c_inf](double u) {
            const double d = 1.0 + u * u;
            return (c_inf - c0) * 2.0 * u / (d * d);
        });
}

bool karamata_bound_check(const SlowlyVarying& L, double rho1, double rho2, double theta,
                          const std::vector<double>& xs) {
    constexpr double kBoundConstant = 10.0;
    const double ref = L(1.0 / theta);
    if (!(ref > 0.0)) return false;
    for (double x : xs) {
        if (!(x > 0.0)) return false;
        const double ratio = L(x / theta) / ref;
        const double bound =
            x > 1.0 ? kBoundConstant * std::pow(x, rho1) : kBoundConstant * std::pow(x, -rho2);
        if (!(ratio <= bound)) return false;
    }
    return true;
}

}  // namespace heavytail::density
