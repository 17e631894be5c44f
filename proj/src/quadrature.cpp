#include "heavytail/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "heavytail/errors.hpp"

namespace heavytail::quad {

namespace {

// Gauss-Kronrod 15-point abscissae/weights (positive half) and the embedded
// 7-point Gauss weights, QUADPACK values.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) {
        const int j = 2 * i + 1;
        resg += kWg[i] * (fv[j] + fv[14 - j]);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    const double diff = std::fabs((resk - resg) * h);
    // QUADPACK-style sharpened estimate
    p.err = diff;
    if (diff > 0.0) {
        double resabs = 0.0;
        for (int i = 0; i < 7; ++i) resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
        resabs += kWgk[7] * std::fabs(fv[7]);
        resabs *= std::fabs(h);
        if (resabs > 0.0) p.err = resabs * std::min(1.0, std::pow(200.0 * diff / resabs, 1.5));
    }
    return p;
}

}  // namespace

Result kronrod_panel(const Integrand& f, double a, double b) {
    Panel p = eval_panel(f, a, b);
    return {p.value, p.err, 1, true};
}

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Panel> heap;
    Panel first = eval_panel(f, a, b);
    double total = first.value;
    double err = first.err;
    heap.push(first);
    int used = 1;
    auto tol = [&](double t) { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(t)); };
    while (err > tol(total) && used < opt.max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable in double precision
            heap.push(worst);
            break;
        }
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    res.value = total;
    res.error_estimate = err;
    res.panels_used = used;
    res.converged = err <= tol(total) * 4.0;
    if (!res.converged && opt.throw_on_failure)
        throw QuadratureNonConvergence("adaptive quadrature: panel limit reached, error estimate " +
                                       std::to_string(err));
    return res;
}

double integrate_value(const Integrand& f, double a, double b, const Options& opt) {
    return integrate(f, a, b, opt).value;
}

Result integrate_semi_infinite_log(const Integrand& f, double a,
                                   const std::function<double(double)>& decay_bound,
                                   const Options& opt) {
    if (a <= 0.0) throw DomainError("integrate_semi_infinite_log: lower limit must be positive");
    // integral over [a, x] with x = a*e^v; per-octave adaptive panels in v
    Result res;
    double v0 = 0.0;
    const double step = 0.75;  // just under one e-fold per panel
    Options local = opt;
    local.throw_on_failure = false;
    auto g = [&](double v) {
        const double x = a * std::exp(v);
        return f(x) * x;
    };
    int used = 0;
    while (true) {
        const double v1 = v0 + step;
        Result part = integrate(g, v0, v1, local);
        res.value += part.value;
        res.error_estimate += part.error_estimate;
        used += part.panels_used;
        v0 = v1;
        const double x_edge = a * std::exp(v0);
        const double remaining = decay_bound(x_edge);
        if (remaining < std::max(opt.abs_tol, opt.rel_tol * std::fabs(res.value))) {
            res.error_estimate += remaining;
            res.converged = true;
            break;
        }
        if (used > opt.max_panels || !std::isfinite(x_edge)) {
            if (opt.throw_on_failure)
                throw QuadratureNonConvergence("semi-infinite quadrature: panel limit reached");
            break;
        }
    }
    res.panels_used = used;
    return res;
}

Result integrate_panels(const Integrand& f, const std::vector<double>& edges,
                        const Options& opt) {
    Result res;
    Options local = opt;
    local.throw_on_failure = false;
    local.abs_tol = opt.abs_tol / std::max<size_t>(1, edges.size());
    int used = 0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Result part = integrate(f, edges[i], edges[i + 1], local);
        res.value += part.value;
        res.error_estimate += part.error_estimate;
        used += part.panels_used;
        if (used > opt.max_panels) {
            if (opt.throw_on_failure)
                throw QuadratureNonConvergence("panel quadrature: panel limit reached");
            res.panels_used = used;
            return res;
        }
    }
    res.panels_used = used;
    res.converged = true;
    return res;
}

GaussLegendre::GaussLegendre(int n) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on Legendre polynomials, symmetric roots
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

}  // namespace heavytail::quad
