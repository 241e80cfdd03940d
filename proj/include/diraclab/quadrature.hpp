#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace diraclab {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss-Legendre nodes/weights on [-1, 1], Newton on the Legendre recurrence.
inline const std::pair<std::vector<double>, std::vector<double>>& gl_rule(int order) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    std::vector<double> x(order), w(order);
    for (int i = 0; i < order; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = order * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = order * (t * p1 - p0) / (t * t - 1.0);
        x[i] = -t;  // ascending
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

// breakpoints geometrically refined toward one end of [a, b]
inline void grade_toward(std::vector<double>& out, double a, double b, int levels, bool toward_a) {
    const double w = b - a;
    if (toward_a) {
        for (int k = levels; k >= 1; --k) out.push_back(a + w * std::ldexp(1.0, -k));
    } else {
        for (int k = 1; k <= levels; ++k) out.push_back(b - w * std::ldexp(1.0, -k));
    }
}

inline std::vector<double> sorted_unique(std::vector<double> v, double lo, double hi) {
    v.push_back(lo);
    v.push_back(hi);
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (x < lo - 1e-300 || x > hi + 1e-300) continue;
        if (!out.empty() && x - out.back() < 1e-14 * std::max(1.0, std::abs(hi))) continue;
        out.push_back(x);
    }
    if (out.size() < 2) out = {lo, hi};
    return out;
}

// panelized 1-d integral; each break interval is split into `refine` panels
template <class F>
inline double integrate_panels(const std::vector<double>& breaks, int order, int refine,
                               const F& fn) {
    const auto& [gx, gw] = gl_rule(order);
    double total = 0;
    for (size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double lo = breaks[b], hi = breaks[b + 1];
        const double w = (hi - lo) / refine;
        for (int s = 0; s < refine; ++s) {
            const double a = lo + s * w;
            double acc = 0;
            for (int i = 0; i < order; ++i) acc += gw[i] * fn(a + 0.5 * w * (gx[i] + 1.0));
            total += acc * 0.5 * w;
        }
    }
    return total;
}

// 2-d product integral in polar-type coordinates: outer radial panels, inner
// angular panels rebuilt per radial node (integrands may supply extra angular
// breakpoints, e.g. sign-change roots that migrate with r)
struct PolarDomain {
    std::vector<double> r_breaks;
    std::vector<double> ang_breaks;
    std::function<std::vector<double>(double)> ang_extra;  // may be empty
    int order = 16;
};

template <class F>
inline double integrate_polar(const PolarDomain& dom, int refine, const F& fn) {
    const double ang_lo = dom.ang_breaks.front(), ang_hi = dom.ang_breaks.back();
    return integrate_panels(dom.r_breaks, dom.order, refine, [&](double r) {
        std::vector<double> ab = dom.ang_breaks;
        if (dom.ang_extra) {
            for (double x : dom.ang_extra(r)) ab.push_back(x);
            ab = sorted_unique(std::move(ab), ang_lo, ang_hi);
        }
        return integrate_panels(ab, dom.order, refine,
                                [&](double ang) { return fn(r, ang); });
    });
}

struct QuadResult {
    double value = 0;    // finer run
    double rel_err = 0;  // disagreement between the two resolutions
};

// computes at refine and 2*refine; the disagreement is the error estimate
template <class F>
inline QuadResult self_converging_polar(const PolarDomain& dom, const F& fn,
                                        double tol = 1e-8) {
    QuadResult q;
    const double coarse = integrate_polar(dom, 1, fn);
    q.value = integrate_polar(dom, 2, fn);
    const double scale = std::max(std::abs(q.value), 1e-300);
    q.rel_err = std::abs(q.value - coarse) / scale;
    if (q.rel_err > tol)
        throw QuadratureError("quadrature did not self-converge: rel_err=" +
                              std::to_string(q.rel_err));
    return q;
}

// sign-change roots of fn on [a, b] by scan + bisection
template <class F>
inline std::vector<double> sign_roots(const F& fn, double a, double b, int scan = 512) {
    std::vector<double> roots;
    double x0 = a, f0 = fn(a);
    for (int k = 1; k <= scan; ++k) {
        const double x1 = a + (b - a) * k / scan;
        const double f1 = fn(x1);
        if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = fn(mid);
                if ((flo < 0) == (fm < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace diraclab
