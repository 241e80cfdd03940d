#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "diraclab/clifford.hpp"
#include "diraclab/grid.hpp"
#include "diraclab/norms.hpp"
#include "diraclab/quadrature.hpp"
#include "diraclab/seminorms.hpp"

namespace diraclab {

using Cx = std::complex<double>;

// --------------------------------------------------------------------------
// Closed-form seeds and their gradients
// --------------------------------------------------------------------------

// e(x) = (1+|x|^2)^(-3/2) (1, 0, i x3, i x1 - x2)^t on R^3
inline void eval_e_alpha(const double* x, Cx* out) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double phi = std::pow(1.0 + r2, -1.5);
    out[0] = phi;
    out[1] = 0.0;
    out[2] = Cx(0, x[2]) * phi;
    out[3] = Cx(-x[1], x[0]) * phi;
}

// de[k][j] = d_j e_k
inline void eval_grad_e_alpha(const double* x, Cx de[4][3]) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double phi = std::pow(1.0 + r2, -1.5);
    const double phip = -1.5 * std::pow(1.0 + r2, -2.5);
    const Cx v[4] = {1.0, 0.0, Cx(0, x[2]), Cx(-x[1], x[0])};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 4; ++k) de[k][j] = v[k] * (2.0 * x[j] * phip);
    de[2][2] += Cx(0, 1) * phi;
    de[3][0] += Cx(0, 1) * phi;
    de[3][1] += Cx(-1, 0) * phi;
}

// e^(x) = (1+|x|^2)^(-2) (1, 0, i x3 - x4, i x1 - x2)^t on R^4
inline void eval_e_beta(const double* x, Cx* out) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    const double phi = std::pow(1.0 + r2, -2.0);
    out[0] = phi;
    out[1] = 0.0;
    out[2] = Cx(-x[3], x[2]) * phi;
    out[3] = Cx(-x[1], x[0]) * phi;
}

inline void eval_grad_e_beta(const double* x, Cx de[4][4]) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    const double phi = std::pow(1.0 + r2, -2.0);
    const double phip = -2.0 * std::pow(1.0 + r2, -3.0);
    const Cx v[4] = {1.0, 0.0, Cx(-x[3], x[2]), Cx(-x[1], x[0])};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) de[k][j] = v[k] * (2.0 * x[j] * phip);
    de[2][2] += Cx(0, 1) * phi;
    de[2][3] += Cx(-1, 0) * phi;
    de[3][0] += Cx(0, 1) * phi;
    de[3][1] += Cx(-1, 0) * phi;
}

// quintic smoothstep cutoff: 1 on [0, n], 0 beyond n+2, |rho'| <= 15/16
struct CutoffValue {
    double value;
    double derivative;
};

inline CutoffValue cutoff(int n, double r) {
    if (r <= n) return {1.0, 0.0};
    if (r >= n + 2.0) return {0.0, 0.0};
    const double t = (r - n) / 2.0;
    const double s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    const double sp = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    return {std::clamp(1.0 - s, 0.0, 1.0), -sp / 2.0};
}

inline void eval_f_n_alpha(int n, const double* x, Cx* out) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double rho = cutoff(n, r).value;
    eval_e_alpha(x, out);
    for (int k = 0; k < 4; ++k) out[k] *= rho;
}

inline void eval_f_n_beta(int n, const double* x, Cx* out) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    const double rho = cutoff(n, r).value;
    eval_e_beta(x, out);
    for (int k = 0; k < 4; ++k) out[k] *= rho;
}

// (alpha.p) f_n = 3 rho/(1+r^2)^(5/2) (1,0,ix3,ix1-x2)
//               + rho'/(r (1+r^2)^(3/2)) (r^2,0,-ix3,-ix1+x2)
inline void dirac_image_alpha(int n, const double* x, Cx* out) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double r = std::sqrt(r2);
    const auto [rho, drho] = cutoff(n, r);
    const double a = 3.0 * rho * std::pow(1.0 + r2, -2.5);
    const double b = (drho == 0.0) ? 0.0 : drho / (r * std::pow(1.0 + r2, 1.5));
    out[0] = a + b * r2;
    out[1] = 0.0;
    out[2] = Cx(0, x[2]) * (a - b);
    out[3] = Cx(-x[1], x[0]) * (a - b);
}

inline void dirac_image_beta(int n, const double* x, Cx* out) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    const double r = std::sqrt(r2);
    const auto [rho, drho] = cutoff(n, r);
    const double a = 4.0 * rho * std::pow(1.0 + r2, -3.0);
    const double b = (drho == 0.0) ? 0.0 : drho / (r * std::pow(1.0 + r2, 2.0));
    out[0] = a + b * r2;
    out[1] = 0.0;
    out[2] = Cx(-x[3], x[2]) * (a - b);
    out[3] = Cx(-x[1], x[0]) * (a - b);
}

// residual of the eigenrelation (D e)(x) = dim/(1+|x|^2) e(x), evaluated from
// the closed-form gradient through the matrix representation
inline double eigen_residual_alpha(const double* x) {
    Cx de[4][3];
    eval_grad_e_alpha(x, de);
    Cx e[4];
    eval_e_alpha(x, e);
    auto alpha = build_alpha();
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    double worst = 0;
    for (int r = 0; r < 4; ++r) {
        Cx acc = 0;
        for (int j = 0; j < 3; ++j)
            for (int c = 0; c < 4; ++c) {
                const Cx a = alpha[j](r, c).to_complex();
                if (a != 0.0) acc += Cx(0, -1) * a * de[c][j];
            }
        worst = std::max(worst, std::abs(acc - 3.0 / (1.0 + r2) * e[r]));
    }
    return worst;
}

inline double eigen_residual_beta(const double* x) {
    Cx de[4][4];
    eval_grad_e_beta(x, de);
    Cx e[4];
    eval_e_beta(x, e);
    auto beta = build_beta();
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    double worst = 0;
    for (int r = 0; r < 4; ++r) {
        Cx acc = 0;
        for (int j = 0; j < 4; ++j)
            for (int c = 0; c < 4; ++c) {
                const Cx a = beta[j](r, c).to_complex();
                if (a != 0.0) acc += Cx(0, -1) * a * de[c][j];
            }
        worst = std::max(worst, std::abs(acc - 4.0 / (1.0 + r2) * e[r]));
    }
    return worst;
}

// pointwise envelope margins (all must be >= 0)
inline double envelope_linf_alpha(const double* x) {
    Cx e[4];
    eval_e_alpha(x, e);
    double linf = 0;
    for (int k = 0; k < 4; ++k) linf = std::max(linf, std::abs(e[k]));
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return 1.0 / (1.0 + r2) - linf;
}
inline double envelope_lq_alpha(const double* x, double q) {
    Cx e[4];
    eval_e_alpha(x, e);
    double s = 0;
    for (int k = 0; k < 4; ++k) s += std::pow(std::abs(e[k]), q);
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return s - std::pow(1.0 + r2, -q);
}
inline double envelope_linf_beta(const double* x) {
    Cx e[4];
    eval_e_beta(x, e);
    double linf = 0;
    for (int k = 0; k < 4; ++k) linf = std::max(linf, std::abs(e[k]));
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    return std::pow(1.0 + r2, -1.5) - linf;
}
inline double envelope_lq_beta(const double* x, double q) {
    Cx e[4];
    eval_e_beta(x, e);
    double s = 0;
    for (int k = 0; k < 4; ++k) s += std::pow(std::abs(e[k]), q);
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    return s - std::pow(1.0 + r2, -1.5 * q);
}

// --------------------------------------------------------------------------
// Quadrature domains: all integrands depend on (r, angle) only.  3-d uses
// spherical (r, theta) with weight r^2 sin(theta) and factor 2 pi; 4-d uses
// bi-polar radii r1 = r cos(phi), r2 = r sin(phi) with weight r^3 cos sin
// and factor (2 pi)^2.
// --------------------------------------------------------------------------

namespace detail {

inline std::vector<double> radial_breaks(int n, const std::vector<double>& extra) {
    std::vector<double> b{0.0, 0.25, 0.5};
    double r = 1.0;
    while (r < n) {
        b.push_back(r);
        r *= std::sqrt(2.0);
    }
    b.push_back(double(n));
    // the cutoff is only C^2 at both ring endpoints: grade toward them
    grade_toward(b, n, n + 2.0, 14, true);
    b.push_back(n + 1.0);
    grade_toward(b, n, n + 2.0, 14, false);
    for (double x : extra) b.push_back(x);
    return sorted_unique(std::move(b), 0.0, n + 2.0);
}

inline std::vector<double> theta_breaks_3d() {
    std::vector<double> b{0.0, M_PI / 2.0, M_PI};
    grade_toward(b, 0.0, M_PI / 2.0, 14, true);
    grade_toward(b, 0.0, M_PI / 2.0, 14, false);
    grade_toward(b, M_PI / 2.0, M_PI, 14, true);
    grade_toward(b, M_PI / 2.0, M_PI, 14, false);
    return sorted_unique(std::move(b), 0.0, M_PI);
}

inline std::vector<double> phi_breaks_4d() {
    std::vector<double> b{0.0, M_PI / 4.0, M_PI / 2.0};
    grade_toward(b, 0.0, M_PI / 2.0, 14, true);
    grade_toward(b, 0.0, M_PI / 2.0, 14, false);
    return sorted_unique(std::move(b), 0.0, M_PI / 2.0);
}

struct AlphaRadial {
    double rho, drho, phi, phip, psi, g1, c;
};
inline AlphaRadial alpha_radial(int n, double r) {
    AlphaRadial s;
    auto cv = cutoff(n, r);
    s.rho = cv.value;
    s.drho = cv.derivative;
    const double r2 = r * r;
    s.phi = std::pow(1.0 + r2, -1.5);
    s.phip = -1.5 * std::pow(1.0 + r2, -2.5);
    const double q5 = std::pow(1.0 + r2, -2.5);
    const double q3 = std::pow(1.0 + r2, -1.5);
    s.g1 = 3.0 * s.rho * q5 + s.drho * r * q3;
    s.c = 3.0 * s.rho * q5 - (s.drho == 0.0 ? 0.0 : s.drho * q3 / r);
    s.psi = (s.drho == 0.0 ? 0.0 : s.drho * s.phi / r) + 2.0 * s.rho * s.phip;
    return s;
}

struct BetaRadial {
    double rho, drho, phi, phip, psi, g1, c;
};
inline BetaRadial beta_radial(int n, double r) {
    BetaRadial s;
    auto cv = cutoff(n, r);
    s.rho = cv.value;
    s.drho = cv.derivative;
    const double r2 = r * r;
    s.phi = std::pow(1.0 + r2, -2.0);
    s.phip = -2.0 * std::pow(1.0 + r2, -3.0);
    const double q6 = std::pow(1.0 + r2, -3.0);
    const double q4 = std::pow(1.0 + r2, -2.0);
    s.g1 = 4.0 * s.rho * q6 + s.drho * r * q4;
    s.c = 4.0 * s.rho * q6 - (s.drho == 0.0 ? 0.0 : s.drho * q4 / r);
    s.psi = (s.drho == 0.0 ? 0.0 : s.drho * s.phi / r) + 2.0 * s.rho * s.phip;
    return s;
}

}  // namespace detail

// || (alpha.p) f_n ||_1 by product quadrature
inline QuadResult l1_dirac_alpha(int n, double tol = 1e-8) {
    auto g1 = [n](double r) { return detail::alpha_radial(n, r).g1; };
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, sign_roots(g1, double(n), n + 2.0));
    dom.ang_breaks = detail::theta_breaks_3d();
    auto fn = [n](double r, double th) {
        auto s = detail::alpha_radial(n, r);
        const double val =
            std::abs(s.g1) + r * (std::abs(std::cos(th)) + std::sin(th)) * s.c;
        return val * r * r * std::sin(th);
    };
    QuadResult q = self_converging_polar(dom, fn, tol);
    q.value *= 2.0 * M_PI;
    return q;
}

// || f_n ||_q by product quadrature (alpha family, default q = 3/2)
inline QuadResult lq_norm_alpha(int n, double q = 1.5, double tol = 1e-8) {
    if (q < 1.0 || q > 2.0) throw std::invalid_argument("lq_norm_alpha: need 1 <= q <= 2");
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, {});
    dom.ang_breaks = detail::theta_breaks_3d();
    auto fn = [n, q](double r, double th) {
        auto s = detail::alpha_radial(n, r);
        if (s.rho == 0.0) return 0.0;
        const double c = std::abs(std::cos(th)), sn = std::sin(th);
        const double mag = 1.0 + std::pow(r * c, q) + std::pow(r * sn, q);
        return std::pow(s.rho, q) * mag * std::pow(1.0 + r * r, -1.5 * q) * r * r * sn;
    };
    QuadResult res = self_converging_polar(dom, fn, tol);
    res.value = std::pow(2.0 * M_PI * res.value, 1.0 / q);
    return res;
}

// M_{alpha.p;1}(f_n) by quadrature on the expanded terms
inline QuadResult m_alpha_p1(int n, double tol = 1e-7) {
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, {});
    dom.ang_breaks = detail::theta_breaks_3d();
    dom.ang_extra = [n](double r) {
        std::vector<double> out;
        auto s = detail::alpha_radial(n, r);
        if (r <= 0 || s.psi == 0.0) return out;
        const double t1 = -s.rho * s.phi / (r * r * s.psi);       // cos^2
        const double t2 = -2.0 * s.rho * s.phi / (r * r * s.psi);  // sin^2
        if (t1 > 0 && t1 < 1) {
            const double th = std::acos(std::sqrt(t1));
            out.push_back(th);
            out.push_back(M_PI - th);
        }
        if (t2 > 0 && t2 < 1) {
            const double th = std::asin(std::sqrt(t2));
            out.push_back(th);
            out.push_back(M_PI - th);
        }
        return out;
    };
    auto fn = [n](double r, double th) {
        auto s = detail::alpha_radial(n, r);
        const double c = std::cos(th), sn = std::sin(th);
        const double apsi = std::abs(s.psi);
        const double val = r * sn * apsi + r * std::abs(c) * apsi +
                           2.0 * r * r * sn * std::abs(c) * apsi +
                           std::abs(s.rho * s.phi + r * r * c * c * s.psi) +
                           std::abs(2.0 * s.rho * s.phi + r * r * sn * sn * s.psi);
        return val * r * r * sn;
    };
    QuadResult res = self_converging_polar(dom, fn, tol);
    res.value *= 2.0 * M_PI;
    return res;
}

inline QuadResult l1_dirac_beta(int n, double tol = 1e-8) {
    auto g1 = [n](double r) { return detail::beta_radial(n, r).g1; };
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, sign_roots(g1, double(n), n + 2.0));
    dom.ang_breaks = detail::phi_breaks_4d();
    auto fn = [n](double r, double ph) {
        auto s = detail::beta_radial(n, r);
        const double c = std::cos(ph), sn = std::sin(ph);
        const double val = std::abs(s.g1) + r * (c + sn) * s.c;
        return val * r * r * r * c * sn;
    };
    QuadResult q = self_converging_polar(dom, fn, tol);
    q.value *= 4.0 * M_PI * M_PI;
    return q;
}

inline QuadResult lq_norm_beta(int n, double q = 4.0 / 3.0, double tol = 1e-8) {
    if (q < 1.0 || q > 2.0) throw std::invalid_argument("lq_norm_beta: need 1 <= q <= 2");
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, {});
    dom.ang_breaks = detail::phi_breaks_4d();
    auto fn = [n, q](double r, double ph) {
        auto s = detail::beta_radial(n, r);
        if (s.rho == 0.0) return 0.0;
        const double c = std::cos(ph), sn = std::sin(ph);
        const double mag = 1.0 + std::pow(r * sn, q) + std::pow(r * c, q);
        return std::pow(s.rho, q) * mag * std::pow(1.0 + r * r, -2.0 * q) * r * r * r * c * sn;
    };
    QuadResult res = self_converging_polar(dom, fn, tol);
    res.value = std::pow(4.0 * M_PI * M_PI * res.value, 1.0 / q);
    return res;
}

inline QuadResult m_beta_p1(int n, double tol = 1e-7) {
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, {});
    dom.ang_breaks = detail::phi_breaks_4d();
    dom.ang_extra = [n](double r) {
        std::vector<double> out;
        auto s = detail::beta_radial(n, r);
        if (r <= 0 || s.psi == 0.0) return out;
        const double t = -2.0 * s.rho * s.phi / (r * r * s.psi);
        if (t > 0 && t < 1) {
            out.push_back(std::asin(std::sqrt(t)));
            out.push_back(std::acos(std::sqrt(t)));
        }
        return out;
    };
    auto fn = [n](double r, double ph) {
        auto s = detail::beta_radial(n, r);
        const double c = std::cos(ph), sn = std::sin(ph);
        const double apsi = std::abs(s.psi);
        const double val = r * c * apsi + r * sn * apsi + 2.0 * r * r * c * sn * apsi +
                           std::abs(2.0 * s.rho * s.phi + r * r * sn * sn * s.psi) +
                           std::abs(2.0 * s.rho * s.phi + r * r * c * c * s.psi);
        return val * r * r * r * c * sn;
    };
    QuadResult res = self_converging_polar(dom, fn, tol);
    res.value *= 4.0 * M_PI * M_PI;
    return res;
}

// M^(5) of the beta family at p = 1; the cross rows of the (6.5a) parts cancel
// on this field, leaving the two component-1 terms and |4 rho phi + r^2 psi|
inline QuadResult m5_beta_p1(int n, double tol = 1e-8) {
    auto radial_term = [n](double r) {
        auto s = detail::beta_radial(n, r);
        return 4.0 * s.rho * s.phi + r * r * s.psi;
    };
    PolarDomain dom;
    dom.r_breaks = detail::radial_breaks(n, sign_roots(radial_term, double(n), n + 2.0));
    dom.ang_breaks = detail::phi_breaks_4d();
    auto fn = [n](double r, double ph) {
        auto s = detail::beta_radial(n, r);
        const double c = std::cos(ph), sn = std::sin(ph);
        const double apsi = std::abs(s.psi);
        const double val = r * c * apsi + r * sn * apsi +
                           std::abs(4.0 * s.rho * s.phi + r * r * s.psi);
        return val * r * r * r * c * sn;
    };
    QuadResult res = self_converging_polar(dom, fn, tol);
    res.value *= 4.0 * M_PI * M_PI;
    return res;
}

// --------------------------------------------------------------------------
// Closed-form bounds chained from the pointwise envelope and cutoff estimates
// --------------------------------------------------------------------------

inline double bound_l1_alpha(int n) { return 24.0 * M_PI * std::atan(n + 2.0) + 16.0 * M_PI; }
inline double cap_l1_alpha() { return 12.0 * M_PI * M_PI + 16.0 * M_PI; }
inline double bound_l1_beta(int n) {
    return 16.0 * M_PI * M_PI * std::atan(n + 2.0) + 8.0 * M_PI * M_PI;
}
inline double cap_l1_beta() { return 8.0 * std::pow(M_PI, 3) + 8.0 * M_PI * M_PI; }

inline double besov_bound_alpha(int n) {
    const double v = 2.0 + std::log1p(double(n + 2) * (n + 2));
    return std::max(2.0, v) / (2.0 * std::sqrt(2.0 * M_PI * M_E));
}
inline double besov_bound_beta(int n) {
    const double m = n + 2.0;
    const double v = 2.0 + std::log(m + std::sqrt(1.0 + m * m));
    return std::max(2.0, v) / (4.0 * M_PI * std::sqrt(2.0 * M_E));
}

inline double lq_lower_alpha(int n) {
    return n >= 2 ? std::pow(4.0 * M_PI * std::log(double(n)), 2.0 / 3.0) : 0.0;
}
inline double lq_lower_beta(int n) {
    const double n2 = double(n) * n;
    const double v = M_PI * M_PI * (std::log1p(n2) - n2 / (1.0 + n2));
    return v > 0 ? std::pow(v, 3.0 / 4.0) : 0.0;
}

// --------------------------------------------------------------------------
// Grid cross-checks
// --------------------------------------------------------------------------

inline VectorField sample_f_n(Family fam, int n, double L, int N) {
    if (fam == Family::alpha) {
        GridSpec spec{3, 4, L, N};
        return sample(spec, [n](const std::array<double, 4>& x, Cx* out) {
            eval_f_n_alpha(n, x.data(), out);
        });
    }
    GridSpec spec{4, 4, L, N};
    return sample(spec, [n](const std::array<double, 4>& x, Cx* out) {
        eval_f_n_beta(n, x.data(), out);
    });
}

// The f_n Besov sup sits at t = O(1); capping the window at 4(n+2)^2 keeps a
// wide margin above the argmax while staying out of the large-t regime where
// the torus mean (absent on R^n) would take over the sup.
inline BesovResult counterexample_besov_numeric(Family fam, int n, double L, int N,
                                                int t_count = 60) {
    VectorField f = sample_f_n(fam, n, L, N);
    BesovParams params{fam == Family::alpha ? -2.0 : -3.0};
    params.t_min = (L / N) * (L / N) / 4.0;
    params.t_max = 4.0 * (n + 2.0) * (n + 2.0);
    params.t_count = t_count;
    return besov_norm(f, params);
}

// --------------------------------------------------------------------------
// Sweeps and asymptotic fits
// --------------------------------------------------------------------------

struct FitResult {
    double a = 0, b = 0, gamma = 0, rss = 0;
};

// least squares for y ~ a + b (log n)^gamma at fixed gamma
inline FitResult fit_fixed_gamma(const std::vector<int>& ns, const std::vector<double>& ys,
                                 double gamma) {
    FitResult f;
    f.gamma = gamma;
    const size_t m = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < m; ++k) {
        const double x = std::pow(std::log(double(ns[k])), gamma);
        sx += x;
        sy += ys[k];
        sxx += x * x;
        sxy += x * ys[k];
    }
    const double det = m * sxx - sx * sx;
    if (std::abs(det) < 1e-14) {
        f.a = sy / m;
        f.b = 0;
    } else {
        f.b = (m * sxy - sx * sy) / det;
        f.a = (sy - f.b * sx) / m;
    }
    for (size_t k = 0; k < m; ++k) {
        const double x = std::pow(std::log(double(ns[k])), gamma);
        const double r = ys[k] - f.a - f.b * x;
        f.rss += r * r;
    }
    return f;
}

// scan gamma and keep the best fit
inline FitResult fit_free_gamma(const std::vector<int>& ns, const std::vector<double>& ys) {
    FitResult best;
    bool first = true;
    for (double g = 0.05; g <= 1.5 + 1e-9; g += 0.01) {
        FitResult f = fit_fixed_gamma(ns, ys, g);
        if (first || f.rss < best.rss) {
            best = f;
            first = false;
        }
    }
    for (double g = best.gamma - 0.01; g <= best.gamma + 0.01 + 1e-12; g += 0.0005) {
        if (g <= 0) continue;
        FitResult f = fit_fixed_gamma(ns, ys, g);
        if (f.rss < best.rss) best = f;
    }
    return best;
}

// exponent estimate from log y = c + gamma log log n; the intercept-free
// power model is ill-conditioned for exponent estimation at desk-scale n
inline double fit_loglog_exponent(const std::vector<int>& ns, const std::vector<double>& ys) {
    const size_t m = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < m; ++k) {
        const double x = std::log(std::log(double(ns[k])));
        const double y = std::log(ys[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = m * sxx - sx * sx;
    return det != 0 ? (m * sxy - sx * sy) / det : 0.0;
}

struct SweepRow {
    int n = 0;
    QuadResult l1;
    QuadResult lq;
    double besov_bound = 0;
    std::optional<BesovResult> besov_numeric;
};

struct SweepRecord {
    Family family = Family::alpha;
    std::vector<SweepRow> rows;
    FitResult lq_fit;          // model fit at the target exponent (2/3 or 3/4)
    double lq_exponent = 0;    // log-log estimate of the lq growth exponent
    FitResult besov_fit;       // bound fitted against log n (exponent 1)
    double l1_mean = 0;
    double l1_log_slope = 0;   // linear regression of l1 against log n
};

inline SweepRecord sweep(Family fam, const std::vector<int>& n_list,
                         int besov_numeric_max_n = 0, double besov_L_factor = 6.0,
                         int besov_N = 0) {
    if (besov_N <= 0) besov_N = (fam == Family::alpha) ? 96 : 32;
    for (size_t k = 1; k < n_list.size(); ++k)
        if (n_list[k] <= n_list[k - 1])
            throw std::invalid_argument("sweep: n_list must be ascending");
    SweepRecord rec;
    rec.family = fam;
    std::vector<double> l1s, lqs, besovs;
    for (int n : n_list) {
        SweepRow row;
        row.n = n;
        if (fam == Family::alpha) {
            row.l1 = l1_dirac_alpha(n);
            row.lq = lq_norm_alpha(n);
            row.besov_bound = besov_bound_alpha(n);
        } else {
            row.l1 = l1_dirac_beta(n);
            row.lq = lq_norm_beta(n);
            row.besov_bound = besov_bound_beta(n);
        }
        if (n <= besov_numeric_max_n)
            row.besov_numeric =
                counterexample_besov_numeric(fam, n, besov_L_factor * (n + 2), besov_N);
        l1s.push_back(row.l1.value);
        lqs.push_back(row.lq.value);
        besovs.push_back(row.besov_bound);
        rec.rows.push_back(row);
    }
    rec.lq_fit = fit_fixed_gamma(n_list, lqs, fam == Family::alpha ? 2.0 / 3.0 : 3.0 / 4.0);
    rec.lq_exponent = fit_loglog_exponent(n_list, lqs);
    rec.besov_fit = fit_fixed_gamma(n_list, besovs, 1.0);
    FitResult l1lin = fit_fixed_gamma(n_list, l1s, 1.0);
    rec.l1_log_slope = l1lin.b;
    for (double v : l1s) rec.l1_mean += v;
    rec.l1_mean /= double(l1s.size());
    return rec;
}

}  // namespace diraclab
