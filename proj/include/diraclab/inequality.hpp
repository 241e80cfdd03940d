#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "diraclab/counterexample.hpp"
#include "diraclab/norms.hpp"
#include "diraclab/random_fields.hpp"
#include "diraclab/seminorms.hpp"

namespace diraclab {

// --------------------------------------------------------------------------
// Ratio probes for the embedding inequalities
// --------------------------------------------------------------------------

struct RatioProbe {
    double p = 0, q = 0, a = 0;  // a = p/(p-q) < 0
    double numerator = 0;
    double denominator_seminorm = 0;
    double denominator_besov = 0;
    double ratio = 0;
    bool degenerate = false;
};

inline void require_pq(double p, double q) {
    if (!(p >= 1.0) || !(p < q)) throw std::invalid_argument("need 1 <= p < q");
}

inline double besov_for_ratio(const VectorField& f, double a, const HeatProfile* profile) {
    if (profile) return besov_from_profile(*profile, a).value;
    return besov_norm(f, BesovParams{a}).value;
}

// probes accept a precomputed heat profile so a whole (p, q) battery on one
// field costs a single spectral sweep
inline RatioProbe ratio_improved(const VectorField& f, double p, double q, SeminormKind kind,
                                 const HeatProfile* profile = nullptr) {
    require_pq(p, q);
    RatioProbe out;
    out.p = p;
    out.q = q;
    out.a = p / (p - q);
    Derivatives D = make_derivatives(f);
    out.numerator = lp_norm(f, q);
    out.denominator_seminorm = canonical_m(kind, D, p);
    out.denominator_besov = besov_for_ratio(f, out.a, profile);
    const double den = std::pow(out.denominator_seminorm, p / q) *
                       std::pow(out.denominator_besov, 1.0 - p / q);
    if (den <= 0) {
        out.degenerate = true;
        return out;
    }
    out.ratio = out.numerator / den;
    return out;
}

inline RatioProbe ratio_weak(const VectorField& f, double p, double q,
                             const HeatProfile* profile = nullptr) {
    require_pq(p, q);
    RatioProbe out;
    out.p = p;
    out.q = q;
    out.a = p / (p - q);
    Derivatives D = make_derivatives(f);
    out.numerator = weak_lq_norm(f, q);
    out.denominator_seminorm = canonical_m(
        f.spec.dim == 4 ? SeminormKind::m4 : SeminormKind::dirac_full, D, p);
    out.denominator_besov = besov_for_ratio(f, out.a, profile);
    const double den = std::pow(out.denominator_seminorm, p / q) *
                       std::pow(out.denominator_besov, 1.0 - p / q);
    if (den <= 0) {
        out.degenerate = true;
        return out;
    }
    out.ratio = out.numerator / den;
    return out;
}

// Gagliardo-Nirenberg probe under the scaling relation 1/q = 1/p - r/(q n)
inline double ratio_gn(const VectorField& f, double p, double q, double r) {
    require_pq(p, q);
    const double lhs = 1.0 / q;
    const double rhs = 1.0 / p - r / (q * f.spec.dim);
    if (std::abs(lhs - rhs) > 1e-12)
        throw std::invalid_argument("ratio_gn: (p,q,r,n) violate 1/q = 1/p - r/(qn)");
    Derivatives D = make_derivatives(f);
    const double den =
        std::pow(grad_seminorm(D, p), p / q) * std::pow(lp_norm(f, r), 1.0 - p / q);
    if (den <= 0) throw std::invalid_argument("ratio_gn: degenerate field");
    return lp_norm(f, q) / den;
}

// the dilation-exponent identity behind scale invariance of ratio_improved:
// n/q - [(n/p - 1)(p/q) - a (1 - p/q)] with a = p/(p-q); identically zero
inline double dilation_exponent_mismatch(int n, double p, double q) {
    const double a = p / (p - q);
    return n / q - ((n / p - 1.0) * (p / q) - a * (1.0 - p / q));
}

// --------------------------------------------------------------------------
// Truncation (the two-sided clamp) and its bound
// --------------------------------------------------------------------------

struct TruncationParams {
    double u = 1.0;
    double c = 10.0;
    void validate() const {
        if (!(u > 0) || !(c > 1)) throw std::invalid_argument("TruncationParams: u>0, c>1");
    }
};

inline void require_real(const VectorField& f) {
    double peak = 0, imag = 0;
    for (const auto& z : f.data) {
        peak = std::max(peak, std::abs(z.real()));
        imag = std::max(imag, std::abs(z.imag()));
    }
    if (imag > 1e-14 * std::max(peak, 1e-300))
        throw std::invalid_argument("truncation requires a real-valued field");
}

inline double truncate_scalar(double v, double u, double c) {
    const double up = std::min(std::max(v - u, 0.0), (c - 1.0) * u);
    const double dn = std::max(std::min(v + u, 0.0), -(c - 1.0) * u);
    return up + dn;
}

inline VectorField truncate(const VectorField& f, const TruncationParams& params) {
    params.validate();
    require_real(f);
    VectorField g = f;
    for (auto& z : g.data) z = truncate_scalar(z.real(), params.u, params.c);
    return g;
}

// pointwise check of |f_u - f| <= u + |f| 1{|f| > cu}; returns the worst margin
inline double truncation_bound_check(const VectorField& f, const TruncationParams& params) {
    params.validate();
    require_real(f);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& z : f.data) {
        const double v = z.real();
        const double fu = truncate_scalar(v, params.u, params.c);
        const double bound =
            params.u + (std::abs(v) > params.c * params.u ? std::abs(v) : 0.0);
        worst = std::min(worst, bound - std::abs(fu - v));
    }
    return worst;
}

// --------------------------------------------------------------------------
// The truncation integral identity:
//   int_0^inf d(u^q) u^{-q} M(f_u)^p = q (log c) M(f)^p.
// Derivatives of the clamp vanish off {u <= |f_k| <= cu} and match those of
// f on it, so M(f_u)^p is the masked integral of the per-component derivative
// terms; the u-integral is evaluated on a log-spaced trapezoid grid, which is
// the only approximation in play.
// --------------------------------------------------------------------------

struct Lemma41Result {
    double lhs = 0, rhs = 0, rel_err = 0;
    double u_min = 0, u_max = 0;
    int u_count = 0;
};

inline Lemma41Result lemma41_check(const VectorField& f, double p, double q, double c,
                                   int u_count = 400) {
    require_pq(p, q);
    if (!(c > 1)) throw std::invalid_argument("lemma41_check: c > 1 required");
    if (f.spec.dim != 3 || f.spec.m != 4)
        throw std::invalid_argument("lemma41_check: needs a 4-component field on a 3-d grid");
    require_real(f);
    Derivatives D = make_derivatives(f);
    const std::complex<double> I(0, 1);

    // per-component derivative terms of the expanded M form
    const size_t npts = f.points();
    std::vector<std::vector<double>> T(4, std::vector<double>(npts));
    for (int k = 0; k < 4; ++k) {
        const std::complex<double> sign = (k % 2 == 0) ? I : -I;
        for (size_t x = 0; x < npts; ++x) {
            const std::complex<double> d12 =
                D.d[0].at(k, x) + sign * D.d[1].at(k, x);
            const std::complex<double> d3 = D.d[2].at(k, x);
            T[k][x] = pow_p(std::norm(d12), p) + pow_p(std::norm(d3), p);
        }
    }
    const double vol = f.spec.cell_volume();

    Lemma41Result res;
    res.u_count = u_count;
    double rhs_sum = 0;
    for (int k = 0; k < 4; ++k)
        rhs_sum += pairwise_sum(npts, [&](size_t x) { return T[k][x]; });
    res.rhs = q * std::log(c) * rhs_sum * vol;

    // u-grid spanning [min positive |f|/c, max |f|]
    double amin = std::numeric_limits<double>::infinity(), amax = 0;
    for (const auto& z : f.data) {
        const double a = std::abs(z.real());
        if (a > 0) amin = std::min(amin, a);
        amax = std::max(amax, a);
    }
    if (!(amax > 0)) {
        res.lhs = res.rhs = res.rel_err = 0;
        return res;
    }
    res.u_min = amin / c;
    res.u_max = amax;
    const double v0 = std::log(res.u_min);
    const double dv = (std::log(res.u_max) - v0) / (u_count - 1);
    const double lc = std::log(c);

    // trapezoid weight mass of the indicator log(a/c) <= v_j <= log(a)
    auto wmass = [&](double a) {
        if (!(a > 0)) return 0.0;
        const double la = std::log(a);
        long jlo = (long)std::ceil((la - lc - v0) / dv - 1e-12);
        long jhi = (long)std::floor((la - v0) / dv + 1e-12);
        jlo = std::max(jlo, 0l);
        jhi = std::min(jhi, (long)u_count - 1);
        if (jlo > jhi) return 0.0;
        double w = dv * double(jhi - jlo + 1);
        if (jlo == 0) w -= dv / 2;
        if (jhi == u_count - 1) w -= dv / 2;
        return w;
    };

    double lhs_sum = 0;
    for (int k = 0; k < 4; ++k)
        lhs_sum += pairwise_sum(npts, [&](size_t x) {
            return T[k][x] * wmass(std::abs(f.at(k, x).real()));
        });
    res.lhs = q * lhs_sum * vol;
    res.rel_err = std::abs(res.lhs - res.rhs) / std::max(res.rhs, 1e-300);
    return res;
}

// --------------------------------------------------------------------------
// Layer-cake identity on the discrete samples
// --------------------------------------------------------------------------

struct LayerCakeResult {
    double lhs = 0, rhs = 0, rel_err = 0;
};

inline LayerCakeResult layer_cake_check(const VectorField& f, double q) {
    if (!(q > 1)) throw std::invalid_argument("layer_cake_check: q > 1");
    LayerCakeResult res;
    res.lhs = std::pow(lp_norm(f, q), q);
    std::vector<double> a = pointwise_lq(f, q);
    std::sort(a.begin(), a.end(), std::greater<double>());
    const double vol = f.spec.cell_volume();
    // staircase: int |{|f|_q >= u}| d(u^q) = vol sum_j j (a_j^q - a_{j+1}^q)
    double rhs = 0;
    for (size_t j = 0; j < a.size(); ++j) {
        const double next = (j + 1 < a.size()) ? a[j + 1] : 0.0;
        rhs += double(j + 1) * (std::pow(a[j], q) - std::pow(next, q));
    }
    res.rhs = rhs * vol;
    res.rel_err = std::abs(res.lhs - res.rhs) / std::max(res.lhs, 1e-300);
    return res;
}

// --------------------------------------------------------------------------
// Divergence of the plain Dirac-seminorm ratio at p = 1 over the
// counterexample sweep; the Besov denominator uses the closed-form upper
// bound, which makes the reported ratios certified lower bounds.
// --------------------------------------------------------------------------

struct DivergenceRow {
    int n = 0;
    double lq = 0, l1 = 0, besov_bound = 0;
    double ratio = 0;    // ||f_n||_q / (||D f_n||_1^(p/q) B^(1-p/q))
    double m_value = 0;  // M_{D;1}(f_n)
    double m_ratio = 0;  // same probe with M in the denominator
    double m5_value = 0, m5_ratio = 0;  // beta only
};

struct DivergenceReport {
    Family family = Family::alpha;
    double q = 1.5;
    std::vector<DivergenceRow> rows;
    bool strictly_increasing = false;
    double fitted_exponent = 0;  // log-log estimate for the ratio growth
    double m_fitted_exponent = 0;
};

inline DivergenceReport divergence_probe(Family fam, const std::vector<int>& n_list) {
    for (size_t k = 1; k < n_list.size(); ++k)
        if (n_list[k] <= n_list[k - 1])
            throw std::invalid_argument("divergence_probe: ascending n_list required");
    DivergenceReport rep;
    rep.family = fam;
    rep.q = (fam == Family::alpha) ? 1.5 : 4.0 / 3.0;
    const double pq = 1.0 / rep.q;  // p/q with p = 1
    std::vector<double> ratios, mratios;
    for (int n : n_list) {
        DivergenceRow row;
        row.n = n;
        if (fam == Family::alpha) {
            row.lq = lq_norm_alpha(n).value;
            row.l1 = l1_dirac_alpha(n).value;
            row.besov_bound = besov_bound_alpha(n);
            row.m_value = m_alpha_p1(n).value;
        } else {
            row.lq = lq_norm_beta(n).value;
            row.l1 = l1_dirac_beta(n).value;
            row.besov_bound = besov_bound_beta(n);
            row.m_value = m_beta_p1(n).value;
            row.m5_value = m5_beta_p1(n).value;
            row.m5_ratio = row.lq / (std::pow(row.m5_value, pq) *
                                     std::pow(row.besov_bound, 1.0 - pq));
        }
        row.ratio =
            row.lq / (std::pow(row.l1, pq) * std::pow(row.besov_bound, 1.0 - pq));
        row.m_ratio =
            row.lq / (std::pow(row.m_value, pq) * std::pow(row.besov_bound, 1.0 - pq));
        ratios.push_back(row.ratio);
        mratios.push_back(row.m_ratio);
        rep.rows.push_back(row);
    }
    rep.strictly_increasing = true;
    for (size_t k = 1; k < ratios.size(); ++k)
        if (ratios[k] <= ratios[k - 1]) rep.strictly_increasing = false;
    if (n_list.size() >= 2) {
        rep.fitted_exponent = fit_loglog_exponent(n_list, ratios);
        rep.m_fitted_exponent = fit_loglog_exponent(n_list, mratios);
    }
    return rep;
}

}  // namespace diraclab
