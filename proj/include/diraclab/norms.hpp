#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "diraclab/grid.hpp"
#include "diraclab/spectral.hpp"

namespace diraclab {

// Deterministic pairwise-tree reduction; the tree depends only on n, so sums
// are bit-reproducible regardless of how callers schedule work.
template <class F>
inline double pairwise_sum(size_t lo, size_t hi, const F& term) {
    const size_t n = hi - lo;
    if (n <= 64) {
        double s = 0;
        for (size_t k = lo; k < hi; ++k) s += term(k);
        return s;
    }
    const size_t mid = lo + n / 2;
    return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

template <class F>
inline double pairwise_sum(size_t n, const F& term) {
    return pairwise_sum(size_t(0), n, term);
}

inline double pow_p(double abs2, double p) {
    // |z|^p from |z|^2
    if (p == 1.0) return std::sqrt(abs2);
    if (p == 2.0) return abs2;
    if (p == 3.0) return abs2 * std::sqrt(abs2);
    if (p == 4.0) return abs2 * abs2;
    return std::pow(abs2, 0.5 * p);
}

// (sum_x sum_k |f_k(x)|^p cellVol)^(1/p)  -- the l^p-in-components convention
inline double lp_norm(const VectorField& f, double p) {
    if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double s = pairwise_sum(f.data.size(), [&](size_t k) {
        return pow_p(std::norm(f.data[k]), p);
    });
    return std::pow(s * f.spec.cell_volume(), 1.0 / p);
}

// max_x max_k |f_k(x)|
inline double linfty_norm(const VectorField& f) {
    double m = 0;
    for (const auto& z : f.data) m = std::max(m, std::norm(z));
    return std::sqrt(m);
}

inline std::complex<double> grid_mean(const VectorField& f, int comp) {
    const std::complex<double>* d = f.comp(comp);
    double re = pairwise_sum(f.points(), [&](size_t k) { return d[k].real(); });
    double im = pairwise_sum(f.points(), [&](size_t k) { return d[k].imag(); });
    return std::complex<double>(re, im) / double(f.points());
}

// pointwise linf-over-components magnitudes, one per grid node
inline std::vector<double> pointwise_linf(const VectorField& f) {
    std::vector<double> a(f.points(), 0.0);
    for (int c = 0; c < f.spec.m; ++c) {
        const std::complex<double>* d = f.comp(c);
        for (size_t k = 0; k < a.size(); ++k) a[k] = std::max(a[k], std::norm(d[k]));
    }
    for (auto& v : a) v = std::sqrt(v);
    return a;
}

// pointwise lq-over-components magnitudes
inline std::vector<double> pointwise_lq(const VectorField& f, double q) {
    std::vector<double> a(f.points(), 0.0);
    for (int c = 0; c < f.spec.m; ++c) {
        const std::complex<double>* d = f.comp(c);
        for (size_t k = 0; k < a.size(); ++k) a[k] += pow_p(std::norm(d[k]), q);
    }
    for (auto& v : a) v = std::pow(v, 1.0 / q);
    return a;
}

// [sup_u u^q |{ |f|_linf >= u }|]^(1/q); the sup over the sorted sample
// magnitudes (the distribution function is a right-continuous staircase)
inline double weak_lq_norm(const VectorField& f, double q) {
    if (!(q > 1)) throw std::invalid_argument("weak_lq_norm: q must be > 1");
    std::vector<double> a = pointwise_linf(f);
    std::sort(a.begin(), a.end(), std::greater<double>());
    const double vol = f.spec.cell_volume();
    double best = 0;
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) break;
        best = std::max(best, std::pow(a[j], q) * double(j + 1) * vol);
    }
    return std::pow(best, 1.0 / q);
}

struct BesovParams {
    double a;             // negative index
    double t_min = 0;     // defaults derived from the grid when <= 0
    double t_max = 0;
    int t_count = 200;

    void validate() const {
        if (!(a < 0)) throw std::invalid_argument("BesovParams: a must be negative");
        if (t_min > 0 && !(t_min < t_max))
            throw std::invalid_argument("BesovParams: need 0 < t_min < t_max");
        if (t_count < 2) throw std::invalid_argument("BesovParams: t_count too small");
    }
};

struct BesovResult {
    double value = 0;
    double t_at_max = 0;
    bool at_endpoint = false;  // sup saturated at the t-window edge
};

// sampled heat decay ||P_t f||_inf over a log-spaced t grid; one spectral
// pass serves every Besov index that a caller wants to evaluate
struct HeatProfile {
    std::vector<double> t;
    std::vector<double> linf;
};

inline HeatProfile heat_profile(const VectorField& f, double t_min, double t_max,
                                int t_count) {
    if (!(t_min > 0) || !(t_min < t_max) || t_count < 2)
        throw std::invalid_argument("heat_profile: bad t window");
    VectorField spectra = f;
    forward_all(spectra);

    const double k0 = 2.0 * M_PI / f.spec.L;
    const size_t npts = f.points();
    std::vector<double> k2map(npts);
    for_each_mode(f.spec.dim, f.spec.N, [&](size_t flat, const std::array<int, 4>& ki) {
        double k2 = 0;
        for (int a = 0; a < f.spec.dim; ++a) k2 += double(ki[a]) * ki[a];
        k2map[flat] = k0 * k0 * k2;
    });

    HeatProfile prof;
    std::vector<std::complex<double>> scratch(npts);
    const double lr = std::log(t_max / t_min);
    for (int it = 0; it < t_count; ++it) {
        const double t = t_min * std::exp(lr * it / double(t_count - 1));
        double linf2 = 0;
        for (int c = 0; c < f.spec.m; ++c) {
            const std::complex<double>* in = spectra.comp(c);
            for (size_t k = 0; k < npts; ++k) scratch[k] = in[k] * std::exp(-t * k2map[k]);
            Fft::transform(f.spec.dim, f.spec.N, scratch.data(), FFTW_BACKWARD);
            for (size_t k = 0; k < npts; ++k)
                linf2 = std::max(linf2, std::norm(scratch[k]));
        }
        prof.t.push_back(t);
        prof.linf.push_back(std::sqrt(linf2) / double(npts));
    }
    return prof;
}

inline BesovResult besov_from_profile(const HeatProfile& prof, double a) {
    if (!(a < 0)) throw std::invalid_argument("besov index must be negative");
    BesovResult res;
    for (size_t it = 0; it < prof.t.size(); ++it) {
        const double val = std::pow(prof.t[it], -a / 2.0) * prof.linf[it];
        if (val > res.value) {
            res.value = val;
            res.t_at_max = prof.t[it];
            res.at_endpoint = (it == 0 || it + 1 == prof.t.size());
        }
    }
    return res;
}

// homogeneous Besov B^a_{inf,inf} estimate: max over a log-spaced t grid of
// t^(-a/2) ||P_t f||_inf. Below (h^2)/4 the semigroup resolves nothing on the
// grid; above L^2 the torus has flattened the field, hence the default window.
inline BesovResult besov_norm(const VectorField& f, BesovParams params) {
    params.validate();
    double t_min = params.t_min, t_max = params.t_max;
    if (t_min <= 0) {
        t_min = f.spec.h() * f.spec.h() / 4.0;
        t_max = f.spec.L * f.spec.L;
    }
    return besov_from_profile(heat_profile(f, t_min, t_max, params.t_count), params.a);
}

// ||f - P_t f||_p / (sqrt(t) ||S f||_p); degenerate denominators are flagged
struct HeatDifferenceRatio {
    double value = 0;
    bool degenerate = false;
};

inline HeatDifferenceRatio heat_difference_ratio(const VectorField& f, const SymbolMatrix& op,
                                                 double p, double t) {
    VectorField pt = heat_semigroup(f, t);
    VectorField diff = f;
    for (size_t k = 0; k < diff.data.size(); ++k) diff.data[k] -= pt.data[k];
    const double num = lp_norm(diff, p);
    const double den = std::sqrt(t) * lp_norm(apply_symbol(op, f), p);
    HeatDifferenceRatio r;
    if (den <= 0) {
        r.degenerate = true;
        return r;
    }
    r.value = num / den;
    return r;
}

}  // namespace diraclab
