#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "diraclab/clifford.hpp"
#include "diraclab/grid.hpp"
#include "diraclab/norms.hpp"
#include "diraclab/spectral.hpp"

namespace diraclab {

// Cached spectral derivatives d_j f_c; every semi-norm below is a pointwise
// combination of these, so one FFT pass per field serves the whole suite.
struct Derivatives {
    VectorField f;
    std::vector<VectorField> d;  // d[j-1] = d/dx_j applied to all components

    const VectorField& deriv(int axis) const { return d[size_t(axis) - 1]; }
};

inline Derivatives make_derivatives(const VectorField& f) {
    Derivatives out;
    out.f = f;
    VectorField spectra = f;
    forward_all(spectra);
    const double k0 = 2.0 * M_PI / f.spec.L;
    const int half = f.spec.N / 2;
    for (int axis = 1; axis <= f.spec.dim; ++axis) {
        VectorField g = spectra;
        for (int c = 0; c < f.spec.m; ++c) {
            std::complex<double>* d = g.comp(c);
            for_each_mode(f.spec.dim, f.spec.N, [&](size_t flat, const std::array<int, 4>& ki) {
                int m = ki[axis - 1];
                double k = (m == -half) ? 0.0 : k0 * m;
                d[flat] *= std::complex<double>(0.0, k);
            });
        }
        inverse_all(g);
        out.d.push_back(std::move(g));
    }
    return out;
}

// One L^p summand: | sum over pieces of sum_j c_j d_j f_comp |.
struct TermPiece {
    int comp;  // 0-based component
    std::array<std::complex<double>, 4> dcoeff{};
};
using NormTerm = std::vector<TermPiece>;

struct KindDef {
    std::string name;
    int dim;
    int m;
    std::vector<NormTerm> terms;
};

inline NormTerm single(int comp, std::complex<double> c1, std::complex<double> c2,
                       std::complex<double> c3 = 0.0, std::complex<double> c4 = 0.0) {
    return {TermPiece{comp, {c1, c2, c3, c4}}};
}

// ||term||_p^p over the grid (times cell volume)
inline double term_power(const Derivatives& D, const NormTerm& term, double p) {
    const size_t npts = D.f.points();
    const int dim = D.f.spec.dim;
    const double vol = D.f.spec.cell_volume();
    double s = pairwise_sum(npts, [&](size_t k) {
        std::complex<double> acc = 0;
        for (const auto& piece : term) {
            for (int j = 0; j < dim; ++j) {
                const auto& c = piece.dcoeff[j];
                if (c.real() != 0 || c.imag() != 0) acc += c * D.d[j].at(piece.comp, k);
            }
        }
        return pow_p(std::norm(acc), p);
    });
    return s * vol;
}

inline double terms_norm(const Derivatives& D, const std::vector<NormTerm>& terms, double p) {
    double s = 0;
    for (const auto& t : terms) s += term_power(D, t, p);
    return std::pow(s, 1.0 / p);
}

// --------------------------------------------------------------------------
// Canonical kinds. These term tables are written out literally and
// independently of the decomposition machinery, so the two evaluation routes
// can check each other.
// --------------------------------------------------------------------------

enum class SeminormKind {
    grad,
    dirac_full,
    m_canonical_alpha,
    m_sigma3d,
    m_cr3d,
    weyl2d_a,
    weyl2d_b,
    weyl2d_c,
    cauchy_riemann,
    m_canonical_beta,
    m4,
    m5,
    m6,
};

inline const char* kind_name(SeminormKind k) {
    switch (k) {
        case SeminormKind::grad: return "grad";
        case SeminormKind::dirac_full: return "dirac_full";
        case SeminormKind::m_canonical_alpha: return "m_canonical_alpha";
        case SeminormKind::m_sigma3d: return "m_sigma3d";
        case SeminormKind::m_cr3d: return "m_cr3d";
        case SeminormKind::weyl2d_a: return "weyl2d_a";
        case SeminormKind::weyl2d_b: return "weyl2d_b";
        case SeminormKind::weyl2d_c: return "weyl2d_c";
        case SeminormKind::cauchy_riemann: return "cauchy_riemann";
        case SeminormKind::m_canonical_beta: return "m_canonical_beta";
        case SeminormKind::m4: return "m4";
        case SeminormKind::m5: return "m5";
        case SeminormKind::m6: return "m6";
    }
    return "?";
}

inline SeminormKind kind_from_string(const std::string& s) {
    for (SeminormKind k :
         {SeminormKind::grad, SeminormKind::dirac_full, SeminormKind::m_canonical_alpha,
          SeminormKind::m_sigma3d, SeminormKind::m_cr3d, SeminormKind::weyl2d_a,
          SeminormKind::weyl2d_b, SeminormKind::weyl2d_c, SeminormKind::cauchy_riemann,
          SeminormKind::m_canonical_beta, SeminormKind::m4, SeminormKind::m5, SeminormKind::m6})
        if (s == kind_name(k)) return k;
    throw std::invalid_argument("unknown seminorm kind: " + s);
}

inline KindDef kind_def(SeminormKind kind, const GridSpec& spec) {
    const std::complex<double> I(0, 1);
    KindDef def;
    def.name = kind_name(kind);
    switch (kind) {
        case SeminormKind::grad: {
            def.dim = spec.dim;
            def.m = spec.m;
            for (int j = 0; j < spec.dim; ++j)
                for (int c = 0; c < spec.m; ++c) {
                    NormTerm t = single(c, 0, 0);
                    t[0].dcoeff[j] = 1.0;
                    def.terms.push_back(std::move(t));
                }
            return def;
        }
        case SeminormKind::dirac_full:
            def.dim = 3; def.m = 4;
            def.terms = {
                {{0, {1.0, I, 0, 0}}, {1, {0, 0, -1.0, 0}}},
                {{1, {1.0, -I, 0, 0}}, {0, {0, 0, 1.0, 0}}},
                {{2, {1.0, I, 0, 0}}, {3, {0, 0, -1.0, 0}}},
                {{3, {1.0, -I, 0, 0}}, {2, {0, 0, 1.0, 0}}},
            };
            return def;
        case SeminormKind::m_canonical_alpha:
            def.dim = 3; def.m = 4;
            def.terms = {single(0, 1.0, I),  single(0, 0, 0, 1.0),
                         single(1, 1.0, -I), single(1, 0, 0, 1.0),
                         single(2, 1.0, I),  single(2, 0, 0, 1.0),
                         single(3, 1.0, -I), single(3, 0, 0, 1.0)};
            return def;
        case SeminormKind::m_sigma3d:
            def.dim = 3; def.m = 2;
            def.terms = {single(0, 1.0, I), single(0, 0, 0, 1.0),
                         single(1, 1.0, -I), single(1, 0, 0, 1.0)};
            return def;
        case SeminormKind::m_cr3d:
            def.dim = 3; def.m = 1;
            def.terms = {single(0, 1.0, -I), single(0, 0, 0, 1.0)};
            return def;
        case SeminormKind::weyl2d_a:
            def.dim = 2; def.m = 2;
            def.terms = {single(1, 1.0, -I), single(0, 1.0, I)};
            return def;
        case SeminormKind::weyl2d_b:
            def.dim = 2; def.m = 2;
            def.terms = {
                {{0, {1.0, 0, 0, 0}}, {1, {0, 1.0, 0, 0}}},
                {{0, {0, 1.0, 0, 0}}, {1, {-1.0, 0, 0, 0}}},
            };
            return def;
        case SeminormKind::weyl2d_c:
            def.dim = 2; def.m = 2;
            def.terms = {
                {{0, {1.0, 0, 0, 0}}, {1, {0, -I, 0, 0}}},
                {{0, {0, I, 0, 0}}, {1, {-1.0, 0, 0, 0}}},
            };
            return def;
        case SeminormKind::cauchy_riemann:
            def.dim = 2; def.m = 1;
            def.terms = {single(0, 1.0, I)};
            return def;
        case SeminormKind::m_canonical_beta:
            def.dim = 4; def.m = 4;
            def.terms = {single(0, 1.0, I), single(0, 0, 0, 1.0, I),
                         single(1, 1.0, -I), single(1, 0, 0, 1.0, -I),
                         single(2, 1.0, I), single(2, 0, 0, 1.0, -I),
                         single(3, 1.0, -I), single(3, 0, 0, 1.0, I)};
            return def;
        case SeminormKind::m4:
            def.dim = 4; def.m = 4;
            def.terms = {
                {{0, {1.0, I, 0, 0}}, {1, {0, 0, -1.0, I}}},
                {{1, {1.0, -I, 0, 0}}, {0, {0, 0, 1.0, I}}},
                {{2, {1.0, I, 0, 0}}, {3, {0, 0, -1.0, -I}}},
                {{3, {1.0, -I, 0, 0}}, {2, {0, 0, 1.0, -I}}},
            };
            return def;
        case SeminormKind::m5:
            def.dim = 4; def.m = 4;
            def.terms = {
                single(0, 1.0, I), single(0, 0, 0, 1.0, I),
                single(1, 1.0, -I), single(1, 0, 0, 1.0, -I),
                {{2, {1.0, I, 0, 0}}, {3, {0, 0, -1.0, -I}}},
                {{3, {1.0, -I, 0, 0}}, {2, {0, 0, 1.0, -I}}},
            };
            return def;
        case SeminormKind::m6:
            def.dim = 4; def.m = 4;
            def.terms = {
                single(0, 1.0, I), single(0, 0, 0, 1.0, I),
                single(1, 1.0, -I), single(1, 0, 0, 1.0, -I),
                single(2, 1.0, I), single(3, 0, 0, 1.0, I),
                {{3, {1.0, -I, 0, 0}}, {2, {0, 0, 1.0, -I}}},
            };
            return def;
    }
    throw std::logic_error("kind_def: unreachable");
}

inline void check_kind_shape(const KindDef& def, const GridSpec& spec) {
    if (def.dim != spec.dim || def.m != spec.m)
        throw std::invalid_argument("seminorm kind '" + def.name + "' needs dim=" +
                                    std::to_string(def.dim) + " m=" + std::to_string(def.m));
}

// direct evaluation of the explicit term-sum for a kind
inline double canonical_m(SeminormKind kind, const Derivatives& D, double p) {
    KindDef def = kind_def(kind, D.f.spec);
    check_kind_shape(def, D.f.spec);
    return terms_norm(D, def.terms, p);
}

// --------------------------------------------------------------------------
// Symbol-driven route
// --------------------------------------------------------------------------

// rows of a symbol matrix as norm terms; p_j = -i d_j
inline std::vector<NormTerm> symbol_rows_as_terms(const SymbolMatrix& s) {
    const std::complex<double> mi(0, -1);
    std::vector<NormTerm> out;
    for (int r = 0; r < s.rows(); ++r) {
        NormTerm t;
        for (int c = 0; c < s.cols(); ++c) {
            const SymbolEntry& e = s(r, c);
            if (e.is_zero()) continue;
            TermPiece piece{c, {}};
            for (const auto& [idx, coeff] : e.terms())
                piece.dcoeff[idx - 1] = mi * coeff.to_complex();
            t.push_back(piece);
        }
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

// ||S f||_p via the cached derivatives
inline double operator_seminorm(const SymbolMatrix& s, const Derivatives& D, double p) {
    if (s.cols() != D.f.spec.m) throw std::invalid_argument("operator_seminorm: shape mismatch");
    if (s.max_symbol_index() > D.f.spec.dim)
        throw std::invalid_argument("operator_seminorm: symbol outside field dimension");
    return terms_norm(D, symbol_rows_as_terms(s), p);
}

// [ ||D1 f||_p^p + ||D2 f||_p^p ]^(1/p)
inline double m_seminorm(const Decomposition& d, const Derivatives& D, double p) {
    double s = 0;
    for (int which = 1; which <= 2; ++which) {
        SymbolMatrix part = d.part(which);
        if (part.cols() != D.f.spec.m) throw std::invalid_argument("m_seminorm: shape mismatch");
        for (const auto& t : symbol_rows_as_terms(part)) s += term_power(D, t, p);
    }
    return std::pow(s, 1.0 / p);
}

inline double grad_seminorm(const Derivatives& D, double p) {
    return canonical_m(SeminormKind::grad, D, p);
}

// --------------------------------------------------------------------------
// Relation checks
// --------------------------------------------------------------------------

struct SandwichMargins {
    double dirac = 0, m = 0, grad = 0;
    double lower_margin = 0;       // M - 2^{-(1-1/p)} ||Df||_p
    double upper_margin = 0;       // 2^{1-1/p} ||grad f||_p - M
    double dirac_grad_margin = 0;  // 3^{1-1/p} ||grad f||_p - ||Df||_p (alpha only)
};

enum class Family { alpha, beta };

inline Family family_from_string(const std::string& s) {
    if (s == "alpha") return Family::alpha;
    if (s == "beta") return Family::beta;
    throw std::invalid_argument("unknown family: " + s);
}

inline SymbolMatrix family_symbol(Family fam) {
    return fam == Family::alpha ? alpha_dot_p() : beta_dot_p();
}

inline SeminormKind family_canonical_kind(Family fam) {
    return fam == Family::alpha ? SeminormKind::m_canonical_alpha : SeminormKind::m_canonical_beta;
}

inline SandwichMargins sandwich_check(const Derivatives& D, double p, Family fam) {
    SandwichMargins out;
    out.dirac = operator_seminorm(family_symbol(fam), D, p);
    out.m = canonical_m(family_canonical_kind(fam), D, p);
    out.grad = grad_seminorm(D, p);
    const double e = 1.0 - 1.0 / p;
    out.lower_margin = out.m - std::pow(2.0, -e) * out.dirac;
    out.upper_margin = std::pow(2.0, e) * out.grad - out.m;
    if (fam == Family::alpha)
        out.dirac_grad_margin = std::pow(3.0, e) * out.grad - out.dirac;
    return out;
}

struct ChainValues {
    // ||(beta.p) f||_1 = M4 <= M5 <= M6 <= M_beta <= ||grad f||_1
    double dirac = 0, m4 = 0, m5 = 0, m6 = 0, m_beta = 0, grad = 0;
    double worst_margin = 0;  // min of the consecutive differences
    bool ordered(double slack) const { return worst_margin >= -slack; }
};

inline ChainValues chain_check_p1(const Derivatives& D) {
    ChainValues v;
    const double p = 1.0;
    v.dirac = operator_seminorm(beta_dot_p(), D, p);
    v.m4 = canonical_m(SeminormKind::m4, D, p);
    v.m5 = canonical_m(SeminormKind::m5, D, p);
    v.m6 = canonical_m(SeminormKind::m6, D, p);
    v.m_beta = canonical_m(SeminormKind::m_canonical_beta, D, p);
    v.grad = grad_seminorm(D, p);
    v.worst_margin = std::min({v.m4 - v.dirac, v.m5 - v.m4, v.m6 - v.m5,
                               v.m_beta - v.m6, v.grad - v.m_beta});
    return v;
}

struct RatioStats {
    double min_ratio = 0, max_ratio = 0;
    int degenerate = 0;
};

// empirical ||grad f||_p / ||D f||_p over an ensemble (evidence for the
// p > 1 equivalence, never a proof)
inline RatioStats grad_over_dirac_stats(const std::vector<VectorField>& fields, double p,
                                        Family fam) {
    RatioStats st;
    bool first = true;
    for (const auto& f : fields) {
        Derivatives D = make_derivatives(f);
        const double den = operator_seminorm(family_symbol(fam), D, p);
        if (den <= 0) {
            ++st.degenerate;
            continue;
        }
        const double r = grad_seminorm(D, p) / den;
        if (first) {
            st.min_ratio = st.max_ratio = r;
            first = false;
        } else {
            st.min_ratio = std::min(st.min_ratio, r);
            st.max_ratio = std::max(st.max_ratio, r);
        }
    }
    return st;
}

// empirical (||d1 psi||_p + ||d2 psi||_p) / ||(d1 - i d2) psi||_p on scalar
// 2-d fields
inline RatioStats cauchy_riemann_control_stats(const std::vector<VectorField>& fields,
                                               double p) {
    RatioStats st;
    bool first = true;
    const std::complex<double> I(0, 1);
    for (const auto& f : fields) {
        if (f.spec.m != 1 || f.spec.dim != 2)
            throw std::invalid_argument("cauchy_riemann_control_stats: need scalar 2-d fields");
        Derivatives D = make_derivatives(f);
        const double den =
            std::pow(term_power(D, single(0, 1.0, -I), p), 1.0 / p);
        if (den <= 0) {
            ++st.degenerate;
            continue;
        }
        const double num = std::pow(term_power(D, single(0, 1.0, 0.0), p), 1.0 / p) +
                           std::pow(term_power(D, single(0, 0.0, 1.0), p), 1.0 / p);
        const double r = num / den;
        if (first) {
            st.min_ratio = st.max_ratio = r;
            first = false;
        } else {
            st.min_ratio = std::min(st.min_ratio, r);
            st.max_ratio = std::max(st.max_ratio, r);
        }
    }
    return st;
}

// max relative spread of m_seminorm over the Decom1 members
inline double decom1_spread(const SymbolMatrix& s, const Derivatives& D, double p) {
    double lo = 0, hi = 0;
    bool first = true;
    for (const auto& d : decom1(s)) {
        const double v = m_seminorm(d, D, p);
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi > 0 ? (hi - lo) / hi : 0.0;
}

// FNV-1a over the raw samples; the field fingerprint used in reports
inline uint64_t field_fingerprint(const VectorField& f) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](const void* p, size_t n) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (size_t k = 0; k < n; ++k) {
            h ^= b[k];
            h *= 1099511628211ull;
        }
    };
    mix(f.data.data(), f.data.size() * sizeof(f.data[0]));
    return h;
}

}  // namespace diraclab
