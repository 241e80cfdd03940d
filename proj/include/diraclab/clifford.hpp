#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "diraclab/exact.hpp"

#include "json.hpp"

namespace diraclab {

// ---------------------------------------------------------------------------
// Matrix families
// ---------------------------------------------------------------------------

inline std::array<ConstMatrix, 3> build_pauli() {
    const ExactComplex o = ExactComplex::one();
    const ExactComplex j = ExactComplex::i();
    ConstMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1(0, 1) = o; s1(1, 0) = o;
    s2(0, 1) = -j; s2(1, 0) = j;
    s3(0, 0) = o; s3(1, 1) = -o;
    return {s1, s2, s3};
}

// 4x4 Dirac matrices: alpha_j = offdiag(sigma_j, sigma_j)
inline std::array<ConstMatrix, 3> build_alpha() {
    auto sigma = build_pauli();
    std::array<ConstMatrix, 3> out{ConstMatrix(4, 4), ConstMatrix(4, 4), ConstMatrix(4, 4)};
    for (int j = 0; j < 3; ++j)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                out[j](r, c + 2) = sigma[j](r, c);
                out[j](r + 2, c) = sigma[j](r, c);
            }
    return out;
}

// Euclidean family: beta_j = alpha_j for j<=3, beta_4 = offdiag(-i I2, i I2)
inline std::array<ConstMatrix, 4> build_beta() {
    auto alpha = build_alpha();
    ConstMatrix b4(4, 4);
    const ExactComplex j = ExactComplex::i();
    b4(0, 2) = -j; b4(1, 3) = -j;
    b4(2, 0) = j; b4(3, 1) = j;
    return {alpha[0], alpha[1], alpha[2], b4};
}

inline ConstMatrix projection_diag(int n, std::initializer_list<int> ones) {
    ConstMatrix p(n, n);
    for (int k : ones) p(k, k) = ExactComplex::one();
    return p;
}

// N and N' of the 2x2 unitary-equivalence lemma
inline ConstMatrix matrix_N() {
    const ExactComplex h = ExactComplex::inv_sqrt2();
    ConstMatrix m(2, 2);
    m(0, 0) = h; m(0, 1) = -(h * ExactComplex::i());
    m(1, 0) = h; m(1, 1) = h * ExactComplex::i();
    return m;
}
inline ConstMatrix matrix_Nprime() {
    const ExactComplex h = ExactComplex::inv_sqrt2();
    ConstMatrix m(2, 2);
    m(0, 0) = h; m(0, 1) = -h;
    m(1, 0) = h; m(1, 1) = h;
    return m;
}

// ---------------------------------------------------------------------------
// Anti-commutation
// ---------------------------------------------------------------------------

struct AnticommutationReport {
    // residual(j,k) = {M_j, M_k} - 2 delta_jk I, exact
    std::vector<std::vector<ConstMatrix>> residual;
    bool all_zero = true;
};

inline AnticommutationReport anticommutation_report(const std::vector<ConstMatrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("empty matrix list");
    const int n = mats.front().rows();
    for (const auto& m : mats)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("anticommutation_report: dimension mismatch");
    AnticommutationReport rep;
    rep.residual.resize(mats.size());
    ConstMatrix twoI = ConstMatrix::identity(n) + ConstMatrix::identity(n);
    for (size_t j = 0; j < mats.size(); ++j) {
        rep.residual[j].resize(mats.size());
        for (size_t k = 0; k < mats.size(); ++k) {
            ConstMatrix r = mats[j] * mats[k] + mats[k] * mats[j];
            // delta is on the matrices, so duplicate list entries count as diagonal
            if (mats[j] == mats[k]) r = r - twoI;
            if (!r.is_zero()) rep.all_zero = false;
            rep.residual[j][k] = std::move(r);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Operator symbols
// ---------------------------------------------------------------------------

// Linear combination of momentum symbols p_1..p_n with exact coefficients.
// Kept sorted by index; zero coefficients dropped.
class SymbolEntry {
public:
    SymbolEntry() = default;

    void add(int p_index, const ExactComplex& c) {
        for (auto& t : terms_) {
            if (t.first == p_index) {
                t.second = t.second + c;
                prune();
                return;
            }
        }
        if (!c.is_zero()) {
            terms_.emplace_back(p_index, c);
            std::sort(terms_.begin(), terms_.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<std::pair<int, ExactComplex>>& terms() const { return terms_; }
    int max_index() const {
        int m = 0;
        for (const auto& t : terms_) m = std::max(m, t.first);
        return m;
    }

    SymbolEntry operator+(const SymbolEntry& o) const {
        SymbolEntry r = *this;
        for (const auto& t : o.terms_) r.add(t.first, t.second);
        return r;
    }
    SymbolEntry operator-(const SymbolEntry& o) const {
        SymbolEntry r = *this;
        for (const auto& t : o.terms_) r.add(t.first, -t.second);
        return r;
    }
    SymbolEntry scaled(const ExactComplex& z) const {
        SymbolEntry r;
        if (z.is_zero()) return r;
        for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second * z);
        return r;
    }

    bool operator==(const SymbolEntry& o) const { return terms_ == o.terms_; }
    bool operator!=(const SymbolEntry& o) const { return !(*this == o); }

    // Removes a global unimodular phase: multiply by u in {1,i,-1,-i} so the
    // lowest-index coefficient maximizes (re, im) lexicographically.
    SymbolEntry phase_normalized() const {
        if (terms_.empty()) return {};
        const ExactComplex phases[4] = {ExactComplex::one(), ExactComplex::i(),
                                        -ExactComplex::one(), -ExactComplex::i()};
        const ExactComplex& c0 = terms_.front().second;
        int best = 0;
        double br = -1e300, bi = -1e300;
        for (int k = 0; k < 4; ++k) {
            auto z = (c0 * phases[k]).to_complex();
            if (z.real() > br + 1e-15 ||
                (std::abs(z.real() - br) <= 1e-15 && z.imag() > bi + 1e-15)) {
                br = z.real(); bi = z.imag(); best = k;
            }
        }
        return scaled(phases[best]);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += t.second.str() + "*p" + std::to_string(t.first);
        }
        return s;
    }

private:
    std::vector<std::pair<int, ExactComplex>> terms_;

    void prune() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const auto& t) { return t.second.is_zero(); }),
                     terms_.end());
    }
};

class SymbolMatrix {
public:
    SymbolMatrix() = default;
    SymbolMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    SymbolEntry& operator()(int r, int c) { return e_[size_t(r) * cols_ + c]; }
    const SymbolEntry& operator()(int r, int c) const { return e_[size_t(r) * cols_ + c]; }

    bool operator==(const SymbolMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const SymbolMatrix& o) const { return !(*this == o); }

    SymbolMatrix operator+(const SymbolMatrix& o) const {
        check_shape(o);
        SymbolMatrix m(rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
        return m;
    }
    SymbolMatrix operator-(const SymbolMatrix& o) const {
        check_shape(o);
        SymbolMatrix m(rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
        return m;
    }

    bool is_zero() const {
        for (const auto& e : e_) if (!e.is_zero()) return false;
        return true;
    }

    std::vector<std::pair<int, int>> nonzero_entries() const {
        std::vector<std::pair<int, int>> out;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (!(*this)(r, c).is_zero()) out.emplace_back(r, c);
        return out;
    }

    int nonzeros_in_row(int r) const {
        int n = 0;
        for (int c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero()) ++n;
        return n;
    }

    int max_symbol_index() const {
        int m = 0;
        for (const auto& e : e_) m = std::max(m, e.max_index());
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<SymbolEntry> e_;

    void check_shape(const SymbolMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("symbol matrix shape mismatch");
    }
};

// sum_j mats[j] * p_{j+1}
inline SymbolMatrix operator_symbol(const std::vector<ConstMatrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("operator_symbol: empty list");
    const int n = mats.front().rows();
    SymbolMatrix s(n, mats.front().cols());
    for (size_t j = 0; j < mats.size(); ++j) {
        if (mats[j].rows() != n || mats[j].cols() != s.cols())
            throw std::invalid_argument("operator_symbol: dimension mismatch");
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < s.cols(); ++c)
                if (!mats[j](r, c).is_zero()) s(r, c).add(int(j) + 1, mats[j](r, c));
    }
    return s;
}

template <size_t K>
inline SymbolMatrix operator_symbol(const std::array<ConstMatrix, K>& mats) {
    return operator_symbol(std::vector<ConstMatrix>(mats.begin(), mats.end()));
}

inline SymbolMatrix alpha_dot_p() { return operator_symbol(build_alpha()); }
inline SymbolMatrix beta_dot_p() { return operator_symbol(build_beta()); }
inline SymbolMatrix sigma_dot_p_3d() { return operator_symbol(build_pauli()); }

// The three 2-d Weyl--Dirac variants: sigma1 p1 + sigma2 p2,
// sigma3 p1 + sigma1 p2, sigma3 p1 + sigma2 p2.
inline std::array<SymbolMatrix, 3> weyl2d_variants() {
    auto s = build_pauli();
    return {operator_symbol(std::vector<ConstMatrix>{s[0], s[1]}),
            operator_symbol(std::vector<ConstMatrix>{s[2], s[0]}),
            operator_symbol(std::vector<ConstMatrix>{s[2], s[1]})};
}

// U S U^{-1} with U unitary (exact check); U^{-1} = U*.
inline SymbolMatrix conjugate_symbol(const SymbolMatrix& s, const ConstMatrix& u) {
    if (!u.is_unitary()) throw std::invalid_argument("conjugate_symbol: U is not unitary");
    if (u.cols() != s.rows() || s.rows() != s.cols())
        throw std::invalid_argument("conjugate_symbol: size mismatch");
    const ConstMatrix uadj = u.adjoint();
    const int n = s.rows();
    SymbolMatrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            SymbolEntry acc;
            for (int a = 0; a < n; ++a) {
                if (u(r, a).is_zero()) continue;
                for (int b = 0; b < n; ++b) {
                    if (s(a, b).is_zero() || uadj(b, c).is_zero()) continue;
                    acc = acc + s(a, b).scaled(u(r, a) * uadj(b, c));
                }
            }
            out(r, c) = acc;
        }
    return out;
}

// Apply a constant matrix on the left of a symbol: M * S (used for D*P splits).
inline SymbolMatrix left_apply(const SymbolMatrix& s, const ConstMatrix& right) {
    if (s.cols() != right.rows()) throw std::invalid_argument("left_apply: shape mismatch");
    SymbolMatrix out(s.rows(), right.cols());
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < right.cols(); ++c) {
            SymbolEntry acc;
            for (int k = 0; k < s.cols(); ++k)
                if (!s(r, k).is_zero() && !right(k, c).is_zero())
                    acc = acc + s(r, k).scaled(right(k, c));
            out(r, c) = acc;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

// Unordered two-part entrywise splitting of a SymbolMatrix. Canonical form:
// the first nonzero entry (row-major) belongs to part 1.
class Decomposition {
public:
    Decomposition(SymbolMatrix base, std::vector<uint8_t> assignment)
        : base_(std::move(base)), assign_(std::move(assignment)) {
        nz_ = base_.nonzero_entries();
        if (assign_.size() != nz_.size())
            throw std::invalid_argument("assignment length mismatch");
        if (!assign_.empty() && assign_[0] == 2) {
            for (auto& a : assign_) a = (a == 1) ? 2 : 1;
        }
    }

    const SymbolMatrix& base() const { return base_; }
    const std::vector<uint8_t>& assignment() const { return assign_; }

    SymbolMatrix part(int which) const {
        SymbolMatrix p(base_.rows(), base_.cols());
        for (size_t k = 0; k < nz_.size(); ++k)
            if (assign_[k] == which) p(nz_[k].first, nz_[k].second) = base_(nz_[k].first, nz_[k].second);
        return p;
    }

    bool operator==(const Decomposition& o) const {
        return base_ == o.base_ && assign_ == o.assign_;
    }

private:
    SymbolMatrix base_;
    std::vector<uint8_t> assign_;
    std::vector<std::pair<int, int>> nz_;
};

// All unordered splittings, trivial (S, 0) included: 2^(nnz-1) of them.
inline std::vector<Decomposition> enumerate_decompositions(const SymbolMatrix& s) {
    auto nz = s.nonzero_entries();
    if (nz.empty()) throw std::invalid_argument("enumerate_decompositions: zero matrix");
    const size_t n = nz.size();
    std::vector<Decomposition> out;
    out.reserve(size_t(1) << (n - 1));
    for (uint64_t mask = 0; mask < (uint64_t(1) << (n - 1)); ++mask) {
        std::vector<uint8_t> a(n);
        a[0] = 1;
        for (size_t k = 1; k < n; ++k) a[k] = ((mask >> (k - 1)) & 1) ? 2 : 1;
        out.emplace_back(s, std::move(a));
    }
    return out;
}

// True iff every nonzero row of each part has exactly one nonzero entry.
inline bool row_condition(const Decomposition& d) {
    for (int which = 1; which <= 2; ++which) {
        SymbolMatrix p = d.part(which);
        for (int r = 0; r < p.rows(); ++r) {
            int nnz = p.nonzeros_in_row(r);
            if (nnz > 1) return false;
        }
    }
    return true;
}

inline std::vector<Decomposition> decom1(const SymbolMatrix& s) {
    for (int r = 0; r < s.rows(); ++r)
        if (s.nonzeros_in_row(r) != 2)
            throw std::invalid_argument("decom1: every row must have exactly 2 nonzero entries");
    std::vector<Decomposition> out;
    for (auto& d : enumerate_decompositions(s))
        if (row_condition(d)) out.push_back(std::move(d));
    return out;
}

// ---------------------------------------------------------------------------
// Canonical term multisets
// ---------------------------------------------------------------------------

struct Term {
    int component;     // source component index, 1-based (the column)
    SymbolEntry symbol;  // phase-normalized
};

inline bool term_less(const Term& a, const Term& b) {
    if (a.component != b.component) return a.component < b.component;
    return a.symbol.str() < b.symbol.str();
}

class TermMultiset {
public:
    void insert(Term t) { terms_.push_back(std::move(t)); }
    void sort() { std::sort(terms_.begin(), terms_.end(), term_less); }
    const std::vector<Term>& terms() const { return terms_; }

    bool operator==(const TermMultiset& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t k = 0; k < terms_.size(); ++k)
            if (terms_[k].component != o.terms_[k].component ||
                terms_[k].symbol != o.terms_[k].symbol)
                return false;
        return true;
    }
    bool operator!=(const TermMultiset& o) const { return !(*this == o); }

private:
    std::vector<Term> terms_;
};

// One (source component, normalized symbol) term per nonzero row of each part.
inline TermMultiset canonical_terms(const Decomposition& d) {
    if (!row_condition(d)) throw std::invalid_argument("canonical_terms: row condition fails");
    TermMultiset ms;
    for (int which = 1; which <= 2; ++which) {
        SymbolMatrix p = d.part(which);
        for (int r = 0; r < p.rows(); ++r)
            for (int c = 0; c < p.cols(); ++c)
                if (!p(r, c).is_zero())
                    ms.insert({c + 1, p(r, c).phase_normalized()});
    }
    ms.sort();
    return ms;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json symbol_entry_to_json(const SymbolEntry& e) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [idx, coeff] : e.terms())
        for (const auto& rec : coeff.dyadic_records())
            arr.push_back({idx, rec[0], rec[1], rec[2]});
    return arr;
}

inline nlohmann::json decomposition_to_json(const Decomposition& d) {
    nlohmann::json j;
    nlohmann::json base = nlohmann::json::array();
    for (auto [r, c] : d.base().nonzero_entries())
        base.push_back({r, c, symbol_entry_to_json(d.base()(r, c))});
    j["base"] = std::move(base);
    j["assignment"] = d.assignment();
    bool rc = row_condition(d);
    j["row_condition"] = rc;
    nlohmann::json terms = nlohmann::json::array();
    if (rc) {
        TermMultiset ms = canonical_terms(d);
        for (const auto& t : ms.terms())
            terms.push_back({t.component, symbol_entry_to_json(t.symbol)});
    }
    j["terms"] = std::move(terms);
    return j;
}

}  // namespace diraclab
