#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

// Exact complex scalar of the form ((xr + xi*i) + (yr + yi*i)*sqrt(2)) / 2^s.
// Closed under +, -, *, conjugation; covers every matrix entry in this
// project: {0, +-1, +-i}, the 1/sqrt(2) factors of the 2x2 change-of-basis
// matrices, and all products/sums thereof.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(long long re, long long im) : xr_(re), xi_(im) { normalize(); }
    explicit ExactComplex(long long re) : xr_(re) { normalize(); }

    static ExactComplex zero() { return ExactComplex(); }
    static ExactComplex one() { return ExactComplex(1, 0); }
    static ExactComplex i() { return ExactComplex(0, 1); }
    // 1/sqrt(2) = sqrt(2)/2
    static ExactComplex inv_sqrt2() { return raw(0, 0, 1, 0, 1); }

    static ExactComplex raw(long long xr, long long xi, long long yr, long long yi, int s) {
        ExactComplex z;
        z.xr_ = xr; z.xi_ = xi; z.yr_ = yr; z.yi_ = yi; z.s_ = s;
        z.normalize();
        return z;
    }

    bool is_zero() const { return xr_ == 0 && xi_ == 0 && yr_ == 0 && yi_ == 0; }

    ExactComplex operator-() const { return raw(-xr_, -xi_, -yr_, -yi_, s_); }

    ExactComplex operator+(const ExactComplex& o) const {
        long long axr = xr_, axi = xi_, ayr = yr_, ayi = yi_;
        long long bxr = o.xr_, bxi = o.xi_, byr = o.yr_, byi = o.yi_;
        int s = s_;
        if (s < o.s_) {
            shift(axr, axi, ayr, ayi, o.s_ - s);
            s = o.s_;
        } else if (o.s_ < s) {
            shift(bxr, bxi, byr, byi, s - o.s_);
        }
        return raw(axr + bxr, axi + bxi, ayr + byr, ayi + byi, s);
    }

    ExactComplex operator-(const ExactComplex& o) const { return *this + (-o); }

    ExactComplex operator*(const ExactComplex& o) const {
        // (x1 + y1 r)(x2 + y2 r) = (x1 x2 + 2 y1 y2) + (x1 y2 + y1 x2) r,  r = sqrt(2)
        auto [p1r, p1i] = cmul(xr_, xi_, o.xr_, o.xi_);
        auto [p2r, p2i] = cmul(yr_, yi_, o.yr_, o.yi_);
        auto [q1r, q1i] = cmul(xr_, xi_, o.yr_, o.yi_);
        auto [q2r, q2i] = cmul(yr_, yi_, o.xr_, o.xi_);
        return raw(p1r + 2 * p2r, p1i + 2 * p2i, q1r + q2r, q1i + q2i, s_ + o.s_);
    }

    ExactComplex conj() const { return raw(xr_, -xi_, yr_, -yi_, s_); }

    bool operator==(const ExactComplex& o) const {
        return xr_ == o.xr_ && xi_ == o.xi_ && yr_ == o.yr_ && yi_ == o.yi_ && s_ == o.s_;
    }
    bool operator!=(const ExactComplex& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        const double r2 = std::sqrt(2.0);
        const double den = std::ldexp(1.0, s_);
        return {(double(xr_) + double(yr_) * r2) / den,
                (double(xi_) + double(yi_) * r2) / den};
    }

    double abs() const { return std::abs(to_complex()); }

    // serialization as (re_int, im_int, half_sqrt2_exp): value = (re + im*i) * 2^(-e/2).
    // Entries with both dyadic parities populated need two records.
    std::vector<std::array<long long, 3>> dyadic_records() const {
        std::vector<std::array<long long, 3>> out;
        if (xr_ != 0 || xi_ != 0) out.push_back({xr_, xi_, 2LL * s_});
        if (yr_ != 0 || yi_ != 0) out.push_back({yr_, yi_, 2LL * s_ - 1});
        return out;
    }

    std::string str() const {
        auto z = to_complex();
        char buf[64];
        std::snprintf(buf, sizeof(buf), "(%g%+gi)", z.real(), z.imag());
        return buf;
    }

private:
    long long xr_ = 0, xi_ = 0, yr_ = 0, yi_ = 0;
    int s_ = 0;

    static void shift(long long& a, long long& b, long long& c, long long& d, int k) {
        a <<= k; b <<= k; c <<= k; d <<= k;
    }

    static std::pair<long long, long long> cmul(long long ar, long long ai,
                                                long long br, long long bi) {
        return {ar * br - ai * bi, ar * bi + ai * br};
    }

    void normalize() {
        if (is_zero()) { s_ = 0; return; }
        while (s_ > 0 && (xr_ % 2 == 0) && (xi_ % 2 == 0) && (yr_ % 2 == 0) && (yi_ % 2 == 0)) {
            xr_ /= 2; xi_ /= 2; yr_ /= 2; yi_ /= 2; --s_;
        }
    }
};

// Dense small matrix over ExactComplex.
class ConstMatrix {
public:
    ConstMatrix() = default;
    ConstMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static ConstMatrix identity(int n) {
        ConstMatrix m(n, n);
        for (int k = 0; k < n; ++k) m(k, k) = ExactComplex::one();
        return m;
    }
    static ConstMatrix zeros(int r, int c) { return ConstMatrix(r, c); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    ExactComplex& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const ExactComplex& operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    ConstMatrix operator+(const ConstMatrix& o) const {
        require_same_shape(o);
        ConstMatrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
        return m;
    }
    ConstMatrix operator-(const ConstMatrix& o) const {
        require_same_shape(o);
        ConstMatrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
        return m;
    }
    ConstMatrix operator*(const ConstMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        ConstMatrix m(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < o.cols_; ++c) {
                ExactComplex acc;
                for (int k = 0; k < cols_; ++k) acc = acc + (*this)(r, k) * o(k, c);
                m(r, c) = acc;
            }
        return m;
    }
    ConstMatrix scaled(const ExactComplex& z) const {
        ConstMatrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * z;
        return m;
    }

    ConstMatrix adjoint() const {
        ConstMatrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
        return m;
    }

    bool operator==(const ConstMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const ConstMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& z : a_) if (!z.is_zero()) return false;
        return true;
    }
    bool is_hermitian() const { return rows_ == cols_ && *this == adjoint(); }
    bool is_unitary() const {
        return rows_ == cols_ && (*this) * adjoint() == identity(rows_);
    }

    // induced l^r -> l^r operator norm, r in {1, 2, inf}. r = 1 and inf are the
    // exact column/row absolute sums; r = 2 is the spectral norm via power
    // iteration on M*M (deterministic fixed start, fixed iteration count).
    double induced_norm(double r) const {
        if (r == 1.0) {
            double best = 0;
            for (int c = 0; c < cols_; ++c) {
                double s = 0;
                for (int row = 0; row < rows_; ++row) s += (*this)(row, c).abs();
                best = std::max(best, s);
            }
            return best;
        }
        if (std::isinf(r)) {
            double best = 0;
            for (int row = 0; row < rows_; ++row) {
                double s = 0;
                for (int c = 0; c < cols_; ++c) s += (*this)(row, c).abs();
                best = std::max(best, s);
            }
            return best;
        }
        if (r == 2.0) {
            const int n = cols_;
            std::vector<std::complex<double>> g(size_t(n) * n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    std::complex<double> s = 0;
                    for (int k = 0; k < rows_; ++k)
                        s += std::conj((*this)(k, a).to_complex()) * (*this)(k, b).to_complex();
                    g[size_t(a) * n + b] = s;
                }
            std::vector<std::complex<double>> v(n), w(n);
            for (int k = 0; k < n; ++k) v[k] = 1.0 / std::sqrt(double(n)) * (1.0 + 0.25 * k);
            double lambda = 0;
            for (int it = 0; it < 256; ++it) {
                for (int a = 0; a < n; ++a) {
                    std::complex<double> s = 0;
                    for (int b = 0; b < n; ++b) s += g[size_t(a) * n + b] * v[b];
                    w[a] = s;
                }
                double nrm = 0;
                for (int a = 0; a < n; ++a) nrm += std::norm(w[a]);
                nrm = std::sqrt(nrm);
                if (nrm == 0) return 0;
                lambda = nrm;
                for (int a = 0; a < n; ++a) v[a] = w[a] / nrm;
            }
            return std::sqrt(lambda);
        }
        throw std::invalid_argument("induced_norm: r must be 1, 2 or inf");
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<ExactComplex> a_;

    void require_same_shape(const ConstMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }
};

}  // namespace diraclab
