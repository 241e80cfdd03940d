#pragma once

#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "diraclab/clifford.hpp"
#include "diraclab/grid.hpp"

namespace diraclab {

// Plan cache for in-place c2c transforms. Data is staged through the plan's
// own aligned buffer, so caller storage never constrains alignment. Planning
// is serialized; execution happens on the scratch under the same lock, which
// keeps results independent of caller threading.
class Fft {
public:
    static void transform(int dim, int N, std::complex<double>* data, int sign) {
        static Fft inst;
        inst.run(dim, N, data, sign);
    }

private:
    struct Entry {
        fftw_plan plan = nullptr;
        fftw_complex* buf = nullptr;
        size_t n = 0;
    };
    std::map<std::tuple<int, int, int>, Entry> cache_;
    std::mutex mu_;

    ~Fft() {
        for (auto& [k, e] : cache_) {
            fftw_destroy_plan(e.plan);
            fftw_free(e.buf);
        }
    }

    void run(int dim, int N, std::complex<double>* data, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(dim, N, sign);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            Entry e;
            e.n = 1;
            for (int a = 0; a < dim; ++a) e.n *= size_t(N);
            e.buf = fftw_alloc_complex(e.n);
            std::vector<int> dims(dim, N);
            e.plan = fftw_plan_dft(dim, dims.data(), e.buf, e.buf, sign, FFTW_ESTIMATE);
            if (!e.plan) throw std::runtime_error("fftw planning failed");
            it = cache_.emplace(key, e).first;
        }
        Entry& e = it->second;
        std::memcpy(e.buf, data, sizeof(fftw_complex) * e.n);
        fftw_execute(e.plan);
        std::memcpy(data, e.buf, sizeof(fftw_complex) * e.n);
    }
};

// signed frequency index: 0..N/2-1, then -N/2..-1
inline std::vector<int> freq_indices(int N) {
    std::vector<int> f(N);
    for (int i = 0; i < N; ++i) f[i] = (i <= N / 2 - 1) ? i : i - N;
    return f;
}

// walk all modes, handing the per-axis signed indices to fn(flat, idx)
template <class Fn>
inline void for_each_mode(int dim, int N, Fn&& fn) {
    auto f = freq_indices(N);
    std::array<int, 4> idx{0, 0, 0, 0};
    if (dim == 2) {
        size_t flat = 0;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b, ++flat) {
                idx[0] = f[a]; idx[1] = f[b];
                fn(flat, idx);
            }
    } else if (dim == 3) {
        size_t flat = 0;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int c = 0; c < N; ++c, ++flat) {
                    idx[0] = f[a]; idx[1] = f[b]; idx[2] = f[c];
                    fn(flat, idx);
                }
    } else if (dim == 4) {
        size_t flat = 0;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int c = 0; c < N; ++c)
                    for (int d = 0; d < N; ++d, ++flat) {
                        idx[0] = f[a]; idx[1] = f[b]; idx[2] = f[c]; idx[3] = f[d];
                        fn(flat, idx);
                    }
    } else {
        throw std::invalid_argument("for_each_mode: dim must be 2..4");
    }
}

inline void forward_all(VectorField& f) {
    for (int c = 0; c < f.spec.m; ++c)
        Fft::transform(f.spec.dim, f.spec.N, f.comp(c), FFTW_FORWARD);
}
inline void inverse_all(VectorField& f) {
    const double scale = 1.0 / double(f.points());
    for (int c = 0; c < f.spec.m; ++c) {
        Fft::transform(f.spec.dim, f.spec.N, f.comp(c), FFTW_BACKWARD);
        std::complex<double>* d = f.comp(c);
        for (size_t k = 0; k < f.points(); ++k) d[k] *= scale;
    }
}

// spectral d/dx_j, axis 1-based; Nyquist mode zeroed (odd multiplier)
inline VectorField partial_derivative(const VectorField& f, int axis) {
    if (axis < 1 || axis > f.spec.dim) throw std::invalid_argument("partial_derivative: axis");
    VectorField g = f;
    forward_all(g);
    const double k0 = 2.0 * M_PI / f.spec.L;
    const int half = f.spec.N / 2;
    for (int c = 0; c < f.spec.m; ++c) {
        std::complex<double>* d = g.comp(c);
        for_each_mode(f.spec.dim, f.spec.N, [&](size_t flat, const std::array<int, 4>& ki) {
            int m = ki[axis - 1];
            double k = (m == -half) ? 0.0 : k0 * m;
            d[flat] *= std::complex<double>(0.0, k);
        });
    }
    inverse_all(g);
    return g;
}

// g_r = sum_c S_{rc}(p) f_c with p_j acting as the real multiplier k_j
// (p_j = -i d_j). Odd multipliers, so each axis' Nyquist mode is dropped.
inline VectorField apply_symbol(const SymbolMatrix& s, const VectorField& f) {
    if (s.cols() != f.spec.m) throw std::invalid_argument("apply_symbol: component mismatch");
    if (s.max_symbol_index() > f.spec.dim)
        throw std::invalid_argument("apply_symbol: symbol index outside field dimension");
    VectorField spectra = f;
    forward_all(spectra);

    GridSpec out_spec = f.spec;
    out_spec.m = s.rows();
    VectorField g(out_spec);
    const double k0 = 2.0 * M_PI / f.spec.L;
    const int half = f.spec.N / 2;
    for (int r = 0; r < s.rows(); ++r) {
        std::complex<double>* out = g.comp(r);
        for (int c = 0; c < s.cols(); ++c) {
            const SymbolEntry& e = s(r, c);
            if (e.is_zero()) continue;
            const std::complex<double>* in = spectra.comp(c);
            for (const auto& [p_index, coeff] : e.terms()) {
                const std::complex<double> z = coeff.to_complex();
                const int ax = p_index - 1;
                for_each_mode(f.spec.dim, f.spec.N,
                              [&](size_t flat, const std::array<int, 4>& ki) {
                                  int m = ki[ax];
                                  if (m == -half) return;
                                  out[flat] += z * (k0 * m) * in[flat];
                              });
            }
        }
    }
    inverse_all(g);
    return g;
}

// heat semigroup P_t = e^{t Delta}: multiplier e^{-t|k|^2} per component
inline VectorField heat_semigroup(const VectorField& f, double t) {
    if (!(t > 0)) throw std::invalid_argument("heat_semigroup: t must be positive");
    VectorField g = f;
    forward_all(g);
    const double k0 = 2.0 * M_PI / f.spec.L;
    for (int c = 0; c < f.spec.m; ++c) {
        std::complex<double>* d = g.comp(c);
        for_each_mode(f.spec.dim, f.spec.N, [&](size_t flat, const std::array<int, 4>& ki) {
            double k2 = 0;
            for (int a = 0; a < f.spec.dim; ++a) k2 += double(ki[a]) * ki[a];
            d[flat] *= std::exp(-t * k0 * k0 * k2);
        });
    }
    inverse_all(g);
    return g;
}

// Riesz transform R_j: multiplier i k_j / |k|; zero mode and Nyquist dropped
inline VectorField riesz_transform(const VectorField& f, int axis) {
    if (axis < 1 || axis > f.spec.dim) throw std::invalid_argument("riesz_transform: axis");
    VectorField g = f;
    forward_all(g);
    const int half = f.spec.N / 2;
    for (int c = 0; c < f.spec.m; ++c) {
        std::complex<double>* d = g.comp(c);
        for_each_mode(f.spec.dim, f.spec.N, [&](size_t flat, const std::array<int, 4>& ki) {
            double k2 = 0;
            for (int a = 0; a < f.spec.dim; ++a) k2 += double(ki[a]) * ki[a];
            int m = ki[axis - 1];
            if (k2 == 0 || m == -half) {
                d[flat] = 0;
                return;
            }
            d[flat] *= std::complex<double>(0.0, m / std::sqrt(k2));
        });
    }
    inverse_all(g);
    return g;
}

// left-multiply by a constant matrix: (Mf)_r = sum_c M_rc f_c
inline VectorField apply_matrix(const ConstMatrix& mat, const VectorField& f) {
    if (mat.cols() != f.spec.m) throw std::invalid_argument("apply_matrix: shape mismatch");
    GridSpec out_spec = f.spec;
    out_spec.m = mat.rows();
    VectorField g(out_spec);
    for (int r = 0; r < mat.rows(); ++r)
        for (int c = 0; c < mat.cols(); ++c) {
            if (mat(r, c).is_zero()) continue;
            const std::complex<double> z = mat(r, c).to_complex();
            const std::complex<double>* in = f.comp(c);
            std::complex<double>* out = g.comp(r);
            for (size_t k = 0; k < f.points(); ++k) out[k] += z * in[k];
        }
    return g;
}

}  // namespace diraclab
