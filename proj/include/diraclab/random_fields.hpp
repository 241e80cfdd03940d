#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "diraclab/grid.hpp"
#include "diraclab/norms.hpp"
#include "diraclab/spectral.hpp"

namespace diraclab {

enum class FieldKind { bandlimited, gaussian_bump, multi_bump };

inline FieldKind field_kind_from_string(const std::string& s) {
    if (s == "bandlimited") return FieldKind::bandlimited;
    if (s == "gaussian_bump") return FieldKind::gaussian_bump;
    if (s == "multi_bump") return FieldKind::multi_bump;
    throw std::invalid_argument("unknown field kind: " + s);
}

// mt19937_64 output mapped to [0,1); normals via Box-Muller. The standard
// library distributions are not pinned across implementations, this is.
inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}
inline double gauss(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Band-limited Gaussian random field; every axis index of a populated mode
// lies within N/4, so spectral derivatives are exact to rounding.
inline VectorField random_bandlimited(const GridSpec& spec, std::mt19937_64& rng) {
    VectorField f(spec);
    const int cut = spec.N / 4;
    forward_all(f);  // zeros; establishes layout
    for (int c = 0; c < spec.m; ++c) {
        std::complex<double>* d = f.comp(c);
        for_each_mode(spec.dim, spec.N, [&](size_t flat, const std::array<int, 4>& ki) {
            for (int a = 0; a < spec.dim; ++a)
                if (std::abs(ki[a]) > cut) return;
            d[flat] = std::complex<double>(gauss(rng), gauss(rng));
        });
    }
    inverse_all(f);
    double peak = linfty_norm(f);
    if (peak > 0)
        for (auto& z : f.data) z /= peak;
    return f;
}

inline VectorField random_bumps(const GridSpec& spec, std::mt19937_64& rng, int bumps,
                                bool real_valued) {
    // centers within L/12 of the origin and widths <= L/20 keep the boundary
    // magnitude below 1e-8 of the peak (the near face sits at L/2 - h)
    struct Bump {
        std::array<double, 4> x0;
        double sigma;
        std::vector<std::complex<double>> amp;
    };
    std::vector<Bump> bs;
    for (int b = 0; b < bumps; ++b) {
        Bump bb;
        for (int a = 0; a < spec.dim; ++a)
            bb.x0[a] = (uniform01(rng) - 0.5) * spec.L / 6.0;
        bb.sigma = spec.L / 24.0 + uniform01(rng) * (spec.L / 20.0 - spec.L / 24.0);
        bb.amp.resize(spec.m);
        for (int c = 0; c < spec.m; ++c) {
            double re = gauss(rng);
            double im = real_valued ? 0.0 : gauss(rng);
            bb.amp[c] = {re, im};
        }
        bs.push_back(std::move(bb));
    }
    return sample(spec, [&](const std::array<double, 4>& x, std::complex<double>* out) {
        for (int c = 0; c < spec.m; ++c) out[c] = 0;
        for (const auto& b : bs) {
            double r2 = 0;
            for (int a = 0; a < spec.dim; ++a) {
                const double d = x[a] - b.x0[a];
                r2 += d * d;
            }
            const double g = std::exp(-r2 / (2.0 * b.sigma * b.sigma));
            for (int c = 0; c < spec.m; ++c) out[c] += b.amp[c] * g;
        }
    });
}

inline std::vector<VectorField> random_test_fields(uint64_t seed, const GridSpec& spec,
                                                   FieldKind kind, int count,
                                                   bool real_valued = false) {
    std::vector<VectorField> out;
    if (count <= 0) return out;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < count; ++k) {
        switch (kind) {
            case FieldKind::bandlimited:
                out.push_back(random_bandlimited(spec, rng));
                break;
            case FieldKind::gaussian_bump:
                out.push_back(random_bumps(spec, rng, 1, real_valued));
                break;
            case FieldKind::multi_bump:
                out.push_back(random_bumps(spec, rng, 3, real_valued));
                break;
        }
    }
    return out;
}

}  // namespace diraclab
