#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace diraclab {

struct GridSpec {
    int dim = 3;   // 2, 3 or 4
    int m = 1;     // components
    double L = 1;  // cube side
    int N = 16;    // points per axis, even

    void validate() const {
        if (dim < 2 || dim > 4) throw std::invalid_argument("GridSpec: dim must be 2..4");
        if (m < 1) throw std::invalid_argument("GridSpec: m must be positive");
        if (L <= 0) throw std::invalid_argument("GridSpec: L must be positive");
        if (N < 2 || N % 2 != 0) throw std::invalid_argument("GridSpec: N must be positive even");
        if (double(m) * std::pow(double(N), dim) > double(1ull << 28))
            throw std::invalid_argument("GridSpec: sample count exceeds the memory budget");
    }

    size_t points() const {
        size_t p = 1;
        for (int a = 0; a < dim; ++a) p *= size_t(N);
        return p;
    }
    double cell_volume() const { return std::pow(L / N, dim); }
    double h() const { return L / N; }
    double coord(int i) const { return -L / 2 + i * (L / N); }

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && m == o.m && L == o.L && N == o.N;
    }
};

// Immutable-by-convention sampled C^m-valued field, component-major storage,
// row-major over grid indices (axis 1 slowest).
struct VectorField {
    GridSpec spec;
    std::vector<std::complex<double>> data;

    VectorField() = default;
    explicit VectorField(const GridSpec& s) : spec(s) {
        spec.validate();
        data.assign(size_t(spec.m) * spec.points(), {0.0, 0.0});
    }

    size_t points() const { return spec.points(); }
    std::complex<double>* comp(int c) { return data.data() + size_t(c) * points(); }
    const std::complex<double>* comp(int c) const { return data.data() + size_t(c) * points(); }
    std::complex<double>& at(int c, size_t flat) { return data[size_t(c) * points() + flat]; }
    const std::complex<double>& at(int c, size_t flat) const {
        return data[size_t(c) * points() + flat];
    }
};

// Pointwise sampler; fn fills m complex values at the grid node x.
using PointFunc = std::function<void(const std::array<double, 4>&, std::complex<double>*)>;

inline VectorField sample(const GridSpec& spec, const PointFunc& fn) {
    VectorField f(spec);
    const int N = spec.N, dim = spec.dim;
    const size_t npts = spec.points();
    std::array<double, 4> x{0, 0, 0, 0};
    std::vector<std::complex<double>> vals(spec.m);
    std::array<int, 4> idx{0, 0, 0, 0};
    for (size_t flat = 0; flat < npts; ++flat) {
        size_t rem = flat;
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = int(rem % N);
            rem /= N;
        }
        for (int a = 0; a < dim; ++a) x[a] = spec.coord(idx[a]);
        fn(x, vals.data());
        for (int c = 0; c < spec.m; ++c) {
            if (!std::isfinite(vals[c].real()) || !std::isfinite(vals[c].imag()))
                throw std::runtime_error("sample: non-finite value from closure");
            f.at(c, flat) = vals[c];
        }
    }
    return f;
}

// max over boundary-face nodes of pointwise linf magnitude, relative to the
// global max; the decay diagnostic for fields standing in for R^n data
inline double boundary_decay_ratio(const VectorField& f) {
    const int N = f.spec.N, dim = f.spec.dim;
    const size_t npts = f.points();
    double global = 0, boundary = 0;
    for (size_t flat = 0; flat < npts; ++flat) {
        size_t rem = flat;
        bool on_boundary = false;
        for (int a = dim - 1; a >= 0; --a) {
            int i = int(rem % N);
            rem /= N;
            if (i == 0 || i == N - 1) on_boundary = true;
        }
        double mag = 0;
        for (int c = 0; c < f.spec.m; ++c) mag = std::max(mag, std::abs(f.at(c, flat)));
        global = std::max(global, mag);
        if (on_boundary) boundary = std::max(boundary, mag);
    }
    return global > 0 ? boundary / global : 0.0;
}

// --------------------------------------------------------------------------
// Snapshot format: sidecar JSON header + raw little-endian binary payload of
// 2*m*N^dim doubles, row-major over the grid with the component index minor.
// --------------------------------------------------------------------------

inline void save_snapshot(const VectorField& f, const std::string& path_base) {
    nlohmann::json h;
    h["dim"] = f.spec.dim;
    h["m"] = f.spec.m;
    h["L"] = f.spec.L;
    h["N"] = f.spec.N;
    h["layout"] = "row-major, component-minor";
    h["dtype"] = "f64 interleaved re/im, little-endian";
    std::ofstream hdr(path_base + ".json");
    if (!hdr) throw std::runtime_error("save_snapshot: cannot open header " + path_base);
    hdr << h.dump(2) << "\n";

    std::ofstream bin(path_base + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("save_snapshot: cannot open payload " + path_base);
    const size_t npts = f.points();
    std::vector<double> row(2 * f.spec.m);
    for (size_t flat = 0; flat < npts; ++flat) {
        for (int c = 0; c < f.spec.m; ++c) {
            row[2 * c] = f.at(c, flat).real();
            row[2 * c + 1] = f.at(c, flat).imag();
        }
        bin.write(reinterpret_cast<const char*>(row.data()), sizeof(double) * row.size());
    }
}

inline VectorField load_snapshot(const std::string& path_base) {
    std::ifstream hdr(path_base + ".json");
    if (!hdr) throw std::runtime_error("load_snapshot: missing header " + path_base);
    nlohmann::json h = nlohmann::json::parse(hdr);
    GridSpec spec;
    spec.dim = h.at("dim").get<int>();
    spec.m = h.at("m").get<int>();
    spec.L = h.at("L").get<double>();
    spec.N = h.at("N").get<int>();
    VectorField f(spec);
    std::ifstream bin(path_base + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("load_snapshot: missing payload " + path_base);
    const size_t npts = f.points();
    std::vector<double> row(2 * spec.m);
    for (size_t flat = 0; flat < npts; ++flat) {
        bin.read(reinterpret_cast<char*>(row.data()), sizeof(double) * row.size());
        if (!bin) throw std::runtime_error("load_snapshot: truncated payload");
        for (int c = 0; c < spec.m; ++c) f.at(c, flat) = {row[2 * c], row[2 * c + 1]};
    }
    return f;
}

}  // namespace diraclab
