#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "vdl/errors.hpp"

namespace vdl {

// Uniform periodic grid on [0,l)^3, n points per axis, points x_i = i*l/n.
// Row-major storage with axis order x,y,z: index = (ix*n + iy)*n + iz.
struct GridSpec {
    int n = 0;
    double l = 2.0 * std::numbers::pi;

    GridSpec() = default;
    GridSpec(int n_, double l_ = 2.0 * std::numbers::pi) : n(n_), l(l_) {
        if (n < 4) throw domain_error("GridSpec: n must be >= 4");
        if (!(l > 0.0)) throw domain_error("GridSpec: l must be > 0");
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double h() const { return l / n; }
    double cell_vol() const { return h() * h() * h(); }
    double volume() const { return l * l * l; }
    std::size_t idx(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }
    double coord(int i) const { return i * h(); }

    bool operator==(const GridSpec& o) const { return n == o.n && l == o.l; }
};

struct ScalarField {
    GridSpec grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}

    double& operator()(int ix, int iy, int iz) { return v[grid.idx(ix, iy, iz)]; }
    double operator()(int ix, int iy, int iz) const { return v[grid.idx(ix, iy, iz)]; }
};

struct VectorField {
    GridSpec grid;
    std::array<std::vector<double>, 3> c;

    VectorField() = default;
    explicit VectorField(const GridSpec& g)
        : grid(g), c{std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 0.0),
                     std::vector<double>(g.size(), 0.0)} {}

    double magnitude_at(std::size_t i) const {
        return std::sqrt(c[0][i] * c[0][i] + c[1][i] * c[1][i] + c[2][i] * c[2][i]);
    }
};

using cplx = std::complex<double>;

// Fourier coefficients c_k with field(x) = sum_k c_k exp(i kappa . x),
// kappa = (2 pi / l) m, integer m per axis in (-n/2, n/2], same row-major layout.
struct SpectralScalar {
    GridSpec grid;
    std::vector<cplx> m;

    SpectralScalar() = default;
    explicit SpectralScalar(const GridSpec& g) : grid(g), m(g.size(), cplx{}) {}
};

struct SpectralField {
    GridSpec grid;
    std::array<std::vector<cplx>, 3> c;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g)
        : grid(g), c{std::vector<cplx>(g.size(), cplx{}), std::vector<cplx>(g.size(), cplx{}),
                     std::vector<cplx>(g.size(), cplx{})} {}
};

// integer wavenumber of row index j
inline int wavenumber(int j, int n) { return j <= n / 2 ? j : j - n; }

double lp_norm(const ScalarField& f, double r);
double lp_norm(const VectorField& f, double r);
double linf_norm(const ScalarField& f);
double linf_norm(const VectorField& f);

// midpoint-rule integral: cellvol * sum of values
double integral(const ScalarField& f);

void check_finite(const ScalarField& f, const char* what);
void check_finite(const VectorField& f, const char* what);

} // namespace vdl
