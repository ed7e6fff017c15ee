#include "vdl/synthetic.hpp"

#include <cmath>
#include <random>

#include "vdl/fft.hpp"
#include "vdl/spectral_ops.hpp"

namespace vdl {
namespace {

bool in_band(int mx, int my, int mz, int kmax) {
    return double(mx) * mx + double(my) * my + double(mz) * mz <=
           double(kmax) * kmax;
}

// fill modes in row-major order with unit gaussians, then hermitian-symmetrize
void fill_band(SpectralScalar& s, int kmax, std::mt19937_64& rng) {
    const int n = s.grid.n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const int mx = wavenumber(ix, n), my = wavenumber(iy, n),
                          mz = wavenumber(iz, n);
                if (!in_band(mx, my, mz, kmax)) continue;
                const double re = gauss(rng), im = gauss(rng);
                s.m[s.grid.idx(ix, iy, iz)] = cplx(re, im);
            }
    std::vector<cplx> sym(s.m.size());
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const std::size_t i = s.grid.idx(ix, iy, iz);
                const std::size_t j = s.grid.idx((n - ix) % n, (n - iy) % n, (n - iz) % n);
                sym[i] = 0.5 * (s.m[i] + std::conj(s.m[j]));
            }
    s.m.swap(sym);
    s.m[0] = 0.0;
}

} // namespace

ScalarField random_band_limited_scalar(const GridSpec& grid, int kmax, std::uint64_t seed) {
    SpectralScalar s(grid);
    std::mt19937_64 rng(seed);
    fill_band(s, kmax, rng);
    return fft_inverse(s);
}

SpectralField random_band_limited_velocity_hat(const GridSpec& grid, int kmax,
                                               std::uint64_t seed) {
    SpectralField u(grid);
    std::mt19937_64 rng(seed);
    for (int c = 0; c < 3; ++c) {
        SpectralScalar s(grid);
        fill_band(s, kmax, rng);
        u.c[c] = std::move(s.m);
    }
    leray_project_inplace(u);
    return u;
}

VectorField random_band_limited_velocity(const GridSpec& grid, int kmax, std::uint64_t seed) {
    return fft_inverse(random_band_limited_velocity_hat(grid, kmax, seed));
}

VectorField direction_field(const GridSpec& grid, const std::function<double(double)>& g) {
    VectorField d(grid);
    for (int ix = 0; ix < grid.n; ++ix) {
        const double a = g(grid.coord(ix));
        const double cx = std::cos(a), sx = std::sin(a);
        for (int iy = 0; iy < grid.n; ++iy)
            for (int iz = 0; iz < grid.n; ++iz) {
                const std::size_t i = grid.idx(ix, iy, iz);
                d.c[0][i] = cx;
                d.c[1][i] = sx;
            }
    }
    return d;
}

} // namespace vdl
