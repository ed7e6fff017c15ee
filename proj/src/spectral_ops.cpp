#include "vdl/spectral_ops.hpp"

#include <cmath>
#include <numbers>

namespace vdl {
namespace {

constexpr double pi = std::numbers::pi;

// derivative wavenumber: Nyquist mode zeroed (odd-order spectral derivative)
inline double deriv_wavenumber(int j, int n, double l) {
    int m = wavenumber(j, n);
    if (2 * m == n) return 0.0;
    return 2.0 * pi * m / l;
}

} // namespace

SpectralField curl_spectral(const SpectralField& v) {
    const GridSpec& g = v.grid;
    const int n = g.n;
    SpectralField out(g);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = deriv_wavenumber(ix, n, g.l);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = deriv_wavenumber(iy, n, g.l);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = deriv_wavenumber(iz, n, g.l);
                const std::size_t i = g.idx(ix, iy, iz);
                const cplx I(0.0, 1.0);
                out.c[0][i] = I * (ky * v.c[2][i] - kz * v.c[1][i]);
                out.c[1][i] = I * (kz * v.c[0][i] - kx * v.c[2][i]);
                out.c[2][i] = I * (kx * v.c[1][i] - ky * v.c[0][i]);
            }
        }
    }
    return out;
}

VectorField curl(const VectorField& v) {
    check_finite(v, "curl");
    SpectralField vh = fft_forward(v);
    return fft_inverse(curl_spectral(vh));
}

ScalarField divergence(const VectorField& v) {
    check_finite(v, "divergence");
    const GridSpec& g = v.grid;
    SpectralField vh = fft_forward(v);
    SpectralScalar dh(g);
    const int n = g.n;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = deriv_wavenumber(ix, n, g.l);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = deriv_wavenumber(iy, n, g.l);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = deriv_wavenumber(iz, n, g.l);
                const std::size_t i = g.idx(ix, iy, iz);
                dh.m[i] = cplx(0.0, 1.0) *
                          (kx * vh.c[0][i] + ky * vh.c[1][i] + kz * vh.c[2][i]);
            }
        }
    }
    return fft_inverse(dh);
}

SpectralField gradient_spectral(const SpectralScalar& f) {
    const GridSpec& g = f.grid;
    SpectralField out(g);
    const int n = g.n;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = deriv_wavenumber(ix, n, g.l);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = deriv_wavenumber(iy, n, g.l);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = deriv_wavenumber(iz, n, g.l);
                const std::size_t i = g.idx(ix, iy, iz);
                const cplx I(0.0, 1.0);
                out.c[0][i] = I * kx * f.m[i];
                out.c[1][i] = I * ky * f.m[i];
                out.c[2][i] = I * kz * f.m[i];
            }
        }
    }
    return out;
}

VectorField gradient(const ScalarField& f) {
    check_finite(f, "gradient");
    return fft_inverse(gradient_spectral(fft_forward(f)));
}

void leray_project_inplace(SpectralField& v) {
    const GridSpec& g = v.grid;
    const int n = g.n;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = deriv_wavenumber(ix, n, g.l);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = deriv_wavenumber(iy, n, g.l);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = deriv_wavenumber(iz, n, g.l);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t i = g.idx(ix, iy, iz);
                const cplx kv = kx * v.c[0][i] + ky * v.c[1][i] + kz * v.c[2][i];
                v.c[0][i] -= kx * kv / k2;
                v.c[1][i] -= ky * kv / k2;
                v.c[2][i] -= kz * kv / k2;
            }
        }
    }
}

VectorField leray_project(const VectorField& v) {
    check_finite(v, "leray_project");
    SpectralField vh = fft_forward(v);
    leray_project_inplace(vh);
    return fft_inverse(vh);
}

SpectralField biot_savart_spectral(const SpectralField& omega) {
    const GridSpec& g = omega.grid;
    const int n = g.n;
    const double mean_scale = std::abs(omega.c[0][0]) + std::abs(omega.c[1][0]) +
                              std::abs(omega.c[2][0]);
    if (mean_scale > 1e-13) warn("biot_savart: dropping nonzero vorticity mean");
    SpectralField out(g);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = deriv_wavenumber(ix, n, g.l);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = deriv_wavenumber(iy, n, g.l);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = deriv_wavenumber(iz, n, g.l);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t i = g.idx(ix, iy, iz);
                const cplx I(0.0, 1.0);
                out.c[0][i] = I * (ky * omega.c[2][i] - kz * omega.c[1][i]) / k2;
                out.c[1][i] = I * (kz * omega.c[0][i] - kx * omega.c[2][i]) / k2;
                out.c[2][i] = I * (kx * omega.c[1][i] - ky * omega.c[0][i]) / k2;
            }
        }
    }
    return out;
}

VectorField biot_savart(const VectorField& omega) {
    check_finite(omega, "biot_savart");
    return fft_inverse(biot_savart_spectral(fft_forward(omega)));
}

bool mode_kept_by_dealias(int mx, int my, int mz, int n) {
    return 3 * std::abs(mx) <= n && 3 * std::abs(my) <= n && 3 * std::abs(mz) <= n;
}

namespace {

template <class Apply>
void for_each_mode(const GridSpec& g, Apply&& apply) {
    const int n = g.n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz)
                apply(wavenumber(ix, n), wavenumber(iy, n), wavenumber(iz, n),
                      g.idx(ix, iy, iz));
}

} // namespace

void dealias_inplace(SpectralField& v) {
    for_each_mode(v.grid, [&](int mx, int my, int mz, std::size_t i) {
        if (!mode_kept_by_dealias(mx, my, mz, v.grid.n))
            for (int d = 0; d < 3; ++d) v.c[d][i] = cplx{};
    });
}

void dealias_inplace(SpectralScalar& f) {
    for_each_mode(f.grid, [&](int mx, int my, int mz, std::size_t i) {
        if (!mode_kept_by_dealias(mx, my, mz, f.grid.n)) f.m[i] = cplx{};
    });
}

double riesz_gamma(double beta) {
    return std::pow(pi, 1.5) * std::pow(2.0, beta) * std::tgamma(beta / 2.0) /
           std::tgamma((3.0 - beta) / 2.0);
}

namespace {

// exact average of |y|^{beta-3} over the cube of side h centered at c,
// by midpoint subdivision (the integrand is smooth at distance >= h)
double kernel_cell_average(double cx, double cy, double cz, double h, double beta) {
    constexpr int sub = 16;
    double acc = 0.0;
    for (int a = 0; a < sub; ++a) {
        const double x = cx + ((a + 0.5) / sub - 0.5) * h;
        for (int b = 0; b < sub; ++b) {
            const double y = cy + ((b + 0.5) / sub - 0.5) * h;
            for (int c = 0; c < sub; ++c) {
                const double z = cz + ((c + 0.5) / sub - 0.5) * h;
                acc += std::pow(std::sqrt(x * x + y * y + z * z), beta - 3.0);
            }
        }
    }
    return acc / (static_cast<double>(sub) * sub * sub);
}

ScalarField riesz_multiplier_apply(const ScalarField& f, double beta) {
    const GridSpec& g = f.grid;
    SpectralScalar fh = fft_forward(f);
    const double gamma = riesz_gamma(beta);
    const double two_pi_over_l = 2.0 * pi / g.l;
    for_each_mode(g, [&](int mx, int my, int mz, std::size_t i) {
        const double k2 = static_cast<double>(mx) * mx + static_cast<double>(my) * my +
                          static_cast<double>(mz) * mz;
        if (k2 == 0.0) {
            fh.m[i] = cplx{};
            return;
        }
        const double kmag = two_pi_over_l * std::sqrt(k2);
        fh.m[i] *= gamma * std::pow(kmag, -beta);
    });
    return fft_inverse(fh);
}

} // namespace

ScalarField riesz_direct_kernel_table(const GridSpec& g, double beta, int images) {
    const int n = g.n;
    const double h = g.h();
    ScalarField W(g);
    for (int ix = 0; ix < n; ++ix) {
        const double dx = wavenumber(ix, n) * h;
        for (int iy = 0; iy < n; ++iy) {
            const double dy = wavenumber(iy, n) * h;
            for (int iz = 0; iz < n; ++iz) {
                const double dz = wavenumber(iz, n) * h;
                double acc = 0.0;
                for (int mx = -images; mx <= images; ++mx)
                    for (int my = -images; my <= images; ++my)
                        for (int mz = -images; mz <= images; ++mz) {
                            const double rx = dx + g.l * mx;
                            const double ry = dy + g.l * my;
                            const double rz = dz + g.l * mz;
                            const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
                            if (r > 0.0) acc += std::pow(r, beta - 3.0);
                        }
                W.v[g.idx(ix, iy, iz)] = acc;
            }
        }
    }
    // near-singularity cells: replace the nearest-image center sample by the
    // exact cell average (wrapped distance <= 3h, well inside l/2)
    constexpr int near_r = 3;
    for (int ox = -near_r; ox <= near_r; ++ox)
        for (int oy = -near_r; oy <= near_r; ++oy)
            for (int oz = -near_r; oz <= near_r; ++oz) {
                const int d2 = ox * ox + oy * oy + oz * oz;
                if (d2 == 0 || d2 > near_r * near_r) continue;
                const std::size_t i =
                    g.idx((ox + n) % n, (oy + n) % n, (oz + n) % n);
                const double center = std::pow(std::sqrt(double(d2)) * h, beta - 3.0);
                W.v[i] += kernel_cell_average(ox * h, oy * h, oz * h, h, beta) - center;
            }
    // self term: integral over the equal-volume ball, (4 pi / beta) h_b^beta
    // with h_b = (3 cellvol / 4 pi)^{1/3}
    const double hb = std::cbrt(3.0 * g.cell_vol() / (4.0 * pi));
    W.v[0] += (4.0 * pi / beta) * std::pow(hb, beta) / g.cell_vol();
    return W;
}

ScalarField riesz_potential(const ScalarField& f, double beta, const RieszBackend& backend) {
    if (!(beta > 0.0 && beta < 3.0)) throw domain_error("riesz_potential: beta outside (0,3)");
    check_finite(f, "riesz_potential");
    ScalarField g = f;
    bool negative = false;
    for (double& x : g.v)
        if (x < 0.0) {
            negative = true;
            x = -x;
        }
    if (negative) warn("riesz_potential: negative entries replaced by absolute values");

    if (backend.kind == RieszBackend::Kind::multiplier) return riesz_multiplier_apply(g, beta);

    if (backend.images < 0) throw domain_error("riesz_potential: negative image radius");
    // circular convolution with the kernel table, evaluated spectrally;
    // equal to the literal nearest-image sum at roundoff
    ScalarField W = riesz_direct_kernel_table(g.grid, beta, backend.images);
    SpectralScalar gh = fft_forward(g);
    SpectralScalar wh = fft_forward(W);
    const double nvol = static_cast<double>(g.grid.size());
    for (std::size_t i = 0; i < gh.m.size(); ++i)
        gh.m[i] *= wh.m[i] * nvol * g.grid.cell_vol();
    return fft_inverse(gh);
}

} // namespace vdl
