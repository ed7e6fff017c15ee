#pragma once

#include "vdl/fft.hpp"
#include "vdl/fields.hpp"

namespace vdl {

VectorField curl(const VectorField& v);
SpectralField curl_spectral(const SpectralField& v);
ScalarField divergence(const VectorField& v);
VectorField gradient(const ScalarField& f);
SpectralField gradient_spectral(const SpectralScalar& f);

// orthogonal projection onto divergence-free fields (k=0 mode untouched)
VectorField leray_project(const VectorField& v);
void leray_project_inplace(SpectralField& v);

// unique mean-free u with -laplace(u) = curl(omega); nonzero omega means are
// dropped with a warning
VectorField biot_savart(const VectorField& omega);
SpectralField biot_savart_spectral(const SpectralField& omega);

// two-thirds rule: zero every mode with any |k_i| > n/3
void dealias_inplace(SpectralField& v);
void dealias_inplace(SpectralScalar& f);
bool mode_kept_by_dealias(int mx, int my, int mz, int n);

struct RieszBackend {
    enum class Kind { multiplier, direct_sum };
    Kind kind = Kind::multiplier;
    int images = 2; // direct-sum image truncation radius

    static RieszBackend multiplier() { return {Kind::multiplier, 0}; }
    static RieszBackend direct_sum(int images = 2) { return {Kind::direct_sum, images}; }

private:
    RieszBackend(Kind k, int im) : kind(k), images(im) {}
};

// dimensional constant of the Riesz symbol: |x|^{beta-3} has Fourier transform
// gamma(beta) |k|^{-beta}
double riesz_gamma(double beta);

// I(x) = integral of f(y) / |x-y|^{3-beta}. The multiplier backend applies
// gamma(beta)|k|^{-beta} with the k=0 mode zeroed (mean-free convention).
// The direct-sum backend sums f(y) cellvol / dist^{3-beta} over nearest images
// within the truncation radius; the self term uses the equal-volume-ball
// integral and cells within 3h of the singularity use exact cell averages of
// the kernel (cell-center sampling alone misses the 1e-2 backend-agreement
// budget at n=16).
ScalarField riesz_potential(const ScalarField& f, double beta, const RieszBackend& backend);

// kernel table W with direct_sum(f) = cellvol * circular_convolution(f, W);
// exposed for tests (the naive O(n^6) sum is the test oracle)
ScalarField riesz_direct_kernel_table(const GridSpec& grid, double beta, int images);

} // namespace vdl
