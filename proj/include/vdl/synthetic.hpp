#pragma once

#include <cstdint>
#include <functional>

#include "vdl/fields.hpp"

namespace vdl {

// real zero-mean random field with Fourier support |m| <= kmax (Euclidean)
ScalarField random_band_limited_scalar(const GridSpec& grid, int kmax, std::uint64_t seed);

// divergence-free, mean-free random velocity with the same band
SpectralField random_band_limited_velocity_hat(const GridSpec& grid, int kmax,
                                               std::uint64_t seed);
VectorField random_band_limited_velocity(const GridSpec& grid, int kmax, std::uint64_t seed);

// unit direction field rotating in the xy-plane by g(x): (cos g, sin g, 0)
VectorField direction_field(const GridSpec& grid, const std::function<double(double)>& g);

} // namespace vdl
