#pragma once

#include "vdl/fields.hpp"

namespace vdl {

// In-order c2c transforms with FFTW_ESTIMATE plans (kept deterministic and
// plan-independent so serial reruns are bit-identical). Forward divides by n^3,
// giving series coefficients; inverse is the plain synthesis sum.
SpectralScalar fft_forward(const ScalarField& f);
ScalarField fft_inverse(const SpectralScalar& s);
SpectralField fft_forward(const VectorField& f);
VectorField fft_inverse(const SpectralField& s);

} // namespace vdl
