#include "vdl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace vdl {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// One reusable in-place plan pair per grid size. FFTW_ESTIMATE keeps planning
// deterministic (no runtime measurement) so results never depend on machine state.
PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mu;
    static std::vector<cplx> scratch;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::size_t total = static_cast<std::size_t>(n) * n * n;
    if (scratch.size() < total) scratch.resize(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.fwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags);
    return cache.emplace(n, p).first->second;
}

void run(fftw_plan plan, std::vector<cplx>& data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace

SpectralScalar fft_forward(const ScalarField& f) {
    SpectralScalar out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.m[i] = cplx(f.v[i], 0.0);
    run(plans_for(f.grid.n).fwd, out.m);
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (auto& z : out.m) z *= scale;
    return out;
}

ScalarField fft_inverse(const SpectralScalar& s) {
    std::vector<cplx> work = s.m;
    run(plans_for(s.grid.n).bwd, work);
    ScalarField out(s.grid);
    for (std::size_t i = 0; i < work.size(); ++i) out.v[i] = work[i].real();
    return out;
}

SpectralField fft_forward(const VectorField& f) {
    SpectralField out(f.grid);
    for (int d = 0; d < 3; ++d) {
        std::vector<cplx>& m = out.c[d];
        for (std::size_t i = 0; i < f.c[d].size(); ++i) m[i] = cplx(f.c[d][i], 0.0);
        run(plans_for(f.grid.n).fwd, m);
        const double scale = 1.0 / static_cast<double>(f.grid.size());
        for (auto& z : m) z *= scale;
    }
    return out;
}

VectorField fft_inverse(const SpectralField& s) {
    VectorField out(s.grid);
    for (int d = 0; d < 3; ++d) {
        std::vector<cplx> work = s.c[d];
        run(plans_for(s.grid.n).bwd, work);
        for (std::size_t i = 0; i < work.size(); ++i) out.c[d][i] = work[i].real();
    }
    return out;
}

} // namespace vdl
