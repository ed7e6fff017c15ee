#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vdl/spectral_ops.hpp"

namespace vdl {

struct InitSpec {
    enum class Kind { taylor_green, abc, random };
    Kind kind = Kind::taylor_green;
    double A = 1.0, B = 1.0, C = 1.0; // abc
    double slope = -2.0;              // random: E(k) ~ k^slope
    double energy = 1.0;              // random: total kinetic energy
    std::uint64_t seed = 0;           // random

    static InitSpec parse(const std::string& text); // "taylor-green" | "abc(1,1,1)" | "random(-2,1,7)"
    std::string to_string() const;
};

struct SimConfig {
    GridSpec grid;
    double nu = 1.0;
    double dt = 1e-3;
    double t_end = 0.1;
    InitSpec init;
    bool dealias = true;
    int output_every = 10;
    double cfl_safety = 0.5;
};

struct SimState {
    double t = 0.0;
    SpectralField uhat;
    long step_index = 0;
};

SimState init_taylor_green(const GridSpec& grid);
SimState init_abc(const GridSpec& grid, double A, double B, double C);
SimState init_random(const GridSpec& grid, double slope, double energy, std::uint64_t seed);
SimState init_state(const GridSpec& grid, const InitSpec& spec);

// -P[dealias(fft(omega x u))], the rotational-form nonlinear term
SpectralField nonlinear_term(const SpectralField& uhat, bool dealias);

// one integrating-factor RK4 step of size dt (viscous part exact per mode);
// with_nonlinearity=false drops the nonlinear term (heat-equation oracle hook)
SimState step(const SimState& state, const SimConfig& config, bool with_nonlinearity = true);

double kinetic_energy(const SimState& state);  // (1/2) int |u|^2
double enstrophy(const SimState& state);       // int |omega|^2
double max_velocity(const SimState& state);
VectorField velocity_field(const SimState& state);
VectorField vorticity_field(const SimState& state);

// integrates to t_end; calls the hook at t=0, after every output_every-th
// step, and at t_end
using RunHook = std::function<void(const SimState&)>;
void run(const SimConfig& config, const RunHook& hook);

} // namespace vdl
