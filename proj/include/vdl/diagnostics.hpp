#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vdl/solver.hpp"
#include "vdl/spectral_ops.hpp"

namespace vdl {

struct AnglePairSample {
    std::size_t x_index = 0;
    std::size_t y_index = 0;
    double separation = 0.0; // nearest-image distance
    double sin_theta = 0.0;
};

// |w(i) x w(j)| / (|w(i)||w(j)|), clamped to [0,1]
double sin_theta(const VectorField& omega, std::size_t i, std::size_t j);

struct HolderParams {
    double k_threshold = 0.0; // absolute magnitude threshold
    double delta_max = 0.0;   // 0 -> l/4
    long n_pairs = 200000;
    double quantile = 0.95;
    int n_bins = 12;
    std::uint64_t seed = 0;
};

struct HolderFit {
    double beta_hat = 0.0;
    double c_hat = 0.0;
    long n_pairs = 0;
    double quantile = 0.95;
    std::vector<double> separations; // per-bin geometric mean separation
    std::vector<double> bin_values;  // per-bin sin_theta quantile
    double fit_residual = 0.0;       // rms log-space residual
    bool degenerate = false;         // direction field constant, beta_hat unset
    bool clipped = false;            // beta_hat clipped to [0, 2]
};

// samples index pairs uniformly (point + offset within delta_max), rejects by
// magnitude threshold, takes the per-bin quantile of sin_theta over log-spaced
// separation bins and least-squares fits log(value) = log(c) + beta log(sep)
HolderFit estimate_holder(const VectorField& omega, const HolderParams& params);

// K(x) = sum_ij w_i d_i(u_j) w_j, gradients spectral
ScalarField kernel_K(const VectorField& u, const VectorField& omega);

// minimal empirical c with |K| <= c |w|^2 I(|w|) over points above floor;
// I uses the direct-sum backend
double riesz_bound_constant(const VectorField& u, const VectorField& omega, double beta,
                            int images = 2);

// integral of (eps + |w|^2)^{1-alpha}, alpha in [0,1/2], eps >= 0
double generalized_enstrophy(const VectorField& omega, double alpha, double epsilon);

// smoothed magnitude sqrt(|w|^2 + eps_mag), eps_mag = 1e-12 max|w|
ScalarField smoothed_magnitude(const VectorField& omega);

// ||grad(|w|^{1-alpha})||_2^2 with the smoothed magnitude
double grad_power_norm_sq(const VectorField& omega, double alpha);

struct BalanceReport {
    double ddt_term = 0.0;      // (1/(2(1-alpha))) d/dt int (eps+|w|^2)^{1-alpha}
    double dissipation = 0.0;   // nu int f_eps |grad w|^2
    double weight_term = 0.0;   // 2 nu int f_eps' |w|^2 |grad |w||^2
    double production = 0.0;    // int f_eps K
    double residual = 0.0;      // |lhs - rhs| / max term
    double slack = 0.0;         // inequality slack, smoothed-magnitude form
};

// centered differencing over the first three consecutive states (the end
// formula is second order also for an uneven final step); nu defaults to the
// unit-viscosity normalization the balance is usually quoted in
BalanceReport balance_terms(const std::vector<SimState>& window, double alpha, double epsilon,
                            double nu = 1.0);
double balance_residual(const std::vector<SimState>& window, double alpha, double epsilon,
                        double nu = 1.0);

// ||I_beta(|w|)||_q / ||w||_r_hat with 1/q = 1/r_hat - beta/3 (multiplier backend)
double riesz_mapping_ratio(const VectorField& omega, double beta, double r_hat);

struct DiagOptions {
    std::vector<double> r_list{1.5, 2.0};
    std::vector<std::pair<double, double>> alpha_eps{{0.25, 1e-6}};
    double riesz_beta = 0.5;
    int riesz_images = 2;
    bool holder = false;
    int holder_every = 1;            // in records
    double holder_k_threshold_rel = 0.1; // times max|w|
    double holder_delta_max = 0.0;   // 0 -> l/4
    long holder_pairs = 200000;
    double holder_quantile = 0.95;
    int holder_bins = 12;
    std::uint64_t holder_seed = 0;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;
    double enstrophy = 0.0;
    std::vector<std::pair<double, double>> omega_norms;                 // (r, value)
    std::vector<std::pair<std::pair<double, double>, double>> gen_enstrophy; // ((alpha,eps), value)
    double grad_term = 0.0;       // first configured alpha
    double kernel_linf = 0.0;
    double riesz_const = 0.0;
    double balance_residual = 0.0; // first configured (alpha, eps)
    std::optional<HolderFit> holder;
};

// record for the middle state of a consecutive triple
DiagnosticsRecord make_record(const SimState& prev, const SimState& mid, const SimState& next,
                              const DiagOptions& opts, bool with_holder, double nu = 1.0);

// integrate config and emit a record at t=0, every output_every-th step, and
// t_end; balance terms use the nearest interior step triple at the endpoints
using RecordHook = std::function<void(const SimState&, const DiagnosticsRecord&)>;
std::vector<DiagnosticsRecord> run_with_diagnostics(const SimConfig& config,
                                                    const DiagOptions& opts,
                                                    const RecordHook& on_record = {});

} // namespace vdl
