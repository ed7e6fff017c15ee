// Acceptance gate: every criterion below prints one PASS/FAIL line with the
// measured value and its pinned tolerance; the process exits 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vdl/checkpoint.hpp"
#include "vdl/commands.hpp"
#include "vdl/diagnostics.hpp"
#include "vdl/exponents.hpp"
#include "vdl/synthetic.hpp"

using namespace vdl;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

int failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  criterion %d: %s  [%s]\n", ok ? "PASS" : "FAIL", num, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

void criterion_beta_scan() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Rat> grid{Rat(5, 4), Rat(4, 3), Rat(3, 2), Rat(7, 4), Rat(2)};
    ScanReport rep = feasibility_scan(grid, 12);
    bool ok = rep.entries.size() == grid.size();
    for (const auto& e : rep.entries)
        ok = ok && e.tuple_count > 0 && e.chain_consistent &&
             e.attainable_beta == std::vector<Rat>{Rat(1, 2)};
    ok = ok && rep.attainable_beta == std::vector<Rat>{Rat(1, 2)};
    const double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    report(1, "attainable beta under the coupling constraints is exactly {1/2}", ok,
           "set=" + (rep.attainable_beta.size() == 1 ? rat_str(rep.attainable_beta[0])
                                                     : std::to_string(rep.attainable_beta.size()) +
                                                           " values") +
               " (exact rational equality), runtime=" + fmt(dt) + "s < 10s");
}

// ---------------------------------------------------------------- criterion 2

void criterion_classical_tuple() {
    CoupledWeightFamily fam(Rat(2));
    const InterpolationWeights w = fam.natural();
    const auto [qpr, rhat] = interpolation_exponents(Rat(2), w);
    const Rat beta = beta_of(Rat(2), w);
    const Rat q = riesz_q_of(rhat, beta);
    const Rat qp = q_prime_of(rhat, beta);
    ExponentTuple t = build_tuple(Rat(2), w);
    const bool ok = qpr == Rat(3) && rhat == Rat(2) && beta == Rat(1, 2) && q == Rat(3) &&
                    qp == Rat(3, 2) && t.consistent &&
                    t.str() == "(2, 1/2, 2, 3, 3/2)";
    report(2, "natural-weight chain reproduces the tuple (2, 1/2, 2, 3, 3/2)", ok,
           "tuple=" + t.str() + " (exact)");
}

// ---------------------------------------------------------------- criterion 3

double abc_decay_error(double dt_step) {
    SimConfig cfg;
    cfg.grid = GridSpec(16);
    cfg.nu = 1.0;
    cfg.dt = dt_step;
    cfg.t_end = 0.1;
    cfg.init = InitSpec::parse("abc(1,1,1)");
    SimState st = init_state(cfg.grid, cfg.init);
    const VectorField u0 = velocity_field(st);
    while (st.t < cfg.t_end - 1e-12) {
        SimConfig c = cfg;
        c.dt = std::min(cfg.dt, cfg.t_end - st.t);
        st = step(st, c);
    }
    const VectorField u = velocity_field(st);
    const double decay = std::exp(-cfg.nu * st.t);
    double err = 0.0, scale = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < u.grid.size(); ++i) {
            err = std::max(err, std::abs(u.c[d][i] - decay * u0.c[d][i]));
            scale = std::max(scale, std::abs(decay * u0.c[d][i]));
        }
    return err / scale;
}

SimState taylor_green_at(double dt_step, double t_end) {
    SimConfig cfg;
    cfg.grid = GridSpec(16);
    cfg.nu = 0.05;
    cfg.dt = dt_step;
    cfg.t_end = t_end;
    cfg.init = InitSpec::parse("taylor-green");
    SimState st = init_state(cfg.grid, cfg.init);
    while (st.t < t_end - 1e-12) {
        SimConfig c = cfg;
        c.dt = std::min(dt_step, t_end - st.t);
        st = step(st, c);
    }
    return st;
}

double state_distance(const SimState& a, const SimState& b) {
    double m = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < a.uhat.c[d].size(); ++i)
            m = std::max(m, std::abs(a.uhat.c[d][i] - b.uhat.c[d][i]));
    return m;
}

void criterion_beltrami_decay() {
    const auto t0 = std::chrono::steady_clock::now();
    const double rel = abc_decay_error(1e-3);
    const bool decay_ok = rel <= 1e-7;

    // the beltrami error sits at rounding (the viscous factor is exact and the
    // nonlinear term vanishes), so the 4th-order refinement factor is measured
    // on a taylor-green self-convergence ladder against a dt/8 reference
    const double T = 0.5;
    SimState ref = taylor_green_at(0.00125, T);
    const double e1 = state_distance(taylor_green_at(0.01, T), ref);
    const double e2 = state_distance(taylor_green_at(0.005, T), ref);
    const double factor = e1 / e2;
    const bool order_ok = factor >= 8.0 && factor <= 32.0;

    const double dt = seconds_since(t0);
    const bool ok = decay_ok && order_ok && dt < 30.0;
    report(3, "beltrami decay matches exp(-t) and the stepper is 4th order", ok,
           "rel_err=" + fmt(rel) + " tol=1e-7; dt-halving factor=" + fmt(factor) +
               " in [8,32]; runtime=" + fmt(dt) + "s < 30s");
}

// ---------------------------------------------------------------- criterion 4

void criterion_riesz_backends() {
    const GridSpec g(16);
    const double beta = 0.5;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ScalarField f = random_band_limited_scalar(g, 2, seed);
        double lo = 0.0;
        for (double v : f.v) lo = std::min(lo, v);
        for (double& v : f.v) v += 1.0 - lo; // strictly positive magnitude proxy
        ScalarField a = riesz_potential(f, beta, RieszBackend::multiplier());
        ScalarField b = riesz_potential(f, beta, RieszBackend::direct_sum(2));
        // the multiplier output is mean-free by convention; compare mean-free
        double mean_b = 0.0;
        for (double v : b.v) mean_b += v;
        mean_b /= double(g.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double d = a.v[i] - (b.v[i] - mean_b);
            num += d * d;
            den += a.v[i] * a.v[i];
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    const bool ok = worst <= 1e-2;
    report(4, "riesz multiplier and direct-sum backends agree", ok,
           "max_rel_l2=" + fmt(worst) + " tol=1e-2 over 5 seeds");
}

// ---------------------------------------------------------------- criterion 5

double eval_component(const SpectralField& f, int d, double x, double y, double z) {
    const GridSpec& g = f.grid;
    const double s = 2.0 * pi / g.l;
    std::complex<double> acc{};
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const cplx c = f.c[d][g.idx(ix, iy, iz)];
                if (c == cplx{}) continue;
                const double phase = s * (wavenumber(ix, g.n) * x + wavenumber(iy, g.n) * y +
                                          wavenumber(iz, g.n) * z);
                acc += c * std::exp(cplx(0.0, phase));
            }
    return acc.real();
}

void criterion_kernel_oracle() {
    const GridSpec g(16);
    VectorField u = random_band_limited_velocity(g, 3, 101);
    VectorField om = curl(u);
    ScalarField K = kernel_K(u, om);
    SpectralField uhat = fft_forward(u);
    const double kscale = linf_norm(K);

    const double hf = 1e-2;
    auto du = [&](int i, int j, double x, double y, double z) {
        double p[3] = {x, y, z};
        auto at = [&](double t) {
            double q[3] = {p[0], p[1], p[2]};
            q[i] += t;
            return eval_component(uhat, j, q[0], q[1], q[2]);
        };
        return (8.0 * (at(hf) - at(-hf)) - (at(2.0 * hf) - at(-2.0 * hf))) / (12.0 * hf);
    };

    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int ix = int(rng() % g.n), iy = int(rng() % g.n), iz = int(rng() % g.n);
        const std::size_t idx = g.idx(ix, iy, iz);
        const double x = g.coord(ix), y = g.coord(iy), z = g.coord(iz);
        double kfd = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) kfd += om.c[i][idx] * du(i, j, x, y, z) * om.c[j][idx];
        worst = std::max(worst, std::abs(kfd - K.v[idx]) / kscale);
    }
    const bool fd_ok = worst <= 1e-6;

    const double c1 = riesz_bound_constant(u, om, 0.5);
    VectorField u2 = u, om2 = om;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < g.size(); ++i) {
            u2.c[d][i] *= 2.0;
            om2.c[d][i] *= 2.0;
        }
    const double c2 = riesz_bound_constant(u2, om2, 0.5);
    const double scale_dev = std::abs(c2 - c1) / c1;
    const bool scale_ok = scale_dev <= 1e-12;

    report(5, "stretching kernel matches the finite-difference oracle", fd_ok && scale_ok,
           "max_rel_err=" + fmt(worst) + " tol=1e-6 (200 points); bound-constant scale deviation=" +
               fmt(scale_dev) + " tol=1e-12");
}

// ---------------------------------------------------------------- criterion 6

double abc_balance_residual(double dt_step) {
    SimConfig cfg;
    cfg.grid = GridSpec(16);
    cfg.nu = 1.0;
    cfg.dt = dt_step;
    cfg.init = InitSpec::parse("abc(1,1,1)");
    SimState st = init_state(cfg.grid, cfg.init);
    while (st.t < 0.05 - 1e-12) st = step(st, cfg);
    SimState mid = step(st, cfg);
    SimState next = step(mid, cfg);
    return balance_residual({st, mid, next}, 0.0, 0.0, cfg.nu);
}

void criterion_balance() {
    const double r1 = abc_balance_residual(1e-3);
    const double r2 = abc_balance_residual(5e-4);
    const double ratio = r1 / r2;
    // centered differencing is O(dt^2): halving dt divides the residual by ~4
    const bool ok = r1 <= 1e-4 && ratio >= 2.5 && ratio <= 6.0;
    report(6, "classical enstrophy balance closes on the beltrami run", ok,
           "residual(dt=1e-3)=" + fmt(r1) + " tol=1e-4; refinement ratio=" + fmt(ratio) +
               " in [2.5,6] (O(dt^2))");
}

// ---------------------------------------------------------------- criterion 7

struct ExhaustiveFit {
    double beta = 0.0;
    bool valid = false;
};

// exhaustive pairwise quantile fit for direction fields that depend on x only:
// every pair is (point, offset), sin_theta depends on (ix, ox) alone, so each
// (offset, ix) combination carries multiplicity n^2
ExhaustiveFit exhaustive_holder_x_only(const VectorField& d, double delta_max, double quantile,
                                       int n_bins) {
    const GridSpec& g = d.grid;
    const int n = g.n;
    const double h = g.h();
    const int rmax = std::min(static_cast<int>(delta_max / h), n / 2);

    struct Off {
        int ox;
        double sep;
    };
    std::vector<Off> offsets;
    for (int ox = -rmax; ox <= rmax; ++ox)
        for (int oy = -rmax; oy <= rmax; ++oy)
            for (int oz = -rmax; oz <= rmax; ++oz) {
                if (ox == 0 && oy == 0 && oz == 0) continue;
                if (2 * rmax == n && (ox == -rmax || oy == -rmax || oz == -rmax))
                    continue; // aliased duplicates of the +n/2 offset
                const double sep = h * std::sqrt(double(ox) * ox + double(oy) * oy +
                                                 double(oz) * oz);
                if (sep > delta_max) continue;
                offsets.push_back({ox, sep});
            }

    std::vector<double> edges(n_bins + 1);
    for (int i = 0; i <= n_bins; ++i)
        edges[i] = h * std::pow(delta_max / h, double(i) / n_bins);
    edges[0] *= 1.0 - 1e-12;
    auto bin_of = [&](double sep) {
        const int b = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), sep) -
                                       edges.begin()) - 1;
        return std::clamp(b, 0, n_bins - 1);
    };

    struct WeightedValue {
        double value;
        double weight;
    };
    std::vector<std::vector<WeightedValue>> bins(n_bins);
    std::vector<double> log_sep_sum(n_bins, 0.0), weight_sum(n_bins, 0.0);
    for (const Off& o : offsets) {
        const int b = bin_of(o.sep);
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t p = g.idx(ix, 0, 0);
            const std::size_t q = g.idx((ix + o.ox + n) % n, 0, 0);
            bins[b].push_back({sin_theta(d, p, q), double(n) * n});
        }
        log_sep_sum[b] += std::log(o.sep);
        weight_sum[b] += 1.0;
    }

    std::vector<double> xs, ys;
    for (int b = 0; b < n_bins; ++b) {
        if (bins[b].empty()) continue;
        auto& v = bins[b];
        std::sort(v.begin(), v.end(),
                  [](const WeightedValue& a, const WeightedValue& b2) { return a.value < b2.value; });
        double total = 0.0;
        for (const auto& wv : v) total += wv.weight;
        // weighted order statistic: smallest value whose cumulative weight
        // reaches quantile * total (matches the sampled ceil(q*m)-1 convention)
        double cum = 0.0;
        double value = v.back().value;
        for (const auto& wv : v) {
            cum += wv.weight;
            if (cum >= quantile * total - 1e-9) {
                value = wv.value;
                break;
            }
        }
        if (value > 0.0) {
            xs.push_back(log_sep_sum[b] / weight_sum[b]);
            ys.push_back(std::log(value));
        }
    }
    ExhaustiveFit fit;
    if (xs.size() < 3) return fit;
    const std::size_t m = xs.size();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= m;
    ybar /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    fit.beta = std::clamp(sxy / sxx, 0.0, 2.0);
    fit.valid = true;
    return fit;
}

void criterion_holder() {
    const auto t0 = std::chrono::steady_clock::now();

    GridSpec g64(64);
    VectorField smooth = direction_field(g64, [](double x) { return std::sin(x); });
    HolderParams ps;
    ps.delta_max = g64.l / 8.0;
    ps.seed = 1;
    const double beta_smooth = estimate_holder(smooth, ps).beta_hat;
    const bool smooth_ok = beta_smooth >= 0.9 && beta_smooth <= 1.1;

    GridSpec g32(32);
    VectorField half = direction_field(
        g32, [](double x) { return 0.6 * std::sqrt(std::abs(std::sin(x / 2.0))); });
    HolderParams ph;
    ph.quantile = 0.99;
    ph.seed = 1;
    HolderFit half_fit = estimate_holder(half, ph);
    const bool half_ok = half_fit.beta_hat >= 0.4 && half_fit.beta_hat <= 0.6;

    // exhaustive pairwise oracle over all (offset, point) pairs at n=32
    ExhaustiveFit ex = exhaustive_holder_x_only(half, g32.l / 4.0, 0.99, 12);
    const double gap = std::abs(ex.beta - half_fit.beta_hat);
    const bool oracle_ok = ex.valid && ex.beta >= 0.4 && ex.beta <= 0.6 && gap <= 0.05;

    VectorField constant = direction_field(g32, [](double) { return 0.3; });
    HolderParams pc;
    pc.seed = 1;
    const bool degen_ok = estimate_holder(constant, pc).degenerate;

    const double dt = seconds_since(t0);
    const bool ok = smooth_ok && half_ok && oracle_ok && degen_ok && dt < 60.0;
    report(7, "holder estimator calibrates on smooth, half-holder, and constant fields", ok,
           "smooth beta=" + fmt(beta_smooth) + " in [0.9,1.1]; half beta=" +
               fmt(half_fit.beta_hat) + " in [0.4,0.6], exhaustive oracle beta=" + fmt(ex.beta) +
               " gap=" + fmt(gap) + " tol=0.05; constant degenerate=" +
               (degen_ok ? "yes" : "no") + "; runtime=" + fmt(dt) + "s < 60s");
}

// ---------------------------------------------------------------- criterion 8

void criterion_classifiers() {
    const bool a = classify_open_problem(Lexp::infinity(), Lexp(Rat(3))) == Region::strong;
    const bool b = classify_open_problem(Lexp(Rat(2)), Lexp(Rat(6))) == Region::weak_known &&
                   lambda_sq(Lexp(Rat(2)), Lexp(Rat(6))) == Rat(3, 2);
    const bool c = vorticity_region(Lexp::infinity(), Lexp(Rat(3, 2))) == Region::strong;
    const bool d = vorticity_region(Lexp(Rat(2)), Lexp(Rat(2))) == Region::weak_known;
    const bool ok = a && b && c && d;
    report(8, "region classifiers reproduce the labeled cases", ok,
           std::string("(inf,3)->strong:") + (a ? "y" : "n") + " (2,6)->weak-known:" +
               (b ? "y" : "n") + " (inf,3/2)->strong:" + (c ? "y" : "n") +
               " (2,2)->weak-known:" + (d ? "y" : "n") + " (exact rationals)");
}

// ---------------------------------------------------------------- criterion 9

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_determinism() {
    fs::path dir = fs::temp_directory_path() / "vdl_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.ini";
    std::ofstream(cfg) << "[grid]\n"
                          "n = 16\n"
                          "[solver]\n"
                          "nu = 0.05\n"
                          "dt = 0.001\n"
                          "t_end = 0.01\n"
                          "init = random(-2,1,7)\n"
                          "[diagnostics]\n"
                          "output_every = 5\n"
                          "[output]\n"
                          "prefix = run\n";

    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int rc1 = cmd_simulate(cfg.string(), (dir / "a").string());
    const int rc2 = cmd_simulate(cfg.string(), (dir / "b").string());
    std::cout.rdbuf(old);

    const std::string csv_a = slurp(dir / "a" / "run_timeseries.csv");
    const std::string csv_b = slurp(dir / "b" / "run_timeseries.csv");
    const std::string ck_a = slurp(dir / "a" / "run_final.ckpt");
    const std::string ck_b = slurp(dir / "b" / "run_final.ckpt");
    const bool rerun_ok = rc1 == 0 && rc2 == 0 && !csv_a.empty() && csv_a == csv_b &&
                          !ck_a.empty() && ck_a == ck_b;

    // checkpoint round trip, bit for bit
    GridSpec g(16);
    Checkpoint ck(g);
    ck.nu = 0.05;
    ck.t = 0.375;
    ck.u = random_band_limited_velocity(g, 5, 99);
    const fs::path p1 = dir / "rt1.ckpt";
    const fs::path p2 = dir / "rt2.ckpt";
    write_checkpoint(p1.string(), ck);
    Checkpoint back = read_checkpoint(p1.string());
    bool bits_ok = back.grid == ck.grid && back.nu == ck.nu && back.t == ck.t;
    for (int d = 0; d < 3 && bits_ok; ++d)
        for (std::size_t i = 0; i < g.size(); ++i)
            if (back.u.c[d][i] != ck.u.c[d][i]) {
                bits_ok = false;
                break;
            }
    write_checkpoint(p2.string(), back);
    bits_ok = bits_ok && slurp(p1) == slurp(p2);

    fs::remove_all(dir);
    const bool ok = rerun_ok && bits_ok;
    report(9, "serial reruns are byte-identical and checkpoints round-trip bit-exact", ok,
           std::string("csv_identical=") + (csv_a == csv_b ? "yes" : "no") +
               " ckpt_identical=" + (ck_a == ck_b ? "yes" : "no") +
               " roundtrip_bits=" + (bits_ok ? "yes" : "no"));
}

} // namespace

int main() {
    criterion_beta_scan();
    criterion_classical_tuple();
    criterion_beltrami_decay();
    criterion_riesz_backends();
    criterion_kernel_oracle();
    criterion_balance();
    criterion_holder();
    criterion_classifiers();
    criterion_determinism();
    if (failures == 0) {
        std::printf("all 9 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 3;
}
