#include "vdl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

namespace vdl {
namespace {

std::vector<double> magnitudes(const VectorField& f) {
    std::vector<double> out(f.grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.magnitude_at(i);
    return out;
}

} // namespace

double sin_theta(const VectorField& omega, std::size_t i, std::size_t j) {
    const double ax = omega.c[0][i], ay = omega.c[1][i], az = omega.c[2][i];
    const double bx = omega.c[0][j], by = omega.c[1][j], bz = omega.c[2][j];
    const double na = std::sqrt(ax * ax + ay * ay + az * az);
    const double nb = std::sqrt(bx * bx + by * by + bz * bz);
    if (na == 0.0 || nb == 0.0)
        throw domain_error("sin_theta: undefined angle at zero vorticity");
    const double cx = ay * bz - az * by;
    const double cy = az * bx - ax * bz;
    const double cz = ax * by - ay * bx;
    const double s = std::sqrt(cx * cx + cy * cy + cz * cz) / (na * nb);
    return std::clamp(s, 0.0, 1.0);
}

HolderFit estimate_holder(const VectorField& omega, const HolderParams& params) {
    const GridSpec& g = omega.grid;
    const double h = g.h();
    const double delta_max = params.delta_max > 0.0 ? params.delta_max : g.l / 4.0;
    if (delta_max > g.l / 2.0) throw domain_error("estimate_holder: delta_max exceeds l/2");
    if (params.n_bins < 1 || params.n_pairs < 1 || params.quantile <= 0.0 ||
        params.quantile > 1.0)
        throw domain_error("estimate_holder: bad parameters");

    // grid offsets with separation in (0, delta_max]
    struct Offset {
        int ox, oy, oz;
        double sep;
    };
    std::vector<Offset> offsets;
    const int rmax = std::min(static_cast<int>(delta_max / h), g.n / 2);
    for (int ox = -rmax; ox <= rmax; ++ox)
        for (int oy = -rmax; oy <= rmax; ++oy)
            for (int oz = -rmax; oz <= rmax; ++oz) {
                if (ox == 0 && oy == 0 && oz == 0) continue;
                if (2 * rmax == g.n && (ox == -rmax || oy == -rmax || oz == -rmax))
                    continue; // alias of the +n/2 offset
                const double sep =
                    h * std::sqrt(double(ox) * ox + double(oy) * oy + double(oz) * oz);
                if (sep <= delta_max) offsets.push_back({ox, oy, oz, sep});
            }
    if (offsets.empty())
        throw insufficient_data_error("estimate_holder: no separations below delta_max");

    const std::vector<double> mag = magnitudes(omega);
    double mag_max = 0.0;
    for (double m : mag) mag_max = std::max(mag_max, m);
    if (mag_max < params.k_threshold || mag_max == 0.0)
        throw domain_error("estimate_holder: field nowhere above threshold");

    // log-spaced bin edges over [h, delta_max]
    const int nb = params.n_bins;
    std::vector<double> edges(nb + 1);
    for (int i = 0; i <= nb; ++i)
        edges[i] = h * std::pow(delta_max / h, double(i) / nb);
    edges[0] *= 1.0 - 1e-12;
    auto bin_of = [&](double sep) {
        const int b = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), sep) -
                                       edges.begin()) - 1;
        return std::clamp(b, 0, nb - 1);
    };

    std::vector<std::vector<double>> samples(nb);
    std::vector<double> log_sep_sum(nb, 0.0);
    std::mt19937_64 rng(params.seed);
    const std::size_t total = g.size();
    long accepted = 0;
    bool any_positive = false;
    const long max_attempts = params.n_pairs * 1000L;
    for (long attempt = 0; attempt < max_attempts && accepted < params.n_pairs; ++attempt) {
        const std::size_t p = rng() % total;
        const Offset& o = offsets[rng() % offsets.size()];
        const int ix = static_cast<int>(p / (g.n * g.n));
        const int iy = static_cast<int>((p / g.n) % g.n);
        const int iz = static_cast<int>(p % g.n);
        const std::size_t q = g.idx((ix + o.ox + g.n) % g.n, (iy + o.oy + g.n) % g.n,
                                    (iz + o.oz + g.n) % g.n);
        if (mag[p] < params.k_threshold || mag[q] < params.k_threshold) continue;
        if (mag[p] == 0.0 || mag[q] == 0.0) continue;
        const double s = sin_theta(omega, p, q);
        const int b = bin_of(o.sep);
        samples[b].push_back(s);
        log_sep_sum[b] += std::log(o.sep);
        if (s > 0.0) any_positive = true;
        ++accepted;
    }
    if (accepted == 0)
        throw insufficient_data_error("estimate_holder: no pairs passed the threshold");

    HolderFit fit;
    fit.n_pairs = accepted;
    fit.quantile = params.quantile;
    if (!any_positive) {
        fit.degenerate = true;
        fit.beta_hat = std::numeric_limits<double>::quiet_NaN();
        fit.c_hat = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }

    std::vector<double> xs, ys;
    for (int b = 0; b < nb; ++b) {
        if (samples[b].empty()) continue;
        std::vector<double> v = samples[b];
        std::sort(v.begin(), v.end());
        const std::size_t k = static_cast<std::size_t>(
            std::clamp<long>(std::lround(std::ceil(params.quantile * v.size())) - 1, 0,
                             static_cast<long>(v.size()) - 1));
        const double value = v[k];
        const double mean_log_sep = log_sep_sum[b] / samples[b].size();
        fit.separations.push_back(std::exp(mean_log_sep));
        fit.bin_values.push_back(value);
        if (value > 0.0) {
            xs.push_back(mean_log_sep);
            ys.push_back(std::log(value));
        }
    }
    if (xs.size() < 3)
        throw insufficient_data_error("estimate_holder: fewer than 3 usable bins");

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
    double slope = sxy / sxx;
    const double intercept = ybar - slope * xbar;
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ss += e * e;
    }
    fit.fit_residual = std::sqrt(ss / m);
    fit.c_hat = std::exp(intercept);
    if (slope < 0.0) {
        slope = 0.0;
        fit.clipped = true;
    } else if (slope > 2.0) {
        slope = 2.0;
        fit.clipped = true;
    }
    fit.beta_hat = slope;
    return fit;
}

ScalarField kernel_K(const VectorField& u, const VectorField& omega) {
    if (!(u.grid == omega.grid)) throw domain_error("kernel_K: grid mismatch");
    const GridSpec& g = u.grid;
    ScalarField K(g);
    for (int j = 0; j < 3; ++j) {
        ScalarField uj(g);
        uj.v = u.c[j];
        VectorField grad_uj = gradient(uj);
        for (std::size_t p = 0; p < g.size(); ++p) {
            double dot = 0.0;
            for (int i = 0; i < 3; ++i) dot += omega.c[i][p] * grad_uj.c[i][p];
            K.v[p] += dot * omega.c[j][p];
        }
    }
    return K;
}

double riesz_bound_constant(const VectorField& u, const VectorField& omega, double beta,
                            int images) {
    const double om_max = linf_norm(omega);
    if (om_max == 0.0) throw degenerate_error("riesz_bound_constant: zero vorticity");
    ScalarField mag(omega.grid);
    mag.v = magnitudes(omega);
    const ScalarField I = riesz_potential(mag, beta, RieszBackend::direct_sum(images));
    const ScalarField K = kernel_K(u, omega);
    double denom_max = 0.0;
    std::vector<double> denom(mag.v.size());
    for (std::size_t i = 0; i < denom.size(); ++i) {
        denom[i] = mag.v[i] * mag.v[i] * I.v[i];
        denom_max = std::max(denom_max, denom[i]);
    }
    const double floor = 1e-12 * denom_max;
    double c = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < denom.size(); ++i) {
        if (!(denom[i] > floor)) continue;
        any = true;
        c = std::max(c, std::abs(K.v[i]) / denom[i]);
    }
    if (!any) throw degenerate_error("riesz_bound_constant: all points below floor");
    return c;
}

double generalized_enstrophy(const VectorField& omega, double alpha, double epsilon) {
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw domain_error("generalized_enstrophy: alpha outside [0, 1/2]");
    if (epsilon < 0.0) throw domain_error("generalized_enstrophy: negative epsilon");
    double s = 0.0;
    for (std::size_t i = 0; i < omega.grid.size(); ++i) {
        const double m = omega.magnitude_at(i);
        s += std::pow(epsilon + m * m, 1.0 - alpha);
    }
    return s * omega.grid.cell_vol();
}

ScalarField smoothed_magnitude(const VectorField& omega) {
    const double eps_mag = 1e-12 * linf_norm(omega);
    ScalarField out(omega.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        const double m = omega.magnitude_at(i);
        out.v[i] = std::sqrt(m * m + eps_mag);
    }
    return out;
}

double grad_power_norm_sq(const VectorField& omega, double alpha) {
    ScalarField mag = smoothed_magnitude(omega);
    ScalarField powed(omega.grid);
    for (std::size_t i = 0; i < powed.v.size(); ++i)
        powed.v[i] = std::pow(mag.v[i], 1.0 - alpha);
    VectorField grad_p = gradient(powed);
    double s = 0.0;
    for (std::size_t i = 0; i < powed.v.size(); ++i) {
        for (int d = 0; d < 3; ++d) s += grad_p.c[d][i] * grad_p.c[d][i];
    }
    return s * omega.grid.cell_vol();
}

BalanceReport balance_terms(const std::vector<SimState>& window, double alpha, double epsilon,
                            double nu) {
    if (window.size() < 3)
        throw insufficient_data_error("balance_terms: need >= 3 consecutive states");
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw domain_error("balance_terms: alpha outside [0, 1/2]");
    if (!(nu > 0.0)) throw domain_error("balance_terms: nu must be > 0");
    const SimState& s0 = window[0];
    const SimState& s1 = window[1];
    const SimState& s2 = window[2];

    const VectorField om0 = vorticity_field(s0);
    const VectorField om1 = vorticity_field(s1);
    const VectorField om2 = vorticity_field(s2);
    const VectorField u1 = velocity_field(s1);

    BalanceReport rep;
    const double h0 = s1.t - s0.t, h1 = s2.t - s1.t;
    const double G0 = generalized_enstrophy(om0, alpha, epsilon);
    const double G1 = generalized_enstrophy(om1, alpha, epsilon);
    const double G2 = generalized_enstrophy(om2, alpha, epsilon);
    double dGdt = 0.0;
    if (h0 > 0.0 && h1 > 0.0) {
        // centered difference, second order also for unequal steps
        dGdt = (h0 * h0 * G2 - (h0 * h0 - h1 * h1) * G1 - h1 * h1 * G0) /
               (h0 * h1 * (h0 + h1));
    }
    rep.ddt_term = dGdt / (2.0 * (1.0 - alpha));

    // |grad w|^2 from the nine spectral derivatives
    const GridSpec& g = om1.grid;
    ScalarField grad_sq(g);
    for (int j = 0; j < 3; ++j) {
        ScalarField wj(g);
        wj.v = om1.c[j];
        VectorField grad_wj = gradient(wj);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (int d = 0; d < 3; ++d)
                grad_sq.v[i] += grad_wj.c[d][i] * grad_wj.c[d][i];
    }

    ScalarField mag_s = smoothed_magnitude(om1);
    VectorField grad_mag = gradient(mag_s);
    const ScalarField K = kernel_K(u1, om1);

    double diss = 0.0, weight = 0.0, prod = 0.0, slack_rhs = 0.0, slack_grad = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = om1.magnitude_at(i);
        const double base = epsilon + m * m;
        const double f = std::pow(base, -alpha);
        const double fp = -alpha * std::pow(base, -alpha - 1.0);
        double gm2 = 0.0;
        for (int d = 0; d < 3; ++d) gm2 += grad_mag.c[d][i] * grad_mag.c[d][i];
        diss += f * grad_sq.v[i];
        weight += 2.0 * fp * m * m * gm2;
        prod += f * K.v[i];
        slack_rhs += f * std::abs(K.v[i]);
    }
    const double cv = g.cell_vol();
    rep.dissipation = nu * diss * cv;
    rep.weight_term = nu * weight * cv;
    rep.production = prod * cv;

    const double lhs = rep.ddt_term + rep.dissipation + rep.weight_term;
    const double scale = std::max({std::abs(rep.ddt_term), std::abs(rep.dissipation),
                                   std::abs(rep.weight_term), std::abs(rep.production)});
    rep.residual = scale > 0.0 ? std::abs(lhs - rep.production) / scale : 0.0;

    // inequality slack in the smoothed form: rhs - (ddt + (1-2a)/(1-a)^2 ||grad (eps+|w|^2)^{(1-a)/2}||^2)
    ScalarField powed(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = om1.magnitude_at(i);
        powed.v[i] = std::pow(epsilon + m * m, (1.0 - alpha) / 2.0);
    }
    VectorField grad_pow = gradient(powed);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (int d = 0; d < 3; ++d) slack_grad += grad_pow.c[d][i] * grad_pow.c[d][i];
    const double coef = (1.0 - 2.0 * alpha) / ((1.0 - alpha) * (1.0 - alpha));
    rep.slack = slack_rhs * cv - (rep.ddt_term + coef * nu * slack_grad * cv);
    return rep;
}

double balance_residual(const std::vector<SimState>& window, double alpha, double epsilon,
                        double nu) {
    return balance_terms(window, alpha, epsilon, nu).residual;
}

double riesz_mapping_ratio(const VectorField& omega, double beta, double r_hat) {
    if (!(r_hat > 1.0 && r_hat < 3.0))
        throw domain_error("riesz_mapping_ratio: r_hat outside (1,3)");
    if (!(beta > 0.0 && beta < 3.0))
        throw domain_error("riesz_mapping_ratio: beta outside (0,3)");
    const double inv_q = 1.0 / r_hat - beta / 3.0;
    if (inv_q <= 0.0) throw domain_error("riesz_mapping_ratio: mapped exponent not positive");
    if (linf_norm(omega) == 0.0) return 0.0;
    ScalarField mag(omega.grid);
    mag.v = magnitudes(omega);
    const ScalarField I = riesz_potential(mag, beta, RieszBackend::multiplier());
    return lp_norm(I, 1.0 / inv_q) / lp_norm(omega, r_hat);
}

namespace {

DiagnosticsRecord make_record_impl(const SimState& at, const SimState& ta, const SimState& tb,
                                   const SimState& tc, const DiagOptions& opts,
                                   bool with_holder, double nu) {
    DiagnosticsRecord rec;
    rec.t = at.t;
    rec.energy = kinetic_energy(at);
    rec.enstrophy = enstrophy(at);
    const VectorField u = velocity_field(at);
    const VectorField om = vorticity_field(at);
    for (double r : opts.r_list) rec.omega_norms.emplace_back(r, lp_norm(om, r));
    for (auto [a, e] : opts.alpha_eps)
        rec.gen_enstrophy.push_back({{a, e}, generalized_enstrophy(om, a, e)});
    const double alpha0 = opts.alpha_eps.empty() ? 0.0 : opts.alpha_eps.front().first;
    const double eps0 = opts.alpha_eps.empty() ? 0.0 : opts.alpha_eps.front().second;
    rec.grad_term = grad_power_norm_sq(om, alpha0);
    const ScalarField K = kernel_K(u, om);
    rec.kernel_linf = linf_norm(K);
    if (linf_norm(om) > 0.0)
        rec.riesz_const = riesz_bound_constant(u, om, opts.riesz_beta, opts.riesz_images);
    rec.balance_residual = balance_residual({ta, tb, tc}, alpha0, eps0, nu);
    if (with_holder) {
        HolderParams hp;
        hp.k_threshold = opts.holder_k_threshold_rel * linf_norm(om);
        hp.delta_max = opts.holder_delta_max;
        hp.n_pairs = opts.holder_pairs;
        hp.quantile = opts.holder_quantile;
        hp.n_bins = opts.holder_bins;
        hp.seed = opts.holder_seed;
        rec.holder = estimate_holder(om, hp);
    }
    return rec;
}

} // namespace

DiagnosticsRecord make_record(const SimState& prev, const SimState& mid, const SimState& next,
                              const DiagOptions& opts, bool with_holder, double nu) {
    return make_record_impl(mid, prev, mid, next, opts, with_holder, nu);
}

std::vector<DiagnosticsRecord> run_with_diagnostics(const SimConfig& config,
                                                    const DiagOptions& opts,
                                                    const RecordHook& on_record) {
    if (config.output_every < 1) throw domain_error("run_with_diagnostics: output_every < 1");
    std::vector<DiagnosticsRecord> records;
    SimState st = init_state(config.grid, config.init);

    const double t_end = config.t_end;
    long record_count = 0;
    auto is_record_step = [&](const SimState& s, bool is_last) {
        return s.step_index == 0 || s.step_index % config.output_every == 0 || is_last;
    };
    auto emit = [&](const SimState& at, const SimState& a, const SimState& b,
                    const SimState& c) {
        const bool with_holder =
            opts.holder && (record_count % std::max(1, opts.holder_every) == 0);
        records.push_back(make_record_impl(at, a, b, c, opts, with_holder, config.nu));
        ++record_count;
        if (on_record) on_record(at, records.back());
    };

    if (st.t >= t_end - 1e-12) {
        // zero-horizon run: single record, frozen balance triple
        emit(st, st, st, st);
        return records;
    }

    // rolling window of the last three states; a record for step s is emitted
    // once its centered triple (clamped to the interior at the ends) is complete
    std::deque<SimState> window{st};
    std::deque<long> pending; // step indices awaiting emission
    pending.push_back(0);
    bool done = false;
    while (!done) {
        SimConfig c = config;
        c.dt = std::min(config.dt, t_end - window.back().t);
        SimState next = step(window.back(), c);
        window.push_back(next);
        if (window.size() > 3) window.pop_front();
        done = next.t >= t_end - 1e-12;
        if (is_record_step(next, done)) pending.push_back(next.step_index);

        const long s = next.step_index;
        while (!pending.empty()) {
            const long rec = pending.front();
            const long last_known = done ? s : -1;
            long center = rec;
            if (center < 1) center = 1;
            if (last_known >= 0 && center > last_known - 1) center = last_known - 1;
            if (center < 1) center = 1; // single-step run
            const long arrival = center + 1;
            if (arrival > s) break;
            // window holds steps s-2, s-1, s (or fewer early on)
            auto state_at = [&](long idx) -> const SimState& {
                const long base = s - static_cast<long>(window.size()) + 1;
                return window[static_cast<std::size_t>(idx - base)];
            };
            if (window.size() < 3) {
                // runs of a single step: frozen triple
                const SimState& at = state_at(std::min(rec, s));
                emit(at, at, at, at);
            } else {
                emit(state_at(std::min(rec, s)), state_at(center - 1), state_at(center),
                     state_at(center + 1));
            }
            pending.pop_front();
        }
    }
    // degenerate short runs: emit whatever is still pending from the final window
    while (!pending.empty()) {
        const long rec = pending.front();
        pending.pop_front();
        const long s = window.back().step_index;
        const long base = s - static_cast<long>(window.size()) + 1;
        const SimState& at = window[static_cast<std::size_t>(std::min(rec, s) - base)];
        if (window.size() < 3) {
            emit(at, at, at, at);
        } else {
            emit(at, window[window.size() - 3], window[window.size() - 2], window.back());
        }
    }
    return records;
}

} // namespace vdl
