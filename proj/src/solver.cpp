#include "vdl/solver.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace vdl {
namespace {

constexpr double pi = std::numbers::pi;

double sq_wavenumber(const GridSpec& g, int ix, int iy, int iz) {
    const double s = 2.0 * pi / g.l;
    const double kx = s * wavenumber(ix, g.n);
    const double ky = s * wavenumber(iy, g.n);
    const double kz = s * wavenumber(iz, g.n);
    return kx * kx + ky * ky + kz * kz;
}

void pin_zero_mode(SpectralField& v) {
    for (int d = 0; d < 3; ++d) v.c[d][0] = cplx{};
}

void check_state_finite(const SpectralField& uhat, double t) {
    for (int d = 0; d < 3; ++d)
        for (const cplx& z : uhat.c[d])
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                std::ostringstream os;
                os << "blow-up detected at t=" << t << " (non-finite velocity mode)";
                throw blowup_error(os.str());
            }
}

} // namespace

InitSpec InitSpec::parse(const std::string& text) {
    auto fail = [&] { throw usage_error("bad init spec: " + text); };
    InitSpec s;
    if (text == "taylor-green") {
        s.kind = Kind::taylor_green;
        return s;
    }
    auto args_of = [&](const std::string& head) -> std::vector<double> {
        if (text.size() < head.size() + 2 || text.compare(0, head.size(), head) != 0 ||
            text[head.size()] != '(' || text.back() != ')')
            return {};
        std::vector<double> out;
        std::string body = text.substr(head.size() + 1, text.size() - head.size() - 2);
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                fail();
            }
            while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
            if (pos != tok.size()) fail();
            out.push_back(v);
        }
        return out;
    };
    if (text.rfind("abc(", 0) == 0) {
        auto a = args_of("abc");
        if (a.size() != 3) fail();
        s.kind = Kind::abc;
        s.A = a[0];
        s.B = a[1];
        s.C = a[2];
        return s;
    }
    if (text.rfind("random(", 0) == 0) {
        auto a = args_of("random");
        if (a.size() != 3) fail();
        s.kind = Kind::random;
        s.slope = a[0];
        s.energy = a[1];
        if (a[2] < 0 || a[2] != std::floor(a[2])) fail();
        s.seed = static_cast<std::uint64_t>(a[2]);
        return s;
    }
    fail();
    return s;
}

std::string InitSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::taylor_green: return "taylor-green";
    case Kind::abc: os << "abc(" << A << "," << B << "," << C << ")"; break;
    case Kind::random: os << "random(" << slope << "," << energy << "," << seed << ")"; break;
    }
    return os.str();
}

SimState init_taylor_green(const GridSpec& g) {
    VectorField u(g);
    const double s = 2.0 * pi / g.l;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double x = s * g.coord(ix), y = s * g.coord(iy), z = s * g.coord(iz);
                const std::size_t i = g.idx(ix, iy, iz);
                u.c[0][i] = std::sin(x) * std::cos(y) * std::cos(z);
                u.c[1][i] = -std::cos(x) * std::sin(y) * std::cos(z);
                u.c[2][i] = 0.0;
            }
    SimState st;
    st.uhat = fft_forward(u);
    pin_zero_mode(st.uhat);
    return st;
}

SimState init_abc(const GridSpec& g, double A, double B, double C) {
    VectorField u(g);
    const double s = 2.0 * pi / g.l;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double x = s * g.coord(ix), y = s * g.coord(iy), z = s * g.coord(iz);
                const std::size_t i = g.idx(ix, iy, iz);
                u.c[0][i] = A * std::sin(z) + C * std::cos(y);
                u.c[1][i] = B * std::sin(x) + A * std::cos(z);
                u.c[2][i] = C * std::sin(y) + B * std::cos(x);
            }
    SimState st;
    st.uhat = fft_forward(u);
    pin_zero_mode(st.uhat);
    return st;
}

SimState init_random(const GridSpec& g, double slope, double energy, std::uint64_t seed) {
    SimState st;
    st.uhat = SpectralField(g);
    if (energy == 0.0) return st;

    // white Gaussian modes in a fixed traversal order, shaped shell-by-shell to
    // E(k) ~ k^slope up to the dealias cutoff, then projected and rescaled
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = g.n;
    for (int d = 0; d < 3; ++d)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const double re = gauss(rng), im = gauss(rng);
                    st.uhat.c[d][g.idx(ix, iy, iz)] = cplx(re, im);
                }
    // hermitian symmetrization: keep c_k + conj(c_{-k})
    SpectralField sym(g);
    for (int d = 0; d < 3; ++d)
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const std::size_t i = g.idx(ix, iy, iz);
                    const std::size_t j = g.idx((n - ix) % n, (n - iy) % n, (n - iz) % n);
                    sym.c[d][i] = 0.5 * (st.uhat.c[d][i] + std::conj(st.uhat.c[d][j]));
                }
    st.uhat = sym;
    pin_zero_mode(st.uhat);

    // shell energies, then per-mode scaling toward E(shell) ~ shell^slope
    const int kmax = n / 3;
    std::vector<double> shell_energy(kmax + 2, 0.0);
    auto shell_of = [&](int ix, int iy, int iz) {
        const double mx = wavenumber(ix, n), my = wavenumber(iy, n), mz = wavenumber(iz, n);
        return static_cast<int>(std::floor(std::sqrt(mx * mx + my * my + mz * mz) + 0.5));
    };
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const std::size_t i = g.idx(ix, iy, iz);
                const int sh = shell_of(ix, iy, iz);
                if (sh > kmax || sh == 0 ||
                    !mode_kept_by_dealias(wavenumber(ix, n), wavenumber(iy, n),
                                          wavenumber(iz, n), n)) {
                    for (int d = 0; d < 3; ++d) st.uhat.c[d][i] = cplx{};
                    continue;
                }
                for (int d = 0; d < 3; ++d) shell_energy[sh] += std::norm(st.uhat.c[d][i]);
            }
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const std::size_t i = g.idx(ix, iy, iz);
                const int sh = shell_of(ix, iy, iz);
                if (sh == 0 || sh > kmax || shell_energy[sh] == 0.0) continue;
                const double target = std::pow(static_cast<double>(sh), slope);
                const double scale = std::sqrt(target / shell_energy[sh]);
                for (int d = 0; d < 3; ++d) st.uhat.c[d][i] *= scale;
            }
    leray_project_inplace(st.uhat);
    pin_zero_mode(st.uhat);

    // global rescale to the requested total kinetic energy
    double e = kinetic_energy(st);
    if (e > 0.0) {
        const double scale = std::sqrt(energy / e);
        for (int d = 0; d < 3; ++d)
            for (cplx& z : st.uhat.c[d]) z *= scale;
    }
    return st;
}

SimState init_state(const GridSpec& g, const InitSpec& spec) {
    switch (spec.kind) {
    case InitSpec::Kind::taylor_green: return init_taylor_green(g);
    case InitSpec::Kind::abc: return init_abc(g, spec.A, spec.B, spec.C);
    case InitSpec::Kind::random: return init_random(g, spec.slope, spec.energy, spec.seed);
    }
    throw domain_error("init_state: unreachable");
}

SpectralField nonlinear_term(const SpectralField& uhat, bool dealias) {
    const GridSpec& g = uhat.grid;
    VectorField u = fft_inverse(uhat);
    VectorField om = fft_inverse(curl_spectral(uhat));
    VectorField cross(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        cross.c[0][i] = om.c[1][i] * u.c[2][i] - om.c[2][i] * u.c[1][i];
        cross.c[1][i] = om.c[2][i] * u.c[0][i] - om.c[0][i] * u.c[2][i];
        cross.c[2][i] = om.c[0][i] * u.c[1][i] - om.c[1][i] * u.c[0][i];
    }
    SpectralField nh = fft_forward(cross);
    if (dealias) dealias_inplace(nh);
    leray_project_inplace(nh);
    for (int d = 0; d < 3; ++d)
        for (cplx& z : nh.c[d]) z = -z;
    pin_zero_mode(nh);
    return nh;
}

SimState step(const SimState& state, const SimConfig& config, bool with_nonlinearity) {
    const GridSpec& g = state.uhat.grid;
    const double dt = config.dt;
    const double umax = max_velocity(state);
    if (umax > 0.0 && dt > config.cfl_safety * g.h() / umax) {
        std::ostringstream os;
        os << "CFL violation at t=" << state.t << ": dt=" << dt << " exceeds "
           << config.cfl_safety * g.h() / umax << " (max|u|=" << umax << ")";
        throw cfl_error(os.str());
    }

    const std::size_t total = g.size();
    std::vector<double> e_half(total), e_full(total);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t i = g.idx(ix, iy, iz);
                const double k2 = sq_wavenumber(g, ix, iy, iz);
                e_half[i] = std::exp(-config.nu * k2 * dt / 2.0);
                e_full[i] = e_half[i] * e_half[i];
            }

    auto N = [&](const SpectralField& v) {
        if (with_nonlinearity) return nonlinear_term(v, config.dealias);
        return SpectralField(g);
    };
    auto axpy = [&](const SpectralField& a, double s, const SpectralField& b) {
        SpectralField out(g);
        for (int d = 0; d < 3; ++d)
            for (std::size_t i = 0; i < total; ++i) out.c[d][i] = a.c[d][i] + s * b.c[d][i];
        return out;
    };
    auto scaled = [&](const std::vector<double>& e, const SpectralField& v) {
        SpectralField out(g);
        for (int d = 0; d < 3; ++d)
            for (std::size_t i = 0; i < total; ++i) out.c[d][i] = e[i] * v.c[d][i];
        return out;
    };

    // integrating-factor RK4 (Lawson): exact viscous propagation between stages
    const SpectralField& u0 = state.uhat;
    SpectralField k1 = N(u0);
    SpectralField k2 = N(scaled(e_half, axpy(u0, dt / 2.0, k1)));
    SpectralField k3 = N(axpy(scaled(e_half, u0), dt / 2.0, k2));
    SpectralField k4 = N(axpy(scaled(e_full, u0), dt, scaled(e_half, k3)));

    SimState next;
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    next.uhat = SpectralField(g);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < total; ++i) {
            const cplx acc = e_full[i] * (u0.c[d][i] + (dt / 6.0) * k1.c[d][i]) +
                             (dt / 3.0) * e_half[i] * (k2.c[d][i] + k3.c[d][i]) +
                             (dt / 6.0) * k4.c[d][i];
            next.uhat.c[d][i] = acc;
        }
    pin_zero_mode(next.uhat);
    check_state_finite(next.uhat, next.t);
    return next;
}

double kinetic_energy(const SimState& state) {
    // Parseval: int |u|^2 = l^3 sum |c_k|^2
    double s = 0.0;
    for (int d = 0; d < 3; ++d)
        for (const cplx& z : state.uhat.c[d]) s += std::norm(z);
    return 0.5 * s * state.uhat.grid.volume();
}

double enstrophy(const SimState& state) {
    SpectralField oh = curl_spectral(state.uhat);
    double s = 0.0;
    for (int d = 0; d < 3; ++d)
        for (const cplx& z : oh.c[d]) s += std::norm(z);
    return s * state.uhat.grid.volume();
}

double max_velocity(const SimState& state) { return linf_norm(fft_inverse(state.uhat)); }

VectorField velocity_field(const SimState& state) { return fft_inverse(state.uhat); }

VectorField vorticity_field(const SimState& state) {
    return fft_inverse(curl_spectral(state.uhat));
}

void run(const SimConfig& config, const RunHook& hook) {
    SimState st = init_state(config.grid, config.init);
    if (config.output_every < 1) throw domain_error("run: output_every must be >= 1");
    hook(st);
    double last_energy = kinetic_energy(st);
    while (st.t < config.t_end - 1e-12) {
        SimConfig c = config;
        c.dt = std::min(config.dt, config.t_end - st.t);
        st = step(st, c);
        const bool at_end = st.t >= config.t_end - 1e-12;
        if (st.step_index % config.output_every == 0 || at_end) {
            const double e = kinetic_energy(st);
            if (e > last_energy * (1.0 + 1e-12))
                warn("run: kinetic energy increased at t=" + std::to_string(st.t));
            last_energy = e;
            hook(st);
        }
    }
}

} // namespace vdl
