#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vdl/solver.hpp"

using namespace vdl;

namespace {

constexpr double pi = std::numbers::pi;

double max_mode_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < a.c[d].size(); ++i)
            m = std::max(m, std::abs(a.c[d][i] - b.c[d][i]));
    return m;
}

double max_mode_abs(const SpectralField& a) {
    double m = 0.0;
    for (int d = 0; d < 3; ++d)
        for (const cplx& z : a.c[d]) m = std::max(m, std::abs(z));
    return m;
}

} // namespace

TEST_CASE("init spec parsing") {
    InitSpec tg = InitSpec::parse("taylor-green");
    CHECK(tg.kind == InitSpec::Kind::taylor_green);
    CHECK(tg.to_string() == "taylor-green");

    InitSpec abc = InitSpec::parse("abc(1,0.5,0.25)");
    CHECK(abc.kind == InitSpec::Kind::abc);
    CHECK(abc.A == 1.0);
    CHECK(abc.B == 0.5);
    CHECK(abc.C == 0.25);
    CHECK(InitSpec::parse(abc.to_string()).C == 0.25);

    InitSpec rnd = InitSpec::parse("random(-2,1,7)");
    CHECK(rnd.kind == InitSpec::Kind::random);
    CHECK(rnd.slope == -2.0);
    CHECK(rnd.energy == 1.0);
    CHECK(rnd.seed == 7);
    CHECK(InitSpec::parse(rnd.to_string()).seed == 7);

    for (const char* bad : {"", "abc", "abc(1,2)", "abc(1,2,3,4)", "abc(1,2,x)", "foo(1,2,3)",
                            "random(1,2,-3)", "random(1,2,3.5)", "taylor_green"})
        CHECK_THROWS_AS(InitSpec::parse(bad), usage_error);
}

TEST_CASE("taylor-green initial state") {
    GridSpec g(16);
    SimState st = init_taylor_green(g);
    CHECK(kinetic_energy(st) == doctest::Approx(pi * pi * pi).epsilon(1e-12));
    CHECK(max_velocity(st) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(linf_norm(divergence(velocity_field(st))) < 1e-12);

    // z-vorticity 2 sin x sin y cos z peaks at 2
    VectorField om = vorticity_field(st);
    double wzmax = 0.0;
    for (double v : om.c[2]) wzmax = std::max(wzmax, std::abs(v));
    CHECK(wzmax == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("abc initial state is beltrami") {
    GridSpec g(16);
    SimState st = init_abc(g, 1.0, 1.0, 1.0);
    CHECK(kinetic_energy(st) == doctest::Approx(12.0 * pi * pi * pi).epsilon(1e-12));
    CHECK(linf_norm(divergence(velocity_field(st))) < 1e-12);

    // curl u = u mode by mode
    SpectralField oh = curl_spectral(st.uhat);
    CHECK(max_mode_diff(oh, st.uhat) < 1e-14);

    // the nonlinear term vanishes pointwise for a beltrami field
    CHECK(max_mode_abs(nonlinear_term(st.uhat, true)) < 1e-13);
    CHECK(max_mode_abs(nonlinear_term(st.uhat, false)) < 1e-13);
}

TEST_CASE("random initial state") {
    GridSpec g(16);
    SimState a = init_random(g, -2.0, 1.0, 7);
    CHECK(kinetic_energy(a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(linf_norm(divergence(velocity_field(a))) < 1e-11);

    // hermitian spectrum: the real-space round trip is lossless
    SpectralField rt = fft_forward(velocity_field(a));
    CHECK(max_mode_diff(rt, a.uhat) < 1e-13);

    SimState b = init_random(g, -2.0, 1.0, 7);
    CHECK(max_mode_diff(a.uhat, b.uhat) == 0.0); // same seed, same bits
    SimState c = init_random(g, -2.0, 1.0, 8);
    CHECK(max_mode_diff(a.uhat, c.uhat) > 1e-3); // different seed, different field

    CHECK(kinetic_energy(init_random(g, -2.0, 0.0, 7)) == 0.0);
}

TEST_CASE("viscous-only step equals the exact heat propagator") {
    GridSpec g(8);
    SimConfig cfg;
    cfg.grid = g;
    cfg.nu = 0.3;
    cfg.dt = 0.01;
    SimState st = init_random(g, -2.0, 1.0, 3);

    SimState next = step(st, cfg, /*with_nonlinearity=*/false);
    SpectralField expect(g);
    const double s = 2.0 * pi / g.l;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double kx = s * wavenumber(ix, g.n);
                const double ky = s * wavenumber(iy, g.n);
                const double kz = s * wavenumber(iz, g.n);
                const double ef = std::exp(-cfg.nu * (kx * kx + ky * ky + kz * kz) * cfg.dt);
                const std::size_t i = g.idx(ix, iy, iz);
                for (int d = 0; d < 3; ++d) expect.c[d][i] = ef * st.uhat.c[d][i];
            }
    CHECK(max_mode_diff(next.uhat, expect) < 1e-15);
    CHECK(next.t == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(next.step_index == 1);
}

TEST_CASE("step is deterministic and respects the cfl guard") {
    GridSpec g(16);
    SimConfig cfg;
    cfg.grid = g;
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    SimState st = init_taylor_green(g);

    SimState n1 = step(st, cfg);
    SimState n2 = step(st, cfg);
    CHECK(max_mode_diff(n1.uhat, n2.uhat) == 0.0);

    // energy decays under the dynamics
    double e0 = kinetic_energy(st);
    SimState cur = st;
    for (int i = 0; i < 5; ++i) cur = step(cur, cfg);
    CHECK(kinetic_energy(cur) < e0);

    SimConfig big = cfg;
    big.dt = 10.0; // far above cfl_safety * h / max|u|
    CHECK_THROWS_AS(step(st, big), cfl_error);
}

TEST_CASE("energy identities") {
    GridSpec g(16);
    SimState st = init_random(g, -5.0 / 3.0, 2.0, 11);
    VectorField u = velocity_field(st);
    const double l2 = lp_norm(u, 2.0);
    CHECK(kinetic_energy(st) == doctest::Approx(0.5 * l2 * l2).epsilon(1e-12));

    VectorField om = vorticity_field(st);
    const double ol2 = lp_norm(om, 2.0);
    CHECK(enstrophy(st) == doctest::Approx(ol2 * ol2).epsilon(1e-12));
}

TEST_CASE("run hook cadence") {
    SimConfig cfg;
    cfg.grid = GridSpec(16);
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    cfg.output_every = 10;
    cfg.init = InitSpec::parse("taylor-green");

    std::vector<double> times;
    cfg.t_end = 0.0;
    run(cfg, [&](const SimState& s) { times.push_back(s.t); });
    CHECK(times.size() == 1);
    CHECK(times[0] == 0.0);

    // a trailing partial step lands exactly on t_end
    times.clear();
    cfg.t_end = 0.0105;
    run(cfg, [&](const SimState& s) { times.push_back(s.t); });
    REQUIRE(times.size() == 3);
    CHECK(times[0] == 0.0);
    CHECK(times[1] == doctest::Approx(0.010).epsilon(1e-12));
    CHECK(times[2] == doctest::Approx(0.0105).epsilon(1e-12));

    cfg.output_every = 0;
    CHECK_THROWS_AS(run(cfg, [](const SimState&) {}), domain_error);
}
