#include <cmath>
#include <random>

#include "doctest.h"
#include "hamflow/hamiltonian.hpp"
#include "hamflow/phase_state.hpp"
#include "support/oracles.hpp"

using namespace hamflow;

TEST_CASE("phase state validation") {
    CHECK_THROWS_AS(make_state({}, {}), Error);
    CHECK_THROWS_AS(make_state({1.0}, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(make_state({std::nan("")}, {0.0}), Error);
    CHECK_THROWS_AS(make_state({1.0}, {std::numeric_limits<double>::infinity()}), Error);
    const PhaseState s = make_state({1.0, 2.0}, {3.0, 4.0}, 5.0);
    CHECK(s.dim() == 2);
    CHECK(s.t == 5.0);
}

TEST_CASE("harmonic oscillator catalogue entry") {
    const HamiltonianSystem ho = make_harmonic_oscillator();
    CHECK(ho.h(make_state1(1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-15));

    // Quarter rotation.
    const PhaseState quarter = ho.exact_flow(make_state1(1.0, 0.0), M_PI / 2.0);
    CHECK(std::abs(quarter.q[0] - 0.0) <= 1e-12);
    CHECK(std::abs(quarter.p[0] - (-1.0)) <= 1e-12);

    // Closed-form rotation against direct evaluation.
    const PhaseState s0 = make_state1(0.3, -1.2);
    const double delta = 0.37;
    const PhaseState moved = ho.exact_flow(s0, delta);
    CHECK(moved.q[0] ==
          doctest::Approx(s0.q[0] * std::cos(delta) + s0.p[0] * std::sin(delta)).epsilon(1e-15));
    CHECK(moved.p[0] ==
          doctest::Approx(s0.p[0] * std::cos(delta) - s0.q[0] * std::sin(delta)).epsilon(1e-15));
    CHECK(moved.t == doctest::Approx(s0.t + delta));
}

TEST_CASE("oscillator flow preserves the radius for random states and steps") {
    const HamiltonianSystem ho = make_harmonic_oscillator();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> step(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const PhaseState s = make_state1(coord(rng), coord(rng));
        const PhaseState moved = ho.exact_flow(s, step(rng));
        const double before = s.q[0] * s.q[0] + s.p[0] * s.p[0];
        const double after = moved.q[0] * moved.q[0] + moved.p[0] * moved.p[0];
        CHECK(std::abs(after - before) <= 1e-12 * std::max(1.0, before));
    }
}

TEST_CASE("catalogue evaluators ignore the time tag") {
    for (const HamiltonianSystem& sys :
         {make_harmonic_oscillator(), make_pendulum(), make_quartic_oscillator()}) {
        for (const PhaseState& s : oracles::random_states(10, 13)) {
            PhaseState tagged = s;
            tagged.t = 7.25;
            CHECK(sys.h(tagged) == sys.h(s));
            CHECK(sys.grad_q(tagged) == sys.grad_q(s));
            CHECK(sys.grad_p(tagged) == sys.grad_p(s));
        }
    }
}

TEST_CASE("energy is conserved along the exact flow") {
    const HamiltonianSystem ho = make_harmonic_oscillator();
    for (const PhaseState& s : oracles::random_states(50, 11)) {
        const double h0 = ho.h(s);
        for (double delta : {0.1, 0.9, 7.3})
            CHECK(std::abs(ho.h(ho.exact_flow(s, delta)) - h0) <= 1e-10);
    }
}

TEST_CASE("catalogue gradients match finite differences on the test grid") {
    for (const HamiltonianSystem& sys :
         {make_harmonic_oscillator(), make_pendulum(), make_quartic_oscillator()}) {
        for (int ix = 0; ix < 5; ++ix) {
            for (int ip = 0; ip < 5; ++ip) {
                const PhaseState s = make_state1(-2.0 + ix, -2.0 + ip);
                const std::vector<double> gq = sys.grad_q(s);
                const std::vector<double> gp = sys.grad_p(s);
                const std::vector<double> fq = fd_grad_q(sys.h, s);
                const std::vector<double> fp = fd_grad_p(sys.h, s);
                const double scale = std::max({1.0, std::abs(gq[0]), std::abs(gp[0])});
                CHECK(std::abs(gq[0] - fq[0]) <= 1e-6 * scale);
                CHECK(std::abs(gp[0] - fp[0]) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("custom system fills missing gradients with finite differences") {
    const HamiltonianSystem numeric_ho = make_custom_system(
        [](const PhaseState& s) { return 0.5 * (s.p[0] * s.p[0] + s.q[0] * s.q[0]); }, 1);
    CHECK_FALSE(numeric_ho.analytic_gradients);
    const PhaseState probe = make_state1(1.0, 0.0);
    CHECK(numeric_ho.grad_q(probe)[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(numeric_ho.grad_p(probe)[0] == doctest::Approx(0.0).epsilon(1e-6));

    const HamiltonianSystem pendulum = make_custom_system(
        [](const PhaseState& s) { return 0.5 * s.p[0] * s.p[0] + (1.0 - std::cos(s.q[0])); }, 1);
    CHECK(std::abs(pendulum.grad_q(make_state1(0.0, 0.4))[0]) <= 1e-10);

    const HamiltonianSystem quartic = make_custom_system(
        [](const PhaseState& s) {
            return 0.5 * s.p[0] * s.p[0] + 0.25 * std::pow(s.q[0], 4);
        },
        1);
    CHECK(quartic.grad_p(make_state1(0.0, 2.0))[0] == doctest::Approx(2.0).epsilon(1e-9));

    CHECK_THROWS_AS(make_custom_system([](const PhaseState&) { return 0.0; }, 0), Error);
}

TEST_CASE("rescaling map") {
    SUBCASE("origin and unit constants") {
        const RescaledPoint origin = rescale_physical(0.0, 0.0, 0.0, 2.0, 3.0);
        CHECK(origin.x == 0.0);
        CHECK(origin.p == 0.0);
        CHECK(origin.t == 0.0);

        const RescaledPoint identity = rescale_physical(0.7, -1.1, 2.2, 1.0, 1.0);
        CHECK(identity.x == doctest::Approx(0.7).epsilon(1e-15));
        CHECK(identity.p == doctest::Approx(-1.1).epsilon(1e-15));
        CHECK(identity.t == doctest::Approx(2.2).epsilon(1e-15));
    }

    SUBCASE("hand-checked point") {
        const RescaledPoint r = rescale_physical(2.0, 3.0, 5.0, 4.0, 9.0);
        CHECK(r.x == doctest::Approx(6.0).epsilon(1e-15));
        CHECK(r.p == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(r.t == doctest::Approx(7.5).epsilon(1e-15));
    }

    SUBCASE("round trips are the identity for random positive m, k") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> pos(0.1, 10.0);
        std::uniform_real_distribution<double> coord(-5.0, 5.0);
        for (int i = 0; i < 200; ++i) {
            const RescalingMap map(pos(rng), pos(rng));
            const PhysicalPoint phys{coord(rng), coord(rng), coord(rng)};
            const PhysicalPoint back = map.to_physical(map.to_rescaled(phys));
            CHECK(std::abs(back.zeta - phys.zeta) <= 1e-12 * std::max(1.0, std::abs(phys.zeta)));
            CHECK(std::abs(back.rho - phys.rho) <= 1e-12 * std::max(1.0, std::abs(phys.rho)));
            CHECK(std::abs(back.tau - phys.tau) <= 1e-12 * std::max(1.0, std::abs(phys.tau)));
        }
    }

    SUBCASE("rejects non-positive constants") {
        CHECK_THROWS_AS(rescale_physical(1.0, 1.0, 1.0, 0.0, 1.0), Error);
        CHECK_THROWS_AS(rescale_physical(1.0, 1.0, 1.0, 1.0, -2.0), Error);
    }

    SUBCASE("rescaling absorbs the physical constants into H = (p^2 + x^2)/2") {
        const double m = 3.7, k = 0.6;
        const RescalingMap map(m, k);
        const PhysicalPoint phys{1.3, -0.8, 0.0};
        const RescaledPoint r = map.to_rescaled(phys);
        const double physical_h = phys.rho * phys.rho / (2.0 * m) + 0.5 * k * phys.zeta * phys.zeta;
        const double rescaled_h = 0.5 * (r.p * r.p + r.x * r.x);
        CHECK(rescaled_h == doctest::Approx(physical_h).epsilon(1e-14));
    }
}
