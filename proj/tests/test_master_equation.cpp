#include "rydconv/master_equation.hpp"

#include "rydconv/constants.hpp"
#include "rydconv/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace rydconv;
using namespace rydconv::units;

namespace {

ConverterConfig base_config() { return ConverterConfig::paper_defaults(); }

// uniqueness of the steady state needs a drain on every level; the reduction
// tests keep the default (tiny) decays on the unused upper levels, which the
// populated block never feels
ConverterConfig two_level_config(double rabi, double detuning, double gamma) {
    ConverterConfig c = base_config();
    c.rabi_probe = rabi;
    c.rabi_coupling = c.rabi_mw = c.rabi_decoupling = 0.0;
    c.detuning_probe = detuning;
    c.detuning_coupling = c.detuning_mw = c.detuning_decoupling = 0.0;
    c.decay_e = gamma;
    c.transit_rate = 0.0;
    return c;
}

} // namespace

TEST_CASE("level scheme invariants") {
    const LevelScheme s = LevelScheme::standard();
    CHECK(s.valid());
    CHECK(s.driven_count() == 4);
    CHECK(s.emission_count() == 1);
    CHECK(s.labels[LvlG] == "5S1/2");
    CHECK(s.labels[LvlS] == "5D5/2");
}

TEST_CASE("hamiltonian: all drives and detunings zero gives the zero matrix") {
    ConverterConfig c = base_config();
    c.rabi_probe = c.rabi_coupling = c.rabi_mw = c.rabi_decoupling = 0.0;
    c.detuning_probe = c.detuning_coupling = c.detuning_mw = c.detuning_decoupling = 0.0;
    const Matrix5c H = build_hamiltonian(c, 0.0);
    CHECK(H.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian: paper working point at v=0") {
    ConverterConfig c = base_config(); // Op=8, Oc=22, Od=17, Delta_55D=16 (2pi MHz)
    const Matrix5c H = build_hamiltonian(c, 0.0);
    CHECK(std::real(H(LvlG, LvlE)) == doctest::Approx(4.0 * MHz_2pi));
    CHECK(std::real(H(LvlR1, LvlR1)) == doctest::Approx(-16.0 * MHz_2pi));
    CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian: Doppler shift is k*v with the signed wavevector") {
    ConverterConfig c = base_config();
    c.rabi_coupling = c.rabi_mw = c.rabi_decoupling = 0.0;
    c.detuning_probe = 0.0;
    c.detuning_coupling = c.detuning_mw = c.detuning_decoupling = 0.0;
    const double v = 100.0;
    const Matrix5c H = build_hamiltonian(c, v);
    // probe propagates along -z: k_p = -2pi/780nm, delta_e = -k_p v = +|k|v
    const double expected = 2.0 * constants::pi / 780e-9 * v;
    CHECK(std::real(H(LvlE, LvlE)) == doctest::Approx(-expected).epsilon(1e-12));
}

TEST_CASE("jump operators: channel structure") {
    ConverterConfig c = base_config();

    SUBCASE("all rates zero -> empty list") {
        c.decay_e = c.decay_r1 = c.decay_r2 = c.decay_s = 0.0;
        c.transit_rate = c.dephasing = 0.0;
        CHECK(build_jump_operators(c).empty());
    }
    SUBCASE("single decay channel") {
        c.decay_r1 = c.decay_r2 = c.decay_s = 0.0;
        c.transit_rate = c.dephasing = 0.0;
        const auto ops = build_jump_operators(c);
        REQUIRE(ops.size() == 1);
        CHECK(std::abs(ops[0](LvlG, LvlE)) == doctest::Approx(std::sqrt(c.decay_e)));
        CHECK(ops[0].cwiseAbs().sum() == doctest::Approx(std::sqrt(c.decay_e)));
    }
    SUBCASE("transit produces five channels into g") {
        c.decay_e = c.decay_r1 = c.decay_r2 = c.decay_s = 0.0;
        c.dephasing = 0.0;
        const auto ops = build_jump_operators(c);
        REQUIRE(ops.size() == 5);
        for (const auto& J : ops) {
            int row = -1;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j)
                    if (std::abs(J(i, j)) > 0) row = i;
            CHECK(row == LvlG);
        }
    }
}

TEST_CASE("transit refill matches the scalar rate equation") {
    // with only transit decay and a drive, total population flows into g at
    // rate transit*(1 - rho_gg); integrate the full master equation with a
    // forward-Euler oracle and compare the g population flow
    ConverterConfig c = base_config();
    c.decay_e = c.decay_r1 = c.decay_r2 = c.decay_s = 0.0;
    c.rabi_mw = 4.0 * MHz_2pi; // keep the loop driven so population spreads

    const auto jumps = build_jump_operators(c);
    const Matrix5c H = build_hamiltonian(c, 0.0);
    Matrix5c rho = Matrix5c::Zero();
    rho(LvlG, LvlG) = 0.4;
    rho(LvlR2, LvlR2) = 0.6;
    const Matrix5c drho = apply_liouvillian(H, jumps, rho);
    // the Hamiltonian part conserves each population only in total; compare
    // the dissipative g-flow against transit*(1-rho_gg): coherences are zero
    // here so the coherent part contributes nothing to the diagonal
    CHECK(std::real(drho(LvlG, LvlG))
          == doctest::Approx(c.transit_rate * (1.0 - 0.4)).epsilon(1e-12));
}

TEST_CASE("steady state: transit only relaxes to the ground state") {
    ConverterConfig c = base_config();
    c.rabi_probe = c.rabi_coupling = c.rabi_mw = c.rabi_decoupling = 0.0;
    const DensityMatrix dm = steady_state(build_hamiltonian(c, 0.0), build_jump_operators(c));
    CHECK(dm.population(LvlG) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dm.rho.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("steady state: two-level reduction matches the closed form") {
    const double gamma = 6.07 * MHz_2pi;
    for (const double det : {0.0, 3.0 * MHz_2pi, -11.0 * MHz_2pi}) {
        const ConverterConfig c = two_level_config(8.0 * MHz_2pi, det, gamma);
        const DensityMatrix dm = steady_state(build_hamiltonian(c, 0.0),
                                              build_jump_operators(c));
        const double om = c.rabi_probe;
        const double expected = (om * om / 4.0)
            / (det * det + gamma * gamma / 4.0 + om * om / 2.0);
        CHECK(dm.population(LvlE) == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("steady state: weak-probe EIT reduction matches the closed form") {
    ConverterConfig c = base_config();
    c.rabi_probe = 1e-4 * MHz_2pi;
    c.rabi_mw = c.rabi_decoupling = 0.0;
    c.detuning_probe = 2.0 * MHz_2pi;
    c.detuning_coupling = -5.0 * MHz_2pi;
    c.detuning_mw = c.detuning_decoupling = 0.0;
    c.transit_rate = 0.21 * MHz_2pi;

    const DensityMatrix dm = steady_state(build_hamiltonian(c, 0.0),
                                          build_jump_operators(c));
    // first order in the probe:
    // rho_ge = (i Op/2) / (g_eg + i d_e + (Oc^2/4) / (g_rg + i d_r1)),
    // where the transit channels add a full transit_rate to each coherence
    const std::complex<double> I(0.0, 1.0);
    const double g_eg = c.decay_e / 2.0 + c.transit_rate;
    const double g_rg = c.decay_r1 / 2.0 + c.transit_rate;
    const double d_e = c.detuning_probe;
    const double d_r1 = c.detuning_probe + c.detuning_coupling;
    const std::complex<double> expected = I * c.rabi_probe / 2.0
        / (g_eg + I * d_e + (c.rabi_coupling * c.rabi_coupling / 4.0) / (g_rg + I * d_r1));
    CHECK(std::abs(dm.rho(LvlG, LvlE) - expected) <= 1e-8 * std::abs(expected));
    CHECK(eit_signal(dm) > 0.0);
}

TEST_CASE("steady state invariants at the paper working point") {
    const ConverterConfig c = base_config();
    const auto jumps = build_jump_operators(c);
    SteadyStateSolver solver(jumps);
    const auto res = solver.solve(build_hamiltonian(c, 0.0));
    CHECK(res.residual <= SteadyStateSolver::residual_tolerance);
    CHECK(res.state.trace_error() <= 1e-12);
    CHECK(res.state.hermiticity_error() <= 1e-12);
    CHECK(res.state.min_eigenvalue() >= -1e-10);
}

TEST_CASE("steady state: degenerate configuration is rejected") {
    ConverterConfig c = base_config();
    c.decay_e = c.decay_r1 = c.decay_r2 = c.decay_s = 0.0;
    c.transit_rate = 0.0;
    c.dephasing = 0.0;
    CHECK_THROWS_AS(steady_state(build_hamiltonian(c, 0.0), build_jump_operators(c)),
                    SingularLiouvillian);

    // drives on but nothing couples the upper manifold back: degenerate too
    c.decay_e = 6.07 * MHz_2pi;
    c.rabi_coupling = c.rabi_mw = c.rabi_decoupling = 0.0;
    CHECK_THROWS_AS(steady_state(build_hamiltonian(c, 0.0), build_jump_operators(c)),
                    SingularLiouvillian);
}

TEST_CASE("signal coherence: loop structure") {
    ConverterConfig c = base_config();

    SUBCASE("no MW, no conversion") {
        c.rabi_mw = 0.0;
        const DensityMatrix dm = steady_state(build_hamiltonian(c, 0.0),
                                              build_jump_operators(c));
        CHECK(std::abs(signal_coherence(dm)) <= 1e-12);
    }
    SUBCASE("rho_s vanishes when any loop field is off") {
        for (double ConverterConfig::*field :
             {&ConverterConfig::rabi_probe, &ConverterConfig::rabi_coupling,
              &ConverterConfig::rabi_mw, &ConverterConfig::rabi_decoupling}) {
            ConverterConfig cc = c;
            cc.*field = 0.0;
            const DensityMatrix dm = steady_state(build_hamiltonian(cc, 0.0),
                                                  build_jump_operators(cc));
            CHECK(std::abs(signal_coherence(dm)) <= 1e-12);
        }
    }
    SUBCASE("linear in the MW Rabi frequency in the weak limit") {
        ConverterConfig c1 = c, c2 = c;
        c1.rabi_mw = 0.05 * MHz_2pi;
        c2.rabi_mw = 0.10 * MHz_2pi;
        const auto jumps = build_jump_operators(c); // rates identical
        const double s1 = std::abs(signal_coherence(
            steady_state(build_hamiltonian(c1, 0.0), jumps)));
        const double s2 = std::abs(signal_coherence(
            steady_state(build_hamiltonian(c2, 0.0), jumps)));
        CHECK(s2 / s1 == doctest::Approx(2.0).epsilon(0.01));
    }
    SUBCASE("single-class slope has the expected scale") {
        // d rho_s / d Omega_MW at the working point; the paper's quoted slope
        // is 1.1e-4 per 2pi MHz (= 1.75e-11 per rad/s); decay rates are
        // implementation-chosen so only the scale is pinned here
        c.rabi_mw = 0.05 * MHz_2pi;
        const DensityMatrix dm = steady_state(build_hamiltonian(c, 0.0),
                                              build_jump_operators(c));
        const double slope = std::abs(signal_coherence(dm)) / c.rabi_mw;
        CHECK(slope > 1.75e-12);
        CHECK(slope < 1.75e-10);
    }
}

TEST_CASE("global drive phase leaves |rho_s| unchanged") {
    // multiplying every Rabi frequency by a common phase is a gauge change;
    // verify via the Liouvillian built from a phase-rotated Hamiltonian
    const ConverterConfig c = base_config();
    const auto jumps = build_jump_operators(c);
    Matrix5c H = build_hamiltonian(c, 0.0);
    const DensityMatrix ref = steady_state(H, jumps);

    const std::complex<double> phase = std::polar(1.0, 0.7321);
    Matrix5c Hp = H;
    for (auto [a, b] : {std::pair{LvlG, LvlE}, {LvlE, LvlR1}, {LvlR1, LvlR2}, {LvlR2, LvlS}}) {
        Hp(a, b) = H(a, b) * phase;
        Hp(b, a) = std::conj(Hp(a, b));
    }
    const DensityMatrix rot = steady_state(Hp, jumps);
    CHECK(std::abs(signal_coherence(rot)) ==
          doctest::Approx(std::abs(signal_coherence(ref))).epsilon(1e-9));
}

TEST_CASE("eit signal basics") {
    ConverterConfig c = base_config();

    SUBCASE("pure ground state gives zero") {
        DensityMatrix dm;
        dm.rho = Matrix5c::Zero();
        dm.rho(LvlG, LvlG) = 1.0;
        CHECK(eit_signal(dm) == 0.0);
    }
    SUBCASE("probe-only resonant absorption is positive and matches two levels") {
        const ConverterConfig c2 = two_level_config(8.0 * MHz_2pi, 0.0, 6.07 * MHz_2pi);
        const DensityMatrix dm = steady_state(build_hamiltonian(c2, 0.0),
                                              build_jump_operators(c2));
        // two-level steady coherence: rho_ge = i (Op/2)(G/2 + i d) /
        //   (d^2 + G^2/4 + Op^2/2); on resonance Im rho_ge = Op G /
        //   (4 (G^2/4 + Op^2/2)) -- absorption, positive
        const double om = c2.rabi_probe, G = c2.decay_e;
        const double expected = om * G / 4.0 / (G * G / 4.0 + om * om / 2.0);
        CHECK(eit_signal(dm) == doctest::Approx(expected).epsilon(1e-10));
    }
    SUBCASE("coupling opens a transparency window") {
        c.rabi_mw = c.rabi_decoupling = 0.0;
        c.detuning_probe = c.detuning_coupling = 0.0;
        c.detuning_mw = c.detuning_decoupling = 0.0;
        ConverterConfig coupled = c, uncoupled = c;
        uncoupled.rabi_coupling = 0.0;
        const double with_c = eit_signal(steady_state(build_hamiltonian(coupled, 0.0),
                                                      build_jump_operators(coupled)));
        const double without_c = eit_signal(steady_state(build_hamiltonian(uncoupled, 0.0),
                                                         build_jump_operators(uncoupled)));
        CHECK(with_c < without_c);
    }
}

TEST_CASE("randomized configurations keep all solver invariants") {
    Rng rng(42);
    const ConverterConfig base = base_config();
    const auto logu = [&](double lo, double hi) {
        return lo * std::pow(hi / lo, rng.uniform());
    };
    for (int trial = 0; trial < 200; ++trial) {
        ConverterConfig c = base;
        c.rabi_probe = logu(0.1, 40.0) * MHz_2pi;
        c.rabi_coupling = logu(0.1, 40.0) * MHz_2pi;
        c.rabi_mw = logu(0.01, 40.0) * MHz_2pi;
        c.rabi_decoupling = logu(0.1, 40.0) * MHz_2pi;
        c.detuning_probe = (rng.uniform() - 0.5) * 80.0 * MHz_2pi;
        c.detuning_coupling = (rng.uniform() - 0.5) * 80.0 * MHz_2pi;
        c.detuning_mw = (rng.uniform() - 0.5) * 80.0 * MHz_2pi;
        c.detuning_decoupling = (rng.uniform() - 0.5) * 80.0 * MHz_2pi;
        c.decay_e = logu(1.0, 10.0) * MHz_2pi;
        c.decay_r1 = logu(1e-3, 1.0) * MHz_2pi;
        c.decay_r2 = logu(1e-3, 1.0) * MHz_2pi;
        c.decay_s = logu(0.1, 2.0) * MHz_2pi;
        c.transit_rate = logu(0.01, 1.0) * MHz_2pi;
        const double v = (rng.uniform() - 0.5) * 600.0;

        SteadyStateSolver solver(build_jump_operators(c));
        const auto res = solver.solve(build_hamiltonian(c, v));
        CHECK(res.residual <= SteadyStateSolver::residual_tolerance);
        CHECK(res.state.trace_error() <= 1e-12);
        CHECK(res.state.hermiticity_error() <= 1e-12);
        CHECK(res.state.min_eigenvalue() >= -1e-10);
    }
}

TEST_CASE("solver output is deterministic") {
    const ConverterConfig c = base_config();
    SteadyStateSolver solver(build_jump_operators(c));
    const Matrix5c H = build_hamiltonian(c, 37.0);
    const auto a = solver.solve(H);
    const auto b = solver.solve(H);
    CHECK((a.state.rho - b.state.rho).cwiseAbs().maxCoeff() == 0.0);
}
