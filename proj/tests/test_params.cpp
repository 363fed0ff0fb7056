#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "magnonlab/params.hpp"
#include "magnonlab/steady_state.hpp"
#include "oracles.hpp"

using namespace magnonlab;

namespace {

CavityParams reference_cavity() {
    return {.f_c_hz = 10.1003e9, .kappa1_hz = 0.7175e6, .kappa2_hz = 0.7175e6,
            .kappa_int_hz = 1.435e6};
}

MagnonModeParams reference_kittel() {
    return {.label = "kittel", .f_m_hz = 9.5503e9, .gamma_hz = 24.3e6, .g_hz = 42e6,
            .kerr_hz = 1e-8, .drive_c_si = drive_c_si(4.7e24)};
}

MaterialParams sample_material() {
    MaterialParams m;
    m.gyro_hz_per_t = 28.0e9;
    m.k_an_j_m3 = 6100.0;
    m.m_sat_a_m = 1.46e5;
    m.v_m_m3 = 5.236e-10;  // 1 mm sphere
    m.s_total = 4.1e18;
    return m;
}

}  // namespace

TEST_CASE("kerr coefficient follows the closed form") {
    MaterialParams m = sample_material();

    SUBCASE("no anisotropy, no Kerr term") {
        m.k_an_j_m3 = 0.0;
        CHECK(kerr_coefficient(m) == 0.0);
    }

    SUBCASE("halving the volume doubles K") {
        const double k1 = kerr_coefficient(m);
        m.v_m_m3 *= 0.5;
        CHECK(kerr_coefficient(m) == doctest::Approx(2.0 * k1).epsilon(1e-12));
    }

    SUBCASE("matches a direct hand evaluation") {
        // mu0 K_an gamma^2 / (M^2 V), gamma angular, result back to ordinary.
        const double gamma_ang = 2.0 * M_PI * 28.0e9;
        const double expected = 4.0e-7 * M_PI * 6100.0 * gamma_ang * gamma_ang /
                                (1.46e5 * 1.46e5 * 5.236e-10) / (2.0 * M_PI);
        CHECK(kerr_coefficient(m) == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("exactly linear in K_an and inverse-linear in V_m") {
        const double base = kerr_coefficient(m);
        for (double scale : {1e-3, 0.1, 2.0, 37.5, 1e4}) {
            MaterialParams ka = m;
            ka.k_an_j_m3 *= scale;
            CHECK(kerr_coefficient(ka) == doctest::Approx(base * scale).epsilon(1e-12));
            MaterialParams vm = m;
            vm.v_m_m3 *= scale;
            CHECK(kerr_coefficient(vm) == doctest::Approx(base / scale).epsilon(1e-12));
        }
    }

    SUBCASE("sign follows the anisotropy constant") {
        m.k_an_j_m3 = -610.0;
        CHECK(kerr_coefficient(m) < 0.0);
    }

    SUBCASE("zero volume or magnetization is a domain error") {
        MaterialParams bad = m;
        bad.v_m_m3 = 0.0;
        CHECK_THROWS_AS(kerr_coefficient(bad), std::domain_error);
        bad = m;
        bad.m_sat_a_m = 0.0;
        CHECK_THROWS_AS(kerr_coefficient(bad), std::domain_error);
    }
}

TEST_CASE("kittel frequency") {
    SUBCASE("pure Zeeman slope at 346.8 mT") {
        CHECK(kittel_frequency(28.0e9, 0.3468, 0.0) == doctest::Approx(9.7104e9).epsilon(1e-12));
    }

    SUBCASE("zero field, zero anisotropy") {
        CHECK(kittel_frequency(28.0e9, 0.0, 0.0) == 0.0);
    }

    SUBCASE("a 157.8 MHz offset reproduces the 9.5526 GHz reference") {
        CHECK(kittel_frequency(28.0e9, 0.3468, 157.8e6) ==
              doctest::Approx(9.5526e9).epsilon(1e-12));
    }

    SUBCASE("affine in B0 with slope equal to gyro") {
        MaterialParams m = sample_material();
        m.s_total = 2.33e-11;  // keeps 2 K S at the 100 MHz scale
        const double f0 = kittel_frequency(m, 0.1);
        const double f1 = kittel_frequency(m, 0.35);
        CHECK((f1 - f0) / (0.35 - 0.1) == doctest::Approx(m.gyro_hz_per_t).epsilon(1e-12));
    }

    SUBCASE("material path equals offset path with 2 K S") {
        const MaterialParams m = sample_material();
        const double offset = 2.0 * kerr_coefficient(m) * m.s_total;
        CHECK(kittel_frequency(m, 0.3468) ==
              doctest::Approx(kittel_frequency(m.gyro_hz_per_t, 0.3468, offset)).epsilon(1e-14));
    }
}

TEST_CASE("cooperativity") {
    const CavityParams cavity = reference_cavity();
    MagnonModeParams mode = reference_kittel();

    SUBCASE("reference working point gives 101.2") {
        const double c = cooperativity(cavity, mode);
        CHECK(c == doctest::Approx(101.2).epsilon(0.005));
        // Hand evaluation: 4*42^2 / (2.87*24.3) in MHz.
        CHECK(c == doctest::Approx(4.0 * 42.0 * 42.0 / (2.87 * 24.3)).epsilon(1e-12));
    }

    SUBCASE("no coupling, no cooperativity") {
        mode.g_hz = 0.0;
        CHECK(cooperativity(cavity, mode) == 0.0);
    }

    SUBCASE("doubling g quadruples C") {
        const double c1 = cooperativity(cavity, mode);
        mode.g_hz *= 2.0;
        CHECK(cooperativity(cavity, mode) == doctest::Approx(4.0 * c1).epsilon(1e-12));
    }

    SUBCASE("invariant under the Hz <-> rad/s convention") {
        // Homogeneous of degree zero in the rates: scaling everything by
        // 2*pi changes nothing.
        CavityParams ang = cavity;
        MagnonModeParams angm = mode;
        ang.kappa1_hz *= kTwoPi;
        ang.kappa2_hz *= kTwoPi;
        ang.kappa_int_hz *= kTwoPi;
        angm.gamma_hz *= kTwoPi;
        angm.g_hz *= kTwoPi;
        CHECK(cooperativity(ang, angm) ==
              doctest::Approx(cooperativity(cavity, mode)).epsilon(1e-12));
    }
}

TEST_CASE("probe photon number") {
    const CavityParams cavity = reference_cavity();
    ProbeParams probe{.f_p_hz = 10.1035e9, .power_w = dbm_to_watts(-129.0)};

    SUBCASE("the -129 dBm working point holds about one photon") {
        // On resonance with the dressed cavity at 10.1035 GHz.
        const double n = probe_photon_number(probe, cavity, probe.f_p_hz);
        CHECK(n == doctest::Approx(1.04).epsilon(0.01));
        // Independent arithmetic: P / (hbar w kappa).
        const double expected = probe.power_w /
                                (kHbar * angular(10.1035e9) * angular(2.87e6));
        CHECK(n == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("vanishes far off resonance") {
        ProbeParams far = probe;
        far.f_p_hz = cavity.f_c_hz + 1.0e12;
        CHECK(probe_photon_number(far, cavity) < 1e-9);
    }

    SUBCASE("on-resonance reduction when kappa1 = kappa/4") {
        const double full = probe_photon_number(probe, cavity, probe.f_p_hz);
        const double reduced = probe.power_w /
                               (kHbar * angular(probe.f_p_hz) * angular(cavity.kappa_total_hz()));
        CHECK(full == doctest::Approx(reduced).epsilon(1e-12));
    }
}

TEST_CASE("power conversions") {
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(dbm_to_watts(11.0) == doctest::Approx(12.589254117941675e-3).epsilon(1e-12));
    CHECK(dbm_to_watts(-129.0) == doctest::Approx(1.2589254117941662e-16).epsilon(1e-12));

    SUBCASE("dbm <-> watts roundtrip") {
        oracles::SplitMix64 rng(7);
        for (int i = 0; i < 100; ++i) {
            const double p = rng.uniform(-150.0, 30.0);
            CHECK(watts_to_dbm(dbm_to_watts(p)) == doctest::Approx(p).epsilon(1e-12));
        }
    }

    SUBCASE("delivered power applies the line attenuation") {
        DriveParams drive{.f_d_hz = 9.55e9, .power_w = dbm_to_watts(11.0), .attenuation_db = 20.0};
        CHECK(delivered_power(drive) ==
              doctest::Approx(dbm_to_watts(-9.0)).epsilon(1e-12));
    }
}

TEST_CASE("parameter invariants are enforced") {
    CHECK_THROWS_AS(validate(CavityParams{.f_c_hz = -1.0, .kappa1_hz = 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(CavityParams{.f_c_hz = 1.0}), std::invalid_argument);  // kappa = 0
    CHECK_THROWS_AS(validate(MagnonModeParams{.label = "x", .f_m_hz = 1.0, .gamma_hz = 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(DriveParams{.f_d_hz = 1.0, .power_w = -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ProbeParams{.f_p_hz = 1.0, .power_w = -1.0}), std::invalid_argument);

    SUBCASE("sphere volume check") {
        MaterialParams m = sample_material();
        m.v_m_m3 = sphere_volume_m3(1e-3);
        CHECK_NOTHROW(check_sphere_volume(m, 1e-3));
        m.v_m_m3 *= 1.001;
        CHECK_THROWS_AS(check_sphere_volume(m, 1e-3), std::invalid_argument);
    }
}

TEST_CASE("shift cubic is invariant under the unit convention") {
    // Solve in the Hz convention through the library, then independently in
    // angular units with a bisection oracle, and compare.
    oracles::SplitMix64 rng(42);
    for (int i = 0; i < 50; ++i) {
        const double gamma = rng.log_uniform(1e6, 1e8);
        const double c_si = rng.log_uniform(1e24, 1e28);
        const double p = rng.log_uniform(1e-6, 1e-1);
        const double hz = solve_shift_cubic(gamma, c_si, p);

        const double gamma_ang = angular(gamma);
        const double q_ang = c_si * p;
        const auto cubic_ang = [&](double x) {
            return (x * x + 0.25 * gamma_ang * gamma_ang) * x - q_ang;
        };
        const double ang = oracles::bisect_root(cubic_ang, 0.0, 2.0 * std::cbrt(q_ang));
        CHECK(hz == doctest::Approx(ordinary(ang)).epsilon(1e-10));
    }
}
