#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "magnonlab/dispersive.hpp"
#include "magnonlab/steady_state.hpp"
#include "oracles.hpp"

using namespace magnonlab;

namespace {

CavityParams reference_cavity() {
    return {.f_c_hz = 10.1003e9, .kappa1_hz = 0.7175e6, .kappa2_hz = 0.7175e6,
            .kappa_int_hz = 1.435e6};
}

// Detuning of exactly 550 MHz below the cavity.
MagnonModeParams reference_kittel() {
    return {.label = "kittel", .f_m_hz = 10.1003e9 - 550e6, .gamma_hz = 24.3e6, .g_hz = 42e6,
            .kerr_hz = 1e-8, .drive_c_si = drive_c_si(4.7e24)};
}

}  // namespace

TEST_CASE("dispersive shifts at the reference working point") {
    const CavityParams cavity = reference_cavity();
    const MagnonModeParams mode = reference_kittel();

    SUBCASE("static pull of 3.207 MHz moves the cavity to 10.1035 GHz") {
        const ShiftReport r = dispersive_shifts(cavity, mode, 0.0);
        CHECK(r.cavity_pull_static_hz == doctest::Approx(3.207e6).epsilon(2e-4));
        CHECK(r.pulled_f_c_hz == doctest::Approx(10.1035e9).epsilon(1e-6));
        CHECK(r.cavity_pull_kerr_hz == 0.0);
        CHECK(r.magnon_pull_kerr_hz == 0.0);
    }

    SUBCASE("zero Kerr coefficient freezes the pulled frequencies") {
        MagnonModeParams flat = mode;
        flat.kerr_hz = 0.0;
        const ShiftReport r0 = dispersive_shifts(cavity, flat, 0.0);
        for (double n : {1.0, 1e6, 3.7e15}) {
            const ShiftReport rn = dispersive_shifts(cavity, flat, n);
            CHECK(rn.pulled_f_c_hz == r0.pulled_f_c_hz);
            CHECK(rn.pulled_f_m_hz == r0.pulled_f_m_hz);
        }
    }

    SUBCASE("pull ratio is 2g^2/D^2 over 1 - 2g^2/D^2") {
        const ShiftReport r = dispersive_shifts(cavity, mode, 4.2e15);
        const double ratio = r.cavity_pull_kerr_hz / r.magnon_pull_kerr_hz;
        CHECK(ratio == doctest::Approx(0.011663 / 0.98834).epsilon(1e-4));
    }

    SUBCASE("degenerate detuning is rejected") {
        MagnonModeParams resonant = mode;
        resonant.f_m_hz = cavity.f_c_hz;
        CHECK_THROWS_AS(dispersive_shifts(cavity, resonant, 0.0), std::domain_error);
    }
}

TEST_CASE("dispersive shift properties over random parameters") {
    oracles::SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        CavityParams cavity{.f_c_hz = rng.uniform(5e9, 15e9), .kappa1_hz = rng.log_uniform(1e5, 1e7),
                            .kappa2_hz = rng.log_uniform(1e5, 1e7),
                            .kappa_int_hz = rng.log_uniform(1e5, 1e7)};
        MagnonModeParams mode{.label = "m",
                              .f_m_hz = cavity.f_c_hz - rng.uniform(2e8, 2e9),
                              .gamma_hz = rng.log_uniform(1e6, 1e8),
                              .g_hz = rng.log_uniform(1e6, 1e8),
                              .kerr_hz = rng.log_uniform(1e-10, 1e-6)};
        const double n = rng.log_uniform(1e6, 1e16);
        const ShiftReport r = dispersive_shifts(cavity, mode, n);

        // Exact ratio law.
        const double delta = cavity.f_c_hz - mode.f_m_hz;
        const double chi = 2.0 * mode.g_hz * mode.g_hz / (delta * delta);
        CHECK(r.cavity_pull_kerr_hz ==
              doctest::Approx(chi / (1.0 - chi) * r.magnon_pull_kerr_hz).epsilon(1e-12));

        // Blue shifts for K > 0 and positive detuning.
        CHECK(r.cavity_pull_kerr_hz > 0.0);
        CHECK(r.magnon_pull_kerr_hz > 0.0);
    }
}

TEST_CASE("transform coefficients") {
    const CavityParams cavity = reference_cavity();
    const MagnonModeParams mode = reference_kittel();
    DriveParams drive{.f_d_hz = mode.f_m_hz, .power_w = 0.0};

    SUBCASE("lambda1 at zero occupation is -g/D") {
        const FnTransform fn = fn_coefficients(cavity, mode, drive, 0.0);
        CHECK(fn.lambda1 == doctest::Approx(-42.0 / 550.0).epsilon(1e-12));
        CHECK(fn.lambda1 == doctest::Approx(-0.07636).epsilon(1e-4));
        CHECK(fn.valid);
    }

    SUBCASE("no drive, no displacement coefficient") {
        const FnTransform fn = fn_coefficients(cavity, mode, drive, 1e10);
        CHECK(fn.lambda2 == 0.0);
    }

    SUBCASE("lambda2 / lambda1 equals Omega_d over the cavity detuning") {
        DriveParams driven = drive;
        driven.rabi_rad_s = 3.7e9;
        const FnTransform fn = fn_coefficients(cavity, mode, driven, 2.5e14);
        const double delta_c_ang = angular(cavity.f_c_hz - driven.f_d_hz);
        CHECK(fn.lambda2 / fn.lambda1 ==
              doctest::Approx(*driven.rabi_rad_s / delta_c_ang).epsilon(1e-12));
    }

    SUBCASE("vanishing denominators are degenerate") {
        MagnonModeParams m = mode;
        m.kerr_hz = 1.0;
        const double n = (cavity.f_c_hz - m.f_m_hz) / 2.0;  // makes D - 2Kn = 0
        CHECK_THROWS_AS(fn_coefficients(cavity, m, drive, n), std::domain_error);
        DriveParams at_cavity = drive;
        at_cavity.f_d_hz = cavity.f_c_hz;
        CHECK_THROWS_AS(fn_coefficients(cavity, mode, at_cavity, 0.0), std::domain_error);
    }
}

TEST_CASE("effective drive amplitude") {
    const CavityParams cavity = reference_cavity();
    const MagnonModeParams mode = reference_kittel();

    SUBCASE("uncoupled mode keeps the bare amplitude") {
        MagnonModeParams bare = mode;
        bare.g_hz = 0.0;
        DriveParams drive{.f_d_hz = bare.f_m_hz, .power_w = 0.0};
        drive.rabi_rad_s = 2.5e8;
        CHECK(effective_rabi(cavity, bare, drive, 0.0) == doctest::Approx(2.5e8).epsilon(1e-12));
    }

    SUBCASE("reference point correction factor is 0.99708") {
        DriveParams drive{.f_d_hz = cavity.f_c_hz - 550e6, .power_w = 0.0};
        drive.rabi_rad_s = 1.0;
        CHECK(effective_rabi(cavity, mode, drive, 0.0) ==
              doctest::Approx(1.0 - 3.20727e6 / (2.0 * 550e6)).epsilon(1e-6));
        CHECK(effective_rabi(cavity, mode, drive, 0.0) == doctest::Approx(0.99708).epsilon(1e-5));
    }

    SUBCASE("correction factor decreases with occupation") {
        DriveParams drive{.f_d_hz = mode.f_m_hz, .power_w = 0.0};
        drive.rabi_rad_s = 1.0;
        double last = 2.0;
        for (double n : {0.0, 1e12, 1e13, 1e14, 1e15}) {
            const double factor = effective_rabi(cavity, mode, drive, n);
            CHECK(factor < last);
            last = factor;
        }
    }

    SUBCASE("drive at the cavity is degenerate") {
        DriveParams drive{.f_d_hz = cavity.f_c_hz, .power_w = 0.0};
        drive.rabi_rad_s = 1.0;
        CHECK_THROWS_AS(effective_rabi(cavity, mode, drive, 0.0), std::domain_error);
    }
}

TEST_CASE("dispersive validity check") {
    const CavityParams cavity = reference_cavity();
    MagnonModeParams mode = reference_kittel();

    SUBCASE("reference point: ratio 13.1, dispersive") {
        const DispersiveValidity v = dispersive_validity(cavity, mode);
        CHECK(v.ratio == doctest::Approx(13.095).epsilon(1e-3));
        CHECK(v.dispersive);
    }

    SUBCASE("100 MHz detuning is not dispersive") {
        mode.f_m_hz = cavity.f_c_hz - 100e6;
        CHECK_FALSE(dispersive_validity(cavity, mode).dispersive);
    }

    SUBCASE("the 10g boundary counts as not dispersive") {
        mode.f_m_hz = cavity.f_c_hz - 420e6;
        const DispersiveValidity v = dispersive_validity(cavity, mode);
        CHECK(v.ratio == doctest::Approx(10.0).epsilon(1e-12));
        CHECK_FALSE(v.dispersive);
    }
}
