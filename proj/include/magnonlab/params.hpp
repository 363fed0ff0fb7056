#pragma once

#include <optional>
#include <string>

#include "magnonlab/constants.hpp"

namespace magnonlab {

// Two-port cavity: intrinsic mode frequency plus the three FWHM loss
// contributions (ports 1 and 2, internal). Total kappa is their sum.
struct CavityParams {
    double f_c_hz = 0.0;        // intrinsic (bare) cavity frequency
    double kappa1_hz = 0.0;     // port-1 loss
    double kappa2_hz = 0.0;     // port-2 loss
    double kappa_int_hz = 0.0;  // internal loss

    double kappa_total_hz() const { return kappa1_hz + kappa2_hz + kappa_int_hz; }
};

// One lumped magnon mode. kerr_hz is the per-excitation Kerr coefficient
// (may be zero); drive_c_si is the drive-coupling constant in kg^-1 m^-2.
struct MagnonModeParams {
    std::string label;
    double f_m_hz = 0.0;
    double gamma_hz = 0.0;  // FWHM linewidth
    double g_hz = 0.0;      // photon coupling
    double kerr_hz = 0.0;
    double drive_c_si = 0.0;
};

// Material constants of the magnetic sample; source of the Kerr coefficient
// and of the anisotropy offset in the Kittel law.
struct MaterialParams {
    double gyro_hz_per_t = 28.0e9;  // gyromagnetic ratio
    double mu0 = kMu0;              // vacuum permeability, SI
    double k_an_j_m3 = 0.0;         // first-order anisotropy constant
    double m_sat_a_m = 0.0;         // saturation magnetization
    double v_m_m3 = 0.0;            // sample volume
    double s_total = 0.0;           // macrospin number
};

struct DriveParams {
    double f_d_hz = 0.0;
    double power_w = 0.0;          // at the generator
    double attenuation_db = 0.0;   // line attenuation before the sample
    std::optional<double> rabi_rad_s;  // angular Rabi frequency, if known
};

struct ProbeParams {
    double f_p_hz = 0.0;
    double power_w = 0.0;
};

// Invariant checks; throw std::invalid_argument naming the offending field.
void validate(const CavityParams& cavity);
void validate(const MagnonModeParams& mode);
void validate(const MaterialParams& material);
void validate(const DriveParams& drive);
void validate(const ProbeParams& probe);

/// Volume of a sphere of diameter d; pi*d^3/6.
double sphere_volume_m3(double diameter_m);

/// Checks that material.v_m_m3 equals the volume of a sphere with the given
/// diameter (relative 1e-12); throws std::invalid_argument otherwise.
void check_sphere_volume(const MaterialParams& material, double diameter_m);

/// Kerr coefficient K = mu0 * K_an * gamma^2 / (M^2 * V_m), returned as an
/// ordinary frequency in Hz per excitation. Sign follows K_an.
double kerr_coefficient(const MaterialParams& material);

/// Kittel law f_m = gyro * B0 - offset with the anisotropy offset
/// 2 * mu0 * K_an * gamma^2 * S / (M^2 * V_m) derived from the material.
double kittel_frequency(const MaterialParams& material, double b0_t);

/// Kittel law with a directly supplied anisotropy offset in Hz, for when the
/// material constants are not known.
double kittel_frequency(double gyro_hz_per_t, double b0_t, double anisotropy_offset_hz);

/// Cooperativity C = 4 g^2 / (kappa * gamma_m); convention-free.
double cooperativity(const CavityParams& cavity, const MagnonModeParams& mode);

/// Mean intracavity photon number of a weak probe,
/// n = kappa1 * P_p / (hbar * w_p * (Dp^2 + (kappa/2)^2)) with angular rates.
/// The detuning Dp is taken from f_center_hz when given (e.g. the dressed
/// cavity frequency), otherwise from the bare cavity frequency.
double probe_photon_number(const ProbeParams& probe, const CavityParams& cavity,
                           std::optional<double> f_center_hz = std::nullopt);

double dbm_to_watts(double p_dbm);
double watts_to_dbm(double p_w);

/// Power reaching the sample: generator power reduced by the line attenuation.
double delivered_power(const DriveParams& drive);

}  // namespace magnonlab
