#include "magnonlab/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace magnonlab {
namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void validate(const CavityParams& cavity) {
    require(cavity.f_c_hz > 0.0, "cavity f_c must be positive");
    require(cavity.kappa1_hz >= 0.0, "cavity kappa1 must be >= 0");
    require(cavity.kappa2_hz >= 0.0, "cavity kappa2 must be >= 0");
    require(cavity.kappa_int_hz >= 0.0, "cavity kappa_int must be >= 0");
    require(cavity.kappa_total_hz() > 0.0, "cavity total kappa must be positive");
}

void validate(const MagnonModeParams& mode) {
    require(mode.gamma_hz > 0.0, "mode gamma must be positive");
    require(mode.g_hz >= 0.0, "mode g must be >= 0");
    require(mode.drive_c_si >= 0.0, "mode drive_c must be >= 0");
}

void validate(const MaterialParams& material) {
    require(material.v_m_m3 > 0.0, "material v_m must be positive");
    require(material.m_sat_a_m > 0.0, "material m_sat must be positive");
    require(material.s_total > 0.0, "material s_total must be positive");
}

void validate(const DriveParams& drive) {
    require(drive.power_w >= 0.0, "drive power must be >= 0");
    require(drive.attenuation_db >= 0.0, "drive attenuation must be >= 0");
}

void validate(const ProbeParams& probe) {
    require(probe.power_w >= 0.0, "probe power must be >= 0");
}

double sphere_volume_m3(double diameter_m) {
    return kPi * diameter_m * diameter_m * diameter_m / 6.0;
}

void check_sphere_volume(const MaterialParams& material, double diameter_m) {
    const double expected = sphere_volume_m3(diameter_m);
    if (std::abs(material.v_m_m3 - expected) > 1e-12 * expected) {
        throw std::invalid_argument("material v_m inconsistent with sphere diameter");
    }
}

double kerr_coefficient(const MaterialParams& material) {
    if (material.v_m_m3 <= 0.0) throw std::domain_error("kerr_coefficient: zero volume");
    if (material.m_sat_a_m <= 0.0) throw std::domain_error("kerr_coefficient: zero magnetization");
    const double gamma_ang = angular(material.gyro_hz_per_t);
    const double k_ang = material.mu0 * material.k_an_j_m3 * gamma_ang * gamma_ang /
                         (material.m_sat_a_m * material.m_sat_a_m * material.v_m_m3);
    return ordinary(k_ang);
}

double kittel_frequency(const MaterialParams& material, double b0_t) {
    validate(material);
    if (b0_t < 0.0) throw std::invalid_argument("kittel_frequency: B0 must be >= 0");
    const double offset_hz = 2.0 * kerr_coefficient(material) * material.s_total;
    return kittel_frequency(material.gyro_hz_per_t, b0_t, offset_hz);
}

double kittel_frequency(double gyro_hz_per_t, double b0_t, double anisotropy_offset_hz) {
    return gyro_hz_per_t * b0_t - anisotropy_offset_hz;
}

double cooperativity(const CavityParams& cavity, const MagnonModeParams& mode) {
    validate(cavity);
    validate(mode);
    return 4.0 * mode.g_hz * mode.g_hz / (cavity.kappa_total_hz() * mode.gamma_hz);
}

double probe_photon_number(const ProbeParams& probe, const CavityParams& cavity,
                           std::optional<double> f_center_hz) {
    validate(probe);
    validate(cavity);
    const double center = f_center_hz.value_or(cavity.f_c_hz);
    const double w_p = angular(probe.f_p_hz);
    const double d_p = angular(probe.f_p_hz - center);
    const double kappa = angular(cavity.kappa_total_hz());
    const double kappa1 = angular(cavity.kappa1_hz);
    return kappa1 * probe.power_w / (kHbar * w_p * (d_p * d_p + 0.25 * kappa * kappa));
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watts_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }

double delivered_power(const DriveParams& drive) {
    validate(drive);
    return drive.power_w * std::pow(10.0, -drive.attenuation_db / 10.0);
}

}  // namespace magnonlab
