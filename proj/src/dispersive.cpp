#include "magnonlab/dispersive.hpp"

#include <cmath>
#include <stdexcept>

#include "magnonlab/steady_state.hpp"

namespace magnonlab {
namespace {

double detuning_or_throw(const CavityParams& cavity, const MagnonModeParams& mode) {
    const double delta = cavity.f_c_hz - mode.f_m_hz;
    if (delta == 0.0) {
        throw std::domain_error("degenerate regime: cavity and magnon mode are resonant");
    }
    return delta;
}

}  // namespace

ShiftReport dispersive_shifts(const CavityParams& cavity, const MagnonModeParams& mode,
                              double occupation) {
    validate(cavity);
    validate(mode);
    if (occupation < 0.0) throw std::invalid_argument("occupation must be >= 0");
    const double delta = detuning_or_throw(cavity, mode);

    // All ratios of Hz quantities; the 2*pi factors cancel.
    const double static_pull = mode.g_hz * mode.g_hz / delta;
    const double chi = 2.0 * mode.g_hz * mode.g_hz / (delta * delta);
    const double kerr_shift = mode.kerr_hz * occupation;

    ShiftReport report;
    report.cavity_pull_static_hz = static_pull;
    report.cavity_pull_kerr_hz = chi * kerr_shift;
    report.magnon_pull_kerr_hz = (1.0 - chi) * kerr_shift;
    report.pulled_f_c_hz = cavity.f_c_hz + static_pull + report.cavity_pull_kerr_hz;
    report.pulled_f_m_hz = mode.f_m_hz - static_pull + report.magnon_pull_kerr_hz;
    return report;
}

FnTransform fn_coefficients(const CavityParams& cavity, const MagnonModeParams& mode,
                            const DriveParams& drive, double occupation) {
    validate(cavity);
    validate(mode);
    if (occupation < 0.0) throw std::invalid_argument("occupation must be >= 0");
    const double delta = cavity.f_c_hz - mode.f_m_hz;
    const double shifted = delta - 2.0 * mode.kerr_hz * occupation;
    if (shifted == 0.0) throw std::domain_error("degenerate: shifted detuning vanishes");
    const double delta_c = cavity.f_c_hz - drive.f_d_hz;
    if (delta_c == 0.0) throw std::domain_error("degenerate: drive resonant with cavity");

    FnTransform fn;
    fn.lambda1 = -mode.g_hz / shifted;
    fn.lambda2 = drive_rabi(drive, mode) / angular(delta_c) * fn.lambda1;
    fn.valid = std::abs(shifted) > 10.0 * mode.g_hz;
    return fn;
}

double effective_rabi(const CavityParams& cavity, const MagnonModeParams& mode,
                      const DriveParams& drive, double occupation) {
    validate(cavity);
    validate(mode);
    const double delta_c = cavity.f_c_hz - drive.f_d_hz;
    if (delta_c == 0.0) throw std::domain_error("degenerate: drive resonant with cavity");
    double pull = 0.0;
    if (mode.g_hz > 0.0) {
        const double delta = detuning_or_throw(cavity, mode);
        pull = mode.g_hz * mode.g_hz / delta +
               2.0 * mode.g_hz * mode.g_hz / (delta * delta) * mode.kerr_hz * occupation;
    }
    const double correction = 1.0 - pull / (2.0 * delta_c);
    return correction * drive_rabi(drive, mode);
}

DispersiveValidity dispersive_validity(const CavityParams& cavity,
                                       const MagnonModeParams& mode) {
    validate(cavity);
    validate(mode);
    if (mode.g_hz <= 0.0) throw std::invalid_argument("dispersive_validity requires g > 0");
    const double delta = cavity.f_c_hz - mode.f_m_hz;
    DispersiveValidity v;
    v.ratio = delta / mode.g_hz;
    v.dispersive = std::abs(delta) > 10.0 * mode.g_hz;
    return v;
}

double drive_rabi(const DriveParams& drive, const MagnonModeParams& mode) {
    if (drive.rabi_rad_s) return *drive.rabi_rad_s;
    const double power = delivered_power(drive);
    if (power == 0.0) return 0.0;
    return rabi_from_power(power, mode.drive_c_si, mode.kerr_hz);
}

}  // namespace magnonlab
