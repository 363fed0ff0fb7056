#pragma once

#include <complex>
#include <vector>

#include "magnonlab/params.hpp"

namespace magnonlab {

// Mean-field steady state of one driven magnon mode with the cavity
// adiabatically eliminated. branch indexes the solutions of one solve in
// ascending occupation.
struct SteadyState {
    std::complex<double> b_amp;  // magnon amplitude B
    std::complex<double> a_amp;  // cavity amplitude A
    double occupation = 0.0;     // |B|^2
    bool stable = false;
    int branch = 0;
};

struct ShiftCurvePoint {
    double power_w = 0.0;
    double f_d_hz = 0.0;
    double shift_hz = 0.0;  // Kerr shift K * occupation of the selected branch
    int branch_count = 0;
    int selected_branch = 0;
};

// Continuation trace over a drive grid; points are stored in ascending order
// of the swept coordinate regardless of sweep direction.
struct ShiftCurve {
    std::vector<ShiftCurvePoint> points;
};

enum class SweepDirection { up, down };
enum class PowerRegime { small_power, large_power };

/// Unique real root of the resonant-drive cubic
///   [shift^2 + (gamma_m/2)^2] * shift = c * P
/// in Hz. The cubic is strictly monotone (its linear coefficient is
/// positive), so the real root is unique and nonnegative for P >= 0.
/// Closed form (Cardano) plus one Newton polish step.
double solve_shift_cubic(double gamma_m_hz, double drive_c_si, double power_w);

/// Limit laws of the cubic: small power  shift = c P / (gamma_m/2)^2,
/// large power  shift = (c P)^(1/3). Returned in Hz.
double limit_shift(double gamma_m_hz, double drive_c_si, double power_w, PowerRegime regime);

/// Drive amplitude from power through K * Omega^2 = c * P; rad/s.
/// Requires kerr_hz > 0.
double rabi_from_power(double power_w, double drive_c_si, double kerr_hz);

/// Inverse of rabi_from_power.
double power_from_rabi(double rabi_rad_s, double drive_c_si, double kerr_hz);

/// All mean-field steady states of the driven mode at the drive's detuning.
/// The cavity amplitude is eliminated via A = -i g B / (i dc + kappa/2); the
/// occupation x = |B|^2 then solves the real cubic
///   [(dm + 2 K x - Im_back)^2 + (Gamma_eff/2)^2] * x = Omega_d^2
/// where dm, dc are the magnon/cavity detunings from the drive, Im_back and
/// Gamma_eff collect the cavity back-action g^2/(i dc + kappa/2).
/// Stability comes from the 2x2 Jacobian in (Re B, Im B).
std::vector<SteadyState> solve_full_steady_state(const CavityParams& cavity,
                                                 const MagnonModeParams& mode,
                                                 const DriveParams& drive);

/// Drive frequency resonant with the Kerr-pulled magnon mode at the given
/// power: the fixed point of f_d -> pulled_f_m(occupation(f_d)).
double resonant_drive_frequency(const CavityParams& cavity, const MagnonModeParams& mode,
                                double power_w);

/// Occupation of the driven mode when the response follows its own shifted
/// resonance, as swept-drive measurements do. Solves
///   [(f_d - f_res(x))^2 + (K x)^2 + (gamma_m/2)^2] * K x = c P
/// with f_res(x) the Kerr-pulled mode frequency; reduces to the
/// linear-response Lorentzian at low power and meets the resonant cubic at
/// its maximum. Single-valued in f_d (no foldover).
double resonance_tracked_occupation(const CavityParams& cavity, const MagnonModeParams& mode,
                                    double f_d_hz, double power_w);

/// Branch-continued sweep over a drive grid (monotone in power or in drive
/// frequency). At each point the stable root nearest the previously selected
/// occupation is kept; an up sweep starts on the lowest branch, a down sweep
/// on the highest.
ShiftCurve hysteresis_sweep(const CavityParams& cavity, const MagnonModeParams& mode,
                            const std::vector<DriveParams>& grid, SweepDirection direction);

}  // namespace magnonlab
