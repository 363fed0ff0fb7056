#pragma once

#include "magnonlab/params.hpp"

namespace magnonlab {

// Frequency pulls of the dispersively coupled pair at a given mean magnon
// occupation n. With D = f_c - f_m:
//   static cavity pull   g^2/D
//   Kerr cavity pull     (2 g^2/D^2) K n
//   Kerr magnon pull     (1 - 2 g^2/D^2) K n
// The pulled absolute frequencies include the static +-g^2/D pulls.
struct ShiftReport {
    double cavity_pull_static_hz = 0.0;
    double cavity_pull_kerr_hz = 0.0;
    double magnon_pull_kerr_hz = 0.0;
    double pulled_f_c_hz = 0.0;
    double pulled_f_m_hz = 0.0;
};

// Coefficients of the second-order unitary that decouples the pair,
// evaluated at a mean occupation: lambda1 = -g / (D - 2 K n),
// lambda2 = (Omega_d / delta_c) * lambda1.
struct FnTransform {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool valid = false;  // shifted detuning still beyond 10 g
};

struct DispersiveValidity {
    double ratio = 0.0;  // D / g, signed
    bool dispersive = false;
};

ShiftReport dispersive_shifts(const CavityParams& cavity, const MagnonModeParams& mode,
                              double occupation);

FnTransform fn_coefficients(const CavityParams& cavity, const MagnonModeParams& mode,
                            const DriveParams& drive, double occupation);

/// Effective drive amplitude after the dispersive transform, rad/s:
/// [1 - (g^2/D + (2g^2/D^2) K n) / (2 (f_c - f_d))] * Omega_d.
double effective_rabi(const CavityParams& cavity, const MagnonModeParams& mode,
                      const DriveParams& drive, double occupation);

/// Dispersive iff |f_c - f_m| > 10 g (strict; the boundary counts as not
/// dispersive).
DispersiveValidity dispersive_validity(const CavityParams& cavity,
                                       const MagnonModeParams& mode);

/// Drive amplitude in rad/s: drive.rabi_rad_s when set, otherwise derived
/// from the delivered power through K Omega^2 = c P. Zero power gives zero.
double drive_rabi(const DriveParams& drive, const MagnonModeParams& mode);

}  // namespace magnonlab
