#pragma once

// Unit conventions used throughout the library:
//
//  * Every stored frequency, linewidth and shift is an ordinary frequency in
//    Hz, and every linewidth is a FWHM. Formula kernels that need angular
//    rates convert locally via angular()/ordinary().
//  * Powers are watts internally; dBm appears only at I/O boundaries.
//  * The drive-coupling constant c is stored in its SI unit kg^-1 m^-2
//    (equal to rad^3 s^-3 W^-1). The only conversion to the Hz-based cubic
//    used by the shift solver is drive_c_hz3_per_w() below.

namespace magnonlab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// CODATA 2018 reduced Planck constant, J s.
inline constexpr double kHbar = 1.054571817e-34;

// Classical vacuum permeability 4*pi*1e-7, T m / A. MaterialParams carries
// its own mu0 field; this is only the default.
inline constexpr double kMu0 = 4.0e-7 * kPi;

/// Ordinary frequency (Hz) -> angular frequency (rad/s).
inline constexpr double angular(double f_hz) { return kTwoPi * f_hz; }

/// Angular frequency (rad/s) -> ordinary frequency (Hz).
inline constexpr double ordinary(double w_rad_s) { return w_rad_s / kTwoPi; }

/// Drive-coupling constant: SI (kg^-1 m^-2 = rad^3 s^-3 W^-1) -> Hz^3/W.
/// This is the one place the (2*pi)^3 conversion lives.
inline constexpr double drive_c_hz3_per_w(double c_si) {
    return c_si / (kTwoPi * kTwoPi * kTwoPi);
}

/// Inverse of drive_c_hz3_per_w().
inline constexpr double drive_c_si(double c_hz3_per_w) {
    return c_hz3_per_w * (kTwoPi * kTwoPi * kTwoPi);
}

}  // namespace magnonlab
