#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "magnonlab/params.hpp"
#include "magnonlab/steady_state.hpp"

namespace magnonlab {

// Affine bias-field map of one magnon mode: f(B) = slope * B + offset.
struct BiasMap {
    double slope_hz_per_t = 0.0;
    double offset_hz = 0.0;
};

struct ModeConfig {
    MagnonModeParams mode;
    std::optional<BiasMap> bias;
};

struct SystemConfig {
    CavityParams cavity;
    std::vector<ModeConfig> modes;
    std::optional<MaterialParams> material;

    const ModeConfig* find_mode(std::string_view label) const;
};

/// Throws std::invalid_argument if any component is out of range or mode
/// labels repeat.
void validate(const SystemConfig& config);

// Complex S21 over a (bias or frequency) x frequency grid, row-major with
// axis1 as the slow index.
struct SpectrumGrid {
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<std::complex<double>> values;

    std::complex<double>& at(std::size_t i1, std::size_t i2) {
        return values[i1 * axis2.size() + i2];
    }
    std::complex<double> at(std::size_t i1, std::size_t i2) const {
        return values[i1 * axis2.size() + i2];
    }
};

/// Two-port transmission at probe frequency f:
///   S21(f) = sqrt(k1 k2) / [ i(f_c - f) + k/2 + sum_j g_j^2 / (i(f_j - f) + gamma_j/2) ]
/// All rates enter as HALF of the stored FWHM values. The denominator uses
/// the probe rotating frame i(f0 - f) + rate; only |S21| is meant to be
/// compared with data, the global phase is not configurable.
/// `occupations` (one entry per mode, optional) Kerr-pulls the mode
/// frequencies and the cavity frequency; the static g^2/D pulls are not
/// applied since the coupled denominator produces them by itself.
std::complex<double> s21(double f_hz, const SystemConfig& config,
                         std::span<const double> occupations = {});

/// S21 over bias x probe grids with mode frequencies taken from each mode's
/// bias map (all occupations zero). Both grids must be strictly increasing.
SpectrumGrid avoided_crossing_map(std::span<const double> bias_t,
                                  std::span<const double> probe_hz,
                                  const SystemConfig& config);

enum class ResponseModel {
    tracked,   // resonance-tracked occupation (matches swept-drive data)
    coherent,  // branch-continued coherent steady state
};

struct DriveSweepPoint {
    double f_d_hz = 0.0;
    double s21_mag = 0.0;
    double magnon_shift_hz = 0.0;
    double cavity_shift_hz = 0.0;
};

/// Transmission at a fixed probe while the drive frequency is swept. For
/// each drive frequency the driven mode's occupation gives the Kerr cavity
/// pull, and S21 is evaluated with only the cavity frequency pulled. The
/// driven mode must be in the dispersive regime. The coherent model uses
/// hysteresis continuation along the sweep direction.
std::vector<DriveSweepPoint> drive_sweep_response(std::span<const double> f_d_hz,
                                                  double power_w,
                                                  const SystemConfig& config,
                                                  double f_p_hz,
                                                  std::string_view driven_label,
                                                  ResponseModel model = ResponseModel::tracked,
                                                  SweepDirection direction = SweepDirection::up);

}  // namespace magnonlab
