#include "magnonlab/spectra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "magnonlab/dispersive.hpp"
#include "magnonlab/parallel.hpp"

namespace magnonlab {
namespace {

void check_monotone(std::span<const double> axis, const char* name) {
    if (axis.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) {
            throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
        }
    }
}

std::complex<double> s21_kernel(double f_hz, const SystemConfig& config,
                                double f_c_eff, std::span<const double> mode_freqs) {
    std::complex<double> denom(0.5 * config.cavity.kappa_total_hz(), f_c_eff - f_hz);
    for (std::size_t j = 0; j < config.modes.size(); ++j) {
        const auto& mode = config.modes[j].mode;
        if (mode.g_hz == 0.0) continue;
        const std::complex<double> pole(0.5 * mode.gamma_hz, mode_freqs[j] - f_hz);
        denom += mode.g_hz * mode.g_hz / pole;
    }
    return std::sqrt(config.cavity.kappa1_hz * config.cavity.kappa2_hz) / denom;
}

}  // namespace

const ModeConfig* SystemConfig::find_mode(std::string_view label) const {
    for (const auto& m : modes) {
        if (m.mode.label == label) return &m;
    }
    return nullptr;
}

void validate(const SystemConfig& config) {
    validate(config.cavity);
    std::unordered_set<std::string> labels;
    for (const auto& m : config.modes) {
        validate(m.mode);
        if (!labels.insert(m.mode.label).second) {
            throw std::invalid_argument("duplicate mode label: " + m.mode.label);
        }
    }
    if (config.material) validate(*config.material);
}

std::complex<double> s21(double f_hz, const SystemConfig& config,
                         std::span<const double> occupations) {
    if (!occupations.empty() && occupations.size() != config.modes.size()) {
        throw std::invalid_argument("occupations size must match the mode count");
    }
    double f_c_eff = config.cavity.f_c_hz;
    std::vector<double> mode_freqs(config.modes.size());
    for (std::size_t j = 0; j < config.modes.size(); ++j) {
        mode_freqs[j] = config.modes[j].mode.f_m_hz;
        const double n = occupations.empty() ? 0.0 : occupations[j];
        if (n > 0.0) {
            const ShiftReport pulls = dispersive_shifts(config.cavity, config.modes[j].mode, n);
            f_c_eff += pulls.cavity_pull_kerr_hz;
            mode_freqs[j] += pulls.magnon_pull_kerr_hz;
        }
    }
    return s21_kernel(f_hz, config, f_c_eff, mode_freqs);
}

SpectrumGrid avoided_crossing_map(std::span<const double> bias_t,
                                  std::span<const double> probe_hz,
                                  const SystemConfig& config) {
    validate(config);
    check_monotone(bias_t, "bias");
    check_monotone(probe_hz, "probe");
    for (const auto& m : config.modes) {
        if (!m.bias) {
            throw std::invalid_argument("mode " + m.mode.label + " has no bias map");
        }
    }

    SpectrumGrid grid;
    grid.axis1.assign(bias_t.begin(), bias_t.end());
    grid.axis2.assign(probe_hz.begin(), probe_hz.end());
    grid.values.resize(bias_t.size() * probe_hz.size());

    parallel_for(bias_t.size(), [&](std::size_t i) {
        std::vector<double> mode_freqs(config.modes.size());
        for (std::size_t j = 0; j < config.modes.size(); ++j) {
            const BiasMap& map = *config.modes[j].bias;
            mode_freqs[j] = map.slope_hz_per_t * bias_t[i] + map.offset_hz;
        }
        for (std::size_t k = 0; k < probe_hz.size(); ++k) {
            grid.at(i, k) = s21_kernel(probe_hz[k], config, config.cavity.f_c_hz, mode_freqs);
        }
    });
    return grid;
}

std::vector<DriveSweepPoint> drive_sweep_response(std::span<const double> f_d_hz,
                                                  double power_w,
                                                  const SystemConfig& config,
                                                  double f_p_hz,
                                                  std::string_view driven_label,
                                                  ResponseModel model,
                                                  SweepDirection direction) {
    validate(config);
    check_monotone(f_d_hz, "drive");
    if (power_w < 0.0) throw std::invalid_argument("power must be >= 0");
    const ModeConfig* driven = config.find_mode(driven_label);
    if (!driven) {
        throw std::invalid_argument("unknown driven mode: " + std::string(driven_label));
    }
    if (!dispersive_validity(config.cavity, driven->mode).dispersive) {
        throw std::domain_error("driven mode is not in the dispersive regime");
    }

    std::vector<double> occupations(f_d_hz.size(), 0.0);
    if (power_w > 0.0) {
        if (model == ResponseModel::tracked) {
            parallel_for(f_d_hz.size(), [&](std::size_t i) {
                occupations[i] = resonance_tracked_occupation(config.cavity, driven->mode,
                                                              f_d_hz[i], power_w);
            });
        } else {
            std::vector<DriveParams> grid(f_d_hz.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                grid[i].f_d_hz = f_d_hz[i];
                grid[i].power_w = power_w;
            }
            const ShiftCurve curve =
                hysteresis_sweep(config.cavity, driven->mode, grid, direction);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                occupations[i] = driven->mode.kerr_hz > 0.0
                                     ? curve.points[i].shift_hz / driven->mode.kerr_hz
                                     : 0.0;
            }
        }
    }

    std::vector<DriveSweepPoint> trace(f_d_hz.size());
    parallel_for(f_d_hz.size(), [&](std::size_t i) {
        const ShiftReport pulls = dispersive_shifts(config.cavity, driven->mode, occupations[i]);
        SystemConfig pulled = config;
        pulled.cavity.f_c_hz += pulls.cavity_pull_kerr_hz;

        DriveSweepPoint& point = trace[i];
        point.f_d_hz = f_d_hz[i];
        point.s21_mag = std::abs(s21(f_p_hz, pulled));
        point.magnon_shift_hz = pulls.magnon_pull_kerr_hz;
        point.cavity_shift_hz = pulls.cavity_pull_kerr_hz;
    });
    return trace;
}

}  // namespace magnonlab
