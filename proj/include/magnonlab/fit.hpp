#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "magnonlab/spectra.hpp"

namespace magnonlab {

struct Observation {
    double x = 0.0;
    double y = 0.0;
};

enum class FitLoss { linear, log_magnitude };

struct ParamSpec {
    std::string name;
    double init = 0.0;
    double lower = 0.0;  // 0 means default init/1e3
    double upper = 0.0;  // 0 means default init*1e3
};

struct FitResult {
    std::vector<std::string> names;
    std::vector<double> estimates;
    double residual_sum = 0.0;
    int iterations = 0;
    bool converged = false;
    uint64_t seed = 0;
    std::string diagnostics;  // filled when not converged
};

struct OptimizerOptions {
    int restarts = 6;
    int max_iterations = 2000;   // per restart
    double tolerance = 1e-9;     // relative simplex size for convergence
};

/// Bounded derivative-free simplex minimizer over strictly positive
/// parameters (log-reparameterized internally). Restarts from seeded,
/// jittered initial points; restarts run in parallel and the best residual
/// wins, ties broken by restart index, so equal seeds and data give
/// bit-identical results.
FitResult optimizer(const std::function<double(std::span<const double>)>& objective,
                    const std::vector<ParamSpec>& params, uint64_t seed,
                    const OptimizerOptions& options = {});

struct ShiftPowerInit {
    double gamma_hz = 0.0;
    double c_si = 0.0;
};

/// Least-squares fit of shift-vs-power data (x in W, y in Hz) to the
/// resonant-drive cubic. gamma_m may be fixed (then only c is free).
FitResult fit_shift_power(const std::vector<Observation>& data, const ShiftPowerInit& init,
                          std::optional<double> fixed_gamma_hz, uint64_t seed,
                          const OptimizerOptions& options = {});

/// Least-squares fit of |S21| spectra (x in Hz, y magnitude). Free
/// parameters are named "f_c", "kappa1", "kappa2", "kappa_int", or
/// "f_m:LABEL", "g:LABEL", "gamma:LABEL" for a mode; initial values come
/// from the config.
FitResult fit_spectrum(const std::vector<Observation>& data, const SystemConfig& config,
                       const std::vector<std::string>& free_names,
                       FitLoss loss, uint64_t seed, const OptimizerOptions& options = {});

/// Model curve for a fitted (or any) parameter set, same x units as the fit.
double shift_power_model(double power_w, double gamma_hz, double c_si);
std::vector<double> spectrum_model(std::span<const double> f_hz, const SystemConfig& config);

/// SystemConfig with the named parameters replaced; used by fit_spectrum
/// and by callers that want the fitted model back.
SystemConfig apply_spectrum_params(const SystemConfig& config,
                                   const std::vector<std::string>& names,
                                   std::span<const double> values);

}  // namespace magnonlab
