#include "magnonlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "magnonlab/parallel.hpp"

namespace magnonlab {
namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

struct RestartOutcome {
    std::vector<double> z;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead on the log-transformed box [lo, hi]; proposals are clamped to
// the box. Returns the best vertex.
RestartOutcome nelder_mead(const std::function<double(std::span<const double>)>& f_natural,
                           std::span<const double> z0, std::span<const double> lo,
                           std::span<const double> hi, int max_iterations, double tolerance,
                           double simplex_scale) {
    const std::size_t n = z0.size();
    std::vector<double> natural(n);
    const auto eval = [&](const std::vector<double>& z) {
        for (std::size_t i = 0; i < n; ++i) natural[i] = std::exp(z[i]);
        const double v = f_natural(natural);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    const auto clamp = [&](std::vector<double>& z) {
        for (std::size_t i = 0; i < n; ++i) z[i] = std::clamp(z[i], lo[i], hi[i]);
    };

    std::vector<std::vector<double>> x(n + 1, std::vector<double>(z0.begin(), z0.end()));
    for (std::size_t j = 1; j <= n; ++j) {
        x[j][j - 1] += simplex_scale;
        clamp(x[j]);
        // Degenerate vertex if the start sits on the upper bound; step down.
        if (x[j][j - 1] == x[0][j - 1]) x[j][j - 1] -= simplex_scale;
        clamp(x[j]);
    }
    std::vector<double> fx(n + 1);
    for (std::size_t j = 0; j <= n; ++j) fx[j] = eval(x[j]);

    RestartOutcome outcome;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        // Order vertices: best first, worst last.
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t j = 0; j <= n; ++j) idx[j] = j;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> xs(n + 1);
        std::vector<double> fs(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            xs[j] = x[idx[j]];
            fs[j] = fx[idx[j]];
        }
        x = std::move(xs);
        fx = std::move(fs);

        double diameter = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                diameter = std::max(diameter, std::abs(x[j][i] - x[0][i]));
            }
        }
        if (diameter < tolerance * (1.0 + std::abs(x[0][0]))) {
            outcome.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += x[j][i] / double(n);
        }
        const auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = centroid[i] + coeff * (centroid[i] - x[n][i]);
            }
            clamp(p);
            return p;
        };

        auto reflected = blend(1.0);
        const double fr = eval(reflected);
        if (fr < fx[0]) {
            auto expanded = blend(2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                x[n] = std::move(expanded);
                fx[n] = fe;
            } else {
                x[n] = std::move(reflected);
                fx[n] = fr;
            }
        } else if (fr < fx[n - 1]) {
            x[n] = std::move(reflected);
            fx[n] = fr;
        } else {
            const bool outside = fr < fx[n];
            auto contracted = blend(outside ? 0.5 : -0.5);
            const double fc = eval(contracted);
            if (fc < (outside ? fr : fx[n])) {
                x[n] = std::move(contracted);
                fx[n] = fc;
            } else {
                for (std::size_t j = 1; j <= n; ++j) {
                    for (std::size_t i = 0; i < n; ++i) {
                        x[j][i] = x[0][i] + 0.5 * (x[j][i] - x[0][i]);
                    }
                    fx[j] = eval(x[j]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        if (fx[j] < fx[best]) best = j;
    }
    outcome.z = x[best];
    outcome.value = fx[best];
    outcome.iterations = iter;
    return outcome;
}

}  // namespace

FitResult optimizer(const std::function<double(std::span<const double>)>& objective,
                    const std::vector<ParamSpec>& params, uint64_t seed,
                    const OptimizerOptions& options) {
    if (params.empty()) throw std::invalid_argument("optimizer: no free parameters");
    const std::size_t n = params.size();
    std::vector<double> z0(n), lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = params[i];
        if (!(p.init > 0.0)) {
            throw std::invalid_argument("optimizer: parameter " + p.name + " must start positive");
        }
        const double lower = p.lower > 0.0 ? p.lower : p.init * 1e-3;
        const double upper = p.upper > 0.0 ? p.upper : p.init * 1e3;
        if (!(lower <= p.init && p.init <= upper)) {
            throw std::invalid_argument("optimizer: bounds must contain the initial value of " + p.name);
        }
        z0[i] = std::log(p.init);
        lo[i] = std::log(lower);
        hi[i] = std::log(upper);
    }

    const int restarts = std::max(1, options.restarts);
    std::vector<RestartOutcome> outcomes(restarts);
    parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
        std::vector<double> start(z0);
        if (r > 0) {
            uint64_t rng = seed * 0x9e3779b97f4a7c15ULL + r;
            for (std::size_t i = 0; i < n; ++i) {
                // Jitter within +-0.25 decades, clamped to the box.
                start[i] = std::clamp(start[i] + (uniform01(rng) - 0.5) * 0.5 * std::log(10.0),
                                      lo[i], hi[i]);
            }
        }
        outcomes[r] = nelder_mead(objective, start, lo, hi, options.max_iterations,
                                  options.tolerance, 0.1);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r) {
        if (outcomes[r].value < outcomes[best].value) best = r;
    }
    if (!std::isfinite(outcomes[best].value)) {
        throw std::runtime_error("optimizer: objective not finite at any restart");
    }

    // Polish from the overall best vertex with a tight simplex.
    RestartOutcome polished =
        nelder_mead(objective, outcomes[best].z, lo, hi, options.max_iterations,
                    options.tolerance, 1e-5);
    if (polished.value > outcomes[best].value) polished = outcomes[best];

    FitResult result;
    result.seed = seed;
    result.residual_sum = polished.value;
    result.converged = polished.converged;
    for (const auto& o : outcomes) result.iterations += o.iterations;
    result.iterations += polished.iterations;
    result.estimates.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.estimates[i] = std::exp(polished.z[i]);
    for (const auto& p : params) result.names.push_back(p.name);
    if (!result.converged) {
        result.diagnostics = "simplex did not shrink below tolerance within " +
                             std::to_string(options.max_iterations) + " iterations/restart";
    }
    return result;
}

double shift_power_model(double power_w, double gamma_hz, double c_si) {
    return solve_shift_cubic(gamma_hz, c_si, power_w);
}

FitResult fit_shift_power(const std::vector<Observation>& data, const ShiftPowerInit& init,
                          std::optional<double> fixed_gamma_hz, uint64_t seed,
                          const OptimizerOptions& options) {
    const std::size_t n_free = fixed_gamma_hz ? 1 : 2;
    if (data.size() < 2 * n_free) {
        throw std::invalid_argument("fit_shift_power: need at least twice as many points as free parameters");
    }
    for (const auto& d : data) {
        if (d.x < 0.0) throw std::invalid_argument("fit_shift_power: negative power in data");
    }

    std::vector<ParamSpec> params;
    if (!fixed_gamma_hz) params.push_back({"gamma_m", init.gamma_hz, 0.0, 0.0});
    params.push_back({"c", init.c_si, 0.0, 0.0});

    const auto objective = [&](std::span<const double> p) {
        const double gamma = fixed_gamma_hz ? *fixed_gamma_hz : p[0];
        const double c = fixed_gamma_hz ? p[0] : p[1];
        double sum = 0.0;
        for (const auto& d : data) {
            const double r = shift_power_model(d.x, gamma, c) - d.y;
            sum += r * r;
        }
        return sum;
    };
    FitResult result = optimizer(objective, params, seed, options);
    if (fixed_gamma_hz) {
        result.names.insert(result.names.begin(), "gamma_m");
        result.estimates.insert(result.estimates.begin(), *fixed_gamma_hz);
    }
    return result;
}

SystemConfig apply_spectrum_params(const SystemConfig& config,
                                   const std::vector<std::string>& names,
                                   std::span<const double> values) {
    SystemConfig out = config;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string& name = names[i];
        const double v = values[i];
        if (name == "f_c") {
            out.cavity.f_c_hz = v;
        } else if (name == "kappa1") {
            out.cavity.kappa1_hz = v;
        } else if (name == "kappa2") {
            out.cavity.kappa2_hz = v;
        } else if (name == "kappa_int") {
            out.cavity.kappa_int_hz = v;
        } else if (const auto colon = name.find(':'); colon != std::string::npos) {
            const std::string field = name.substr(0, colon);
            const std::string label = name.substr(colon + 1);
            bool found = false;
            for (auto& m : out.modes) {
                if (m.mode.label != label) continue;
                found = true;
                if (field == "f_m") m.mode.f_m_hz = v;
                else if (field == "g") m.mode.g_hz = v;
                else if (field == "gamma") m.mode.gamma_hz = v;
                else throw std::invalid_argument("unknown spectrum parameter: " + name);
            }
            if (!found) throw std::invalid_argument("unknown mode in parameter: " + name);
        } else {
            throw std::invalid_argument("unknown spectrum parameter: " + name);
        }
    }
    return out;
}

std::vector<double> spectrum_model(std::span<const double> f_hz, const SystemConfig& config) {
    std::vector<double> out(f_hz.size());
    for (std::size_t i = 0; i < f_hz.size(); ++i) out[i] = std::abs(s21(f_hz[i], config));
    return out;
}

FitResult fit_spectrum(const std::vector<Observation>& data, const SystemConfig& config,
                       const std::vector<std::string>& free_names,
                       FitLoss loss, uint64_t seed, const OptimizerOptions& options) {
    validate(config);
    if (free_names.empty()) throw std::invalid_argument("fit_spectrum: no free parameters");
    if (data.size() < 2 * free_names.size()) {
        throw std::invalid_argument("fit_spectrum: need at least twice as many points as free parameters");
    }

    std::vector<ParamSpec> params;
    const SystemConfig base = config;
    for (const auto& name : free_names) {
        // Initial value = the config's current value; probe it through the
        // setter to validate the name early.
        SystemConfig probe = apply_spectrum_params(base, {name}, std::vector<double>{1.0});
        (void)probe;
        double init = 0.0;
        if (name == "f_c") init = base.cavity.f_c_hz;
        else if (name == "kappa1") init = base.cavity.kappa1_hz;
        else if (name == "kappa2") init = base.cavity.kappa2_hz;
        else if (name == "kappa_int") init = base.cavity.kappa_int_hz;
        else {
            const auto colon = name.find(':');
            const std::string field = name.substr(0, colon);
            const auto* m = base.find_mode(name.substr(colon + 1));
            if (field == "f_m") init = m->mode.f_m_hz;
            else if (field == "g") init = m->mode.g_hz;
            else init = m->mode.gamma_hz;
        }
        params.push_back({name, init, 0.0, 0.0});
    }

    constexpr double kLogFloor = 1e-12;
    const auto objective = [&](std::span<const double> p) {
        const SystemConfig trial = apply_spectrum_params(base, free_names, p);
        double sum = 0.0;
        for (const auto& d : data) {
            const double model = std::abs(s21(d.x, trial));
            const double r = loss == FitLoss::linear
                                 ? model - d.y
                                 : std::log(model + kLogFloor) - std::log(std::max(d.y, 0.0) + kLogFloor);
            sum += r * r;
        }
        return sum;
    };
    return optimizer(objective, params, seed, options);
}

}  // namespace magnonlab
