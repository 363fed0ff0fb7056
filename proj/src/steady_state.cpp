#include "magnonlab/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magnonlab/dispersive.hpp"

namespace magnonlab {
namespace {

// One Newton step on x^3 + p x - q at x0.
double newton_depressed(double x0, double p, double q) {
    const double f = (x0 * x0 + p) * x0 - q;
    const double df = 3.0 * x0 * x0 + p;
    if (df == 0.0) return x0;
    return x0 - f / df;
}

// Real roots of the monic cubic x^3 + a x^2 + b x + c, Newton-polished.
std::vector<double> real_cubic_roots(double a, double b, double c) {
    // Depressed form t^3 + p t + q with x = t - a/3.
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    std::vector<double> roots;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    if (disc > 0.0) {
        // One real root; the u - p/(3u) form avoids cancellation between the
        // two cube roots.
        const double s = std::sqrt(disc);
        const double w = (q <= 0.0) ? (-q / 2.0 + s) : (q / 2.0 + s);
        const double u = std::cbrt(w);
        double t = u - p / (3.0 * u);
        if (q > 0.0) t = -t;
        roots.push_back(t);
    } else if (disc == 0.0 && p == 0.0) {
        roots.push_back(0.0);
    } else {
        // Three real roots (trigonometric form).
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(theta - kTwoPi * k / 3.0));
        }
    }

    for (double& t : roots) {
        double x = t - a / 3.0;
        for (int i = 0; i < 2; ++i) {
            const double f = ((x + a) * x + b) * x + c;
            const double df = (3.0 * x + 2.0 * a) * x + b;
            if (df == 0.0) break;
            x -= f / df;
        }
        t = x;
    }
    std::sort(roots.begin(), roots.end());
    // Collapse near-multiple roots produced by the trig branch.
    const double scale = std::max({std::abs(a), std::sqrt(std::abs(b)),
                                   std::cbrt(std::abs(c)), 1e-300});
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [scale](double x, double y) {
                                return std::abs(x - y) <= 1e-9 * scale;
                            }),
                roots.end());
    return roots;
}

// Coefficients of the effective magnon equation after cavity elimination,
// all angular: detuning offset (without the 2Kx term), half damping, drive.
struct EffectiveDrive {
    double delta0;    // dm + Im[g^2/(i dc + kappa/2)]
    double half_gamma;  // gamma/2 + Re[g^2/(i dc + kappa/2)]
    double omega;     // drive amplitude
    double delta_c;   // cavity detuning from the drive
    double kerr;      // 2*pi*K
};

EffectiveDrive effective_drive(const CavityParams& cavity, const MagnonModeParams& mode,
                               const DriveParams& drive) {
    const double dc = angular(cavity.f_c_hz - drive.f_d_hz);
    const double dm = angular(mode.f_m_hz - drive.f_d_hz);
    const double kappa = angular(cavity.kappa_total_hz());
    const double g = angular(mode.g_hz);
    const double denom = dc * dc + 0.25 * kappa * kappa;

    EffectiveDrive eff;
    eff.delta_c = dc;
    eff.kerr = angular(mode.kerr_hz);
    eff.delta0 = dm - g * g * dc / denom;
    eff.half_gamma = 0.5 * angular(mode.gamma_hz) + g * g * (0.5 * kappa) / denom;
    eff.omega = drive_rabi(drive, mode);
    return eff;
}

SteadyState make_state(const CavityParams& cavity, const MagnonModeParams& mode,
                       const EffectiveDrive& eff, double x) {
    const double delta_eff = eff.delta0 + 2.0 * eff.kerr * x;
    const std::complex<double> resp(eff.half_gamma, delta_eff);

    SteadyState s;
    s.b_amp = std::complex<double>(0.0, -eff.omega) / resp;
    const double kappa = angular(cavity.kappa_total_hz());
    const std::complex<double> cav(0.5 * kappa, eff.delta_c);
    s.a_amp = std::complex<double>(0.0, -angular(mode.g_hz)) * s.b_amp / cav;
    s.occupation = std::norm(s.b_amp);

    // Jacobian of the reduced flow in (Re B, Im B): trace is -Gamma_eff < 0,
    // so stability reduces to a positive determinant.
    const double det = delta_eff * delta_eff + 4.0 * eff.kerr * x * delta_eff +
                       eff.half_gamma * eff.half_gamma;
    s.stable = det > 0.0;
    return s;
}

const SteadyState& pick_nearest(const std::vector<SteadyState>& states, double occupation) {
    const SteadyState* best = nullptr;
    for (const auto& s : states) {
        if (!s.stable) continue;
        if (!best || std::abs(s.occupation - occupation) < std::abs(best->occupation - occupation)) {
            best = &s;
        }
    }
    if (!best) best = &states.front();  // all unstable; keep the sweep going
    return *best;
}

}  // namespace

double solve_shift_cubic(double gamma_m_hz, double drive_c_si, double power_w) {
    if (gamma_m_hz <= 0.0) throw std::invalid_argument("gamma_m must be positive");
    if (power_w < 0.0) throw std::invalid_argument("power must be >= 0");
    const double q = drive_c_hz3_per_w(drive_c_si) * power_w;
    if (q == 0.0) return 0.0;
    const double half = 0.5 * gamma_m_hz;
    const double p = half * half;

    // x^3 + p x - q with p > 0, q > 0: single real root, in (0, q^(1/3)].
    const double disc = std::sqrt(0.25 * q * q + p * p * p / 27.0);
    const double u = std::cbrt(0.5 * q + disc);
    const double x = u - p / (3.0 * u);
    return newton_depressed(x, p, q);
}

double limit_shift(double gamma_m_hz, double drive_c_si, double power_w, PowerRegime regime) {
    if (power_w < 0.0) throw std::invalid_argument("power must be >= 0");
    const double q = drive_c_hz3_per_w(drive_c_si) * power_w;
    if (regime == PowerRegime::small_power) {
        const double half = 0.5 * gamma_m_hz;
        return q / (half * half);
    }
    return std::cbrt(q);
}

double rabi_from_power(double power_w, double drive_c_si, double kerr_hz) {
    if (kerr_hz <= 0.0) {
        throw std::domain_error("rabi_from_power: K Omega^2 = c P needs a positive Kerr coefficient");
    }
    if (power_w < 0.0) throw std::invalid_argument("power must be >= 0");
    return std::sqrt(drive_c_si * power_w / angular(kerr_hz));
}

double power_from_rabi(double rabi_rad_s, double drive_c_si, double kerr_hz) {
    if (kerr_hz <= 0.0) throw std::domain_error("power_from_rabi: needs a positive Kerr coefficient");
    if (drive_c_si <= 0.0) throw std::domain_error("power_from_rabi: needs a positive drive_c");
    return angular(kerr_hz) * rabi_rad_s * rabi_rad_s / drive_c_si;
}

std::vector<SteadyState> solve_full_steady_state(const CavityParams& cavity,
                                                 const MagnonModeParams& mode,
                                                 const DriveParams& drive) {
    validate(cavity);
    validate(mode);
    validate(drive);
    if (cavity.f_c_hz == mode.f_m_hz) {
        throw std::domain_error("degenerate regime: cavity and magnon mode are resonant");
    }

    const EffectiveDrive eff = effective_drive(cavity, mode, drive);
    std::vector<SteadyState> states;

    if (eff.omega == 0.0) {
        SteadyState trivial;
        trivial.stable = true;
        states.push_back(trivial);
        return states;
    }

    std::vector<double> roots;
    if (eff.kerr == 0.0) {
        roots.push_back(eff.omega * eff.omega /
                        (eff.delta0 * eff.delta0 + eff.half_gamma * eff.half_gamma));
    } else {
        // 4K^2 x^3 + 4K d0 x^2 + (d0^2 + hg^2) x - Omega^2 = 0, monic form.
        const double k2 = 4.0 * eff.kerr * eff.kerr;
        const double a = eff.delta0 / eff.kerr;
        const double b = (eff.delta0 * eff.delta0 + eff.half_gamma * eff.half_gamma) / k2;
        const double c = -eff.omega * eff.omega / k2;
        for (double x : real_cubic_roots(a, b, c)) {
            if (x > 0.0) roots.push_back(x);
        }
    }

    for (double x : roots) states.push_back(make_state(cavity, mode, eff, x));
    std::sort(states.begin(), states.end(),
              [](const SteadyState& l, const SteadyState& r) { return l.occupation < r.occupation; });
    for (std::size_t i = 0; i < states.size(); ++i) states[i].branch = static_cast<int>(i);
    return states;
}

double resonant_drive_frequency(const CavityParams& cavity, const MagnonModeParams& mode,
                                double power_w) {
    validate(cavity);
    validate(mode);
    double f_d = dispersive_shifts(cavity, mode, 0.0).pulled_f_m_hz;
    double occupation = 0.0;
    for (int i = 0; i < 200; ++i) {
        DriveParams drive;
        drive.f_d_hz = f_d;
        drive.power_w = power_w;
        const auto states = solve_full_steady_state(cavity, mode, drive);
        occupation = pick_nearest(states, occupation).occupation;
        const double next = dispersive_shifts(cavity, mode, occupation).pulled_f_m_hz;
        if (std::abs(next - f_d) < 1e-3) return next;
        f_d = next;
    }
    return f_d;
}

double resonance_tracked_occupation(const CavityParams& cavity, const MagnonModeParams& mode,
                                    double f_d_hz, double power_w) {
    validate(cavity);
    validate(mode);
    if (power_w < 0.0) throw std::invalid_argument("power must be >= 0");
    if (mode.kerr_hz <= 0.0) {
        throw std::domain_error("resonance_tracked_occupation: needs a positive Kerr coefficient");
    }
    const double cp = drive_c_hz3_per_w(mode.drive_c_si) * power_w;  // Hz^3
    if (cp == 0.0) return 0.0;

    const ShiftReport at_rest = dispersive_shifts(cavity, mode, 0.0);
    const double f_res0 = at_rest.pulled_f_m_hz;
    const double chi = 2.0 * mode.g_hz * mode.g_hz /
                       ((cavity.f_c_hz - mode.f_m_hz) * (cavity.f_c_hz - mode.f_m_hz));
    const double beta = 1.0 - chi;  // measured-shift fraction of K x
    const double half = 0.5 * mode.gamma_hz;

    // W(y) = [(f_d - f_res0 - beta y)^2 + y^2 + (gamma/2)^2] y with y = K x.
    // W is strictly increasing for beta < sqrt(3), so the root is unique;
    // safeguarded Newton from the cube-root scale.
    const auto w = [&](double y) {
        const double v = f_d_hz - f_res0 - beta * y;
        return (v * v + y * y + half * half) * y - cp;
    };
    const auto dw = [&](double y) {
        const double v = f_d_hz - f_res0 - beta * y;
        return v * v - 2.0 * beta * v * y + 3.0 * y * y + half * half;
    };

    double lo = 0.0;
    double hi = std::cbrt(cp);  // W(y) >= y^3, so W(hi) >= cp
    double y = std::min(hi, cp / ((f_d_hz - f_res0) * (f_d_hz - f_res0) + half * half));
    for (int i = 0; i < 200; ++i) {
        const double f = w(y);
        if (f > 0.0) hi = y; else lo = y;
        double next = y - f / dw(y);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) <= 1e-14 * std::max(next, 1.0)) { y = next; break; }
        y = next;
    }
    return y / mode.kerr_hz;
}

ShiftCurve hysteresis_sweep(const CavityParams& cavity, const MagnonModeParams& mode,
                            const std::vector<DriveParams>& grid, SweepDirection direction) {
    if (grid.empty()) throw std::invalid_argument("hysteresis_sweep: empty drive grid");

    // The swept coordinate (power or drive frequency) must be strictly
    // monotone increasing in the stored grid.
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool power_up = grid[i].power_w > grid[i - 1].power_w;
        const bool freq_up = grid[i].f_d_hz > grid[i - 1].f_d_hz;
        if (!power_up && !freq_up) {
            throw std::invalid_argument("hysteresis_sweep: grid must be strictly increasing");
        }
    }

    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = direction == SweepDirection::up ? i : grid.size() - 1 - i;
    }

    ShiftCurve curve;
    curve.points.resize(grid.size());
    bool first = true;
    double previous = 0.0;
    for (std::size_t idx : order) {
        const auto states = solve_full_steady_state(cavity, mode, grid[idx]);
        const SteadyState* chosen = nullptr;
        if (first) {
            // Cold start from the low branch on the way up; adiabatic arrival
            // on the high branch on the way down.
            for (const auto& s : states) {
                if (!s.stable) continue;
                if (!chosen || (direction == SweepDirection::up
                                    ? s.occupation < chosen->occupation
                                    : s.occupation > chosen->occupation)) {
                    chosen = &s;
                }
            }
            if (!chosen) chosen = &states.front();
            first = false;
        } else {
            chosen = &pick_nearest(states, previous);
        }
        previous = chosen->occupation;

        ShiftCurvePoint& point = curve.points[idx];
        point.power_w = grid[idx].power_w;
        point.f_d_hz = grid[idx].f_d_hz;
        point.shift_hz = mode.kerr_hz * chosen->occupation;
        point.branch_count = static_cast<int>(states.size());
        point.selected_branch = chosen->branch;
    }
    return curve;
}

}  // namespace magnonlab
