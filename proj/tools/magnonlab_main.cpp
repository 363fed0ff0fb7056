// magnonlab: scenario-driven sweeps, spectra and fits for driven
// cavity-magnon systems, with CSV and SVG output.
//
// Exit codes: 0 success, 2 input error, 3 fit did not converge (the report
// is still written), 4 internal numerical failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magnonlab/config.hpp"
#include "magnonlab/csv.hpp"
#include "magnonlab/dispersive.hpp"
#include "magnonlab/fit.hpp"
#include "magnonlab/parallel.hpp"
#include "magnonlab/spectra.hpp"
#include "magnonlab/steady_state.hpp"
#include "magnonlab/svg.hpp"

namespace {

using namespace magnonlab;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitNumeric = 4;

struct CommonArgs {
    std::string config_path;
    uint64_t seed = 1;
    double max_mem_mb = 512.0;
};

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) {
        throw std::invalid_argument("need at least 2 grid points and max > min");
    }
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) out[i] = lo + (hi - lo) * i / (points - 1);
    return out;
}

std::vector<std::string> reproducibility_comments(const ScenarioConfig& scenario,
                                                  uint64_t seed) {
    std::vector<std::string> comments;
    comments.push_back("magnonlab " MAGNONLAB_VERSION);
    comments.push_back("seed: " + std::to_string(seed));
    comments.push_back("resolved scenario:");
    std::istringstream canonical(emit_scenario(scenario));
    std::string line;
    while (std::getline(canonical, line)) comments.push_back("  " + line);
    return comments;
}

// Occupation-free static report: cooperativity, detunings, pulls, photon
// number, Kerr coefficient when material constants are present.
int cmd_params(const CommonArgs& args) {
    const ScenarioConfig scenario = load_scenario(args.config_path);
    const SystemConfig& system = scenario.system;
    const CavityParams& cavity = system.cavity;

    std::printf("magnonlab %s\n", MAGNONLAB_VERSION);
    std::printf("cavity: f_c = %.7f GHz, kappa = %.4f MHz (kappa1 %.4f, kappa2 %.4f, kappa_int %.4f)\n",
                cavity.f_c_hz / 1e9, cavity.kappa_total_hz() / 1e6, cavity.kappa1_hz / 1e6,
                cavity.kappa2_hz / 1e6, cavity.kappa_int_hz / 1e6);

    double static_pull_sum = 0.0;
    for (const auto& m : system.modes) {
        if (m.mode.f_m_hz != cavity.f_c_hz && m.mode.g_hz > 0.0) {
            static_pull_sum += dispersive_shifts(cavity, m.mode, 0.0).cavity_pull_static_hz;
        }
    }
    std::printf("cavity center with all modes: %.7f GHz\n",
                (cavity.f_c_hz + static_pull_sum) / 1e9);

    for (const auto& m : system.modes) {
        const double c = cooperativity(cavity, m.mode);
        std::printf("mode %s: f_m = %.7f GHz, gamma = %.4f MHz, g = %.4f MHz, C = %.2f",
                    m.mode.label.c_str(), m.mode.f_m_hz / 1e9, m.mode.gamma_hz / 1e6,
                    m.mode.g_hz / 1e6, c);
        if (m.mode.g_hz > 0.0 && m.mode.f_m_hz != cavity.f_c_hz) {
            const DispersiveValidity v = dispersive_validity(cavity, m.mode);
            const ShiftReport r = dispersive_shifts(cavity, m.mode, 0.0);
            std::printf(", Delta = %.4f MHz, Delta/g = %.2f (%s), static pull = %.4f MHz, pulled f_m = %.7f GHz",
                        (cavity.f_c_hz - m.mode.f_m_hz) / 1e6, v.ratio,
                        v.dispersive ? "dispersive" : "not dispersive",
                        r.cavity_pull_static_hz / 1e6, r.pulled_f_m_hz / 1e9);
        }
        std::printf("\n");
    }

    if (scenario.probe) {
        const double center = cavity.f_c_hz + static_pull_sum;
        const double n = probe_photon_number(*scenario.probe, cavity, center);
        std::printf("probe: f_p = %.7f GHz, power = %.6g W (%.2f dBm), n_bar = %.4f\n",
                    scenario.probe->f_p_hz / 1e9, scenario.probe->power_w,
                    watts_to_dbm(scenario.probe->power_w), n);
    }
    if (scenario.drive) {
        std::printf("drive: f_d = %.7f GHz, power = %.6g W (%.2f dBm)\n",
                    scenario.drive->f_d_hz / 1e9, scenario.drive->power_w,
                    watts_to_dbm(scenario.drive->power_w));
    }
    if (system.material) {
        std::printf("kerr coefficient from material: %.6g Hz\n",
                    kerr_coefficient(*system.material));
    }
    return kExitOk;
}

const MagnonModeParams& pick_mode(const SystemConfig& system, const std::string& label) {
    const ModeConfig* m = system.find_mode(label);
    if (!m) throw std::invalid_argument("no mode labeled '" + label + "' in the scenario");
    return m->mode;
}

int cmd_shift_curve(const CommonArgs& args, const std::string& mode_label,
                    std::optional<double> p_min, std::optional<double> p_max,
                    std::optional<int> points, const std::string& out_path,
                    const std::string& svg_path) {
    const ScenarioConfig scenario = load_scenario(args.config_path);
    const MagnonModeParams& mode = pick_mode(scenario.system, mode_label);

    const double lo = p_min.value_or(scenario.shift_sweep ? scenario.shift_sweep->p_min_w : -1.0);
    const double hi = p_max.value_or(scenario.shift_sweep ? scenario.shift_sweep->p_max_w : -1.0);
    const int n = points.value_or(scenario.shift_sweep ? scenario.shift_sweep->points : 0);
    if (lo < 0.0 || hi <= 0.0 || n == 0) {
        throw std::invalid_argument(
            "power range missing: give --pmin/--pmax/--points or a [sweep shift] block");
    }
    const auto powers = linspace(lo, hi, n);

    // Exact dispersive pull ratio maps the magnon shift onto the cavity.
    const ShiftReport unit = dispersive_shifts(scenario.system.cavity, mode, 1.0);
    const double ratio = unit.magnon_pull_kerr_hz != 0.0
                             ? unit.cavity_pull_kerr_hz / unit.magnon_pull_kerr_hz
                             : 0.0;

    DataTable table;
    table.comments = reproducibility_comments(scenario, args.seed);
    table.columns = {"power_mw", "shift_mhz", "cavity_shift_mhz"};
    for (double p : powers) {
        const double shift = solve_shift_cubic(mode.gamma_hz, mode.drive_c_si, p);
        table.rows.push_back({p * 1e3, shift / 1e6, ratio * shift / 1e6});
    }
    write_csv_file(out_path, table);

    if (!svg_path.empty()) {
        SvgChart chart;
        chart.title = "Kerr shift vs drive power (" + mode.label + ")";
        chart.x_label = "drive power (mW)";
        chart.y_label = "shift (MHz)";
        SvgSeries full{.label = "cubic root", .color = "#1f6fb2"};
        SvgSeries small{.label = "linear law", .color = "#c44e52", .dashed = true};
        SvgSeries large{.label = "cube-root law", .color = "#55a868", .dashed = true};
        for (double p : powers) {
            full.x.push_back(p * 1e3);
            full.y.push_back(solve_shift_cubic(mode.gamma_hz, mode.drive_c_si, p) / 1e6);
            small.x.push_back(p * 1e3);
            small.y.push_back(limit_shift(mode.gamma_hz, mode.drive_c_si, p,
                                          PowerRegime::small_power) / 1e6);
            large.x.push_back(p * 1e3);
            large.y.push_back(limit_shift(mode.gamma_hz, mode.drive_c_si, p,
                                          PowerRegime::large_power) / 1e6);
        }
        // Keep the dashed overlays inside the chart frame.
        const double top = 1.6 * full.y.back();
        for (auto* s : {&small, &large}) {
            for (double& y : s->y) y = std::min(y, top);
        }
        chart.series = {full, small, large};
        write_svg_file(svg_path, chart);
    }
    return kExitOk;
}

void check_memory_budget(std::size_t cells, double max_mem_mb) {
    const double mb = double(cells) * (sizeof(std::complex<double>) + sizeof(double)) / 1.0e6;
    if (mb > max_mem_mb) {
        throw std::invalid_argument("grid needs about " + std::to_string(mb) +
                                    " MB, over the " + std::to_string(max_mem_mb) +
                                    " MB budget (--max-mem-mb)");
    }
}

int cmd_crossing_map(const CommonArgs& args, std::optional<double> b_min,
                     std::optional<double> b_max, std::optional<int> b_points,
                     std::optional<double> f_min, std::optional<double> f_max,
                     std::optional<int> f_points, const std::string& out_path,
                     const std::string& svg_path) {
    const ScenarioConfig scenario = load_scenario(args.config_path);
    const auto& sweep = scenario.crossing_sweep;
    const double blo = b_min.value_or(sweep ? sweep->b_min_t : 0.0);
    const double bhi = b_max.value_or(sweep ? sweep->b_max_t : 0.0);
    const int bn = b_points.value_or(sweep ? sweep->b_points : 0);
    const double flo = f_min.value_or(sweep ? sweep->f_min_hz : 0.0);
    const double fhi = f_max.value_or(sweep ? sweep->f_max_hz : 0.0);
    const int fn = f_points.value_or(sweep ? sweep->f_points : 0);
    if (bn == 0 || fn == 0) {
        throw std::invalid_argument(
            "crossing grid missing: give the bias/probe flags or a [sweep crossing] block");
    }
    check_memory_budget(std::size_t(bn) * std::size_t(fn), args.max_mem_mb);

    const auto bias = linspace(blo, bhi, bn);
    const auto probe = linspace(flo, fhi, fn);
    const SpectrumGrid grid = avoided_crossing_map(bias, probe, scenario.system);

    // Matrix CSV: first row carries the probe axis, first column the bias axis.
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    for (const auto& comment : reproducibility_comments(scenario, args.seed)) {
        out << "# " << comment << "\n";
    }
    out << "bias_t\\probe_hz";
    for (double f : probe) out << ',' << num17(f);
    out << "\n";
    for (std::size_t i = 0; i < bias.size(); ++i) {
        out << num17(bias[i]);
        for (std::size_t k = 0; k < probe.size(); ++k) {
            out << ',' << num17(std::abs(grid.at(i, k)));
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + out_path);

    if (!svg_path.empty()) {
        // Ridge trace: transmission-maximum frequency per bias point.
        SvgChart chart;
        chart.title = "transmission ridge across the crossing";
        chart.x_label = "bias field (T)";
        chart.y_label = "peak frequency (GHz)";
        SvgSeries ridge{.label = "argmax |S21|"};
        for (std::size_t i = 0; i < bias.size(); ++i) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < probe.size(); ++k) {
                if (std::abs(grid.at(i, k)) > std::abs(grid.at(i, best))) best = k;
            }
            ridge.x.push_back(bias[i]);
            ridge.y.push_back(probe[best] / 1e9);
        }
        chart.series = {ridge};
        write_svg_file(svg_path, chart);
    }
    return kExitOk;
}

int cmd_drive_sweep(const CommonArgs& args, const std::string& mode_label,
                    std::optional<double> power, std::optional<double> f_min,
                    std::optional<double> f_max, std::optional<int> points,
                    const std::string& model_name, const std::string& direction_name,
                    const std::string& out_path, const std::string& svg_path) {
    const ScenarioConfig scenario = load_scenario(args.config_path);
    if (!scenario.probe) throw std::invalid_argument("drive-sweep needs a [probe] block");
    const auto& sweep = scenario.drive_sweep;
    const double flo = f_min.value_or(sweep ? sweep->f_min_hz : 0.0);
    const double fhi = f_max.value_or(sweep ? sweep->f_max_hz : 0.0);
    const int n = points.value_or(sweep ? sweep->points : 0);
    if (n == 0) {
        throw std::invalid_argument(
            "drive grid missing: give --fmin/--fmax/--points or a [sweep drive] block");
    }
    double p = -1.0;
    if (power) {
        p = *power;
    } else if (scenario.drive) {
        p = delivered_power(*scenario.drive);
    }
    if (p < 0.0) throw std::invalid_argument("drive power missing: give --power or a [drive] block");

    const ResponseModel model = model_name == "coherent" ? ResponseModel::coherent
                                                         : ResponseModel::tracked;
    const SweepDirection direction =
        direction_name == "down" ? SweepDirection::down : SweepDirection::up;

    const auto grid = linspace(flo, fhi, n);
    const auto trace = drive_sweep_response(grid, p, scenario.system, scenario.probe->f_p_hz,
                                            mode_label, model, direction);

    DataTable table;
    table.comments = reproducibility_comments(scenario, args.seed);
    table.comments.push_back("driven mode: " + mode_label + ", power_w: " + num17(p) +
                             ", model: " + model_name + ", direction: " + direction_name);
    table.columns = {"drive_ghz", "s21_mag", "magnon_shift_mhz", "cavity_shift_mhz"};
    for (const auto& point : trace) {
        table.rows.push_back({point.f_d_hz / 1e9, point.s21_mag, point.magnon_shift_hz / 1e6,
                              point.cavity_shift_hz / 1e6});
    }
    write_csv_file(out_path, table);

    if (!svg_path.empty()) {
        SvgChart chart;
        chart.title = "probe transmission vs drive frequency";
        chart.x_label = "drive frequency (GHz)";
        chart.y_label = "|S21|";
        SvgSeries series{.label = "|S21| at f_p"};
        for (const auto& point : trace) {
            series.x.push_back(point.f_d_hz / 1e9);
            series.y.push_back(point.s21_mag);
        }
        chart.series = {series};
        write_svg_file(svg_path, chart);
    }
    return kExitOk;
}

int cmd_spectrum(const CommonArgs& args, std::optional<double> f_min,
                 std::optional<double> f_max, std::optional<int> points,
                 const std::string& out_path, const std::string& svg_path) {
    const ScenarioConfig scenario = load_scenario(args.config_path);
    const auto& sweep = scenario.spectrum_sweep;
    const double flo = f_min.value_or(sweep ? sweep->f_min_hz : 0.0);
    const double fhi = f_max.value_or(sweep ? sweep->f_max_hz : 0.0);
    const int n = points.value_or(sweep ? sweep->points : 0);
    if (n == 0) {
        throw std::invalid_argument(
            "spectrum grid missing: give --fmin/--fmax/--points or a [sweep spectrum] block");
    }
    const auto grid = linspace(flo, fhi, n);

    std::vector<double> mag(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        mag[i] = std::abs(s21(grid[i], scenario.system));
    });

    DataTable table;
    table.comments = reproducibility_comments(scenario, args.seed);
    table.columns = {"freq_ghz", "s21_mag"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        table.rows.push_back({grid[i] / 1e9, mag[i]});
    }
    write_csv_file(out_path, table);

    if (!svg_path.empty()) {
        SvgChart chart;
        chart.title = "transmission spectrum";
        chart.x_label = "probe frequency (GHz)";
        chart.y_label = "|S21|";
        SvgSeries series{.label = "|S21|"};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            series.x.push_back(grid[i] / 1e9);
            series.y.push_back(mag[i]);
        }
        chart.series = {series};
        write_svg_file(svg_path, chart);
    }
    return kExitOk;
}

int cmd_fit_shift(const CommonArgs& args, const std::string& data_path,
                  const std::string& mode_label, bool fix_gamma, int restarts,
                  int max_iterations, const std::string& out_path) {
    const ScenarioConfig scenario = load_scenario(args.config_path);
    const MagnonModeParams& mode = pick_mode(scenario.system, mode_label);

    const DataTable input = read_csv_file(data_path);
    const std::size_t pcol = input.column_index("power_mw");
    const std::size_t scol = input.column_index("shift_mhz");
    std::vector<Observation> data;
    for (const auto& row : input.rows) {
        data.push_back({row[pcol] * 1e-3, row[scol] * 1e6});
    }

    OptimizerOptions options;
    if (restarts > 0) options.restarts = restarts;
    if (max_iterations > 0) options.max_iterations = max_iterations;
    const ShiftPowerInit init{mode.gamma_hz, mode.drive_c_si};
    const FitResult result = fit_shift_power(
        data, init, fix_gamma ? std::optional<double>(mode.gamma_hz) : std::nullopt,
        args.seed, options);

    DataTable table;
    table.comments = reproducibility_comments(scenario, args.seed);
    table.comments.push_back("fit: shift_power, mode " + mode_label +
                             (fix_gamma ? ", gamma fixed" : ", gamma free"));
    table.comments.push_back("converged: " + std::string(result.converged ? "yes" : "no"));
    if (!result.converged) table.comments.push_back("diagnostics: " + result.diagnostics);
    table.comments.push_back("iterations: " + std::to_string(result.iterations));
    table.comments.push_back("residual_sum_hz2: " + num17(result.residual_sum));
    table.comments.push_back("gamma_m_mhz: " + num17(result.estimates[0] / 1e6));
    table.comments.push_back("c_hz3_per_w: " + num17(drive_c_hz3_per_w(result.estimates[1])));
    table.comments.push_back("c_si: " + num17(result.estimates[1]));

    table.columns = {"power_mw", "shift_mhz", "shift_mhz_model"};
    for (const auto& d : data) {
        const double model = shift_power_model(d.x, result.estimates[0], result.estimates[1]);
        table.rows.push_back({d.x * 1e3, d.y / 1e6, model / 1e6});
    }
    write_csv_file(out_path, table);

    std::printf("fit %s: gamma_m = %.6g MHz, c = %.6g Hz^3/W, residual = %.6g, %s\n",
                mode_label.c_str(), result.estimates[0] / 1e6,
                drive_c_hz3_per_w(result.estimates[1]), result.residual_sum,
                result.converged ? "converged" : "NOT converged");
    return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_fit_spectrum(const CommonArgs& args, const std::string& data_path,
                     const std::string& free_list, const std::string& loss_name,
                     int restarts, int max_iterations, const std::string& out_path) {
    const ScenarioConfig scenario = load_scenario(args.config_path);

    const DataTable input = read_csv_file(data_path);
    const std::size_t fcol = input.column_index("freq_ghz");
    const std::size_t mcol = input.column_index("s21_mag");
    std::vector<Observation> data;
    for (const auto& row : input.rows) {
        data.push_back({row[fcol] * 1e9, row[mcol]});
    }

    std::vector<std::string> free_names;
    std::stringstream names(free_list);
    std::string item;
    while (std::getline(names, item, ',')) {
        if (!item.empty()) free_names.push_back(item);
    }

    OptimizerOptions options;
    if (restarts > 0) options.restarts = restarts;
    if (max_iterations > 0) options.max_iterations = max_iterations;
    const FitLoss loss = loss_name == "log" ? FitLoss::log_magnitude : FitLoss::linear;
    const FitResult result =
        fit_spectrum(data, scenario.system, free_names, loss, args.seed, options);

    DataTable table;
    table.comments = reproducibility_comments(scenario, args.seed);
    table.comments.push_back("fit: spectrum, loss " + loss_name);
    table.comments.push_back("converged: " + std::string(result.converged ? "yes" : "no"));
    if (!result.converged) table.comments.push_back("diagnostics: " + result.diagnostics);
    table.comments.push_back("iterations: " + std::to_string(result.iterations));
    table.comments.push_back("residual_sum: " + num17(result.residual_sum));
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        table.comments.push_back(result.names[i] + ": " + num17(result.estimates[i]));
    }

    const SystemConfig fitted =
        apply_spectrum_params(scenario.system, result.names, result.estimates);
    table.columns = {"freq_ghz", "s21_mag", "s21_mag_model"};
    for (const auto& d : data) {
        table.rows.push_back({d.x / 1e9, d.y, std::abs(s21(d.x, fitted))});
    }
    write_csv_file(out_path, table);

    std::printf("fit spectrum:");
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        std::printf(" %s = %.8g", result.names[i].c_str(), result.estimates[i]);
    }
    std::printf(", residual = %.6g, %s\n", result.residual_sum,
                result.converged ? "converged" : "NOT converged");
    return result.converged ? kExitOk : kExitNotConverged;
}

// Unit-suffixed CLI value, e.g. "11 dbm" or "9.45ghz".
std::optional<double> flag_quantity(const std::string& text, const std::string& dimension) {
    if (text.empty()) return std::nullopt;
    return parse_quantity(text, dimension);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven cavity-magnon workbench"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string mode_label = "kittel";
    std::string out_path;
    std::string svg_path;
    std::string data_path;
    std::string pmin_text, pmax_text, fmin_text, fmax_text, power_text;
    std::string bmin_text, bmax_text;
    std::optional<int> points, b_points, f_points;
    std::string model_name = "tracked";
    std::string direction_name = "up";
    std::string loss_name = "linear";
    std::string free_list;
    bool fix_gamma = false;
    int restarts = 0;
    int max_iterations = 0;

    const auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--config", common.config_path, "scenario file")->required();
        cmd->add_option("--seed", common.seed, "random seed (default 1)");
        cmd->add_option("--max-mem-mb", common.max_mem_mb, "grid memory budget in MB");
        if (needs_out) cmd->add_option("--out", out_path, "output CSV path")->required();
    };

    auto* params = app.add_subcommand("params", "derived quantities of a scenario");
    add_common(params, false);

    auto* shift = app.add_subcommand("shift-curve", "Kerr shift vs drive power");
    add_common(shift, true);
    shift->add_option("--mode", mode_label, "driven mode label");
    shift->add_option("--pmin", pmin_text, "lowest power, e.g. '0.1 mw'");
    shift->add_option("--pmax", pmax_text, "highest power");
    shift->add_option("--points", points, "grid size");
    shift->add_option("--svg", svg_path, "also write an SVG chart");

    auto* crossing = app.add_subcommand("crossing-map", "|S21| over bias and probe grids");
    add_common(crossing, true);
    crossing->add_option("--bmin", bmin_text, "lowest bias, e.g. '0.355 t'");
    crossing->add_option("--bmax", bmax_text, "highest bias");
    crossing->add_option("--bpoints", b_points, "bias grid size");
    crossing->add_option("--fmin", fmin_text, "lowest probe frequency");
    crossing->add_option("--fmax", fmax_text, "highest probe frequency");
    crossing->add_option("--fpoints", f_points, "probe grid size");
    crossing->add_option("--svg", svg_path, "also write an SVG ridge chart");

    auto* drive = app.add_subcommand("drive-sweep", "probe transmission vs drive frequency");
    add_common(drive, true);
    drive->add_option("--mode", mode_label, "driven mode label");
    drive->add_option("--power", power_text, "drive power, e.g. '11 dbm'");
    drive->add_option("--fmin", fmin_text, "lowest drive frequency");
    drive->add_option("--fmax", fmax_text, "highest drive frequency");
    drive->add_option("--points", points, "grid size");
    drive->add_option("--model", model_name, "tracked (default) or coherent")
        ->check(CLI::IsMember({"tracked", "coherent"}));
    drive->add_option("--direction", direction_name, "up (default) or down")
        ->check(CLI::IsMember({"up", "down"}));
    drive->add_option("--svg", svg_path, "also write an SVG chart");

    auto* spectrum = app.add_subcommand("spectrum", "|S21| vs probe frequency");
    add_common(spectrum, true);
    spectrum->add_option("--fmin", fmin_text, "lowest probe frequency");
    spectrum->add_option("--fmax", fmax_text, "highest probe frequency");
    spectrum->add_option("--points", points, "grid size");
    spectrum->add_option("--svg", svg_path, "also write an SVG chart");

    auto* fit_shift = app.add_subcommand("fit-shift", "fit (gamma_m, c) to shift-vs-power data");
    add_common(fit_shift, true);
    fit_shift->add_option("--data", data_path, "CSV with power_mw,shift_mhz")->required();
    fit_shift->add_option("--mode", mode_label, "mode whose parameters seed the fit");
    fit_shift->add_flag("--fix-gamma", fix_gamma, "keep gamma_m at the scenario value");
    fit_shift->add_option("--restarts", restarts, "optimizer restarts");
    fit_shift->add_option("--max-iterations", max_iterations, "iteration cap per restart");

    auto* fit_spec = app.add_subcommand("fit-spectrum", "fit |S21| spectra");
    add_common(fit_spec, true);
    fit_spec->add_option("--data", data_path, "CSV with freq_ghz,s21_mag")->required();
    fit_spec->add_option("--free", free_list, "comma list, e.g. f_c,kappa_int,g:kittel")
        ->required();
    fit_spec->add_option("--loss", loss_name, "linear (default) or log")
        ->check(CLI::IsMember({"linear", "log"}));
    fit_spec->add_option("--restarts", restarts, "optimizer restarts");
    fit_spec->add_option("--max-iterations", max_iterations, "iteration cap per restart");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (params->parsed()) return cmd_params(common);
        if (shift->parsed()) {
            return cmd_shift_curve(common, mode_label, flag_quantity(pmin_text, "power"),
                                   flag_quantity(pmax_text, "power"), points, out_path, svg_path);
        }
        if (crossing->parsed()) {
            return cmd_crossing_map(common, flag_quantity(bmin_text, "field"),
                                    flag_quantity(bmax_text, "field"), b_points,
                                    flag_quantity(fmin_text, "frequency"),
                                    flag_quantity(fmax_text, "frequency"), f_points, out_path,
                                    svg_path);
        }
        if (drive->parsed()) {
            return cmd_drive_sweep(common, mode_label, flag_quantity(power_text, "power"),
                                   flag_quantity(fmin_text, "frequency"),
                                   flag_quantity(fmax_text, "frequency"), points, model_name,
                                   direction_name, out_path, svg_path);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(common, flag_quantity(fmin_text, "frequency"),
                                flag_quantity(fmax_text, "frequency"), points, out_path,
                                svg_path);
        }
        if (fit_shift->parsed()) {
            return cmd_fit_shift(common, data_path, mode_label, fix_gamma, restarts,
                                 max_iterations, out_path);
        }
        if (fit_spec->parsed()) {
            return cmd_fit_spectrum(common, data_path, free_list, loss_name, restarts,
                                    max_iterations, out_path);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitInput;
}
