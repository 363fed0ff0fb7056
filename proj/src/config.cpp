#include "magnonlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "magnonlab/constants.hpp"

namespace magnonlab {
namespace {

struct Unit {
    const char* suffix;
    double scale;
};

// Scaled units per dimension; canonical (emission) unit first. dbm and the
// SI drive-coupling unit are handled specially below.
const std::map<std::string, std::vector<Unit>>& unit_table() {
    static const std::map<std::string, std::vector<Unit>> table = {
        {"frequency", {{"hz", 1.0}, {"khz", 1e3}, {"mhz", 1e6}, {"ghz", 1e9},
                       {"thz", 1e12}, {"uhz", 1e-6}, {"nhz", 1e-9}}},
        {"power", {{"w", 1.0}, {"mw", 1e-3}, {"uw", 1e-6}, {"nw", 1e-9}, {"pw", 1e-12}}},
        {"field", {{"t", 1.0}, {"mt", 1e-3}}},
        {"field_slope", {{"hz_per_t", 1.0}, {"mhz_per_t", 1e6}, {"ghz_per_t", 1e9}}},
        {"attenuation", {{"db", 1.0}}},
        {"angular_rate", {{"rad_per_s", 1.0}}},
        {"volume", {{"m3", 1.0}, {"mm3", 1e-9}}},
        {"length", {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}}},
        {"magnetization", {{"a_per_m", 1.0}, {"ka_per_m", 1e3}}},
        {"energy_density", {{"j_per_m3", 1.0}, {"kj_per_m3", 1e3}}},
        {"permeability", {{"si", 1.0}}},
        {"count", {{"count", 1.0}}},
        // Hz^3/W plus the raw SI value (kg^-1 m^-2).
        {"drive_coupling", {{"si", 1.0}}},
    };
    return table;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_with_unit(const std::string& key, const std::string& raw,
                       const std::string& dimension, std::size_t line) {
    // Longest numeric prefix, remainder (trimmed) is the unit; accepts both
    // "42 mhz" and "42mhz".
    const std::string value = trim(raw);
    double number = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, number);
    const std::string unit_part =
        ec == std::errc{} ? lower(trim(std::string(ptr, end))) : std::string();
    if (ec != std::errc{} || unit_part.empty()) {
        throw ConfigError("key '" + key + "' requires '<number> <unit>' (got '" + value + "')",
                          line);
    }

    if (dimension == "power" && unit_part == "dbm") {
        return std::pow(10.0, (number - 30.0) / 10.0);
    }
    if (dimension == "drive_coupling") {
        if (unit_part == "hz3_per_w") return drive_c_si(number);
        if (unit_part == "si") return number;
    }
    const auto& units = unit_table().at(dimension);
    for (const auto& u : units) {
        if (unit_part == u.suffix) return number * u.scale;
    }
    throw ConfigError("key '" + key + "': unknown unit '" + unit_part + "' for " + dimension,
                      line);
}

long parse_count(const std::string& key, const std::string& raw, std::size_t line) {
    const std::string value = trim(raw);
    long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end || out < 0) {
        throw ConfigError("key '" + key + "' requires a nonnegative integer", line);
    }
    return out;
}

struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

struct Section {
    std::string kind;
    std::string label;
    std::size_t line = 0;
    std::map<std::string, Entry> entries;
};

class SectionReader {
  public:
    explicit SectionReader(Section& section) : section_(section) {}

    std::optional<double> quantity(const std::string& key, const std::string& dimension) {
        auto it = section_.entries.find(key);
        if (it == section_.entries.end()) return std::nullopt;
        it->second.used = true;
        return parse_with_unit(key, it->second.value, dimension, it->second.line);
    }

    double required(const std::string& key, const std::string& dimension) {
        auto v = quantity(key, dimension);
        if (!v) {
            throw ConfigError("section [" + section_name() + "] is missing key '" + key + "'",
                              section_.line);
        }
        return *v;
    }

    std::optional<long> count(const std::string& key) {
        auto it = section_.entries.find(key);
        if (it == section_.entries.end()) return std::nullopt;
        it->second.used = true;
        return parse_count(key, it->second.value, it->second.line);
    }

    long required_count(const std::string& key) {
        auto v = count(key);
        if (!v) {
            throw ConfigError("section [" + section_name() + "] is missing key '" + key + "'",
                              section_.line);
        }
        return *v;
    }

    void finish() const {
        for (const auto& [key, entry] : section_.entries) {
            if (!entry.used) {
                throw ConfigError("unknown key '" + key + "' in [" + section_name() + "]",
                                  entry.line);
            }
        }
    }

  private:
    std::string section_name() const {
        return section_.label.empty() ? section_.kind : section_.kind + " " + section_.label;
    }

    Section& section_;
};

std::vector<Section> tokenize(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string stripped = line;
        if (const auto hash = stripped.find_first_of("#;"); hash != std::string::npos) {
            stripped = stripped.substr(0, hash);
        }
        stripped = trim(stripped);
        if (stripped.empty()) continue;

        if (stripped.front() == '[') {
            if (stripped.back() != ']') throw ConfigError("unterminated section header", line_number);
            const std::string header = trim(stripped.substr(1, stripped.size() - 2));
            Section section;
            section.line = line_number;
            if (const auto blank = header.find_first_of(" \t"); blank != std::string::npos) {
                section.kind = lower(trim(header.substr(0, blank)));
                section.label = trim(header.substr(blank + 1));
            } else {
                section.kind = lower(header);
            }
            if (section.kind.empty()) throw ConfigError("empty section header", line_number);
            sections.push_back(std::move(section));
            continue;
        }

        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value' or a [section] header", line_number);
        }
        if (sections.empty()) throw ConfigError("key outside of any section", line_number);
        const std::string key = lower(trim(stripped.substr(0, eq)));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("expected 'key = value'", line_number);
        }
        auto& entries = sections.back().entries;
        if (entries.count(key)) {
            throw ConfigError("duplicate key '" + key + "'", line_number);
        }
        entries[key] = Entry{value, line_number, false};
    }
    return sections;
}

void append_quantity(std::string& out, const char* key, double value, const char* unit) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out += key;
    out += " = ";
    out += buf;
    out += ' ';
    out += unit;
    out += '\n';
}

void append_count(std::string& out, const char* key, long value) {
    out += key;
    out += " = ";
    out += std::to_string(value);
    out += '\n';
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::size_t line)
    : std::runtime_error("config line " + std::to_string(line) + ": " + message), line_(line) {}

ScenarioConfig parse_scenario(const std::string& text) {
    ScenarioConfig config;
    bool have_cavity = false;

    for (Section& section : tokenize(text)) {
        SectionReader reader(section);
        if (section.kind == "cavity") {
            if (have_cavity) throw ConfigError("duplicate [cavity] section", section.line);
            have_cavity = true;
            CavityParams& c = config.system.cavity;
            c.f_c_hz = reader.required("f_c", "frequency");
            c.kappa1_hz = reader.required("kappa1", "frequency");
            c.kappa2_hz = reader.required("kappa2", "frequency");
            c.kappa_int_hz = reader.required("kappa_int", "frequency");
        } else if (section.kind == "mode") {
            if (section.label.empty()) {
                throw ConfigError("mode sections need a label: [mode kittel]", section.line);
            }
            ModeConfig mode;
            mode.mode.label = section.label;
            mode.mode.f_m_hz = reader.required("f_m", "frequency");
            mode.mode.gamma_hz = reader.required("gamma", "frequency");
            mode.mode.g_hz = reader.required("g", "frequency");
            mode.mode.kerr_hz = reader.quantity("kerr", "frequency").value_or(0.0);
            mode.mode.drive_c_si = reader.quantity("drive_c", "drive_coupling").value_or(0.0);
            const auto slope = reader.quantity("bias_slope", "field_slope");
            const auto offset = reader.quantity("bias_offset", "frequency");
            if (slope.has_value() != offset.has_value()) {
                throw ConfigError("bias_slope and bias_offset must be given together",
                                  section.line);
            }
            if (slope) mode.bias = BiasMap{*slope, *offset};
            config.system.modes.push_back(std::move(mode));
        } else if (section.kind == "material") {
            MaterialParams m;
            m.gyro_hz_per_t = reader.quantity("gyro", "field_slope").value_or(28.0e9);
            m.mu0 = reader.quantity("mu0", "permeability").value_or(kMu0);
            m.k_an_j_m3 = reader.required("k_an", "energy_density");
            m.m_sat_a_m = reader.required("m_sat", "magnetization");
            m.s_total = reader.required("s_total", "count");
            const auto volume = reader.quantity("v_m", "volume");
            const auto diameter = reader.quantity("sphere_d", "length");
            if (!volume && !diameter) {
                throw ConfigError("material needs v_m or sphere_d", section.line);
            }
            m.v_m_m3 = volume ? *volume : sphere_volume_m3(*diameter);
            if (volume && diameter) check_sphere_volume(m, *diameter);
            config.system.material = m;
        } else if (section.kind == "drive") {
            DriveParams d;
            d.f_d_hz = reader.required("f_d", "frequency");
            d.power_w = reader.required("power", "power");
            d.attenuation_db = reader.quantity("attenuation", "attenuation").value_or(0.0);
            const auto rabi = reader.quantity("rabi", "angular_rate");
            if (rabi) d.rabi_rad_s = *rabi;
            config.drive = d;
        } else if (section.kind == "probe") {
            ProbeParams p;
            p.f_p_hz = reader.required("f_p", "frequency");
            p.power_w = reader.required("power", "power");
            config.probe = p;
        } else if (section.kind == "sweep") {
            const std::string which = lower(section.label);
            if (which == "shift") {
                PowerRangeSpec s;
                s.p_min_w = reader.required("p_min", "power");
                s.p_max_w = reader.required("p_max", "power");
                s.points = static_cast<int>(reader.required_count("points"));
                config.shift_sweep = s;
            } else if (which == "drive") {
                FrequencyRangeSpec s;
                s.f_min_hz = reader.required("f_min", "frequency");
                s.f_max_hz = reader.required("f_max", "frequency");
                s.points = static_cast<int>(reader.required_count("points"));
                config.drive_sweep = s;
            } else if (which == "spectrum") {
                FrequencyRangeSpec s;
                s.f_min_hz = reader.required("f_min", "frequency");
                s.f_max_hz = reader.required("f_max", "frequency");
                s.points = static_cast<int>(reader.required_count("points"));
                config.spectrum_sweep = s;
            } else if (which == "crossing") {
                CrossingRangeSpec s;
                s.b_min_t = reader.required("b_min", "field");
                s.b_max_t = reader.required("b_max", "field");
                s.b_points = static_cast<int>(reader.required_count("b_points"));
                s.f_min_hz = reader.required("f_min", "frequency");
                s.f_max_hz = reader.required("f_max", "frequency");
                s.f_points = static_cast<int>(reader.required_count("f_points"));
                config.crossing_sweep = s;
            } else {
                throw ConfigError("unknown sweep '" + section.label +
                                      "' (expected shift, drive, crossing or spectrum)",
                                  section.line);
            }
        } else {
            throw ConfigError("unknown section [" + section.kind + "]", section.line);
        }
        reader.finish();
    }

    if (!have_cavity) throw ConfigError("missing [cavity] section", 0);
    validate(config.system);
    if (config.drive) validate(*config.drive);
    if (config.probe) validate(*config.probe);
    return config;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string emit_scenario(const ScenarioConfig& config) {
    std::string out;
    out += "[cavity]\n";
    append_quantity(out, "f_c", config.system.cavity.f_c_hz, "hz");
    append_quantity(out, "kappa1", config.system.cavity.kappa1_hz, "hz");
    append_quantity(out, "kappa2", config.system.cavity.kappa2_hz, "hz");
    append_quantity(out, "kappa_int", config.system.cavity.kappa_int_hz, "hz");

    for (const auto& m : config.system.modes) {
        out += "\n[mode " + m.mode.label + "]\n";
        append_quantity(out, "f_m", m.mode.f_m_hz, "hz");
        append_quantity(out, "gamma", m.mode.gamma_hz, "hz");
        append_quantity(out, "g", m.mode.g_hz, "hz");
        if (m.mode.kerr_hz != 0.0) append_quantity(out, "kerr", m.mode.kerr_hz, "hz");
        if (m.mode.drive_c_si != 0.0) append_quantity(out, "drive_c", m.mode.drive_c_si, "si");
        if (m.bias) {
            append_quantity(out, "bias_slope", m.bias->slope_hz_per_t, "hz_per_t");
            append_quantity(out, "bias_offset", m.bias->offset_hz, "hz");
        }
    }

    if (config.system.material) {
        const MaterialParams& m = *config.system.material;
        out += "\n[material]\n";
        append_quantity(out, "gyro", m.gyro_hz_per_t, "hz_per_t");
        append_quantity(out, "mu0", m.mu0, "si");
        append_quantity(out, "k_an", m.k_an_j_m3, "j_per_m3");
        append_quantity(out, "m_sat", m.m_sat_a_m, "a_per_m");
        append_quantity(out, "s_total", m.s_total, "count");
        append_quantity(out, "v_m", m.v_m_m3, "m3");
    }

    if (config.drive) {
        out += "\n[drive]\n";
        append_quantity(out, "f_d", config.drive->f_d_hz, "hz");
        append_quantity(out, "power", config.drive->power_w, "w");
        append_quantity(out, "attenuation", config.drive->attenuation_db, "db");
        if (config.drive->rabi_rad_s) {
            append_quantity(out, "rabi", *config.drive->rabi_rad_s, "rad_per_s");
        }
    }
    if (config.probe) {
        out += "\n[probe]\n";
        append_quantity(out, "f_p", config.probe->f_p_hz, "hz");
        append_quantity(out, "power", config.probe->power_w, "w");
    }
    if (config.shift_sweep) {
        out += "\n[sweep shift]\n";
        append_quantity(out, "p_min", config.shift_sweep->p_min_w, "w");
        append_quantity(out, "p_max", config.shift_sweep->p_max_w, "w");
        append_count(out, "points", config.shift_sweep->points);
    }
    if (config.drive_sweep) {
        out += "\n[sweep drive]\n";
        append_quantity(out, "f_min", config.drive_sweep->f_min_hz, "hz");
        append_quantity(out, "f_max", config.drive_sweep->f_max_hz, "hz");
        append_count(out, "points", config.drive_sweep->points);
    }
    if (config.crossing_sweep) {
        out += "\n[sweep crossing]\n";
        append_quantity(out, "b_min", config.crossing_sweep->b_min_t, "t");
        append_quantity(out, "b_max", config.crossing_sweep->b_max_t, "t");
        append_count(out, "b_points", config.crossing_sweep->b_points);
        append_quantity(out, "f_min", config.crossing_sweep->f_min_hz, "hz");
        append_quantity(out, "f_max", config.crossing_sweep->f_max_hz, "hz");
        append_count(out, "f_points", config.crossing_sweep->f_points);
    }
    if (config.spectrum_sweep) {
        out += "\n[sweep spectrum]\n";
        append_quantity(out, "f_min", config.spectrum_sweep->f_min_hz, "hz");
        append_quantity(out, "f_max", config.spectrum_sweep->f_max_hz, "hz");
        append_count(out, "points", config.spectrum_sweep->points);
    }
    return out;
}

double parse_quantity(const std::string& text, const std::string& dimension) {
    if (!unit_table().count(dimension)) {
        throw std::invalid_argument("unknown dimension: " + dimension);
    }
    return parse_with_unit("value", text, dimension, 0);
}

}  // namespace magnonlab
