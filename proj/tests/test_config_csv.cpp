#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>
#include <cstdlib>
#include <stdexcept>

#include "magnonlab/config.hpp"
#include "magnonlab/csv.hpp"
#include "magnonlab/parallel.hpp"
#include "magnonlab/svg.hpp"
#include "oracles.hpp"

using namespace magnonlab;

#ifndef MAGNONLAB_SCENARIO_DIR
#define MAGNONLAB_SCENARIO_DIR "scenarios"
#endif

namespace {

const char* kMinimalConfig = R"(
[cavity]
f_c = 10.1003 ghz
kappa1 = 0.7175 mhz
kappa2 = 0.7175 mhz
kappa_int = 1.435 mhz

[mode kittel]
f_m = 9.5526 ghz
gamma = 24.3 mhz
g = 42 mhz
)";

}  // namespace

TEST_CASE("bundled scenario parses with the documented values") {
    const ScenarioConfig config =
        load_scenario(std::string(MAGNONLAB_SCENARIO_DIR) + "/kittel_dispersive.cfg");

    CHECK(config.system.cavity.f_c_hz == doctest::Approx(10.1003e9).epsilon(1e-12));
    CHECK(config.system.cavity.kappa_total_hz() == doctest::Approx(2.87e6).epsilon(1e-12));
    REQUIRE(config.system.modes.size() == 3);
    const auto* kittel = config.system.find_mode("kittel");
    REQUIRE(kittel);
    CHECK(kittel->mode.gamma_hz == doctest::Approx(24.3e6).epsilon(1e-12));
    CHECK(kittel->mode.g_hz == doctest::Approx(42e6).epsilon(1e-12));
    CHECK(kittel->mode.kerr_hz == doctest::Approx(1e-8).epsilon(1e-12));
    CHECK(drive_c_hz3_per_w(kittel->mode.drive_c_si) == doctest::Approx(4.7e24).epsilon(1e-12));
    REQUIRE(kittel->bias);
    CHECK(kittel->bias->slope_hz_per_t == doctest::Approx(28e9).epsilon(1e-12));

    REQUIRE(config.drive);
    CHECK(config.drive->power_w == doctest::Approx(dbm_to_watts(11.0)).epsilon(1e-12));
    REQUIRE(config.probe);
    CHECK(config.probe->power_w == doctest::Approx(dbm_to_watts(-129.0)).epsilon(1e-12));
    REQUIRE(config.shift_sweep);
    CHECK(config.shift_sweep->points == 30);
    REQUIRE(config.crossing_sweep);
    CHECK(config.crossing_sweep->b_points == 53);
}

TEST_CASE("config rejections name the key and line") {
    SUBCASE("missing unit suffix") {
        const std::string bad = std::string(kMinimalConfig) + "fudge = 1 mhz\n";
        std::string no_unit = bad;
        no_unit.replace(no_unit.find("g = 42 mhz"), 10, "g = 42\n   ");
        try {
            parse_scenario(no_unit);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("'g'") != std::string::npos);
            CHECK(e.line() > 0);
        }
    }

    SUBCASE("unknown key") {
        try {
            parse_scenario(std::string(kMinimalConfig) + "flux_capacitance = 1.21 ghz\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("flux_capacitance") != std::string::npos);
        }
    }

    SUBCASE("unknown unit") {
        CHECK_THROWS_AS(
            parse_scenario(std::string(kMinimalConfig) + "kerr = 10 furlongs\n"),
            ConfigError);
    }

    SUBCASE("unknown section") {
        CHECK_THROWS_AS(parse_scenario("[warp_drive]\nq = 1 hz\n"), ConfigError);
    }

    SUBCASE("duplicate mode labels") {
        std::string dup = std::string(kMinimalConfig);
        dup += "\n[mode kittel]\nf_m = 9 ghz\ngamma = 1 mhz\ng = 1 mhz\n";
        CHECK_THROWS_AS(parse_scenario(dup), std::invalid_argument);
    }

    SUBCASE("type invariants are enforced at parse time") {
        std::string bad = kMinimalConfig;
        bad.replace(bad.find("gamma = 24.3 mhz"), 16, "gamma = -2.0 mhz");
        CHECK_THROWS_AS(parse_scenario(bad), std::invalid_argument);
    }

    SUBCASE("missing cavity") {
        CHECK_THROWS_AS(parse_scenario("[probe]\nf_p = 1 ghz\npower = 1 mw\n"), ConfigError);
    }

    SUBCASE("mode without a label") {
        CHECK_THROWS_AS(parse_scenario("[cavity]\nf_c = 1 ghz\nkappa1 = 1 mhz\n"
                                       "kappa2 = 1 mhz\nkappa_int = 1 mhz\n[mode]\n"),
                        ConfigError);
    }
}

TEST_CASE("unit suffixes") {
    CHECK(parse_quantity("42 mhz", "frequency") == doctest::Approx(42e6).epsilon(1e-15));
    CHECK(parse_quantity("42mhz", "frequency") == doctest::Approx(42e6).epsilon(1e-15));
    CHECK(parse_quantity("10 nhz", "frequency") == doctest::Approx(1e-8).epsilon(1e-15));
    CHECK(parse_quantity("11 dbm", "power") == doctest::Approx(dbm_to_watts(11)).epsilon(1e-15));
    CHECK(parse_quantity("1.5 mw", "power") == doctest::Approx(1.5e-3).epsilon(1e-15));
    CHECK(parse_quantity("346.8 mt", "field") == doctest::Approx(0.3468).epsilon(1e-15));
    CHECK(parse_quantity("28 ghz_per_t", "field_slope") == doctest::Approx(28e9).epsilon(1e-15));
    CHECK(parse_quantity("4.7e24 hz3_per_w", "drive_coupling") ==
          doctest::Approx(drive_c_si(4.7e24)).epsilon(1e-15));
    CHECK_THROWS_AS(parse_quantity("42", "frequency"), ConfigError);
    CHECK_THROWS_AS(parse_quantity("mhz", "frequency"), ConfigError);
}

TEST_CASE("config canonical form is a parse-emit fixpoint") {
    const ScenarioConfig config =
        load_scenario(std::string(MAGNONLAB_SCENARIO_DIR) + "/kittel_dispersive.cfg");
    const std::string once = emit_scenario(config);
    const ScenarioConfig reparsed = parse_scenario(once);
    const std::string twice = emit_scenario(reparsed);
    CHECK(once == twice);
    CHECK(reparsed.system.cavity.f_c_hz == config.system.cavity.f_c_hz);
    CHECK(reparsed.system.modes[0].mode.kerr_hz == config.system.modes[0].mode.kerr_hz);
    CHECK(reparsed.drive->power_w == config.drive->power_w);
}

TEST_CASE("material block") {
    std::string text = kMinimalConfig;
    text += R"(
[material]
gyro = 28 ghz_per_t
k_an = 6100 j_per_m3
m_sat = 146 ka_per_m
s_total = 4.1e18 count
sphere_d = 1 mm
)";
    const ScenarioConfig config = parse_scenario(text);
    REQUIRE(config.system.material);
    CHECK(config.system.material->v_m_m3 ==
          doctest::Approx(sphere_volume_m3(1e-3)).epsilon(1e-12));
    CHECK(config.system.material->mu0 == doctest::Approx(kMu0).epsilon(1e-15));

    SUBCASE("inconsistent sphere data is rejected") {
        std::string bad = text;
        bad.replace(bad.find("sphere_d = 1 mm"), 15, "sphere_d = 1 mm\nv_m = 1e-9 m3");
        CHECK_THROWS_AS(parse_scenario(bad), std::invalid_argument);
    }
}

TEST_CASE("csv tables") {
    SUBCASE("roundtrip preserves 15 significant digits") {
        oracles::SplitMix64 rng(31);
        DataTable table;
        table.columns = {"power_mw", "shift_mhz", "weird,label"};
        table.comments = {"magnonlab test", "second comment"};
        for (int i = 0; i < 64; ++i) {
            table.rows.push_back({rng.log_uniform(1e-20, 1e20), -rng.log_uniform(1e-3, 1e9),
                                  rng.gaussian()});
        }
        std::ostringstream out;
        write_csv(out, table);
        std::istringstream in(out.str());
        const DataTable back = read_csv(in);
        REQUIRE(back.columns == table.columns);
        REQUIRE(back.comments == table.comments);
        REQUIRE(back.rows.size() == table.rows.size());
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            for (std::size_t c = 0; c < 3; ++c) {
                CHECK(back.rows[r][c] == doctest::Approx(table.rows[r][c]).epsilon(1e-15));
            }
        }
    }

    SUBCASE("ragged rows are reported with row and column") {
        std::istringstream in("a,b\n1,2\n3\n");
        try {
            read_csv(in);
            FAIL("expected CsvError");
        } catch (const CsvError& e) {
            CHECK(e.row() == 3);
        }
    }

    SUBCASE("non-numeric cells are reported") {
        std::istringstream in("a,b\n1,fish\n");
        CHECK_THROWS_AS(read_csv(in), CsvError);
    }

    SUBCASE("column lookup") {
        DataTable t;
        t.columns = {"x", "y"};
        CHECK(t.column_index("y") == 1);
        CHECK_THROWS_AS(t.column_index("z"), std::out_of_range);
    }
}

TEST_CASE("worker pool sizing and determinism") {
    setenv("MAGNONLAB_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("MAGNONLAB_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    unsetenv("MAGNONLAB_THREADS");
    CHECK(worker_count() >= 1);

    // Slot-indexed output is independent of the worker count.
    std::vector<double> serial(1000);
    std::vector<double> parallel(1000);
    setenv("MAGNONLAB_THREADS", "1", 1);
    parallel_for(serial.size(), [&](std::size_t i) { serial[i] = std::sqrt(double(i)); });
    setenv("MAGNONLAB_THREADS", "7", 1);
    parallel_for(parallel.size(), [&](std::size_t i) { parallel[i] = std::sqrt(double(i)); });
    unsetenv("MAGNONLAB_THREADS");
    CHECK(serial == parallel);

    SUBCASE("exceptions inside workers propagate") {
        setenv("MAGNONLAB_THREADS", "4", 1);
        CHECK_THROWS_AS(parallel_for(100,
                                     [](std::size_t i) {
                                         if (i == 57) throw std::runtime_error("boom");
                                     }),
                        std::runtime_error);
        unsetenv("MAGNONLAB_THREADS");
    }
}

TEST_CASE("svg charts") {
    SvgChart chart;
    chart.title = "shift vs power";
    chart.x_label = "P (mW)";
    chart.y_label = "shift (MHz)";
    SvgSeries series;
    series.label = "model";
    for (int i = 0; i <= 10; ++i) {
        series.x.push_back(i);
        series.y.push_back(i * i);
    }
    chart.series.push_back(series);
    SvgSeries dashed = series;
    dashed.label = "limit";
    dashed.dashed = true;
    chart.series.push_back(dashed);

    const std::string svg = render_svg(chart);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("shift vs power") != std::string::npos);
    CHECK(svg.find("P (mW)") != std::string::npos);
}
