// SPDX-License-Identifier: Apache-2.0
//
// risfp: RIS-assisted indoor RSS fingerprint database generator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risfp/config.hpp"
#include "risfp/io.hpp"
#include "risfp/pipeline.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace risfp;

namespace
{
std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name)
{
    fs::path p = fs::temp_directory_path() / ("risfp_test_" + name);
    fs::remove_all(p);
    return p;
}

// small enough for unit tests: 10 x 10 survey cells, four measurements
RunConfig small_config()
{
    RunConfig c;
    c.survey.spacing_m = 1.0;
    c.measurements.count = 4;
    return c;
}

int error_line(const std::string &yaml)
{
    try
    {
        load_config_string(yaml);
    }
    catch (const ConfigError &e)
    {
        return e.line();
    }
    return -1;
}

std::string error_key(const std::string &yaml)
{
    try
    {
        load_config_string(yaml);
    }
    catch (const ConfigError &e)
    {
        return e.key();
    }
    return "<none>";
}

std::size_t format_row(const std::string &csv)
{
    std::istringstream in(csv);
    try
    {
        read_database_csv(in);
    }
    catch (const FormatError &e)
    {
        return e.row();
    }
    return 9999;
}
} // namespace

TEST(Config, ShippedDefaultMatchesBuiltIn)
{
    EXPECT_EQ(load_config_file(RISFP_SOURCE_DIR "/configs/default.yaml"), RunConfig{});
}

TEST(Config, MissingKeysKeepDefaults)
{
    RunConfig c = load_config_string("seed: 9\nris:\n  rows: 5\n  cols: 5\n");
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.ris.rows, 5);
    EXPECT_EQ(c.tx.antennas, 4);
    EXPECT_EQ(load_config_string(""), RunConfig{});
}

TEST(Config, UnknownKeyReportsPathAndLine)
{
    std::string y = "room:\n  length_m: 20\n  colour: red\n";
    EXPECT_EQ(error_key(y), "room.colour");
    EXPECT_EQ(error_line(y), 3);
    EXPECT_EQ(error_key("bogus: 1\n"), "bogus");
}

TEST(Config, TypeErrors)
{
    std::string y = "seed: 1\nmeasurements:\n  count: many\n";
    EXPECT_EQ(error_key(y), "measurements.count");
    EXPECT_EQ(error_line(y), 3);
    EXPECT_EQ(error_key("tx:\n  position_m: [1, 2]\n"), "tx.position_m");
    EXPECT_EQ(error_key("ris:\n  enabled: sometimes\n"), "ris.enabled");
    EXPECT_EQ(error_key("room: 4\n"), "room");
}

TEST(Config, SyntaxErrorCarriesLine)
{
    EXPECT_EQ(error_line("room:\n  length_m: [1, 2\nseed: 3\n"), 3);
}

TEST(Config, ValidationFailures)
{
    EXPECT_EQ(error_key("tx:\n  antennas: 0\n"), "tx.antennas");
    EXPECT_EQ(error_key("trends:\n  ris_units: [25, 30]\n"), "trends.ris_units");
    EXPECT_EQ(error_key("survey:\n  spacing_m: -0.2\n"), "survey.spacing_m");
    EXPECT_EQ(error_key("tx:\n  pattern: dipole\n"), "tx.pattern");
    EXPECT_NE(error_key("tx:\n  position_m: [30, 10, 3]\n"), "<none>");
    EXPECT_NE(error_key("ris:\n  row_vector: [1, 0, 0]\n"), "<none>");
    EXPECT_NE(error_key("evaluation:\n  train_fraction: 1.0\n"), "<none>");
}

TEST(Config, JsonEchoLoadsBack)
{
    RunConfig c;
    c.seed = 42;
    c.ris.rows = c.ris.cols = 7;
    c.tx.pattern = "omni";
    c.clusters.double_bounce.azimuth_deg = {200.0, 300.0};
    c.trends.ris_units = {49};
    c.measurements.rss_noise_db = 0.5;
    EXPECT_EQ(load_config_string(to_json(c).dump(2)), c);
    EXPECT_NE(config_digest(c), config_digest(RunConfig{}));
    EXPECT_EQ(config_digest(c), config_digest(load_config_string(to_json(c).dump())));
}

TEST(Config, SceneConversion)
{
    RunConfig c;
    Scene s = make_scene(c);
    EXPECT_NEAR(s.wavelength(), 299792458.0 / 5.2e9, 1e-15);
    EXPECT_EQ(s.ris.units(), 400u);
    EXPECT_NEAR(s.ris.unit_length, s.wavelength() / 2, 1e-15);
    EXPECT_EQ(s.tx.antennas, 4u);
    auto st = make_consistency_settings(c);
    EXPECT_NEAR(st.clusters.double_bounce.azimuth.lo, deg_to_rad(225.0), 1e-15);
    EXPECT_NEAR(st.clusters.z_max, 3.4, 1e-12);
    EXPECT_NEAR(st.clusters.z_min, 0.1, 1e-12);
    EXPECT_EQ(make_survey_grid(c).size(), 2500u);
    EXPECT_NEAR(transmit_power_mw(c), 10.0, 1e-12);
}

TEST(Config, Cases)
{
    EXPECT_EQ(parse_case("B"), SimulationCase::b);
    EXPECT_EQ(parse_case("c"), SimulationCase::c);
    EXPECT_THROW(parse_case("D"), std::invalid_argument);
    RunConfig b = with_case(RunConfig{}, SimulationCase::b), cc = with_case(RunConfig{}, SimulationCase::c);
    EXPECT_FALSE(b.ris.enabled);
    EXPECT_TRUE(b.consistency.enabled);
    EXPECT_TRUE(cc.ris.enabled);
    EXPECT_FALSE(cc.consistency.enabled);
    EXPECT_EQ(case_letter(SimulationCase::a), 'A');
}

TEST(DatabaseCsv, RoundTrip)
{
    FingerprintDb db;
    db.measurements = 2;
    db.records.push_back({{5.1, 0.1, 1.0}, {-41.123456, -200.0}});
    db.records.push_back({{5.3, 0.1, 1.0}, {-39.5, 3.25}});
    std::ostringstream os;
    write_database_csv(os, db);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "x,y,z,rss_1,rss_2");
    std::istringstream in(os.str());
    auto back = read_database_csv(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back.measurements, 2u);
    for (std::size_t i = 0; i < 2; ++i)
    {
        EXPECT_NEAR(back.records[i].position.x, db.records[i].position.x, 1e-12);
        for (std::size_t n = 0; n < 2; ++n)
            EXPECT_NEAR(back.records[i].rss[n], db.records[i].rss[n], 5e-7);
    }
}

TEST(DatabaseCsv, RowNumberedErrors)
{
    std::string head = "x,y,z,rss_1,rss_2\n";
    EXPECT_EQ(format_row(head + "1,2,1,-40,-41\n1,2,1,-40\n"), 3u);
    EXPECT_EQ(format_row(head + "1,2,1,-40,-41\n1,2,1,abc,-41\n"), 3u);
    EXPECT_EQ(format_row(head + "1,2,1,-40,-41,-42\n"), 2u);
    EXPECT_EQ(format_row("x,y,z,rss_1,rss_3\n1,2,1,-40,-41\n"), 1u);
    EXPECT_EQ(format_row("a,b,c\n"), 1u);
    EXPECT_EQ(format_row(""), 1u);
    EXPECT_EQ(format_row(head), 0u);
    EXPECT_EQ(format_row(head + "1,2,1,-40,-41\n\n1,2,1,-40,-41\n"), 3u);
    EXPECT_EQ(format_row(head + "1,2,1,-40,-41\n"), 9999u);
}

TEST(Io, NumberFormatting)
{
    EXPECT_EQ(fixed6(-36.76785), "-36.767850");
    EXPECT_EQ(fixed6(0.0), "0.000000");
    EXPECT_EQ(shortest(0.1), "0.1");
}

TEST(Io, TimestampFollowsEnvironment)
{
    ::unsetenv("SOURCE_DATE_EPOCH");
    EXPECT_FALSE(reproducible_timestamp());
    ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
    EXPECT_EQ(reproducible_timestamp().value_or(""), "1970-01-02T00:00:00Z");
    ::unsetenv("SOURCE_DATE_EPOCH");
}

TEST(Pipeline, RegenerationIsByteIdentical)
{
    auto a = scratch("regen_a"), b = scratch("regen_b");
    GenerateOptions opts;
    opts.emit_maps = opts.emit_radiomaps = true;
    auto out_a = run_generate(small_config(), 5, a, opts);
    auto out_b = run_generate(small_config(), 5, b, opts);
    ASSERT_EQ(out_a.files.size(), out_b.files.size());
    for (std::size_t i = 0; i < out_a.files.size(); ++i)
    {
        EXPECT_EQ(out_a.files[i].filename(), out_b.files[i].filename());
        EXPECT_EQ(slurp(out_a.files[i]), slurp(out_b.files[i])) << out_a.files[i];
    }
    EXPECT_TRUE(fs::exists(a / "maps" / "los.csv"));
    EXPECT_TRUE(fs::exists(a / "radiomaps" / "rss_4.csv"));
    auto meta = nlohmann::json::parse(slurp(a / "metadata.json"));
    EXPECT_EQ(meta["seed"], 5);
    EXPECT_EQ(meta["case"], "A");
    EXPECT_TRUE(meta["generated_at"].is_null());
    EXPECT_EQ(meta["database"]["fnv1a64"], digest_hex(slurp(a / "database.csv")));
    EXPECT_EQ(load_config_string(meta["config"].dump()), [] {
        RunConfig c = small_config();
        c.seed = 5;
        return c;
    }());
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Pipeline, SeedsDiffer)
{
    auto a = scratch("seed_a"), b = scratch("seed_b");
    run_generate(small_config(), 1, a);
    run_generate(small_config(), 2, b);
    EXPECT_NE(slurp(a / "database.csv"), slurp(b / "database.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Pipeline, CaseBIgnoresRisSize)
{
    RunConfig small = small_config(), big = small_config();
    small.ris.rows = small.ris.cols = 5;
    GenerateOptions opts;
    opts.sim_case = SimulationCase::b;
    auto a = scratch("b_small"), b = scratch("b_big");
    run_generate(small, 3, a, opts);
    run_generate(big, 3, b, opts);
    EXPECT_EQ(slurp(a / "database.csv"), slurp(b / "database.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Pipeline, CaseCWritesConditionsOnly)
{
    auto dir = scratch("case_c");
    GenerateOptions opts;
    opts.sim_case = SimulationCase::c;
    opts.emit_maps = true;
    run_generate(small_config(), 3, dir, opts);
    EXPECT_TRUE(fs::exists(dir / "maps" / "conditions.csv"));
    EXPECT_FALSE(fs::exists(dir / "maps" / "los.csv"));
    fs::remove_all(dir);
}

TEST(Pipeline, EvalReadsGeneratedDatabase)
{
    auto dir = scratch("eval");
    auto gen = run_generate(small_config(), 8, dir);
    auto rep = run_eval(dir / "database.csv", 3, 8);
    EXPECT_EQ(rep.train_size, 80u);
    EXPECT_EQ(rep.errors.size(), 20u);
    EXPECT_TRUE(std::isfinite(rep.rmse));
    auto js = nlohmann::json::parse(slurp(dir / "eval_report.json"));
    EXPECT_NEAR(js["rmse_m"].get<double>(), rep.rmse, 1e-12);
    std::string errs = slurp(dir / "eval_errors.csv");
    EXPECT_EQ(std::count(errs.begin(), errs.end(), '\n'), 21);
    EXPECT_THROW(run_eval(dir / "database.csv", 81, 8), std::invalid_argument);
    EXPECT_THROW(run_eval(dir / "missing.csv", 3, 8), std::runtime_error);
    fs::remove_all(dir);
}

TEST(Pipeline, TrendTablesOnATinySweep)
{
    RunConfig c = small_config();
    c.survey.spacing_m = 2.0;
    c.ris.rows = c.ris.cols = 3;
    c.trends.measurement_counts = {1, 4};
    c.trends.ris_units = {4, 9};
    c.evaluation.trend_k = {1, 3};
    auto res = compute_trends(c, {1, 2, 3});
    EXPECT_EQ(res.k_values, (std::vector<std::size_t>{1, 3}));
    // 3 cases x 2 N x 2 I, three seeds plus a median row each
    EXPECT_EQ(res.rows.size(), 48u);
    std::vector<double> per_seed;
    for (const auto &r : res.rows)
        if (r.seed && r.sim_case == SimulationCase::a && r.measurements == 4 && r.ris_units == 9)
            per_seed.push_back(r.rmse[1]);
    ASSERT_EQ(per_seed.size(), 3u);
    EXPECT_EQ(res.median_rmse(SimulationCase::a, 4, 9, 3), median(per_seed));
    EXPECT_EQ(res.median_rmse(SimulationCase::b, 4, 4, 1), res.median_rmse(SimulationCase::b, 4, 9, 1));
    EXPECT_THROW(res.median_rmse(SimulationCase::a, 4, 9, 5), std::out_of_range);
    EXPECT_EQ(res.power_measurements, 4u);
    EXPECT_NO_THROW(res.median_power(9));
    EXPECT_NE(trends_markdown(res).find("| A |"), std::string::npos);
    EXPECT_EQ(median({3.0, 1.0, 2.0, 10.0}), 2.5);
}
