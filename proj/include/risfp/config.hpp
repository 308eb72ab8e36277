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

#pragma once

#include "clusters.hpp"
#include "fingerprint.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "scene.hpp"
#include "spatial_maps.hpp"

#include <yaml-cpp/yaml.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace risfp
{

// Run configuration as written by the user. Key names carry their units; angles are degrees here and
// converted to radians when the scene is built.
struct RunConfig
{
    struct RoomCfg
    {
        double length_m = 20.0, width_m = 20.0, height_m = 3.5;
        bool operator==(const RoomCfg &) const = default;
    } room;

    double frequency_hz = 5.2e9;

    struct TxCfg
    {
        std::array<double, 3> position_m{0.0, 10.0, 3.0};
        long antennas = 4;
        double spacing_lambda = 0.5;
        std::array<double, 3> direction{0.0, 0.0, -1.0};
        std::array<double, 3> normal{1.0, 0.0, 0.0};
        std::string pattern = "cosine";
        double max_gain_dbi = 8.0;
        double power_dbm = 10.0;
        bool operator==(const TxCfg &) const = default;
    } tx;

    struct RisCfg
    {
        bool enabled = true;
        std::array<double, 3> position_m{10.0, 15.0, 3.0};
        long rows = 20, cols = 20;
        double unit_length_lambda = 0.5, unit_width_lambda = 0.5;
        std::array<double, 3> row_vector{0.0, 0.0, 1.0};
        std::array<double, 3> col_vector{1.0, 0.0, 0.0};
        std::array<double, 3> normal{0.0, -1.0, 0.0};
        double reflection_magnitude = 1.0;
        bool operator==(const RisCfg &) const = default;
    } ris;

    struct RxCfg
    {
        double height_m = 1.0;
        std::array<double, 3> normal{0.0, 0.0, 1.0};
        std::string pattern = "omni";
        double max_gain_dbi = 0.0;
        bool operator==(const RxCfg &) const = default;
    } rx;

    struct PropagationCfg
    {
        double n_los = 1.73, n_nlos = 3.19;
        double sigma_los_db = 3.02, sigma_nlos_db = 8.29;
        double d0_m = 1.0, d0_tx_ris_m = 1.0, d0_ris_rx_m = 1.0;
        bool operator==(const PropagationCfg &) const = default;
    } propagation;

    struct ConsistencyCfg
    {
        bool enabled = true;
        double condition_granularity_m = 1.0;
        double sf_granularity_m = 2.0;
        double cluster_granularity_m = 2.5;
        double sf_corr_distance_m = 4.0;
        bool operator==(const ConsistencyCfg &) const = default;
    } consistency;

    struct FamilyCfg
    {
        std::array<double, 2> azimuth_deg{-90.0, 90.0};
        std::array<double, 2> elevation_deg{-45.0, 45.0};
        double azimuth_spread_deg = 5.0, elevation_spread_deg = 5.0;
        bool operator==(const FamilyCfg &) const = default;
    };

    struct ClustersCfg
    {
        double poisson_mean = 1.8;
        long scatterers_min = 1, scatterers_max = 30;
        double z_margin_m = 0.1;
        FamilyCfg single_bounce{};
        FamilyCfg double_bounce{{225.0, 315.0}, {-45.0, 45.0}, 5.0, 5.0};
        bool operator==(const ClustersCfg &) const = default;
    } clusters;

    struct SurveyCfg
    {
        std::array<double, 2> x_m{5.0, 15.0};
        std::array<double, 2> y_m{0.0, 10.0};
        double spacing_m = 0.2;
        bool operator==(const SurveyCfg &) const = default;
    } survey;

    struct MeasurementCfg
    {
        long count = 20;
        double rss_noise_db = 0.0;
        bool operator==(const MeasurementCfg &) const = default;
    } measurements;

    struct EvaluationCfg
    {
        long k = 5;
        double train_fraction = 0.8;
        std::vector<long> trend_k{3, 5, 7};
        bool operator==(const EvaluationCfg &) const = default;
    } evaluation;

    struct TrendsCfg
    {
        std::vector<long> measurement_counts{4, 12, 20};
        std::vector<long> ris_units{25, 100, 225, 400};
        bool operator==(const TrendsCfg &) const = default;
    } trends;

    std::uint64_t seed = 1;

    bool operator==(const RunConfig &) const = default;
};

// Validation or parse failure tied to a configuration key; line is 1-based, 0 when unknown
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, const std::string &message, int line = 0)
        : std::runtime_error(format(key, message, line)), key_(std::move(key)), line_(line)
    {
    }
    const std::string &key() const { return key_; }
    int line() const { return line_; }

  private:
    static std::string format(const std::string &key, const std::string &message, int line)
    {
        std::string s = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
        return s + (key.empty() ? message : key + ": " + message);
    }
    std::string key_;
    int line_;
};

namespace detail
{
using LineIndex = std::map<std::string, int>;

class ConfigSection
{
  public:
    ConfigSection(YAML::Node node, std::string path, LineIndex &lines) : node_(std::move(node)), path_(std::move(path)), lines_(lines)
    {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ConfigError(path_, "expected a mapping", line_of(node_));
    }

    template <typename T>
    void get(const std::string &key, T &out)
    {
        used_.insert(key);
        if (!node_ || !node_.IsMap())
            return;
        YAML::Node v = node_[key];
        if (!v)
            return;
        std::string full = join(key);
        lines_[full] = line_of(v);
        try
        {
            read(v, out, full);
        }
        catch (const YAML::Exception &)
        {
            throw ConfigError(full, "value has the wrong type", line_of(v));
        }
    }

    ConfigSection sub(const std::string &key)
    {
        used_.insert(key);
        YAML::Node v = (node_ && node_.IsMap()) ? node_[key] : YAML::Node();
        if (v)
            lines_[join(key)] = line_of(v);
        return ConfigSection(v, join(key), lines_);
    }

    void finish() const
    {
        if (!node_ || !node_.IsMap())
            return;
        for (const auto &kv : node_)
        {
            auto key = kv.first.as<std::string>();
            if (!used_.count(key))
                throw ConfigError(join(key), "unknown key", line_of(kv.first));
        }
    }

    static int line_of(const YAML::Node &n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

  private:
    std::string join(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    static void read(const YAML::Node &v, double &out, const std::string &) { out = v.as<double>(); }
    static void read(const YAML::Node &v, long &out, const std::string &) { out = v.as<long>(); }
    static void read(const YAML::Node &v, bool &out, const std::string &) { out = v.as<bool>(); }
    static void read(const YAML::Node &v, std::string &out, const std::string &) { out = v.as<std::string>(); }
    static void read(const YAML::Node &v, std::uint64_t &out, const std::string &) { out = v.as<std::uint64_t>(); }

    template <std::size_t N>
    static void read(const YAML::Node &v, std::array<double, N> &out, const std::string &key)
    {
        if (!v.IsSequence() || v.size() != N)
            throw ConfigError(key, "expected a list of " + std::to_string(N) + " numbers", line_of(v));
        for (std::size_t i = 0; i < N; ++i)
            out[i] = v[i].as<double>();
    }

    static void read(const YAML::Node &v, std::vector<long> &out, const std::string &key)
    {
        if (!v.IsSequence())
            throw ConfigError(key, "expected a list of integers", line_of(v));
        out.clear();
        for (const auto &e : v)
            out.push_back(e.as<long>());
    }

    YAML::Node node_;
    std::string path_;
    LineIndex &lines_;
    std::set<std::string> used_;
};

inline void read_family(ConfigSection s, RunConfig::FamilyCfg &f)
{
    s.get("azimuth_deg", f.azimuth_deg);
    s.get("elevation_deg", f.elevation_deg);
    s.get("azimuth_spread_deg", f.azimuth_spread_deg);
    s.get("elevation_spread_deg", f.elevation_spread_deg);
    s.finish();
}

inline Vec3 to_vec(const std::array<double, 3> &a) { return {a[0], a[1], a[2]}; }

inline void validate_config(const RunConfig &c, const LineIndex &lines)
{
    auto fail = [&](const std::string &key, const std::string &msg) {
        auto it = lines.find(key);
        throw ConfigError(key, msg, it == lines.end() ? 0 : it->second);
    };
    auto positive = [&](double v, const std::string &key) {
        if (!(v > 0.0) || !std::isfinite(v))
            fail(key, "must be positive");
    };
    auto non_negative = [&](double v, const std::string &key) {
        if (!(v >= 0.0) || !std::isfinite(v))
            fail(key, "must be non-negative");
    };
    auto unit = [&](const std::array<double, 3> &v, const std::string &key) {
        if (std::abs(norm(to_vec(v)) - 1.0) > orientation_tolerance)
            fail(key, "must be a unit vector");
    };
    auto orthogonal = [&](const std::array<double, 3> &a, const std::array<double, 3> &b, const std::string &key) {
        if (std::abs(dot(to_vec(a), to_vec(b))) > orientation_tolerance)
            fail(key, "must be orthogonal to its companion orientation vector");
    };
    auto inside = [&](const std::array<double, 3> &p, const std::string &key) {
        Room r{c.room.length_m, c.room.width_m, c.room.height_m};
        if (!r.contains(to_vec(p)))
            fail(key, "lies outside the room");
    };
    auto pattern = [&](const std::string &kind, double gain_dbi, const std::string &key) {
        if (kind != "omni" && kind != "cosine")
            fail(key + ".pattern", "must be 'omni' or 'cosine'");
        if (kind == "cosine" && !(db_gain_to_linear(gain_dbi) >= 2.0))
            fail(key + ".max_gain_dbi", "cosine pattern needs at least 3.0103 dBi (linear gain 2)");
    };

    positive(c.room.length_m, "room.length_m");
    positive(c.room.width_m, "room.width_m");
    positive(c.room.height_m, "room.height_m");
    positive(c.frequency_hz, "carrier.frequency_hz");

    inside(c.tx.position_m, "tx.position_m");
    if (c.tx.antennas < 1)
        fail("tx.antennas", "must be at least 1");
    positive(c.tx.spacing_lambda, "tx.spacing_lambda");
    unit(c.tx.direction, "tx.direction");
    unit(c.tx.normal, "tx.normal");
    orthogonal(c.tx.direction, c.tx.normal, "tx.normal");
    pattern(c.tx.pattern, c.tx.max_gain_dbi, "tx");
    if (!std::isfinite(c.tx.power_dbm))
        fail("tx.power_dbm", "must be finite");

    inside(c.ris.position_m, "ris.position_m");
    if (c.ris.rows < 1)
        fail("ris.rows", "must be at least 1");
    if (c.ris.cols < 1)
        fail("ris.cols", "must be at least 1");
    positive(c.ris.unit_length_lambda, "ris.unit_length_lambda");
    positive(c.ris.unit_width_lambda, "ris.unit_width_lambda");
    unit(c.ris.row_vector, "ris.row_vector");
    unit(c.ris.col_vector, "ris.col_vector");
    unit(c.ris.normal, "ris.normal");
    orthogonal(c.ris.row_vector, c.ris.col_vector, "ris.col_vector");
    orthogonal(c.ris.row_vector, c.ris.normal, "ris.normal");
    orthogonal(c.ris.col_vector, c.ris.normal, "ris.normal");
    if (!(c.ris.reflection_magnitude > 0.0 && c.ris.reflection_magnitude <= 1.0))
        fail("ris.reflection_magnitude", "must lie in (0, 1]");

    if (!(c.rx.height_m >= 0.0 && c.rx.height_m <= c.room.height_m))
        fail("rx.height_m", "must lie within the room height");
    unit(c.rx.normal, "rx.normal");
    pattern(c.rx.pattern, c.rx.max_gain_dbi, "rx");

    positive(c.propagation.n_los, "propagation.n_los");
    positive(c.propagation.n_nlos, "propagation.n_nlos");
    non_negative(c.propagation.sigma_los_db, "propagation.sigma_los_db");
    non_negative(c.propagation.sigma_nlos_db, "propagation.sigma_nlos_db");
    positive(c.propagation.d0_m, "propagation.d0_m");
    positive(c.propagation.d0_tx_ris_m, "propagation.d0_tx_ris_m");
    positive(c.propagation.d0_ris_rx_m, "propagation.d0_ris_rx_m");

    positive(c.consistency.condition_granularity_m, "consistency.condition_granularity_m");
    positive(c.consistency.sf_granularity_m, "consistency.sf_granularity_m");
    positive(c.consistency.cluster_granularity_m, "consistency.cluster_granularity_m");
    positive(c.consistency.sf_corr_distance_m, "consistency.sf_corr_distance_m");

    positive(c.clusters.poisson_mean, "clusters.poisson_mean");
    if (c.clusters.poisson_mean > 500.0)
        fail("clusters.poisson_mean", "must not exceed 500");
    if (c.clusters.scatterers_min < 1)
        fail("clusters.scatterers_min", "must be at least 1");
    if (c.clusters.scatterers_max < c.clusters.scatterers_min)
        fail("clusters.scatterers_max", "must not be below scatterers_min");
    non_negative(c.clusters.z_margin_m, "clusters.z_margin_m");
    if (!(2.0 * c.clusters.z_margin_m < c.room.height_m))
        fail("clusters.z_margin_m", "leaves no room height for clusters");
    for (auto [fam, name] : {std::pair{&c.clusters.single_bounce, "single_bounce"},
                             std::pair{&c.clusters.double_bounce, "double_bounce"}})
    {
        std::string base = std::string("clusters.") + name;
        if (!(fam->azimuth_deg[0] <= fam->azimuth_deg[1]))
            fail(base + ".azimuth_deg", "lower bound exceeds upper bound");
        if (!(fam->elevation_deg[0] <= fam->elevation_deg[1]))
            fail(base + ".elevation_deg", "lower bound exceeds upper bound");
        non_negative(fam->azimuth_spread_deg, base + ".azimuth_spread_deg");
        non_negative(fam->elevation_spread_deg, base + ".elevation_spread_deg");
    }

    positive(c.survey.spacing_m, "survey.spacing_m");
    if (!(c.survey.x_m[0] < c.survey.x_m[1]) || c.survey.x_m[0] < 0.0 || c.survey.x_m[1] > c.room.length_m)
        fail("survey.x_m", "must be an increasing range inside the room");
    if (!(c.survey.y_m[0] < c.survey.y_m[1]) || c.survey.y_m[0] < 0.0 || c.survey.y_m[1] > c.room.width_m)
        fail("survey.y_m", "must be an increasing range inside the room");

    if (c.measurements.count < 1)
        fail("measurements.count", "must be at least 1");
    non_negative(c.measurements.rss_noise_db, "measurements.rss_noise_db");

    if (c.evaluation.k < 1)
        fail("evaluation.k", "must be at least 1");
    if (!(c.evaluation.train_fraction > 0.0 && c.evaluation.train_fraction < 1.0))
        fail("evaluation.train_fraction", "must lie in (0, 1)");
    for (long k : c.evaluation.trend_k)
        if (k < 1)
            fail("evaluation.trend_k", "entries must be at least 1");
    for (long n : c.trends.measurement_counts)
        if (n < 1)
            fail("trends.measurement_counts", "entries must be at least 1");
    for (long i : c.trends.ris_units)
    {
        auto side = long(std::llround(std::sqrt(double(i))));
        if (i < 1 || side * side != i)
            fail("trends.ris_units", "entries must be perfect squares (square panels)");
    }
}
} // namespace detail

inline RunConfig parse_config(const YAML::Node &root)
{
    RunConfig c;
    detail::LineIndex lines;
    detail::ConfigSection top(root, "", lines);

    auto room = top.sub("room");
    room.get("length_m", c.room.length_m);
    room.get("width_m", c.room.width_m);
    room.get("height_m", c.room.height_m);
    room.finish();

    auto carrier = top.sub("carrier");
    carrier.get("frequency_hz", c.frequency_hz);
    carrier.finish();

    auto tx = top.sub("tx");
    tx.get("position_m", c.tx.position_m);
    tx.get("antennas", c.tx.antennas);
    tx.get("spacing_lambda", c.tx.spacing_lambda);
    tx.get("direction", c.tx.direction);
    tx.get("normal", c.tx.normal);
    tx.get("pattern", c.tx.pattern);
    tx.get("max_gain_dbi", c.tx.max_gain_dbi);
    tx.get("power_dbm", c.tx.power_dbm);
    tx.finish();

    auto ris = top.sub("ris");
    ris.get("enabled", c.ris.enabled);
    ris.get("position_m", c.ris.position_m);
    ris.get("rows", c.ris.rows);
    ris.get("cols", c.ris.cols);
    ris.get("unit_length_lambda", c.ris.unit_length_lambda);
    ris.get("unit_width_lambda", c.ris.unit_width_lambda);
    ris.get("row_vector", c.ris.row_vector);
    ris.get("col_vector", c.ris.col_vector);
    ris.get("normal", c.ris.normal);
    ris.get("reflection_magnitude", c.ris.reflection_magnitude);
    ris.finish();

    auto rx = top.sub("rx");
    rx.get("height_m", c.rx.height_m);
    rx.get("normal", c.rx.normal);
    rx.get("pattern", c.rx.pattern);
    rx.get("max_gain_dbi", c.rx.max_gain_dbi);
    rx.finish();

    auto prop = top.sub("propagation");
    prop.get("n_los", c.propagation.n_los);
    prop.get("n_nlos", c.propagation.n_nlos);
    prop.get("sigma_los_db", c.propagation.sigma_los_db);
    prop.get("sigma_nlos_db", c.propagation.sigma_nlos_db);
    prop.get("d0_m", c.propagation.d0_m);
    prop.get("d0_tx_ris_m", c.propagation.d0_tx_ris_m);
    prop.get("d0_ris_rx_m", c.propagation.d0_ris_rx_m);
    prop.finish();

    auto cons = top.sub("consistency");
    cons.get("enabled", c.consistency.enabled);
    cons.get("condition_granularity_m", c.consistency.condition_granularity_m);
    cons.get("sf_granularity_m", c.consistency.sf_granularity_m);
    cons.get("cluster_granularity_m", c.consistency.cluster_granularity_m);
    cons.get("sf_corr_distance_m", c.consistency.sf_corr_distance_m);
    cons.finish();

    auto cl = top.sub("clusters");
    cl.get("poisson_mean", c.clusters.poisson_mean);
    cl.get("scatterers_min", c.clusters.scatterers_min);
    cl.get("scatterers_max", c.clusters.scatterers_max);
    cl.get("z_margin_m", c.clusters.z_margin_m);
    detail::read_family(cl.sub("single_bounce"), c.clusters.single_bounce);
    detail::read_family(cl.sub("double_bounce"), c.clusters.double_bounce);
    cl.finish();

    auto survey = top.sub("survey");
    survey.get("x_m", c.survey.x_m);
    survey.get("y_m", c.survey.y_m);
    survey.get("spacing_m", c.survey.spacing_m);
    survey.finish();

    auto meas = top.sub("measurements");
    meas.get("count", c.measurements.count);
    meas.get("rss_noise_db", c.measurements.rss_noise_db);
    meas.finish();

    auto ev = top.sub("evaluation");
    ev.get("k", c.evaluation.k);
    ev.get("train_fraction", c.evaluation.train_fraction);
    ev.get("trend_k", c.evaluation.trend_k);
    ev.finish();

    auto tr = top.sub("trends");
    tr.get("measurement_counts", c.trends.measurement_counts);
    tr.get("ris_units", c.trends.ris_units);
    tr.finish();

    top.get("seed", c.seed);
    top.finish();

    detail::validate_config(c, lines);
    return c;
}

inline RunConfig load_config_string(const std::string &text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::ParserException &e)
    {
        throw ConfigError("", e.msg, e.mark.line + 1);
    }
    return parse_config(root);
}

inline RunConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open configuration file '" + path + "'.");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_string(ss.str());
}

// Nested JSON echo with the same keys the loader accepts; JSON is valid YAML, so it loads back unchanged
inline nlohmann::ordered_json to_json(const RunConfig &c)
{
    using J = nlohmann::ordered_json;
    auto family = [](const RunConfig::FamilyCfg &f) {
        return J{{"azimuth_deg", f.azimuth_deg},
                 {"elevation_deg", f.elevation_deg},
                 {"azimuth_spread_deg", f.azimuth_spread_deg},
                 {"elevation_spread_deg", f.elevation_spread_deg}};
    };
    J j;
    j["room"] = {{"length_m", c.room.length_m}, {"width_m", c.room.width_m}, {"height_m", c.room.height_m}};
    j["carrier"] = {{"frequency_hz", c.frequency_hz}};
    j["tx"] = {{"position_m", c.tx.position_m}, {"antennas", c.tx.antennas},   {"spacing_lambda", c.tx.spacing_lambda},
               {"direction", c.tx.direction},   {"normal", c.tx.normal},       {"pattern", c.tx.pattern},
               {"max_gain_dbi", c.tx.max_gain_dbi}, {"power_dbm", c.tx.power_dbm}};
    j["ris"] = {{"enabled", c.ris.enabled},
                {"position_m", c.ris.position_m},
                {"rows", c.ris.rows},
                {"cols", c.ris.cols},
                {"unit_length_lambda", c.ris.unit_length_lambda},
                {"unit_width_lambda", c.ris.unit_width_lambda},
                {"row_vector", c.ris.row_vector},
                {"col_vector", c.ris.col_vector},
                {"normal", c.ris.normal},
                {"reflection_magnitude", c.ris.reflection_magnitude}};
    j["rx"] = {{"height_m", c.rx.height_m},
               {"normal", c.rx.normal},
               {"pattern", c.rx.pattern},
               {"max_gain_dbi", c.rx.max_gain_dbi}};
    j["propagation"] = {{"n_los", c.propagation.n_los},
                        {"n_nlos", c.propagation.n_nlos},
                        {"sigma_los_db", c.propagation.sigma_los_db},
                        {"sigma_nlos_db", c.propagation.sigma_nlos_db},
                        {"d0_m", c.propagation.d0_m},
                        {"d0_tx_ris_m", c.propagation.d0_tx_ris_m},
                        {"d0_ris_rx_m", c.propagation.d0_ris_rx_m}};
    j["consistency"] = {{"enabled", c.consistency.enabled},
                        {"condition_granularity_m", c.consistency.condition_granularity_m},
                        {"sf_granularity_m", c.consistency.sf_granularity_m},
                        {"cluster_granularity_m", c.consistency.cluster_granularity_m},
                        {"sf_corr_distance_m", c.consistency.sf_corr_distance_m}};
    j["clusters"] = {{"poisson_mean", c.clusters.poisson_mean},
                     {"scatterers_min", c.clusters.scatterers_min},
                     {"scatterers_max", c.clusters.scatterers_max},
                     {"z_margin_m", c.clusters.z_margin_m},
                     {"single_bounce", family(c.clusters.single_bounce)},
                     {"double_bounce", family(c.clusters.double_bounce)}};
    j["survey"] = {{"x_m", c.survey.x_m}, {"y_m", c.survey.y_m}, {"spacing_m", c.survey.spacing_m}};
    j["measurements"] = {{"count", c.measurements.count}, {"rss_noise_db", c.measurements.rss_noise_db}};
    j["evaluation"] = {{"k", c.evaluation.k},
                       {"train_fraction", c.evaluation.train_fraction},
                       {"trend_k", c.evaluation.trend_k}};
    j["trends"] = {{"measurement_counts", c.trends.measurement_counts}, {"ris_units", c.trends.ris_units}};
    j["seed"] = c.seed;
    return j;
}

inline std::string config_digest(const RunConfig &c)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(c).dump())));
    return buf;
}

inline Scene make_scene(const RunConfig &c)
{
    Scene s;
    double lambda = speed_of_light / c.frequency_hz;
    s.pathloss.wavelength = lambda;
    s.pathloss.n_los = c.propagation.n_los;
    s.pathloss.n_nlos = c.propagation.n_nlos;
    s.pathloss.sigma_los = c.propagation.sigma_los_db;
    s.pathloss.sigma_nlos = c.propagation.sigma_nlos_db;
    s.pathloss.d0 = c.propagation.d0_m;
    s.pathloss.d0_tx_ris = c.propagation.d0_tx_ris_m;
    s.pathloss.d0_ris_rx = c.propagation.d0_ris_rx_m;
    s.room = {c.room.length_m, c.room.width_m, c.room.height_m};
    s.tx.position = detail::to_vec(c.tx.position_m);
    s.tx.antennas = std::size_t(c.tx.antennas);
    s.tx.spacing = c.tx.spacing_lambda * lambda;
    s.tx.direction = detail::to_vec(c.tx.direction);
    s.tx.normal = detail::to_vec(c.tx.normal);
    s.ris.position = detail::to_vec(c.ris.position_m);
    s.ris.rows = std::size_t(c.ris.rows);
    s.ris.cols = std::size_t(c.ris.cols);
    s.ris.unit_length = c.ris.unit_length_lambda * lambda;
    s.ris.unit_width = c.ris.unit_width_lambda * lambda;
    s.ris.row_vector = detail::to_vec(c.ris.row_vector);
    s.ris.col_vector = detail::to_vec(c.ris.col_vector);
    s.ris.normal = detail::to_vec(c.ris.normal);
    s.ris.reflection_magnitude = c.ris.reflection_magnitude;
    s.ris_enabled = c.ris.enabled;
    s.rx_normal = detail::to_vec(c.rx.normal);
    s.rx_height = c.rx.height_m;
    auto pattern = [](const std::string &kind, double dbi) {
        return kind == "cosine" ? PatternSpec::cosine(db_gain_to_linear(dbi)) : PatternSpec::omni();
    };
    s.tx_pattern = pattern(c.tx.pattern, c.tx.max_gain_dbi);
    s.rx_pattern = pattern(c.rx.pattern, c.rx.max_gain_dbi);
    validate(s);
    return s;
}

inline ConsistencySettings make_consistency_settings(const RunConfig &c)
{
    ConsistencySettings s;
    s.condition_granularity = c.consistency.condition_granularity_m;
    s.sf_granularity = c.consistency.sf_granularity_m;
    s.cluster_granularity = c.consistency.cluster_granularity_m;
    s.sf_corr_distance = c.consistency.sf_corr_distance_m;
    auto family = [](const RunConfig::FamilyCfg &f) {
        return FamilyParams{{deg_to_rad(f.azimuth_deg[0]), deg_to_rad(f.azimuth_deg[1])},
                            {deg_to_rad(f.elevation_deg[0]), deg_to_rad(f.elevation_deg[1])},
                            deg_to_rad(f.azimuth_spread_deg),
                            deg_to_rad(f.elevation_spread_deg)};
    };
    s.clusters.poisson_mean = c.clusters.poisson_mean;
    s.clusters.scatterers_min = unsigned(c.clusters.scatterers_min);
    s.clusters.scatterers_max = unsigned(c.clusters.scatterers_max);
    s.clusters.single_bounce = family(c.clusters.single_bounce);
    s.clusters.double_bounce = family(c.clusters.double_bounce);
    s.clusters.z_min = c.clusters.z_margin_m;
    s.clusters.z_max = c.room.height_m - c.clusters.z_margin_m;
    validate(s);
    return s;
}

inline SurveyGrid make_survey_grid(const RunConfig &c)
{
    SurveyGrid g{c.survey.x_m[0], c.survey.x_m[1], c.survey.y_m[0], c.survey.y_m[1], c.survey.spacing_m, c.rx.height_m};
    validate(g, Room{c.room.length_m, c.room.width_m, c.room.height_m});
    return g;
}

inline double transmit_power_mw(const RunConfig &c) { return std::pow(10.0, c.tx.power_dbm / 10.0); }

enum class SimulationCase
{
    a, // RIS and spatial consistency
    b, // no RIS
    c  // no spatial consistency
};

inline SimulationCase parse_case(const std::string &s)
{
    if (s == "A" || s == "a")
        return SimulationCase::a;
    if (s == "B" || s == "b")
        return SimulationCase::b;
    if (s == "C" || s == "c")
        return SimulationCase::c;
    throw std::invalid_argument("Case must be A, B or C.");
}

inline char case_letter(SimulationCase c) { return c == SimulationCase::a ? 'A' : (c == SimulationCase::b ? 'B' : 'C'); }

inline RunConfig with_case(RunConfig c, SimulationCase k)
{
    c.ris.enabled = k != SimulationCase::b;
    c.consistency.enabled = k != SimulationCase::c;
    return c;
}

} // namespace risfp
