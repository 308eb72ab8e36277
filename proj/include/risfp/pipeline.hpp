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

#include "config.hpp"
#include "fingerprint.hpp"
#include "io.hpp"
#include "localize.hpp"
#include "spatial_maps.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace risfp
{

namespace fs = std::filesystem;

struct GenerateOptions
{
    SimulationCase sim_case = SimulationCase::a;
    bool emit_maps = false;
    bool emit_radiomaps = false;
};

struct GenerateOutput
{
    FingerprintDb db;
    PathPowerSummary powers;
    std::vector<fs::path> files;
};

// Scene, settings, grid and local conditions for one run; reused across plans
struct PreparedRun
{
    RunConfig config; // case and seed applied
    Scene scene;
    ConsistencySettings settings;
    SurveyGrid grid;
    std::optional<ConsistencyMaps> maps; // absent without spatial consistency
    std::vector<LocalConditions> conditions;
};

inline PreparedRun prepare_run(const RunConfig &cfg, std::uint64_t seed, SimulationCase sim_case)
{
    PreparedRun run;
    run.config = with_case(cfg, sim_case);
    run.config.seed = seed;
    run.scene = make_scene(run.config);
    run.settings = make_consistency_settings(run.config);
    run.grid = make_survey_grid(run.config);
    ConsistencyMaps seed_only;
    seed_only.seed = seed;
    if (run.config.consistency.enabled)
        run.maps = build_consistency_maps(run.scene, run.settings, seed);
    run.conditions = survey_conditions(run.scene, run.settings, run.maps ? *run.maps : seed_only, run.grid,
                                       run.config.consistency.enabled);
    return run;
}

inline GenerationOptions generation_options(const RunConfig &cfg)
{
    GenerationOptions opt;
    opt.p0_mw = transmit_power_mw(cfg);
    opt.rss_noise_db = cfg.measurements.rss_noise_db;
    opt.seed = cfg.seed;
    return opt;
}

inline nlohmann::ordered_json design_flags(const RunConfig &cfg)
{
    return {{"rss_tap_sum", "coherent narrowband"},
            {"transmit_power_unit", "mW"},
            {"zero_field_rss_dbm", zero_field_rss_dbm},
            {"beamformer", "uniform"},
            {"sweep_phase_reference", "tx array center"},
            {"sweep_targets", "floor(sqrt N) rows by ceil(N / rows) columns over the survey area, row-major"},
            {"rss_noise_db", cfg.measurements.rss_noise_db},
            {"ris_enabled", cfg.ris.enabled},
            {"spatial_consistency", cfg.consistency.enabled},
            {"condition_map_correlation_m", cfg.consistency.sf_corr_distance_m},
            {"condition_map_marginal", "standard normal transformed to uniform"},
            {"los_probability", "InH-Office, Rx height"},
            {"kernel", "truncated exponential, radius 4 correlation distances, zero padding"},
            {"map_normalization", "sample standard deviation, no centering"},
            {"ris_unit_gain_in_amplitude", "sqrt(G_max cos(incidence) * G_max cos(reflection))"},
            {"laplace_scale", "spread / sqrt(2)"},
            {"laplace_clip", "mean +- pi/2"},
            {"cluster_count", "single-bounce redraws zero Poisson counts, double-bounce may be empty"},
            {"scatterer_gain", "circular complex Gaussian, unit variance, fixed per cluster-map cell"},
            {"scatterer_height_limit", "elevation clamped at fixed cluster distance"},
            {"cluster_distance_range_m", "reference distance to anchor-Rx distance"},
            {"random_engine", "mt19937_64 with substreams keyed by seed, tag and index"}};
}

inline std::string database_csv(const FingerprintDb &db)
{
    std::ostringstream os;
    write_database_csv(os, db);
    return os.str();
}

inline GenerateOutput run_generate(const RunConfig &cfg, std::uint64_t seed, const fs::path &out_dir,
                                   const GenerateOptions &opts = {})
{
    PreparedRun run = prepare_run(cfg, seed, opts.sim_case);
    auto plan = build_plan(run.scene, run.grid, std::size_t(run.config.measurements.count));
    auto result = generate_databases(run.scene, run.conditions, std::span(&plan, 1), run.grid,
                                     generation_options(run.config));

    GenerateOutput out;
    out.db = std::move(result.databases.front());
    out.powers = result.powers.front();
    out.db.provenance.seed = seed;
    out.db.provenance.config_digest = config_digest(run.config);
    out.db.provenance.generated_at = reproducible_timestamp();

    auto emit = [&](const fs::path &rel, const std::string &text) {
        write_text_file(out_dir / rel, text);
        out.files.push_back(out_dir / rel);
    };

    std::string csv = database_csv(out.db);
    emit("database.csv", csv);

    using J = nlohmann::ordered_json;
    J powers;
    for (auto k : all_path_kinds)
        powers[std::string(to_string(k))] = {{"mean_mw", out.powers.mean_mw[std::size_t(k)]},
                                             {"mean_db", out.powers.db(k)}};
    J targets = J::array();
    for (const auto &t : plan.targets)
        targets.push_back({t.x, t.y, t.z});

    if (opts.emit_maps)
    {
        auto fmt_flag = [](std::uint8_t v) { return v ? std::string("1") : std::string("0"); };
        auto fmt_val = [](double v) { return fixed6(v); };
        if (run.maps)
        {
            const auto &m = *run.maps;
            std::ostringstream los, vlos, sfl, sfn;
            write_grid_csv(los, m.los, fmt_flag);
            write_grid_csv(vlos, m.vlos, fmt_flag);
            write_grid_csv(sfl, m.sf_los, fmt_val);
            write_grid_csv(sfn, m.sf_nlos, fmt_val);
            emit("maps/los.csv", los.str());
            emit("maps/vlos.csv", vlos.str());
            emit("maps/sf_los.csv", sfl.str());
            emit("maps/sf_nlos.csv", sfn.str());
            J desc = {{"seed", seed},
                      {"los", grid_descriptor(m.los, "los_condition", "flag")},
                      {"vlos", grid_descriptor(m.vlos, "vlos_condition", "flag")},
                      {"sf_los", grid_descriptor(m.sf_los, "shadow_fading_los", "dB")},
                      {"sf_nlos", grid_descriptor(m.sf_nlos, "shadow_fading_nlos", "dB")}};
            emit("maps/maps.json", desc.dump(2) + "\n");
            emit("maps/clusters.json", cluster_map_json(m.clusters).dump(2) + "\n");
        }
        // local state actually seen by every survey position, available in every case
        std::ostringstream cond;
        cond << "x,y,z,los,vlos,sf_los_db,sf_nlos_db,sb_clusters,sb_scatterers,db_clusters,db_scatterers\n";
        auto positions = run.grid.positions();
        for (std::size_t p = 0; p < positions.size(); ++p)
        {
            const auto &c = run.conditions[p];
            const auto &q = positions[p];
            cond << fixed6(q.x) << ',' << fixed6(q.y) << ',' << fixed6(q.z) << ',' << int(c.los) << ','
                 << int(c.vlos) << ',' << fixed6(c.sf_los) << ',' << fixed6(c.sf_nlos) << ','
                 << c.single_bounce->clusters.size() << ',' << c.single_bounce->scatterer_count() << ','
                 << c.double_bounce->clusters.size() << ',' << c.double_bounce->scatterer_count() << '\n';
        }
        emit("maps/conditions.csv", cond.str());
    }

    if (opts.emit_radiomaps)
    {
        const auto &g = run.grid;
        J desc = {{"x_min_m", g.x_min},       {"y_min_m", g.y_min}, {"spacing_m", g.spacing},
                  {"rows", g.rows()},         {"cols", g.cols()},   {"row_axis", "y"},
                  {"col_axis", "x"},          {"unit", "dBm"},      {"measurements", out.db.measurements}};
        for (std::size_t n = 0; n < out.db.measurements; ++n)
        {
            std::ostringstream os;
            for (std::size_t r = 0; r < g.rows(); ++r)
            {
                for (std::size_t c = 0; c < g.cols(); ++c)
                {
                    if (c)
                        os << ',';
                    os << fixed6(out.db.records[r * g.cols() + c].rss[n]);
                }
                os << '\n';
            }
            emit("radiomaps/rss_" + std::to_string(n + 1) + ".csv", os.str());
        }
        emit("radiomaps/radiomaps.json", desc.dump(2) + "\n");
    }

    J meta;
    meta["software"] = {{"name", "risfp"}, {"version", version}};
    meta["seed"] = seed;
    meta["case"] = std::string(1, case_letter(opts.sim_case));
    meta["config_digest"] = out.db.provenance.config_digest;
    meta["generated_at"] = out.db.provenance.generated_at ? J(*out.db.provenance.generated_at) : J(nullptr);
    meta["database"] = {{"file", "database.csv"},
                        {"records", out.db.size()},
                        {"measurements", out.db.measurements},
                        {"fnv1a64", digest_hex(csv)}};
    meta["sweep_targets_m"] = std::move(targets);
    meta["path_power"] = std::move(powers);
    meta["design_decisions"] = design_flags(run.config);
    meta["config"] = to_json(run.config);
    emit("metadata.json", meta.dump(2) + "\n");
    return out;
}

inline EvalReport run_eval(const fs::path &db_path, std::size_t k, std::uint64_t split_seed,
                           const std::optional<fs::path> &out_dir = std::nullopt, double train_fraction = 0.8)
{
    FingerprintDb db = read_database_file(db_path);
    if (db.size() < 2)
        throw FormatError(0, "database needs at least two records to split");
    SplitSpec spec;
    spec.train_fraction = train_fraction;
    spec.seed = split_seed;
    auto train_size = std::size_t(std::floor(train_fraction * double(db.size())));
    if (k < 1 || k > std::max<std::size_t>(train_size, 1))
        throw std::invalid_argument("K must lie between 1 and the training set size (" + std::to_string(train_size) +
                                    ").");
    EvalReport rep = evaluate(db, spec, k);
    fs::path dir = out_dir ? *out_dir : db_path.parent_path();
    write_text_file(dir / "eval_report.json", eval_report_json(rep, db_path.filename().string()).dump(2) + "\n");
    std::ostringstream os;
    write_errors_csv(os, rep);
    write_text_file(dir / "eval_errors.csv", os.str());
    return rep;
}

struct TrendRow
{
    SimulationCase sim_case = SimulationCase::a;
    std::size_t measurements = 0;
    std::size_t ris_units = 0;
    std::optional<std::uint64_t> seed; // empty for median rows
    std::vector<double> rmse;          // one per K in TrendResult::k_values
};

struct PowerRow
{
    std::size_t ris_units = 0;
    std::optional<std::uint64_t> seed;
    std::array<double, 4> power_db{}; // LoS, VLoS, SB, DB
};

struct TrendResult
{
    std::vector<std::size_t> k_values;
    std::vector<TrendRow> rows;        // per seed, then median rows
    std::vector<PowerRow> power_rows;  // case A at the configured N, per seed then medians
    std::size_t power_measurements = 0;

    double median_rmse(SimulationCase c, std::size_t n, std::size_t units, std::size_t k) const
    {
        auto kit = std::find(k_values.begin(), k_values.end(), k);
        if (kit == k_values.end())
            throw std::out_of_range("K was not part of the sweep.");
        for (const auto &r : rows)
            if (!r.seed && r.sim_case == c && r.measurements == n && r.ris_units == units)
                return r.rmse[std::size_t(kit - k_values.begin())];
        throw std::out_of_range("Configuration was not part of the sweep.");
    }

    const PowerRow &median_power(std::size_t units) const
    {
        for (const auto &r : power_rows)
            if (!r.seed && r.ris_units == units)
                return r;
        throw std::out_of_range("RIS size was not part of the sweep.");
    }
};

inline double median(std::vector<double> v)
{
    if (v.empty())
        throw std::invalid_argument("Median of an empty set.");
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TrendOptions
{
    std::vector<SimulationCase> cases{SimulationCase::a, SimulationCase::b, SimulationCase::c};
};

// Sweeps case x N x I over the seeds. Each seed also seeds its train/test split.
inline TrendResult compute_trends(const RunConfig &cfg, const std::vector<std::uint64_t> &seeds,
                                  const TrendOptions &opts = {})
{
    if (seeds.empty())
        throw std::invalid_argument("Trend sweep needs at least one seed.");
    TrendResult res;
    for (long k : cfg.evaluation.trend_k)
        res.k_values.push_back(std::size_t(k));
    std::vector<std::size_t> counts;
    for (long n : cfg.trends.measurement_counts)
        counts.push_back(std::size_t(n));
    res.power_measurements = std::size_t(cfg.measurements.count);
    std::vector<std::size_t> plan_counts = counts;
    if (std::find(plan_counts.begin(), plan_counts.end(), res.power_measurements) == plan_counts.end())
        plan_counts.push_back(res.power_measurements);

    for (auto sim_case : opts.cases)
    {
        for (std::uint64_t seed : seeds)
        {
            PreparedRun run = prepare_run(cfg, seed, sim_case);
            for (long units : cfg.trends.ris_units)
            {
                Scene scene = run.scene;
                auto side = std::size_t(std::llround(std::sqrt(double(units))));
                scene.ris.rows = side;
                scene.ris.cols = side;
                std::vector<MeasurementPlan> plans;
                for (auto n : plan_counts)
                    plans.push_back(build_plan(scene, run.grid, n));
                auto gen = generate_databases(scene, run.conditions, plans, run.grid, generation_options(run.config));
                SplitSpec spec;
                spec.train_fraction = cfg.evaluation.train_fraction;
                spec.seed = seed;
                for (std::size_t j = 0; j < counts.size(); ++j)
                {
                    TrendRow row{sim_case, counts[j], std::size_t(units), seed, {}};
                    for (auto k : res.k_values)
                        row.rmse.push_back(evaluate(gen.databases[j], spec, k).rmse);
                    res.rows.push_back(std::move(row));
                }
                if (sim_case == SimulationCase::a)
                {
                    auto pj = std::size_t(std::find(plan_counts.begin(), plan_counts.end(), res.power_measurements) -
                                          plan_counts.begin());
                    PowerRow pr{std::size_t(units), seed, {}};
                    for (auto kind : all_path_kinds)
                        pr.power_db[std::size_t(kind)] = gen.powers[pj].db(kind);
                    res.power_rows.push_back(pr);
                }
            }
        }
    }

    std::vector<TrendRow> medians;
    for (auto sim_case : opts.cases)
        for (long units : cfg.trends.ris_units)
            for (auto n : counts)
            {
                TrendRow m{sim_case, n, std::size_t(units), std::nullopt, {}};
                for (std::size_t kk = 0; kk < res.k_values.size(); ++kk)
                {
                    std::vector<double> v;
                    for (const auto &r : res.rows)
                        if (r.sim_case == sim_case && r.measurements == n && r.ris_units == std::size_t(units))
                            v.push_back(r.rmse[kk]);
                    m.rmse.push_back(median(v));
                }
                medians.push_back(std::move(m));
            }
    res.rows.insert(res.rows.end(), medians.begin(), medians.end());

    std::vector<PowerRow> pmed;
    if (!res.power_rows.empty())
        for (long units : cfg.trends.ris_units)
        {
            PowerRow m{std::size_t(units), std::nullopt, {}};
            for (std::size_t j = 0; j < 4; ++j)
            {
                std::vector<double> v;
                for (const auto &r : res.power_rows)
                    if (r.ris_units == std::size_t(units))
                        v.push_back(r.power_db[j]);
                m.power_db[j] = median(v);
            }
            pmed.push_back(m);
        }
    res.power_rows.insert(res.power_rows.end(), pmed.begin(), pmed.end());
    return res;
}

inline std::string trends_csv(const TrendResult &res)
{
    std::ostringstream os;
    os << "case,N,I,seed";
    for (auto k : res.k_values)
        os << ",rmse_k" << k;
    os << '\n';
    for (const auto &r : res.rows)
    {
        os << case_letter(r.sim_case) << ',' << r.measurements << ',' << r.ris_units << ','
           << (r.seed ? std::to_string(*r.seed) : std::string("median"));
        for (double v : r.rmse)
            os << ',' << fixed6(v);
        os << '\n';
    }
    return os.str();
}

inline std::string power_csv(const TrendResult &res)
{
    std::ostringstream os;
    os << "I,seed,P_LoS,P_VLoS,P_SB,P_DB\n";
    for (const auto &r : res.power_rows)
    {
        os << r.ris_units << ',' << (r.seed ? std::to_string(*r.seed) : std::string("median"));
        for (double v : r.power_db)
            os << ',' << fixed6(v);
        os << '\n';
    }
    return os.str();
}

inline std::string trends_markdown(const TrendResult &res)
{
    auto fmt2 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "# Localization RMSE (m)\n\n| case | N | I | seed |";
    for (auto k : res.k_values)
        os << " K=" << k << " |";
    os << "\n|---|---|---|---|";
    for (std::size_t i = 0; i < res.k_values.size(); ++i)
        os << "---|";
    os << '\n';
    for (const auto &r : res.rows)
    {
        os << "| " << case_letter(r.sim_case) << " | " << r.measurements << " | " << r.ris_units << " | "
           << (r.seed ? std::to_string(*r.seed) : std::string("**median**")) << " |";
        for (double v : r.rmse)
            os << ' ' << fmt2(v) << " |";
        os << '\n';
    }
    if (!res.power_rows.empty())
    {
        os << "\n# Average path power over the survey area (dBm), case A, N=" << res.power_measurements
           << "\n\n| I | seed | P_LoS | P_VLoS | P_SB | P_DB |\n|---|---|---|---|---|---|\n";
        for (const auto &r : res.power_rows)
        {
            os << "| " << r.ris_units << " | " << (r.seed ? std::to_string(*r.seed) : std::string("**median**"))
               << " |";
            for (double v : r.power_db)
                os << ' ' << fmt2(v) << " |";
            os << '\n';
        }
    }
    return os.str();
}

inline TrendResult run_trends(const RunConfig &cfg, const std::vector<std::uint64_t> &seeds, const fs::path &out_dir,
                              const TrendOptions &opts = {})
{
    TrendResult res = compute_trends(cfg, seeds, opts);
    write_text_file(out_dir / "trends.md", trends_markdown(res));
    write_text_file(out_dir / "trends.csv", trends_csv(res));
    write_text_file(out_dir / "path_power.csv", power_csv(res));
    return res;
}

} // namespace risfp
