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

#include "risfp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace
{

enum ExitCode
{
    ok = 0,
    usage = 2,
    invalid_config = 3,
    invalid_input = 4,
    failure = 5
};

int report(int code, std::string_view kind, const std::string &message, const nlohmann::ordered_json &extra = {})
{
    nlohmann::ordered_json j = {{"error", kind}, {"message", message}};
    for (auto it = extra.begin(); it != extra.end(); ++it)
        j[it.key()] = it.value();
    std::cerr << j.dump() << '\n';
    return code;
}

std::uint64_t parse_u64(std::string_view s)
{
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("Seed '" + std::string(s) + "' is not a non-negative integer.");
    return v;
}

// Accepts "7", "1..5" and comma separated mixtures of both
std::vector<std::uint64_t> parse_seeds(const std::vector<std::string> &args)
{
    std::vector<std::uint64_t> out;
    for (const auto &arg : args)
    {
        std::string_view rest = arg;
        while (!rest.empty())
        {
            auto comma = rest.find(',');
            auto item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
            auto dots = item.find("..");
            if (dots == std::string_view::npos)
            {
                out.push_back(parse_u64(item));
                continue;
            }
            auto lo = parse_u64(item.substr(0, dots)), hi = parse_u64(item.substr(dots + 2));
            if (hi < lo || hi - lo > 100000)
                throw std::invalid_argument("Seed range '" + std::string(item) + "' is empty or too long.");
            for (auto s = lo; s <= hi; ++s)
                out.push_back(s);
        }
    }
    if (out.empty())
        throw std::invalid_argument("No seeds given.");
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RIS-assisted indoor RSS fingerprint database generator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(risfp::version));

    std::string config_path, out_dir = ".", case_name = "A", db_path, eval_out;
    std::uint64_t seed = 1, split_seed = 1;
    std::size_t k = 5;
    bool emit_maps = false, emit_radiomaps = false;
    std::vector<std::string> seed_args;
    unsigned threads = 0;

    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    auto *gen = app.add_subcommand("generate", "Build a fingerprint database for one seed");
    gen->add_option("--config", config_path, "YAML run configuration")->required();
    gen->add_option("--seed", seed, "Master seed")->required();
    gen->add_option("--out", out_dir, "Output directory")->required();
    gen->add_option("--case", case_name, "A: RIS + spatial consistency, B: no RIS, C: no spatial consistency")
        ->check(CLI::IsMember({"A", "B", "C", "a", "b", "c"}));
    gen->add_flag("--emit-maps", emit_maps, "Write condition, shadow-fading and cluster maps");
    gen->add_flag("--emit-radiomaps", emit_radiomaps, "Write one RSS grid per measurement");

    auto *ev = app.add_subcommand("eval", "KNN localization accuracy of a database");
    ev->add_option("--db", db_path, "Database CSV")->required();
    ev->add_option("--k", k, "Neighbors")->required();
    ev->add_option("--split-seed", split_seed, "Train/test shuffle seed")->required();
    ev->add_option("--out", eval_out, "Output directory (default: next to the database)");

    auto *tr = app.add_subcommand("trends", "Sweep cases, measurement counts and RIS sizes over seeds");
    tr->add_option("--config", config_path, "YAML run configuration")->required();
    tr->add_option("--seeds", seed_args, "Seeds, e.g. 1..5 or 3,7,9")->required();
    tr->add_option("--out", out_dir, "Output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        return report(usage, "usage", e.what());
    }

    try
    {
        if (threads)
            risfp::worker_threads() = threads;
        if (*gen)
        {
            auto cfg = risfp::load_config_file(config_path);
            risfp::GenerateOptions opts;
            opts.sim_case = risfp::parse_case(case_name);
            opts.emit_maps = emit_maps;
            opts.emit_radiomaps = emit_radiomaps;
            auto out = risfp::run_generate(cfg, seed, out_dir, opts);
            std::cout << "wrote " << out.db.size() << " records x " << out.db.measurements << " measurements to "
                      << (std::filesystem::path(out_dir) / "database.csv").string() << '\n';
        }
        else if (*ev)
        {
            std::optional<std::filesystem::path> dir;
            if (!eval_out.empty())
                dir = eval_out;
            auto rep = risfp::run_eval(db_path, k, split_seed, dir);
            std::cout << "rmse_m " << rep.rmse << " over " << rep.errors.size() << " test records\n";
        }
        else if (*tr)
        {
            auto cfg = risfp::load_config_file(config_path);
            auto seeds = parse_seeds(seed_args);
            auto res = risfp::run_trends(cfg, seeds, out_dir);
            std::cout << risfp::trends_markdown(res);
        }
    }
    catch (const risfp::ConfigError &e)
    {
        nlohmann::ordered_json extra = {{"key", e.key()}};
        if (e.line() > 0)
            extra["line"] = e.line();
        return report(invalid_config, "config", e.what(), extra);
    }
    catch (const risfp::FormatError &e)
    {
        nlohmann::ordered_json extra;
        if (e.row() > 0)
            extra["row"] = e.row();
        return report(invalid_input, "format", e.what(), extra);
    }
    catch (const std::invalid_argument &e)
    {
        return report(invalid_input, "invalid_argument", e.what());
    }
    catch (const std::exception &e)
    {
        return report(failure, "runtime", e.what());
    }
    return ok;
}
