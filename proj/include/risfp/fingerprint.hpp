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

#include "channel.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "scene.hpp"
#include "spatial_maps.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace risfp
{

// RSS reported when the coherent field is exactly zero, dBm
inline constexpr double zero_field_rss_dbm = -200.0;

// Rectangular area of interest sampled at cell centers, row-major (rows along y)
struct SurveyGrid
{
    double x_min = 5.0, x_max = 15.0;
    double y_min = 0.0, y_max = 10.0;
    double spacing = 0.2;
    double z = 1.0;

    std::size_t cols() const { return cells(x_max - x_min); }
    std::size_t rows() const { return cells(y_max - y_min); }
    std::size_t size() const { return rows() * cols(); }

    Vec3 position(std::size_t index) const
    {
        std::size_t r = index / cols(), c = index % cols();
        return {x_min + (double(c) + 0.5) * spacing, y_min + (double(r) + 0.5) * spacing, z};
    }

    std::vector<Vec3> positions() const
    {
        std::vector<Vec3> out(size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = position(i);
        return out;
    }

    Vec3 center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0, z}; }

  private:
    std::size_t cells(double span) const { return std::size_t(std::ceil(span / spacing - 1e-9)); }
};

inline void validate(const SurveyGrid &g, const Room &room)
{
    if (!(g.spacing > 0.0))
        throw std::invalid_argument("Survey spacing must be positive.");
    if (!(g.x_min < g.x_max) || !(g.y_min < g.y_max))
        throw std::invalid_argument("Survey area must have positive extent.");
    if (g.x_min < 0.0 || g.y_min < 0.0 || g.x_max > room.length || g.y_max > room.width || g.z < 0.0 ||
        g.z > room.height)
        throw std::invalid_argument("Survey area must lie inside the room.");
    // partial last cells put centers beyond x_max/y_max
    Vec3 last = g.position(g.size() - 1);
    if (!room.contains(last))
        throw std::invalid_argument("Survey grid cell centers extend beyond the room.");
}

inline std::vector<cplx> uniform_beamformer(std::size_t antennas)
{
    if (antennas < 1)
        throw std::invalid_argument("Beamformer needs at least one antenna.");
    return std::vector<cplx>(antennas, cplx(1.0 / std::sqrt(double(antennas)), 0.0));
}

// RIS phases that co-phase the Tx-center -> unit -> target paths
inline std::vector<double> ebs_phases(const Scene &scene, const Vec3 &target)
{
    const auto &ris = scene.ris;
    std::vector<double> theta(ris.units());
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        Vec3 unit = ris.position + ris_element_offset(ris, i + 1);
        double cycles = (distance(scene.tx.position, unit) + distance(unit, target)) / scene.wavelength();
        double ph = two_pi * (cycles - std::floor(cycles));
        theta[i] = ph >= two_pi ? 0.0 : ph;
    }
    return theta;
}

struct MeasurementPlan
{
    std::vector<std::vector<cplx>> beamformers; // f^n_T
    std::vector<std::vector<double>> phases;    // theta^n
    std::vector<Vec3> targets;                  // sweep target of each measurement

    std::size_t size() const { return phases.size(); }
};

// Sweep targets at the centers of an a x b tiling of the survey area, a = floor(sqrt N) rows, b = ceil(N / a)
// columns, taken row-major and truncated to N
inline std::vector<Vec3> sweep_targets(const SurveyGrid &aoi, std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("At least one measurement is required.");
    auto a = std::size_t(std::floor(std::sqrt(double(n))));
    while ((a + 1) * (a + 1) <= n) // guard sqrt rounding
        ++a;
    while (a * a > n)
        --a;
    std::size_t b = (n + a - 1) / a;
    double dx = (aoi.x_max - aoi.x_min) / double(b), dy = (aoi.y_max - aoi.y_min) / double(a);
    std::vector<Vec3> targets;
    targets.reserve(n);
    for (std::size_t r = 0; r < a && targets.size() < n; ++r)
        for (std::size_t c = 0; c < b && targets.size() < n; ++c)
            targets.push_back({aoi.x_min + (double(c) + 0.5) * dx, aoi.y_min + (double(r) + 0.5) * dy, aoi.z});
    return targets;
}

inline MeasurementPlan build_plan(const Scene &scene, const SurveyGrid &aoi, std::size_t n)
{
    MeasurementPlan plan;
    plan.targets = sweep_targets(aoi, n);
    for (const auto &t : plan.targets)
    {
        plan.beamformers.push_back(uniform_beamformer(scene.tx.antennas));
        plan.phases.push_back(ebs_phases(scene, t));
    }
    return plan;
}

namespace detail
{
inline cplx beamformed_field(const PathTap &tap, std::span<const cplx> f)
{
    if (tap.amplitudes.size() != f.size())
        throw std::invalid_argument("Beamformer length does not match the Tx antenna count.");
    cplx acc = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m)
        acc += tap.amplitudes[m] * f[m];
    return acc;
}
} // namespace detail

// Coherent narrowband received power in dBm for transmit power p0_mw (milliwatts), symbol x = 1
inline double rss(const Cir &cir, std::span<const cplx> f, double p0_mw)
{
    if (!(p0_mw > 0.0))
        throw std::invalid_argument("Transmit power must be positive.");
    cplx field = 0.0;
    for (const auto &tap : cir.taps)
        field += detail::beamformed_field(tap, f);
    field *= std::sqrt(p0_mw);
    double power = std::norm(field);
    if (power == 0.0)
        return zero_field_rss_dbm;
    return 10.0 * std::log10(power);
}

// Received power of each path family in mW (LoS, VLoS, SB, DB order)
inline std::array<double, 4> path_powers(const Cir &cir, std::span<const cplx> f, double p0_mw)
{
    std::array<cplx, 4> field{};
    for (const auto &tap : cir.taps)
        field[std::size_t(tap.kind)] += detail::beamformed_field(tap, f);
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k)
        out[k] = p0_mw * std::norm(field[k]);
    return out;
}

struct Provenance
{
    std::uint64_t seed = 0;
    std::string config_digest;
    std::optional<std::string> generated_at;
};

struct FingerprintRecord
{
    Vec3 position;
    std::vector<double> rss; // dBm, one per measurement
};

struct FingerprintDb
{
    std::size_t measurements = 0;
    std::vector<FingerprintRecord> records;
    Provenance provenance;

    std::size_t size() const { return records.size(); }
};

// AoI- and measurement-averaged linear power per path family, mW
struct PathPowerSummary
{
    std::array<double, 4> mean_mw{};

    double db(PathKind k) const
    {
        double p = mean_mw[std::size_t(k)];
        return p > 0.0 ? 10.0 * std::log10(p) : zero_field_rss_dbm;
    }
};

struct GenerationOptions
{
    double p0_mw = 10.0;
    double rss_noise_db = 0.0; // additive Gaussian noise on RSS, off by default
    std::uint64_t seed = 0;    // only used for the noise substreams
};

struct GenerationResult
{
    std::vector<FingerprintDb> databases;    // one per plan
    std::vector<PathPowerSummary> powers;    // one per plan
};

// Runs every plan over the survey positions. conditions[p] holds the local state of position p.
// Channel snapshots are built once per position and shared by all plans.
inline GenerationResult generate_databases(const Scene &scene, std::span<const LocalConditions> conditions,
                                           std::span<const MeasurementPlan> plans, const SurveyGrid &grid,
                                           const GenerationOptions &opt)
{
    validate(scene);
    validate(grid, scene.room);
    auto positions = grid.positions();
    if (conditions.size() != positions.size())
        throw std::invalid_argument("Expected one set of local conditions per survey position.");

    std::vector<std::vector<std::vector<cplx>>> phasors(plans.size());
    for (std::size_t k = 0; k < plans.size(); ++k)
    {
        if (plans[k].beamformers.size() != plans[k].size())
            throw std::invalid_argument("Measurement plan needs one beamformer per measurement.");
        for (const auto &theta : plans[k].phases)
        {
            detail::check_phase_length(scene, theta.size());
            phasors[k].push_back(ris_phasors(theta));
        }
    }
    auto tx_ris = detail::tx_ris_element_distances(scene);

    GenerationResult result;
    result.databases.resize(plans.size());
    for (std::size_t k = 0; k < plans.size(); ++k)
    {
        result.databases[k].measurements = plans[k].size();
        result.databases[k].records.resize(positions.size());
        result.databases[k].provenance.seed = opt.seed;
    }
    // per position, per plan power sums; reduced afterwards in index order
    std::vector<std::array<double, 4>> power_sums(positions.size() * plans.size());

    parallel_for(positions.size(), [&](std::size_t p) {
        const Vec3 &rx = positions[p];
        ChannelSnapshot snap(scene, rx, conditions[p], tx_ris);
        std::optional<Stream> noise;
        if (opt.rss_noise_db > 0.0)
            noise.emplace(opt.seed, tags::rss_noise, p);
        for (std::size_t k = 0; k < plans.size(); ++k)
        {
            auto &rec = result.databases[k].records[p];
            rec.position = rx;
            rec.rss.resize(plans[k].size());
            auto &sums = power_sums[p * plans.size() + k];
            for (std::size_t n = 0; n < plans[k].size(); ++n)
            {
                Cir cir = snap.evaluate(phasors[k][n], n);
                const auto &f = plans[k].beamformers[n];
                rec.rss[n] = rss(cir, f, opt.p0_mw);
                if (noise && rec.rss[n] != zero_field_rss_dbm)
                    rec.rss[n] += noise->normal(0.0, opt.rss_noise_db);
                auto pw = path_powers(cir, f, opt.p0_mw);
                for (std::size_t j = 0; j < 4; ++j)
                    sums[j] += pw[j];
            }
        }
    });

    result.powers.resize(plans.size());
    for (std::size_t k = 0; k < plans.size(); ++k)
    {
        auto &mean = result.powers[k].mean_mw;
        for (std::size_t p = 0; p < positions.size(); ++p)
            for (std::size_t j = 0; j < 4; ++j)
                mean[j] += power_sums[p * plans.size() + k][j];
        double count = double(positions.size()) * double(plans[k].size());
        for (auto &v : mean)
            v /= count;
    }
    return result;
}

// Local conditions for every survey position, from the maps or, without spatial consistency, drawn per position
inline std::vector<LocalConditions> survey_conditions(const Scene &scene, const ConsistencySettings &settings,
                                                      const ConsistencyMaps &maps, const SurveyGrid &grid,
                                                      bool spatially_consistent)
{
    auto positions = grid.positions();
    std::vector<LocalConditions> out(positions.size());
    for (std::size_t p = 0; p < positions.size(); ++p)
        out[p] = spatially_consistent ? conditions_at(maps, positions[p])
                                      : iid_conditions(scene, settings, positions[p], maps.seed, p);
    return out;
}

inline FingerprintDb generate_database(const Scene &scene, const ConsistencyMaps &maps, const MeasurementPlan &plan,
                                       const SurveyGrid &grid, double p0_mw)
{
    auto positions = grid.positions();
    std::vector<LocalConditions> cond(positions.size());
    for (std::size_t p = 0; p < positions.size(); ++p)
        cond[p] = conditions_at(maps, positions[p]);
    GenerationOptions opt;
    opt.p0_mw = p0_mw;
    opt.seed = maps.seed;
    auto res = generate_databases(scene, cond, std::span(&plan, 1), grid, opt);
    return std::move(res.databases.front());
}

} // namespace risfp
