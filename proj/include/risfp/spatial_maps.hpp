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
#include "grid_map.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "scene.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace risfp
{

// LoS probability vs 3-D distance (3GPP InH-Office mixed form). Also used for VLoS with the RIS-Rx distance.
inline double los_probability(double d)
{
    if (!(d >= 0.0))
        throw std::invalid_argument("Distance must be non-negative.");
    if (d <= 5.0)
        return 1.0;
    if (d <= 49.0)
        return std::exp(-(d - 5.0) / 70.8);
    return 0.54 * std::exp(-(d - 49.0) / 211.7);
}

// Truncated isotropic exponential kernel h(p, q) = exp(-sqrt(p^2 + q^2) * g / d_co), cut at 4 d_co / g cells
struct ExponentialKernel
{
    struct Tap
    {
        int drow, dcol;
        double weight;
    };
    std::vector<Tap> taps;
    double radius_cells = 0.0;

    ExponentialKernel(double granularity, double corr_distance)
    {
        if (!(granularity > 0.0) || !(corr_distance > 0.0))
            throw std::invalid_argument("Kernel granularity and correlation distance must be positive.");
        radius_cells = 4.0 * corr_distance / granularity;
        int r = int(std::floor(radius_cells));
        for (int i = -r; i <= r; ++i)
            for (int j = -r; j <= r; ++j)
            {
                double rho = std::sqrt(double(i * i + j * j));
                if (rho <= radius_cells)
                    taps.push_back({i, j, std::exp(-rho * granularity / corr_distance)});
            }
    }

    double center() const
    {
        for (const auto &t : taps)
            if (t.drow == 0 && t.dcol == 0)
                return t.weight;
        return 0.0;
    }
};

// Centered convolution with zero padding outside the grid
inline GridMap<double> convolve(const GridMap<double> &in, const ExponentialKernel &kernel)
{
    GridMap<double> out = in;
    const long rows = long(in.rows()), cols = long(in.cols());
    const auto &src = in.values();
    auto &dst = out.values();
    parallel_for(std::size_t(rows), [&](std::size_t r0) {
        long r = long(r0);
        for (long c = 0; c < cols; ++c)
        {
            double acc = 0.0;
            for (const auto &t : kernel.taps)
            {
                long rr = r + t.drow, cc = c + t.dcol;
                if (rr < 0 || rr >= rows || cc < 0 || cc >= cols)
                    continue;
                acc += t.weight * src[std::size_t(rr * cols + cc)];
            }
            dst[std::size_t(r * cols + c)] = acc;
        }
    });
    return out;
}

// Scale the field so its sample standard deviation equals target_std. The mean is left in place.
inline void renormalize(GridMap<double> &map, double target_std)
{
    auto &v = map.values();
    if (target_std == 0.0)
    {
        std::fill(v.begin(), v.end(), 0.0);
        return;
    }
    if (v.size() < 2)
        return; // a single cell holds one unfiltered unit-variance draw
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= double(v.size());
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / double(v.size()));
    if (!(sd > 0.0))
        return;
    double scale = target_std / sd;
    for (double &x : v)
        x *= scale;
}

// i.i.d. N(0, 1) -> exponential filter -> unit sample variance
inline GridMap<double> correlated_gaussian_field(const Room &room, double granularity, double corr_distance,
                                                 Stream &rng)
{
    auto field = GridMap<double>::over(room, granularity);
    for (auto &x : field.values())
        x = rng.normal();
    field = convolve(field, ExponentialKernel(granularity, corr_distance));
    renormalize(field, 1.0);
    return field;
}

// Gaussian -> uniform probability integral transform
inline double gaussian_to_uniform(double v) { return 0.5 * (1.0 + std::erf(v / std::numbers::sqrt2)); }

inline GridMap<double> correlated_uniform_field(const Room &room, double granularity, double corr_distance,
                                                Stream &rng)
{
    auto field = correlated_gaussian_field(room, granularity, corr_distance, rng);
    for (auto &x : field.values())
        x = gaussian_to_uniform(x);
    return field;
}

enum class ConditionKind
{
    los,  // anchored at the Tx
    vlos  // anchored at the RIS
};

using ProbabilityModel = std::function<double(double)>;

// Availability indicator map: 1 where the correlated uniform draw is <= Pr(anchor -> cell center)
inline GridMap<std::uint8_t> gen_condition_map(const Room &room, const Vec3 &anchor, double granularity,
                                               double corr_distance, const ProbabilityModel &probability,
                                               double rx_height, Stream &rng)
{
    auto u = correlated_uniform_field(room, granularity, corr_distance, rng);
    auto map = GridMap<std::uint8_t>::over(room, granularity);
    for (std::size_t r = 0; r < map.rows(); ++r)
        for (std::size_t c = 0; c < map.cols(); ++c)
        {
            double pr = probability(distance(anchor, map.center(r, c, rx_height)));
            map.at(r, c) = u.at(r, c) <= pr ? 1 : 0;
        }
    return map;
}

// Shadow-fading map in dB with sample standard deviation sigma
inline GridMap<double> gen_sf_map(const Room &room, double sigma, double granularity, double corr_distance,
                                  Stream &rng)
{
    if (!(sigma >= 0.0))
        throw std::invalid_argument("Shadow-fading deviation must be non-negative.");
    auto field = GridMap<double>::over(room, granularity);
    for (auto &x : field.values())
        x = rng.normal(0.0, sigma);
    field = convolve(field, ExponentialKernel(granularity, corr_distance));
    renormalize(field, sigma);
    return field;
}

struct CellClusters
{
    ClusterSet single_bounce;
    ClusterSet double_bounce;
};

// Draw both cluster families for one Rx location (or cell center) from a dedicated stream
inline CellClusters sample_cell_clusters(const Scene &scene, const ClusterGenParams &params, const Vec3 &rx,
                                         Stream &rng)
{
    CellClusters cc;
    double d0 = scene.pathloss.d0;
    cc.single_bounce = sample_cluster_set(params, ClusterFamily::single_bounce, scene.tx.position, d0,
                                          distance(scene.tx.position, rx), rng);
    cc.double_bounce = sample_cluster_set(params, ClusterFamily::double_bounce, scene.ris.position, d0,
                                          distance(scene.ris.position, rx), rng);
    return cc;
}

// One independent cluster pair per cell, each cell drawn from substream (seed, "clusters", cell index)
inline GridMap<CellClusters> gen_cluster_map(const Scene &scene, double granularity, const ClusterGenParams &params,
                                             std::uint64_t seed)
{
    auto map = GridMap<CellClusters>::over(scene.room, granularity);
    parallel_for(map.size(), [&](std::size_t idx) {
        Stream rng(seed, tags::clusters, idx);
        auto center = map.center(idx / map.cols(), idx % map.cols(), scene.rx_height);
        map[idx] = sample_cell_clusters(scene, params, center, rng);
    });
    return map;
}

struct ConsistencySettings
{
    double condition_granularity = 1.0; // d'_sc
    double sf_granularity = 2.0;        // d''_sc
    double cluster_granularity = 2.5;   // d'''_sc
    double sf_corr_distance = 4.0;      // d^SF_co, also used for the condition maps
    ClusterGenParams clusters;
};

inline void validate(const ConsistencySettings &s)
{
    if (!(s.condition_granularity > 0.0) || !(s.sf_granularity > 0.0) || !(s.cluster_granularity > 0.0))
        throw std::invalid_argument("Map granularities must be positive.");
    if (!(s.sf_corr_distance > 0.0))
        throw std::invalid_argument("Correlation distance must be positive.");
    validate(s.clusters);
}

struct ConsistencyMaps
{
    std::uint64_t seed = 0;
    GridMap<std::uint8_t> los;
    GridMap<std::uint8_t> vlos;
    GridMap<double> sf_los;
    GridMap<double> sf_nlos;
    GridMap<CellClusters> clusters;
};

inline ConsistencyMaps build_consistency_maps(const Scene &scene, const ConsistencySettings &settings,
                                              std::uint64_t seed)
{
    validate(settings);
    ConsistencyMaps m;
    m.seed = seed;
    Stream los_rng(seed, tags::los_map), vlos_rng(seed, tags::vlos_map);
    Stream sf_los_rng(seed, tags::sf_los), sf_nlos_rng(seed, tags::sf_nlos);
    m.los = gen_condition_map(scene.room, scene.tx.position, settings.condition_granularity, settings.sf_corr_distance,
                              los_probability, scene.rx_height, los_rng);
    m.vlos = gen_condition_map(scene.room, scene.ris.position, settings.condition_granularity,
                               settings.sf_corr_distance, los_probability, scene.rx_height, vlos_rng);
    m.sf_los = gen_sf_map(scene.room, scene.pathloss.sigma_los, settings.sf_granularity, settings.sf_corr_distance,
                          sf_los_rng);
    m.sf_nlos = gen_sf_map(scene.room, scene.pathloss.sigma_nlos, settings.sf_granularity, settings.sf_corr_distance,
                           sf_nlos_rng);
    m.clusters = gen_cluster_map(scene, settings.cluster_granularity, settings.clusters, seed);
    return m;
}

// Large-scale state seen by one Rx position
struct LocalConditions
{
    bool los = true;
    bool vlos = true;
    double sf_los = 0.0;  // dB, LoS and VLoS paths
    double sf_nlos = 0.0; // dB, SB and DB paths
    const ClusterSet *single_bounce = nullptr;
    const ClusterSet *double_bounce = nullptr;
    std::shared_ptr<const CellClusters> owned; // keeps per-position draws alive
};

inline LocalConditions conditions_at(const ConsistencyMaps &maps, const Vec3 &rx)
{
    LocalConditions lc;
    lc.los = query(maps.los, rx) != 0;
    lc.vlos = query(maps.vlos, rx) != 0;
    lc.sf_los = query(maps.sf_los, rx);
    lc.sf_nlos = query(maps.sf_nlos, rx);
    const CellClusters &cc = query(maps.clusters, rx);
    lc.single_bounce = &cc.single_bounce;
    lc.double_bounce = &cc.double_bounce;
    return lc;
}

// Spatially independent draws for one position: Bernoulli conditions, i.i.d. SF, fresh clusters.
// Uses substream (seed, "iid-position", position index).
inline LocalConditions iid_conditions(const Scene &scene, const ConsistencySettings &settings, const Vec3 &rx,
                                      std::uint64_t seed, std::uint64_t position_index)
{
    Stream rng(seed, tags::iid_position, position_index);
    LocalConditions lc;
    lc.los = rng.uniform() <= los_probability(distance(scene.tx.position, rx));
    lc.vlos = rng.uniform() <= los_probability(distance(scene.ris.position, rx));
    lc.sf_los = rng.normal(0.0, scene.pathloss.sigma_los);
    lc.sf_nlos = rng.normal(0.0, scene.pathloss.sigma_nlos);
    auto cc = std::make_shared<CellClusters>(sample_cell_clusters(scene, settings.clusters, rx, rng));
    lc.single_bounce = &cc->single_bounce;
    lc.double_bounce = &cc->double_bounce;
    lc.owned = std::move(cc);
    return lc;
}

} // namespace risfp
