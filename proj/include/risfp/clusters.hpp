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

#include "geometry.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace risfp
{

enum class ClusterFamily
{
    single_bounce, // anchored at the Tx, Tx -> cluster -> Rx
    double_bounce  // anchored at the RIS, Tx -> RIS -> cluster -> Rx
};

struct AngleRange
{
    double lo = 0.0, hi = 0.0; // radians
};

struct FamilyParams
{
    AngleRange azimuth;
    AngleRange elevation;
    double azimuth_spread = 0.0;   // Laplacian standard deviation, radians
    double elevation_spread = 0.0;
};

struct ClusterGenParams
{
    double poisson_mean = 1.8;
    unsigned scatterers_min = 1;
    unsigned scatterers_max = 30;
    FamilyParams single_bounce;
    FamilyParams double_bounce;
    // Elevations are limited so that cluster and scatterer heights stay within [z_min, z_max]
    double z_min = -std::numeric_limits<double>::infinity();
    double z_max = std::numeric_limits<double>::infinity();

    const FamilyParams &family(ClusterFamily f) const
    {
        return f == ClusterFamily::single_bounce ? single_bounce : double_bounce;
    }
};

inline void validate(const ClusterGenParams &p)
{
    if (!(p.poisson_mean > 0.0))
        throw std::invalid_argument("Poisson mean must be positive.");
    if (p.scatterers_min < 1 || p.scatterers_min > p.scatterers_max)
        throw std::invalid_argument("Scatterer bounds must satisfy 1 <= min <= max.");
    for (const auto *f : {&p.single_bounce, &p.double_bounce})
    {
        if (!(f->azimuth.lo <= f->azimuth.hi) || !(f->elevation.lo <= f->elevation.hi))
            throw std::invalid_argument("Cluster angle ranges must be non-empty.");
        if (!(f->azimuth_spread >= 0.0) || !(f->elevation_spread >= 0.0))
            throw std::invalid_argument("Angular spreads must be non-negative.");
    }
    if (!(p.z_min < p.z_max))
        throw std::invalid_argument("Cluster height limits must satisfy z_min < z_max.");
}

struct Scatterer
{
    Vec3 position;
    std::complex<double> gain; // beta
};

struct Cluster
{
    Vec3 position;
    double distance = 0.0; // from the anchor, shared by all scatterers
    double azimuth = 0.0;
    double elevation = 0.0;
    std::vector<Scatterer> scatterers;
};

struct ClusterSet
{
    ClusterFamily family = ClusterFamily::single_bounce;
    std::vector<Cluster> clusters;
    double gamma = 0.0; // 1 / sqrt(total scatterers); 0 for an empty set

    bool empty() const { return clusters.empty(); }

    std::size_t scatterer_count() const
    {
        std::size_t n = 0;
        for (const auto &c : clusters)
            n += c.scatterers.size();
        return n;
    }
};

inline Vec3 cluster_position(const Vec3 &anchor, double d, double azimuth, double elevation)
{
    if (!(d > 0.0))
        throw std::invalid_argument("Cluster distance must be positive.");
    return anchor + Vec3{std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth),
                         std::sin(elevation)} *
                        d;
}

// Elevation closest to `elevation` whose point at range d from the anchor lies within [z_min, z_max]
inline double limit_elevation(double anchor_z, double d, double elevation, double z_min, double z_max)
{
    double z = anchor_z + d * std::sin(elevation);
    auto clamp_unit = [](double s) { return std::clamp(s, -1.0, 1.0); };
    if (z > z_max)
        return std::asin(clamp_unit((z_max - anchor_z) / d));
    if (z < z_min)
        return std::asin(clamp_unit((z_min - anchor_z) / d));
    return elevation;
}

// Raw Poisson cluster count, before the at-least-one rule for the single-bounce family
inline unsigned draw_cluster_count(double mean, Stream &rng) { return rng.poisson(mean); }

inline ClusterSet sample_cluster_set(const ClusterGenParams &params, ClusterFamily family, const Vec3 &anchor,
                                     double d_min, double d_max, Stream &rng)
{
    if (!(d_min > 0.0) || !(d_min < d_max))
        throw std::invalid_argument("Cluster distance range must satisfy 0 < d_min < d_max.");
    if (anchor.z < params.z_min || anchor.z > params.z_max)
        throw std::invalid_argument("Cluster anchor lies outside the height limits.");
    const FamilyParams &fp = params.family(family);

    unsigned count = draw_cluster_count(params.poisson_mean, rng);
    if (family == ClusterFamily::single_bounce)
    {
        int guard = 0;
        while (count == 0)
        {
            if (++guard > 10000)
                throw std::runtime_error("Could not draw a non-empty single-bounce cluster set.");
            count = draw_cluster_count(params.poisson_mean, rng);
        }
    }

    ClusterSet set;
    set.family = family;
    set.clusters.reserve(count);
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (unsigned c = 0; c < count; ++c)
    {
        Cluster cl;
        cl.distance = rng.uniform(d_min, d_max);
        cl.azimuth = rng.uniform(fp.azimuth.lo, fp.azimuth.hi);
        cl.elevation = rng.uniform(fp.elevation.lo, fp.elevation.hi);
        cl.elevation = limit_elevation(anchor.z, cl.distance, cl.elevation, params.z_min, params.z_max);
        cl.position = cluster_position(anchor, cl.distance, cl.azimuth, cl.elevation);

        auto n_scat = unsigned(rng.uniform_int(params.scatterers_min, params.scatterers_max));
        cl.scatterers.reserve(n_scat);
        for (unsigned s = 0; s < n_scat; ++s)
        {
            double az = std::clamp(rng.laplace(cl.azimuth, fp.azimuth_spread), cl.azimuth - half_pi, cl.azimuth + half_pi);
            double el = std::clamp(rng.laplace(cl.elevation, fp.elevation_spread), cl.elevation - half_pi,
                                   cl.elevation + half_pi);
            el = limit_elevation(anchor.z, cl.distance, el, params.z_min, params.z_max);
            Scatterer sc;
            sc.position = cluster_position(anchor, cl.distance, az, el);
            sc.gain = rng.complex_normal();
            cl.scatterers.push_back(sc);
        }
        set.clusters.push_back(std::move(cl));
    }
    std::size_t total = set.scatterer_count();
    set.gamma = total > 0 ? 1.0 / std::sqrt(double(total)) : 0.0;
    return set;
}

} // namespace risfp
