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

#include "risfp/clusters.hpp"
#include "risfp/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace risfp;

namespace
{
constexpr double pi = std::numbers::pi;

ClusterGenParams sb_params()
{
    ClusterGenParams p;
    p.single_bounce = {{-pi / 2, pi / 2}, {-pi / 4, pi / 4}, 5 * pi / 180, 5 * pi / 180};
    p.double_bounce = {{225 * pi / 180, 315 * pi / 180}, {-pi / 4, pi / 4}, 5 * pi / 180, 5 * pi / 180};
    return p;
}
} // namespace

TEST(Random, SubstreamKeysDifferByTagAndIndex)
{
    std::set<std::uint64_t> keys;
    for (auto tag : {tags::los_map, tags::vlos_map, tags::sf_los, tags::sf_nlos, tags::clusters, tags::split})
        for (std::uint64_t i = 0; i < 50; ++i)
            keys.insert(substream_key(7, tag, i));
    EXPECT_EQ(keys.size(), 300u);
    EXPECT_NE(substream_key(1, tags::split, 0), substream_key(2, tags::split, 0));
}

TEST(Random, StreamsAreReproducible)
{
    Stream a(42, tags::clusters, 3), b(42, tags::clusters, 3), c(42, tags::clusters, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i)
    {
        auto x = a.bits();
        EXPECT_EQ(x, b.bits());
        differs |= x != c.bits();
    }
    EXPECT_TRUE(differs);
}

TEST(Random, Fnv1aKnownValues)
{
    // published FNV-1a 64-bit test vectors
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(Random, SplitmixKnownValue)
{
    // first output of the reference splitmix64 generator seeded with 0
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
}

TEST(Random, NormalMoments)
{
    Stream s(1, "moments");
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i)
    {
        double x = s.normal(2.0, 3.0);
        sum += x;
        sq += x * x;
    }
    double mean = sum / n, var = sq / n - mean * mean;
    EXPECT_NEAR(mean, 2.0, 4 * 3.0 / std::sqrt(n));
    EXPECT_NEAR(std::sqrt(var), 3.0, 0.03);
}

TEST(Random, LaplaceStandardDeviation)
{
    Stream s(2, "laplace");
    const int n = 200000;
    double sum = 0, sq = 0, abs_dev = 0;
    for (int i = 0; i < n; ++i)
    {
        double x = s.laplace(0.5, 0.2);
        sum += x;
        sq += (x - 0.5) * (x - 0.5);
        abs_dev += std::abs(x - 0.5);
    }
    EXPECT_NEAR(sum / n, 0.5, 0.003);
    EXPECT_NEAR(std::sqrt(sq / n), 0.2, 0.004);
    // mean absolute deviation of a Laplacian equals its scale b = sigma / sqrt 2
    EXPECT_NEAR(abs_dev / n, 0.2 / std::sqrt(2.0), 0.002);
}

TEST(Random, PoissonMean)
{
    Stream s(3, "poisson");
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i)
        sum += s.poisson(1.8);
    double mean = sum / n;
    EXPECT_GE(mean, 1.75);
    EXPECT_LE(mean, 1.95);
    EXPECT_THROW(s.poisson(0.0), std::invalid_argument);
}

TEST(Random, UniformIntCoversRangeWithoutBias)
{
    Stream s(4, "int");
    std::array<int, 6> counts{};
    for (int i = 0; i < 60000; ++i)
    {
        long v = s.uniform_int(1, 6);
        ASSERT_GE(v, 1);
        ASSERT_LE(v, 6);
        ++counts[std::size_t(v - 1)];
    }
    for (int c : counts)
        EXPECT_NEAR(c, 10000, 400);
    EXPECT_THROW(s.uniform_int(3, 2), std::invalid_argument);
}

TEST(Random, ComplexNormalUnitPower)
{
    Stream s(5, "beta");
    const int n = 100000;
    std::complex<double> sum = 0;
    double power = 0, power_sq = 0;
    for (int i = 0; i < n; ++i)
    {
        auto b = s.complex_normal();
        sum += b;
        power += std::norm(b);
        power_sq += std::norm(b) * std::norm(b);
    }
    // |beta|^2 is exponential with unit mean and unit variance
    double se = 1.0 / std::sqrt(double(n));
    EXPECT_LT(std::abs(sum.real() / n), 3 * se * std::sqrt(0.5));
    EXPECT_LT(std::abs(sum.imag() / n), 3 * se * std::sqrt(0.5));
    EXPECT_NEAR(power / n, 1.0, 3 * se);
}

TEST(Clusters, PositionFormula)
{
    auto p = cluster_position({0, 10, 3}, 2.0, 0.0, 0.0);
    EXPECT_NEAR(p.x, 2.0, 1e-15);
    EXPECT_NEAR(p.y, 10.0, 1e-15);
    EXPECT_NEAR(p.z, 3.0, 1e-15);
    p = cluster_position({0, 0, 0}, 1.0, pi / 2, 0.0);
    EXPECT_NEAR(p.x, 0.0, 1e-15);
    EXPECT_NEAR(p.y, 1.0, 1e-15);
    for (double az : {0.0, 1.0, 4.0})
    {
        p = cluster_position({0, 0, 0}, 1.0, az, pi / 2);
        EXPECT_NEAR(p.x, 0.0, 1e-15);
        EXPECT_NEAR(p.y, 0.0, 1e-15);
        EXPECT_NEAR(p.z, 1.0, 1e-15);
    }
    EXPECT_THROW(cluster_position({0, 0, 0}, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Clusters, SetInvariants)
{
    auto params = sb_params();
    params.z_min = 0.1;
    params.z_max = 3.4;
    Vec3 anchor{0, 10, 3};
    for (std::uint64_t seed = 0; seed < 300; ++seed)
    {
        Stream rng(seed, tags::clusters);
        auto set = sample_cluster_set(params, ClusterFamily::single_bounce, anchor, 1.0, 9.0, rng);
        ASSERT_FALSE(set.empty());
        EXPECT_NEAR(set.gamma * set.gamma * double(set.scatterer_count()), 1.0, 1e-12);
        for (const auto &c : set.clusters)
        {
            EXPECT_GE(c.distance, 1.0);
            EXPECT_LE(c.distance, 9.0);
            EXPECT_GE(c.azimuth, -pi / 2);
            EXPECT_LE(c.azimuth, pi / 2);
            EXPECT_GE(c.scatterers.size(), 1u);
            EXPECT_LE(c.scatterers.size(), 30u);
            EXPECT_NEAR(distance(anchor, c.position), c.distance, 1e-9);
            for (const auto &s : c.scatterers)
            {
                EXPECT_NEAR(distance(anchor, s.position), c.distance, 1e-9);
                EXPECT_GE(s.position.z, 0.1 - 1e-9);
                EXPECT_LE(s.position.z, 3.4 + 1e-9);
                EXPECT_TRUE(std::isfinite(s.gain.real()) && std::isfinite(s.gain.imag()));
            }
        }
    }
}

TEST(Clusters, SingleScattererBoundsGiveUnitClusters)
{
    auto params = sb_params();
    params.scatterers_min = params.scatterers_max = 1;
    Stream rng(9, tags::clusters);
    auto set = sample_cluster_set(params, ClusterFamily::single_bounce, {0, 0, 1}, 1.0, 5.0, rng);
    for (const auto &c : set.clusters)
        EXPECT_EQ(c.scatterers.size(), 1u);
    EXPECT_NEAR(set.gamma, 1.0 / std::sqrt(double(set.clusters.size())), 1e-15);
}

TEST(Clusters, DoubleBounceMayBeEmptySingleBounceNever)
{
    auto params = sb_params();
    params.poisson_mean = 0.2;
    int empty_db = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        Stream a(seed, "sb"), b(seed, "db");
        EXPECT_FALSE(sample_cluster_set(params, ClusterFamily::single_bounce, {0, 0, 1}, 1, 5, a).empty());
        auto db = sample_cluster_set(params, ClusterFamily::double_bounce, {0, 0, 1}, 1, 5, b);
        if (db.empty())
        {
            ++empty_db;
            EXPECT_EQ(db.gamma, 0.0);
        }
    }
    EXPECT_GT(empty_db, 100); // exp(-0.2) ~ 0.82
}

TEST(Clusters, DoubleBounceAzimuthRange)
{
    auto params = sb_params();
    Vec3 ris{10, 15, 3};
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        Stream rng(seed, "db-range");
        auto set = sample_cluster_set(params, ClusterFamily::double_bounce, ris, 1.0, 10.0, rng);
        for (const auto &c : set.clusters)
        {
            EXPECT_GE(c.azimuth, 225 * pi / 180);
            EXPECT_LE(c.azimuth, 315 * pi / 180);
            EXPECT_LT(c.position.y, ris.y); // in front of a panel facing -y
        }
    }
}

TEST(Clusters, Deterministic)
{
    auto params = sb_params();
    Stream a(77, tags::clusters, 5), b(77, tags::clusters, 5);
    auto s1 = sample_cluster_set(params, ClusterFamily::single_bounce, {0, 10, 3}, 1.0, 8.0, a);
    auto s2 = sample_cluster_set(params, ClusterFamily::single_bounce, {0, 10, 3}, 1.0, 8.0, b);
    ASSERT_EQ(s1.clusters.size(), s2.clusters.size());
    EXPECT_EQ(s1.gamma, s2.gamma);
    for (std::size_t c = 0; c < s1.clusters.size(); ++c)
    {
        ASSERT_EQ(s1.clusters[c].scatterers.size(), s2.clusters[c].scatterers.size());
        EXPECT_EQ(s1.clusters[c].position, s2.clusters[c].position);
        for (std::size_t s = 0; s < s1.clusters[c].scatterers.size(); ++s)
        {
            EXPECT_EQ(s1.clusters[c].scatterers[s].position, s2.clusters[c].scatterers[s].position);
            EXPECT_EQ(s1.clusters[c].scatterers[s].gain, s2.clusters[c].scatterers[s].gain);
        }
    }
}

TEST(Clusters, ScattererAnglesStayNearClusterMean)
{
    auto params = sb_params();
    Vec3 anchor{0, 10, 1.75};
    double max_dev = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        Stream rng(seed, "spread");
        auto set = sample_cluster_set(params, ClusterFamily::single_bounce, anchor, 1.0, 10.0, rng);
        for (const auto &c : set.clusters)
            for (const auto &s : c.scatterers)
            {
                Vec3 d = s.position - anchor;
                double az = std::atan2(d.y, d.x);
                max_dev = std::max(max_dev, std::abs(az - c.azimuth));
            }
    }
    EXPECT_LE(max_dev, pi / 2 + 1e-12);
}

TEST(Clusters, InvalidParameters)
{
    auto params = sb_params();
    Stream rng(1, "bad");
    EXPECT_THROW(sample_cluster_set(params, ClusterFamily::single_bounce, {0, 0, 1}, 5.0, 5.0, rng),
                 std::invalid_argument);
    params.scatterers_min = 4;
    params.scatterers_max = 3;
    EXPECT_THROW(validate(params), std::invalid_argument);
    params = sb_params();
    params.poisson_mean = 0.0;
    EXPECT_THROW(validate(params), std::invalid_argument);
    params = sb_params();
    params.single_bounce.azimuth = {1.0, 0.5};
    EXPECT_THROW(validate(params), std::invalid_argument);
}
