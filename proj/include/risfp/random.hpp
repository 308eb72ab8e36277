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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string_view>

namespace risfp
{

// Substream keys are derived as splitmix(splitmix(splitmix(seed) ^ fnv1a(tag)) ^ index), so every
// (seed, domain tag, cell/position index) triple owns an independent, order-free stream.
namespace tags
{
inline constexpr std::string_view los_map = "los-map";
inline constexpr std::string_view vlos_map = "vlos-map";
inline constexpr std::string_view sf_los = "sf-los";
inline constexpr std::string_view sf_nlos = "sf-nlos";
inline constexpr std::string_view clusters = "clusters";
inline constexpr std::string_view split = "split";
inline constexpr std::string_view iid_position = "iid-position"; // case C draws
inline constexpr std::string_view rss_noise = "rss-noise";
} // namespace tags

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

constexpr std::uint64_t substream_key(std::uint64_t seed, std::string_view tag, std::uint64_t index)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a64(tag)) ^ index);
}

// Seeded random stream. The engine (mt19937_64) output is fixed by the standard; the samplers below are
// written out so that draws are identical across standard libraries.
class Stream
{
  public:
    explicit Stream(std::uint64_t key) : engine_(key) {}
    Stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) : engine_(substream_key(seed, tag, index)) {}

    std::uint64_t bits() { return engine_(); }

    // [0, 1)
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    // (0, 1)
    double uniform_open() { return (double(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi]
    long uniform_int(long lo, long hi)
    {
        if (hi < lo)
            throw std::invalid_argument("Empty integer range.");
        std::uint64_t span = std::uint64_t(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span; // rejection removes modulo bias
        std::uint64_t r;
        do
            r = engine_();
        while (r >= limit);
        return lo + long(r % span);
    }

    // Box-Muller, one output per call
    double normal(double mean = 0.0, double stddev = 1.0)
    {
        double u1 = uniform_open();
        double u2 = uniform();
        return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Laplacian with the given standard deviation (scale b = stddev / sqrt 2)
    double laplace(double mean, double stddev)
    {
        double b = stddev / std::numbers::sqrt2;
        double u = uniform_open() - 0.5;
        double mag = -b * std::log(1.0 - 2.0 * std::abs(u));
        return u < 0.0 ? mean - mag : mean + mag;
    }

    // Knuth's multiplication method; intended for the small means used by cluster counts
    unsigned poisson(double mean)
    {
        if (!(mean > 0.0) || mean > 500.0)
            throw std::invalid_argument("Poisson mean must be in (0, 500].");
        double limit = std::exp(-mean);
        unsigned k = 0;
        double p = uniform_open();
        while (p > limit)
        {
            ++k;
            p *= uniform_open();
        }
        return k;
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = 1
    std::complex<double> complex_normal()
    {
        double re = normal();
        double im = normal();
        return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
    }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

} // namespace risfp
