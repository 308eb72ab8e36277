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

#include "fingerprint.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace risfp
{

struct SplitSpec
{
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
};

struct DbSplit
{
    std::vector<FingerprintRecord> train;
    std::vector<FingerprintRecord> test;
};

// Seeded Fisher-Yates shuffle, then the first floor(fraction * size) records train
inline DbSplit split(const FingerprintDb &db, const SplitSpec &spec)
{
    if (db.records.empty())
        throw std::invalid_argument("Cannot split an empty database.");
    if (db.records.size() < 2)
        throw std::invalid_argument("Splitting needs at least two records.");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("Train fraction must lie in (0, 1).");
    std::vector<std::size_t> order(db.records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Stream rng(spec.seed, tags::split);
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[std::size_t(rng.uniform_int(0, long(i)))]);

    auto n_train = std::size_t(std::floor(spec.train_fraction * double(order.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, order.size() - 1);
    DbSplit out;
    out.train.reserve(n_train);
    out.test.reserve(order.size() - n_train);
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_train ? out.train : out.test).push_back(db.records[order[i]]);
    return out;
}

// Inverse-distance weighted K nearest neighbours in RSS space; ties go to the lower training index
inline Vec3 knn_predict(std::span<const FingerprintRecord> train, std::span<const double> query, std::size_t k)
{
    if (k < 1 || k > train.size())
        throw std::invalid_argument("K must lie in 1..training size.");
    std::vector<std::pair<double, std::size_t>> dist(train.size());
    for (std::size_t t = 0; t < train.size(); ++t)
    {
        const auto &f = train[t].rss;
        if (f.size() != query.size())
            throw std::invalid_argument("Fingerprint dimension mismatch.");
        double ss = 0.0;
        for (std::size_t n = 0; n < f.size(); ++n)
        {
            double d = f[n] - query[n];
            ss += d * d;
        }
        dist[t] = {std::sqrt(ss), t};
    }
    std::partial_sort(dist.begin(), dist.begin() + std::ptrdiff_t(k), dist.end());
    if (k == 1)
        return train[dist.front().second].position;

    constexpr double eps = 1e-9;
    Vec3 acc;
    double wsum = 0.0;
    for (std::size_t j = 0; j < k; ++j)
    {
        double w = 1.0 / (dist[j].first + eps);
        acc += train[dist[j].second].position * w;
        wsum += w;
    }
    return acc * (1.0 / wsum);
}

struct EvalReport
{
    double rmse = 0.0;                 // meters, 2-D
    std::vector<double> errors;        // per test query, in test order
    std::vector<double> sorted_errors; // empirical CDF support
    std::vector<Vec3> truth;
    std::vector<Vec3> predicted;
    std::size_t k = 0;
    SplitSpec split;
    std::size_t train_size = 0;
    std::size_t measurements = 0;
};

inline double planar_error(const Vec3 &a, const Vec3 &b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double rmse_of(std::span<const double> errors)
{
    if (errors.empty())
        return 0.0;
    double ss = 0.0;
    for (double e : errors)
        ss += e * e;
    return std::sqrt(ss / double(errors.size()));
}

inline EvalReport evaluate(const FingerprintDb &db, const SplitSpec &spec, std::size_t k)
{
    auto parts = split(db, spec);
    EvalReport rep;
    rep.k = k;
    rep.split = spec;
    rep.train_size = parts.train.size();
    rep.measurements = db.measurements;
    rep.errors.resize(parts.test.size());
    rep.predicted.resize(parts.test.size());
    parallel_for(parts.test.size(), [&](std::size_t q) {
        rep.predicted[q] = knn_predict(parts.train, parts.test[q].rss, k);
        rep.errors[q] = planar_error(rep.predicted[q], parts.test[q].position);
    });
    for (const auto &r : parts.test)
        rep.truth.push_back(r.position);
    rep.rmse = rmse_of(rep.errors);
    rep.sorted_errors = rep.errors;
    std::sort(rep.sorted_errors.begin(), rep.sorted_errors.end());
    return rep;
}

} // namespace risfp
