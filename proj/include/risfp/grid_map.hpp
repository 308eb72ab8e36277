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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace risfp
{

// Dense 2-D grid over the room footprint. Rows run along y, columns along x, storage is row-major.
template <typename V>
class GridMap
{
  public:
    GridMap() = default;

    // Covers [origin.x, origin.x + extent_x] x [origin.y, origin.y + extent_y] with square cells
    GridMap(Vec3 origin, double granularity, double extent_x, double extent_y, V fill = V{})
        : origin_(origin), granularity_(granularity), extent_x_(extent_x), extent_y_(extent_y)
    {
        if (!(granularity > 0.0))
            throw std::invalid_argument("Grid granularity must be positive.");
        if (!(extent_x > 0.0) || !(extent_y > 0.0))
            throw std::invalid_argument("Grid extent must be positive.");
        cols_ = cells_along(extent_x, granularity);
        rows_ = cells_along(extent_y, granularity);
        values_.assign(rows_ * cols_, fill);
    }

    static GridMap over(const Room &room, double granularity, V fill = V{})
    {
        return GridMap({0.0, 0.0, 0.0}, granularity, room.length, room.width, std::move(fill));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    double granularity() const { return granularity_; }
    const Vec3 &origin() const { return origin_; }
    double extent_x() const { return extent_x_; }
    double extent_y() const { return extent_y_; }

    V &at(std::size_t row, std::size_t col) { return values_.at(row * cols_ + col); }
    const V &at(std::size_t row, std::size_t col) const { return values_.at(row * cols_ + col); }
    V &operator[](std::size_t index) { return values_[index]; }
    const V &operator[](std::size_t index) const { return values_[index]; }

    std::vector<V> &values() { return values_; }
    const std::vector<V> &values() const { return values_; }

    // Cell center at the given height
    Vec3 center(std::size_t row, std::size_t col, double z) const
    {
        return {origin_.x + (double(col) + 0.5) * granularity_, origin_.y + (double(row) + 0.5) * granularity_, z};
    }

    // floor((coord - origin) / granularity); the upper boundary belongs to the last cell
    std::pair<std::size_t, std::size_t> cell_of(const Vec3 &p) const
    {
        double dx = p.x - origin_.x, dy = p.y - origin_.y;
        if (!(dx >= 0.0 && dx <= extent_x_ && dy >= 0.0 && dy <= extent_y_))
            throw std::out_of_range("Position (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                    ") lies outside the map footprint.");
        auto col = std::size_t(std::floor(dx / granularity_));
        auto row = std::size_t(std::floor(dy / granularity_));
        if (col >= cols_)
            col = cols_ - 1;
        if (row >= rows_)
            row = rows_ - 1;
        return {row, col};
    }

    std::size_t index_of(const Vec3 &p) const
    {
        auto [r, c] = cell_of(p);
        return r * cols_ + c;
    }

  private:
    static std::size_t cells_along(double extent, double g)
    {
        // tolerate representation error in extents that are exact multiples of g
        auto n = std::size_t(std::ceil(extent / g - 1e-9));
        return n < 1 ? 1 : n;
    }

    Vec3 origin_;
    double granularity_ = 1.0;
    double extent_x_ = 0.0, extent_y_ = 0.0;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<V> values_;
};

template <typename V>
const V &query(const GridMap<V> &map, const Vec3 &position)
{
    return map[map.index_of(position)];
}

} // namespace risfp
