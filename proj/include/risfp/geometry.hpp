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
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risfp
{

// Cartesian coordinates in meters
struct Vec3
{
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3 &operator+=(const Vec3 &o)
    {
        x += o.x, y += o.y, z += o.z;
        return *this;
    }
    constexpr Vec3 &operator-=(const Vec3 &o)
    {
        x -= o.x, y -= o.y, z -= o.z;
        return *this;
    }
    constexpr Vec3 &operator*=(double s)
    {
        x *= s, y *= s, z *= s;
        return *this;
    }
    friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline bool is_finite(const Vec3 &a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

// Axis-aligned room with its floor corner at the origin; x spans the length, y the width
struct Room
{
    double length = 20.0;
    double width = 20.0;
    double height = 3.5;

    bool contains(const Vec3 &p) const
    {
        return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width && p.z >= 0.0 && p.z <= height;
    }
};

// Tolerance used when validating unit and orthogonal orientation vectors
inline constexpr double orientation_tolerance = 1e-9;

// Transmitter ULA: center position, element count, spacing, array axis and boresight
struct TxGeometry
{
    Vec3 position;
    std::size_t antennas = 1;
    double spacing = 0.0;
    Vec3 direction{0.0, 0.0, 1.0};
    Vec3 normal{1.0, 0.0, 0.0};
};

// Rectangular RIS. Unit i maps to (row, col) as i = (row - 1) * cols + col, rows along e^c, columns along e^r.
struct RisGeometry
{
    Vec3 position;
    std::size_t rows = 1;      // M_I
    std::size_t cols = 1;      // N_I
    double unit_length = 0.0;  // along e^r
    double unit_width = 0.0;   // along e^c
    Vec3 row_vector{0.0, 0.0, 1.0};
    Vec3 col_vector{1.0, 0.0, 0.0};
    Vec3 normal{0.0, -1.0, 0.0};
    double reflection_magnitude = 1.0;

    std::size_t units() const { return rows * cols; }
};

struct RxGeometry
{
    Vec3 position;
    Vec3 normal{0.0, 0.0, 1.0};
};

namespace detail
{
inline void require_unit(const Vec3 &v, const std::string &what)
{
    if (!is_finite(v) || std::abs(norm(v) - 1.0) > orientation_tolerance)
        throw std::invalid_argument(what + " must be a unit vector.");
}

inline void require_orthogonal(const Vec3 &a, const Vec3 &b, const std::string &what)
{
    if (std::abs(dot(a, b)) > orientation_tolerance)
        throw std::invalid_argument(what + " must be orthogonal.");
}
} // namespace detail

inline void validate(const Room &room)
{
    if (!(room.length > 0.0) || !(room.width > 0.0) || !(room.height > 0.0))
        throw std::invalid_argument("Room dimensions must be positive.");
}

inline void validate(const TxGeometry &tx)
{
    if (!is_finite(tx.position))
        throw std::invalid_argument("Tx position must be finite.");
    if (tx.antennas < 1)
        throw std::invalid_argument("Tx needs at least one antenna.");
    if (!(tx.spacing > 0.0))
        throw std::invalid_argument("Tx antenna spacing must be positive.");
    detail::require_unit(tx.direction, "Tx direction vector");
    detail::require_unit(tx.normal, "Tx normal vector");
    detail::require_orthogonal(tx.direction, tx.normal, "Tx direction and normal vectors");
}

inline void validate(const RisGeometry &ris)
{
    if (!is_finite(ris.position))
        throw std::invalid_argument("RIS position must be finite.");
    if (ris.rows < 1 || ris.cols < 1)
        throw std::invalid_argument("RIS needs at least one row and one column.");
    if (!(ris.unit_length > 0.0) || !(ris.unit_width > 0.0))
        throw std::invalid_argument("RIS unit length and width must be positive.");
    if (!(ris.reflection_magnitude > 0.0) || ris.reflection_magnitude > 1.0)
        throw std::invalid_argument("RIS reflection magnitude must be in (0, 1].");
    detail::require_unit(ris.row_vector, "RIS row vector");
    detail::require_unit(ris.col_vector, "RIS column vector");
    detail::require_unit(ris.normal, "RIS normal vector");
    detail::require_orthogonal(ris.row_vector, ris.col_vector, "RIS row and column vectors");
    detail::require_orthogonal(ris.row_vector, ris.normal, "RIS row and normal vectors");
    detail::require_orthogonal(ris.col_vector, ris.normal, "RIS column and normal vectors");
}

inline void validate(const RxGeometry &rx)
{
    if (!is_finite(rx.position))
        throw std::invalid_argument("Rx position must be finite.");
    detail::require_unit(rx.normal, "Rx normal vector");
}

// Offset of the m-th Tx antenna (1-based) from the array center
inline Vec3 tx_element_offset(const TxGeometry &tx, std::size_t m)
{
    if (m < 1 || m > tx.antennas)
        throw std::out_of_range("Tx antenna index " + std::to_string(m) + " outside 1.." + std::to_string(tx.antennas));
    double k = double(m) - (double(tx.antennas) + 1.0) / 2.0;
    return tx.direction * (k * tx.spacing);
}

// Offset of the i-th reflective unit (1-based, row-major) from the panel center
inline Vec3 ris_element_offset(const RisGeometry &ris, std::size_t i)
{
    if (i < 1 || i > ris.units())
        throw std::out_of_range("RIS unit index " + std::to_string(i) + " outside 1.." + std::to_string(ris.units()));
    std::size_t row = (i - 1) / ris.cols + 1;
    std::size_t col = (i - 1) % ris.cols + 1;
    double kr = double(row) - (double(ris.rows) + 1.0) / 2.0;
    double kc = double(col) - (double(ris.cols) + 1.0) / 2.0;
    return ris.col_vector * (kr * ris.unit_width) + ris.row_vector * (kc * ris.unit_length);
}

inline double distance(const Vec3 &a, const Vec3 &b) { return norm(b - a); }

// Angle between the boresight `normal` at `from` and the direction towards `to`, in [0, pi]
inline double elevation_angle(const Vec3 &from, const Vec3 &normal, const Vec3 &to)
{
    Vec3 dir = to - from;
    double len = norm(dir);
    if (!(len > 0.0))
        throw std::invalid_argument("Elevation angle undefined for coincident points.");
    double c = dot(dir, normal) / len;
    c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
    return std::acos(c);
}

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

} // namespace risfp
