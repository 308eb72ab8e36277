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
#include <numbers>
#include <stdexcept>

namespace risfp
{

enum class PatternKind
{
    omnidirectional,
    cosine
};

// Antenna radiation pattern. For the cosine pattern G(phi) = G_max * cos(phi)^(G_max/2 - 1).
struct PatternSpec
{
    PatternKind kind = PatternKind::omnidirectional;
    double max_gain = 1.0; // linear

    static PatternSpec omni() { return {}; }
    static PatternSpec cosine(double max_gain_linear) { return {PatternKind::cosine, max_gain_linear}; }
};

inline void validate(const PatternSpec &spec)
{
    if (spec.kind == PatternKind::cosine && !(spec.max_gain >= 2.0))
        throw std::invalid_argument("Cosine pattern requires a linear max gain >= 2.");
}

inline double db_gain_to_linear(double gain_db) { return std::pow(10.0, gain_db / 10.0); }

// Linear antenna gain at angle phi off boresight; the back hemisphere of a cosine pattern is 0
inline double gain_antenna(const PatternSpec &spec, double phi)
{
    if (!(phi >= 0.0 && phi <= std::numbers::pi))
        throw std::domain_error("Antenna angle must lie in [0, pi].");
    if (spec.kind == PatternKind::omnidirectional)
        return 1.0;
    if (phi > std::numbers::pi / 2.0)
        return 0.0;
    double c = std::cos(phi);
    if (c <= 0.0)
        return 0.0;
    return spec.max_gain * std::pow(c, spec.max_gain / 2.0 - 1.0);
}

// Boresight gain of a reflective unit, 4 pi dx dy / lambda^2
inline double ris_max_gain(const RisGeometry &ris, double wavelength)
{
    return 4.0 * std::numbers::pi * ris.unit_length * ris.unit_width / (wavelength * wavelength);
}

struct RisUnitGain
{
    double value = 0.0;
    bool shadowed = false; // an angle reached the panel plane or its back side
};

// Two-angle reflective-unit pattern G_max cos(phi1) cos(phi2)
inline RisUnitGain gain_ris_unit(const RisGeometry &ris, double wavelength, double phi1, double phi2)
{
    if (!(phi1 >= 0.0 && phi1 <= std::numbers::pi) || !(phi2 >= 0.0 && phi2 <= std::numbers::pi))
        throw std::domain_error("RIS angles must lie in [0, pi].");
    if (phi1 >= std::numbers::pi / 2.0 || phi2 >= std::numbers::pi / 2.0)
        return {0.0, true};
    return {ris_max_gain(ris, wavelength) * std::cos(phi1) * std::cos(phi2), false};
}

// Per-traversal factor G_max cos(phi) used inside the channel amplitudes, where the product of the
// incidence and reflection factors replaces the two-angle pattern.
inline double ris_traversal_gain(const RisGeometry &ris, double wavelength, double phi)
{
    if (!(phi >= 0.0 && phi <= std::numbers::pi))
        throw std::domain_error("RIS angle must lie in [0, pi].");
    if (phi >= std::numbers::pi / 2.0)
        return 0.0;
    return ris_max_gain(ris, wavelength) * std::cos(phi);
}

} // namespace risfp
