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
#include "geometry.hpp"
#include "propagation.hpp"
#include "radiation.hpp"

#include <cmath>
#include <stdexcept>

namespace risfp
{

inline constexpr double speed_of_light = 299792458.0; // m/s

// Static description of the propagation scene. Angles are radians, lengths meters, gains linear.
struct Scene
{
    Room room;
    TxGeometry tx;
    RisGeometry ris;
    Vec3 rx_normal{0.0, 0.0, 1.0};
    double rx_height = 1.0;
    PatternSpec tx_pattern;
    PatternSpec rx_pattern;
    PathlossParams pathloss;
    bool ris_enabled = true; // false drops the VLoS and double-bounce paths

    double wavelength() const { return pathloss.wavelength; }
};

inline void validate(const Scene &scene)
{
    validate(scene.room);
    validate(scene.tx);
    validate(scene.ris);
    validate(RxGeometry{{0.0, 0.0, scene.rx_height}, scene.rx_normal});
    validate(scene.tx_pattern);
    validate(scene.rx_pattern);
    validate(scene.pathloss);
    if (!scene.room.contains(scene.tx.position))
        throw std::invalid_argument("Tx lies outside the room.");
    if (!scene.room.contains(scene.ris.position))
        throw std::invalid_argument("RIS lies outside the room.");
    if (!(scene.rx_height >= 0.0 && scene.rx_height <= scene.room.height))
        throw std::invalid_argument("Rx height lies outside the room.");
}

// Reference scene: 20 x 20 x 3.5 m room at 5.2 GHz, 4-antenna Tx with 8 dBi cosine elements,
// 20 x 20 half-wavelength RIS, omnidirectional Rx at 1 m.
inline Scene default_scene()
{
    Scene s;
    s.pathloss.wavelength = speed_of_light / 5.2e9;
    double lambda = s.pathloss.wavelength;
    s.room = {20.0, 20.0, 3.5};
    s.tx.position = {0.0, 10.0, 3.0};
    s.tx.antennas = 4;
    s.tx.spacing = lambda / 2.0;
    s.tx.direction = {0.0, 0.0, -1.0};
    s.tx.normal = {1.0, 0.0, 0.0};
    s.ris.position = {10.0, 15.0, 3.0};
    s.ris.rows = 20;
    s.ris.cols = 20;
    s.ris.unit_length = lambda / 2.0;
    s.ris.unit_width = lambda / 2.0;
    s.ris.row_vector = {0.0, 0.0, 1.0};
    s.ris.col_vector = {1.0, 0.0, 0.0};
    s.ris.normal = {0.0, -1.0, 0.0};
    s.ris.reflection_magnitude = 1.0;
    s.rx_normal = {0.0, 0.0, 1.0};
    s.rx_height = 1.0;
    s.tx_pattern = PatternSpec::cosine(db_gain_to_linear(8.0));
    s.rx_pattern = PatternSpec::omni();
    return s;
}

// Cluster statistics of the reference indoor scenario
inline ClusterGenParams default_cluster_params(const Room &room)
{
    ClusterGenParams p;
    p.poisson_mean = 1.8;
    p.scatterers_min = 1;
    p.scatterers_max = 30;
    p.single_bounce = {{deg_to_rad(-90.0), deg_to_rad(90.0)}, {deg_to_rad(-45.0), deg_to_rad(45.0)}, deg_to_rad(5.0),
                       deg_to_rad(5.0)};
    p.double_bounce = {{deg_to_rad(225.0), deg_to_rad(315.0)}, {deg_to_rad(-45.0), deg_to_rad(45.0)}, deg_to_rad(5.0),
                       deg_to_rad(5.0)};
    p.z_min = 0.1;
    p.z_max = room.height - 0.1;
    return p;
}

} // namespace risfp
