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
#include <string>

namespace risfp
{

// Close-in reference distance path-loss parameters. Distances in meters, SF deviations in dB.
struct PathlossParams
{
    double wavelength = 299792458.0 / 5.2e9;
    double d0 = 1.0;        // Tx-Rx and cluster paths
    double d0_tx_ris = 1.0; // d0^1
    double d0_ris_rx = 1.0; // d0^2
    double n_los = 1.73;
    double n_nlos = 3.19;
    double sigma_los = 3.02;
    double sigma_nlos = 8.29;
};

inline void validate(const PathlossParams &p)
{
    if (!(p.wavelength > 0.0) || !(p.d0 > 0.0) || !(p.d0_tx_ris > 0.0) || !(p.d0_ris_rx > 0.0))
        throw std::invalid_argument("Wavelength and reference distances must be positive.");
    if (!(p.n_los > 0.0) || !(p.n_nlos > 0.0))
        throw std::invalid_argument("Path-loss exponents must be positive.");
    if (!(p.sigma_los >= 0.0) || !(p.sigma_nlos >= 0.0))
        throw std::invalid_argument("Shadow-fading deviations must be non-negative.");
}

// Raised when a link is shorter than the model's reference distance
class SubReferenceDistance : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

namespace detail
{
inline void require_positive(double d, const char *what)
{
    if (!(d > 0.0))
        throw std::domain_error(std::string(what) + " must be positive.");
}

inline double free_space_reference(const PathlossParams &p)
{
    return 20.0 * std::log10(4.0 * std::numbers::pi * p.d0 / p.wavelength);
}

inline double ris_reference(const PathlossParams &p, const RisGeometry &ris)
{
    double aperture = double(ris.units()) * ris.unit_length * ris.unit_width * ris.reflection_magnitude;
    return 20.0 * std::log10(4.0 * std::numbers::pi * p.d0_tx_ris * p.d0_ris_rx / aperture);
}
} // namespace detail

inline double pl_los(const PathlossParams &p, double d_tr, double chi_db)
{
    if (!(d_tr >= p.d0))
        throw SubReferenceDistance("Tx-Rx distance " + std::to_string(d_tr) + " m is below the reference distance.");
    return detail::free_space_reference(p) + 10.0 * p.n_los * std::log10(d_tr / p.d0) + chi_db;
}

inline double pl_vlos(const PathlossParams &p, const RisGeometry &ris, double d_ti, double d_ir, double chi_db)
{
    detail::require_positive(d_ti, "Tx-RIS distance");
    detail::require_positive(d_ir, "RIS-Rx distance");
    if (d_ti < p.d0_tx_ris || d_ir < p.d0_ris_rx)
        throw SubReferenceDistance("RIS link distance is below the reference distance.");
    return detail::ris_reference(p, ris) + 10.0 * p.n_los * std::log10(d_ti * d_ir / (p.d0_tx_ris * p.d0_ris_rx)) + chi_db;
}

inline double pl_sb_nlos(const PathlossParams &p, double d_tc, double d_cr, double chi_db)
{
    detail::require_positive(d_tc, "Tx-cluster distance");
    detail::require_positive(d_cr, "cluster-Rx distance");
    if (d_tc + d_cr < p.d0)
        throw SubReferenceDistance("Single-bounce path is shorter than the reference distance.");
    return detail::free_space_reference(p) + 10.0 * p.n_nlos * std::log10((d_tc + d_cr) / p.d0) + chi_db;
}

inline double pl_db_nlos(const PathlossParams &p, const RisGeometry &ris, double d_ti, double d_ic, double d_cr,
                         double chi_db)
{
    detail::require_positive(d_ti, "Tx-RIS distance");
    detail::require_positive(d_ic, "RIS-cluster distance");
    detail::require_positive(d_cr, "cluster-Rx distance");
    return detail::ris_reference(p, ris) +
           10.0 * p.n_nlos * std::log10(d_ti * (d_ic + d_cr) / (p.d0_tx_ris * p.d0_ris_rx)) + chi_db;
}

// Path loss in dB to linear attenuation
inline double db_to_linear(double pl_db) { return std::pow(10.0, -pl_db / 10.0); }

} // namespace risfp
