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
#include "scene.hpp"
#include "spatial_maps.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace risfp
{

using cplx = std::complex<double>;

enum class PathKind
{
    los,
    vlos,
    single_bounce,
    double_bounce
};

inline constexpr std::array<PathKind, 4> all_path_kinds{PathKind::los, PathKind::vlos, PathKind::single_bounce,
                                                        PathKind::double_bounce};

inline std::string_view to_string(PathKind k)
{
    switch (k)
    {
    case PathKind::los:
        return "LoS";
    case PathKind::vlos:
        return "VLoS";
    case PathKind::single_bounce:
        return "SB";
    case PathKind::double_bounce:
        return "DB";
    }
    return "?";
}

// One delay tap of H(tau): a 1 x M_T row of complex gains
struct PathTap
{
    PathKind kind = PathKind::los;
    double delay = 0.0;     // seconds
    int source = -1;        // cluster index for SB/DB taps
    std::vector<cplx> amplitudes;
};

struct Cir
{
    std::vector<PathTap> taps;
    Vec3 position;
    std::size_t measurement = 0;

    std::size_t count(PathKind k) const
    {
        std::size_t n = 0;
        for (const auto &t : taps)
            n += t.kind == k;
        return n;
    }
};

namespace detail
{
// exp(-j 2 pi d / lambda)
inline cplx propagation_phasor(double d, double wavelength)
{
    return std::polar(1.0, -2.0 * std::numbers::pi * (d / wavelength));
}

inline std::vector<Vec3> tx_offsets(const TxGeometry &tx)
{
    std::vector<Vec3> out(tx.antennas);
    for (std::size_t m = 0; m < tx.antennas; ++m)
        out[m] = tx_element_offset(tx, m + 1);
    return out;
}

inline std::vector<Vec3> ris_offsets(const RisGeometry &ris)
{
    std::vector<Vec3> out(ris.units());
    for (std::size_t i = 0; i < ris.units(); ++i)
        out[i] = ris_element_offset(ris, i + 1);
    return out;
}

// d^TI_{m,i} = || xi_I - xi_T - A^T_m + A^I_i ||, row-major [m][i]
inline std::vector<double> tx_ris_element_distances(const Scene &scene)
{
    auto at = tx_offsets(scene.tx);
    auto ai = ris_offsets(scene.ris);
    std::vector<double> d(at.size() * ai.size());
    for (std::size_t m = 0; m < at.size(); ++m)
        for (std::size_t i = 0; i < ai.size(); ++i)
            d[m * ai.size() + i] = norm(scene.ris.position - scene.tx.position - at[m] + ai[i]);
    return d;
}

inline void check_phase_length(const Scene &scene, std::size_t n)
{
    if (n != scene.ris.units())
        throw std::invalid_argument("Phase vector has " + std::to_string(n) + " entries, RIS has " +
                                    std::to_string(scene.ris.units()) + " units.");
}
} // namespace detail

// A RIS-dependent tap before the phase configuration is applied:
// amplitude_m = prefactor * sum_i exp(j theta_i) * weights[m][i]
struct RisTapTemplate
{
    PathKind kind = PathKind::vlos;
    double delay = 0.0;
    int source = -1;
    double prefactor = 0.0;
    std::size_t units = 0;
    std::vector<cplx> weights; // M_T x I, row-major

    PathTap apply(std::span<const cplx> ris_phasors) const
    {
        PathTap tap{kind, delay, source, {}};
        std::size_t antennas = units ? weights.size() / units : 0;
        tap.amplitudes.resize(antennas);
        for (std::size_t m = 0; m < antennas; ++m)
        {
            const cplx *w = weights.data() + m * units;
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < units; ++i)
            {
                const cplx &p = ris_phasors[i];
                re += p.real() * w[i].real() - p.imag() * w[i].imag();
                im += p.real() * w[i].imag() + p.imag() * w[i].real();
            }
            tap.amplitudes[m] = prefactor * cplx(re, im);
        }
        return tap;
    }
};

inline std::vector<cplx> ris_phasors(std::span<const double> theta)
{
    std::vector<cplx> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        out[i] = std::polar(1.0, theta[i]);
    return out;
}

// Direct path; absent when blocked
inline std::optional<PathTap> cir_los(const Scene &scene, const Vec3 &rx, bool available, double chi_db)
{
    if (!available)
        return std::nullopt;
    const auto &tx = scene.tx;
    double d_tr = distance(tx.position, rx);
    double loss = db_to_linear(pl_los(scene.pathloss, d_tr, chi_db));
    double g_t = gain_antenna(scene.tx_pattern, elevation_angle(tx.position, tx.normal, rx));
    double g_r = gain_antenna(scene.rx_pattern, elevation_angle(rx, scene.rx_normal, tx.position));
    double amp = std::sqrt(loss * g_t * g_r);

    PathTap tap{PathKind::los, d_tr / speed_of_light, -1, {}};
    tap.amplitudes.resize(tx.antennas);
    for (std::size_t m = 0; m < tx.antennas; ++m)
    {
        double d_m = norm(rx - tx.position - tx_element_offset(tx, m + 1));
        tap.amplitudes[m] = amp * detail::propagation_phasor(d_m, scene.wavelength());
    }
    return tap;
}

// Tx -> RIS -> Rx path before phase configuration
inline RisTapTemplate vlos_template(const Scene &scene, const Vec3 &rx, double chi_db,
                                    std::span<const double> tx_ris_distances)
{
    const auto &tx = scene.tx;
    const auto &ris = scene.ris;
    double lambda = scene.wavelength();
    double d_ti = distance(tx.position, ris.position);
    double d_ir = distance(ris.position, rx);
    double loss = db_to_linear(pl_vlos(scene.pathloss, ris, d_ti, d_ir, chi_db));
    double g_t = gain_antenna(scene.tx_pattern, elevation_angle(tx.position, tx.normal, ris.position));
    double g_r = gain_antenna(scene.rx_pattern, elevation_angle(rx, scene.rx_normal, ris.position));
    double g_it = ris_traversal_gain(ris, lambda, elevation_angle(ris.position, ris.normal, tx.position));
    double g_ir = ris_traversal_gain(ris, lambda, elevation_angle(ris.position, ris.normal, rx));

    RisTapTemplate t;
    t.kind = PathKind::vlos;
    t.delay = (d_ti + d_ir) / speed_of_light;
    t.prefactor = std::sqrt(loss * g_t * g_r * g_it * g_ir);
    t.units = ris.units();
    t.weights.resize(tx.antennas * t.units);
    std::vector<double> d_ir_i(t.units);
    for (std::size_t i = 0; i < t.units; ++i)
        d_ir_i[i] = norm(rx - ris.position - ris_element_offset(ris, i + 1));
    for (std::size_t m = 0; m < tx.antennas; ++m)
        for (std::size_t i = 0; i < t.units; ++i)
            t.weights[m * t.units + i] =
                detail::propagation_phasor(tx_ris_distances[m * t.units + i] + d_ir_i[i], lambda);
    return t;
}

inline std::optional<PathTap> cir_vlos(const Scene &scene, const Vec3 &rx, std::span<const double> theta,
                                       bool available, double chi_db)
{
    detail::check_phase_length(scene, theta.size());
    if (!available)
        return std::nullopt;
    auto dist = detail::tx_ris_element_distances(scene);
    return vlos_template(scene, rx, chi_db, dist).apply(ris_phasors(theta));
}

// sum_i exp(j(theta_i - 2 pi (d^TI_{m,i} + d^IR_i) / lambda)) for Tx antenna m (1-based)
inline cplx vlos_inner_sum(const Scene &scene, const Vec3 &rx, std::span<const double> theta, std::size_t m)
{
    detail::check_phase_length(scene, theta.size());
    if (m < 1 || m > scene.tx.antennas)
        throw std::out_of_range("Tx antenna index out of range.");
    const auto &ris = scene.ris;
    Vec3 at = tx_element_offset(scene.tx, m);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < ris.units(); ++i)
    {
        Vec3 ai = ris_element_offset(ris, i + 1);
        double d = norm(ris.position - scene.tx.position - at + ai) + norm(rx - ris.position - ai);
        acc += std::polar(1.0, theta[i] - 2.0 * std::numbers::pi * (d / scene.wavelength()));
    }
    return acc;
}

// One tap per single-bounce cluster
inline std::vector<PathTap> cir_sb(const Scene &scene, const Vec3 &rx, const ClusterSet &set, double chi_db)
{
    std::vector<PathTap> taps;
    const auto &tx = scene.tx;
    double lambda = scene.wavelength();
    auto at = detail::tx_offsets(tx);
    for (std::size_t c = 0; c < set.clusters.size(); ++c)
    {
        const Cluster &cl = set.clusters[c];
        double d_tc = distance(tx.position, cl.position);
        double d_cr = distance(cl.position, rx);
        double loss = db_to_linear(pl_sb_nlos(scene.pathloss, d_tc, d_cr, chi_db));
        double g_t = gain_antenna(scene.tx_pattern, elevation_angle(tx.position, tx.normal, cl.position));
        double g_r = gain_antenna(scene.rx_pattern, elevation_angle(rx, scene.rx_normal, cl.position));
        double amp = set.gamma * std::sqrt(loss * g_t * g_r);

        PathTap tap{PathKind::single_bounce, (d_tc + d_cr) / speed_of_light, int(c), {}};
        tap.amplitudes.assign(tx.antennas, cplx{});
        for (const Scatterer &s : cl.scatterers)
        {
            double d_sr = distance(s.position, rx);
            for (std::size_t m = 0; m < tx.antennas; ++m)
            {
                double d_ts = norm(s.position - tx.position - at[m]);
                tap.amplitudes[m] += s.gain * detail::propagation_phasor(d_ts + d_sr, lambda);
            }
        }
        for (auto &a : tap.amplitudes)
            a *= amp;
        taps.push_back(std::move(tap));
    }
    return taps;
}

// Tx -> RIS -> cluster -> Rx taps before phase configuration
inline std::vector<RisTapTemplate> db_templates(const Scene &scene, const Vec3 &rx, const ClusterSet &set,
                                                double chi_db, std::span<const double> tx_ris_distances)
{
    std::vector<RisTapTemplate> out;
    if (set.empty())
        return out;
    const auto &tx = scene.tx;
    const auto &ris = scene.ris;
    double lambda = scene.wavelength();
    std::size_t units = ris.units();
    auto ai = detail::ris_offsets(ris);
    double d_ti = distance(tx.position, ris.position);
    double g_t = gain_antenna(scene.tx_pattern, elevation_angle(tx.position, tx.normal, ris.position));
    double g_it = ris_traversal_gain(ris, lambda, elevation_angle(ris.position, ris.normal, tx.position));

    std::vector<cplx> tx_ris_phasor(tx_ris_distances.size());
    for (std::size_t k = 0; k < tx_ris_distances.size(); ++k)
        tx_ris_phasor[k] = detail::propagation_phasor(tx_ris_distances[k], lambda);

    std::vector<cplx> unit_sum(units);
    for (std::size_t c = 0; c < set.clusters.size(); ++c)
    {
        const Cluster &cl = set.clusters[c];
        double d_ic = distance(ris.position, cl.position);
        double d_cr = distance(cl.position, rx);
        double loss = db_to_linear(pl_db_nlos(scene.pathloss, ris, d_ti, d_ic, d_cr, chi_db));
        double g_r = gain_antenna(scene.rx_pattern, elevation_angle(rx, scene.rx_normal, cl.position));
        double g_ic = ris_traversal_gain(ris, lambda, elevation_angle(ris.position, ris.normal, cl.position));

        // sum_s beta_s exp(-j 2 pi (d^IS_{i,s} + d^SR_s) / lambda) per unit
        std::fill(unit_sum.begin(), unit_sum.end(), cplx{});
        for (const Scatterer &s : cl.scatterers)
        {
            double d_sr = distance(s.position, rx);
            for (std::size_t i = 0; i < units; ++i)
            {
                double d_is = norm(s.position - ris.position - ai[i]);
                unit_sum[i] += s.gain * detail::propagation_phasor(d_is + d_sr, lambda);
            }
        }

        RisTapTemplate t;
        t.kind = PathKind::double_bounce;
        t.delay = (d_ti + d_ic + d_cr) / speed_of_light;
        t.source = int(c);
        t.prefactor = set.gamma * std::sqrt(loss * g_t * g_r * g_it * g_ic);
        t.units = units;
        t.weights.resize(tx.antennas * units);
        for (std::size_t m = 0; m < tx.antennas; ++m)
            for (std::size_t i = 0; i < units; ++i)
                t.weights[m * units + i] = tx_ris_phasor[m * units + i] * unit_sum[i];
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<PathTap> cir_db(const Scene &scene, const Vec3 &rx, const ClusterSet &set,
                                   std::span<const double> theta, double chi_db)
{
    detail::check_phase_length(scene, theta.size());
    std::vector<PathTap> taps;
    if (set.empty())
        return taps;
    auto dist = detail::tx_ris_element_distances(scene);
    auto phasors = ris_phasors(theta);
    for (const auto &t : db_templates(scene, rx, set, chi_db, dist))
        taps.push_back(t.apply(phasors));
    return taps;
}

// Everything about the channel at one Rx position that does not depend on the RIS phases.
// evaluate() then costs M_T * I per RIS-dependent tap.
class ChannelSnapshot
{
  public:
    ChannelSnapshot(const Scene &scene, const Vec3 &rx, const LocalConditions &cond)
        : ChannelSnapshot(scene, rx, cond, detail::tx_ris_element_distances(scene))
    {
    }

    // tx_ris_distances: d^TI_{m,i} for this scene, shared across positions
    ChannelSnapshot(const Scene &scene, const Vec3 &rx, const LocalConditions &cond,
                    std::span<const double> tx_ris_distances)
        : position_(rx), units_(scene.ris.units())
    {
        if (!scene.room.contains(rx))
            throw std::out_of_range("Rx position lies outside the room.");
        if (auto los = cir_los(scene, rx, cond.los, cond.sf_los))
            fixed_.push_back(std::move(*los));
        if (scene.ris_enabled && cond.vlos)
            ris_.push_back(vlos_template(scene, rx, cond.sf_los, tx_ris_distances));
        if (cond.single_bounce)
            for (auto &t : cir_sb(scene, rx, *cond.single_bounce, cond.sf_nlos))
                fixed_.push_back(std::move(t));
        if (scene.ris_enabled && cond.double_bounce)
            for (auto &t : db_templates(scene, rx, *cond.double_bounce, cond.sf_nlos, tx_ris_distances))
                ris_.push_back(std::move(t));
    }

    // Taps ordered LoS, VLoS, SB clusters, DB clusters
    Cir evaluate(std::span<const cplx> ris_phasors, std::size_t measurement = 0) const
    {
        if (ris_phasors.size() != units_)
            throw std::invalid_argument("Phase vector length does not match the RIS unit count.");
        Cir cir;
        cir.position = position_;
        cir.measurement = measurement;
        cir.taps.reserve(fixed_.size() + ris_.size());
        auto fixed = fixed_.begin();
        if (fixed != fixed_.end() && fixed->kind == PathKind::los)
            cir.taps.push_back(*fixed++);
        auto ris = ris_.begin();
        if (ris != ris_.end() && ris->kind == PathKind::vlos)
            cir.taps.push_back((ris++)->apply(ris_phasors));
        for (; fixed != fixed_.end(); ++fixed)
            cir.taps.push_back(*fixed);
        for (; ris != ris_.end(); ++ris)
            cir.taps.push_back(ris->apply(ris_phasors));
        return cir;
    }

    bool depends_on_phases() const { return !ris_.empty(); }

  private:
    Vec3 position_;
    std::size_t units_;
    std::vector<PathTap> fixed_;
    std::vector<RisTapTemplate> ris_;
};

// Full CIR from already-resolved local conditions
inline Cir cir_total(const Scene &scene, const Vec3 &rx, const LocalConditions &cond, std::span<const double> theta)
{
    detail::check_phase_length(scene, theta.size());
    return ChannelSnapshot(scene, rx, cond).evaluate(ris_phasors(theta));
}

// Full CIR with conditions, shadow fading and clusters looked up in the consistency maps
inline Cir cir_total(const Scene &scene, const Vec3 &rx, const ConsistencyMaps &maps, std::span<const double> theta)
{
    if (!scene.room.contains(rx))
        throw std::out_of_range("Rx position lies outside the room.");
    return cir_total(scene, rx, conditions_at(maps, rx), theta);
}

} // namespace risfp
