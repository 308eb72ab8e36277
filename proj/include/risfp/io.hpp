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

#include "channel.hpp"
#include "config.hpp"
#include "fingerprint.hpp"
#include "grid_map.hpp"
#include "localize.hpp"
#include "spatial_maps.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <optional>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace risfp
{

inline constexpr std::string_view version = "0.1.0";

// Database or report file that does not match the expected layout; row is 1-based over file lines, 0 for the file as a whole
class FormatError : public std::runtime_error
{
  public:
    FormatError(std::size_t row, const std::string &message)
        : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " + message : message), row_(row)
    {
    }
    std::size_t row() const { return row_; }

  private:
    std::size_t row_;
};

inline std::string fixed6(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    if (res.ec != std::errc())
        throw std::runtime_error("Value cannot be formatted.");
    return std::string(buf, res.ptr);
}

// Shortest round-trip representation
inline std::string shortest(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void write_database_csv(std::ostream &os, const FingerprintDb &db)
{
    os << "x,y,z";
    for (std::size_t n = 1; n <= db.measurements; ++n)
        os << ",rss_" << n;
    os << '\n';
    for (const auto &r : db.records)
    {
        if (r.rss.size() != db.measurements)
            throw std::invalid_argument("Record does not carry one RSS value per measurement.");
        os << fixed6(r.position.x) << ',' << fixed6(r.position.y) << ',' << fixed6(r.position.z);
        for (double v : r.rss)
            os << ',' << fixed6(v);
        os << '\n';
    }
}

namespace detail
{
inline std::vector<std::string_view> split_csv_line(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline bool parse_double(std::string_view s, double &out)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}
} // namespace detail

inline FingerprintDb read_database_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line))
        throw FormatError(1, "missing header");
    auto header = detail::split_csv_line(line);
    if (header.size() < 4 || header[0] != "x" || header[1] != "y" || header[2] != "z")
        throw FormatError(1, "header must read x,y,z,rss_1,...,rss_N");
    FingerprintDb db;
    db.measurements = header.size() - 3;
    for (std::size_t n = 1; n <= db.measurements; ++n)
        if (header[n + 2] != "rss_" + std::to_string(n))
            throw FormatError(1, "expected column 'rss_" + std::to_string(n) + "', found '" + std::string(header[n + 2]) + "'");

    std::size_t row = 1;
    while (std::getline(is, line))
    {
        ++row;
        if (line.empty() || line == "\r")
        {
            if (is.peek() == std::char_traits<char>::eof())
                break;
            throw FormatError(row, "empty line");
        }
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw FormatError(row, "expected " + std::to_string(header.size()) + " columns, found " +
                                       std::to_string(cells.size()));
        double v[3];
        for (int j = 0; j < 3; ++j)
            if (!detail::parse_double(cells[std::size_t(j)], v[j]))
                throw FormatError(row, "non-numeric value in column " + std::to_string(j + 1));
        FingerprintRecord rec;
        rec.position = {v[0], v[1], v[2]};
        rec.rss.resize(db.measurements);
        for (std::size_t n = 0; n < db.measurements; ++n)
            if (!detail::parse_double(cells[n + 3], rec.rss[n]))
                throw FormatError(row, "non-numeric value in column " + std::to_string(n + 4));
        db.records.push_back(std::move(rec));
    }
    if (db.records.empty())
        throw FormatError(0, "database holds no records");
    return db;
}

inline FingerprintDb read_database_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("Cannot open database file '" + path.string() + "'.");
    return read_database_csv(in);
}

// Grid values with one CSV line per map row (increasing y) and one column per map column (increasing x)
template <typename V, typename Fmt>
void write_grid_csv(std::ostream &os, const GridMap<V> &map, Fmt &&fmt)
{
    for (std::size_t r = 0; r < map.rows(); ++r)
    {
        for (std::size_t c = 0; c < map.cols(); ++c)
        {
            if (c)
                os << ',';
            os << fmt(map.at(r, c));
        }
        os << '\n';
    }
}

template <typename V>
nlohmann::ordered_json grid_descriptor(const GridMap<V> &map, std::string_view quantity, std::string_view unit)
{
    return {{"quantity", quantity},
            {"unit", unit},
            {"origin_m", {map.origin().x, map.origin().y}},
            {"granularity_m", map.granularity()},
            {"rows", map.rows()},
            {"cols", map.cols()},
            {"row_axis", "y"},
            {"col_axis", "x"},
            {"value_at", "cell"}};
}

inline nlohmann::ordered_json cluster_set_json(const ClusterSet &set)
{
    using J = nlohmann::ordered_json;
    J clusters = J::array();
    for (const auto &c : set.clusters)
    {
        J scat = J::array();
        for (const auto &s : c.scatterers)
            scat.push_back({{"position_m", {s.position.x, s.position.y, s.position.z}},
                            {"gain", {s.gain.real(), s.gain.imag()}}});
        clusters.push_back({{"position_m", {c.position.x, c.position.y, c.position.z}},
                            {"distance_m", c.distance},
                            {"azimuth_rad", c.azimuth},
                            {"elevation_rad", c.elevation},
                            {"scatterers", std::move(scat)}});
    }
    return {{"gamma", set.gamma}, {"clusters", std::move(clusters)}};
}

inline nlohmann::ordered_json cluster_map_json(const GridMap<CellClusters> &map)
{
    using J = nlohmann::ordered_json;
    J cells = J::array();
    for (std::size_t idx = 0; idx < map.size(); ++idx)
    {
        auto center = map.center(idx / map.cols(), idx % map.cols(), 0.0);
        cells.push_back({{"index", idx},
                         {"center_m", {center.x, center.y}},
                         {"single_bounce", cluster_set_json(map[idx].single_bounce)},
                         {"double_bounce", cluster_set_json(map[idx].double_bounce)}});
    }
    auto desc = grid_descriptor(map, "clusters", "");
    desc["cells"] = std::move(cells);
    return desc;
}

inline nlohmann::ordered_json eval_report_json(const EvalReport &rep, std::string_view db_source)
{
    return {{"software_version", version},
            {"database", db_source},
            {"k", rep.k},
            {"train_fraction", rep.split.train_fraction},
            {"split_seed", rep.split.seed},
            {"train_size", rep.train_size},
            {"test_size", rep.errors.size()},
            {"measurements", rep.measurements},
            {"rmse_m", rep.rmse},
            {"error_metric", "planar (x, y)"},
            {"weighting", "inverse distance, epsilon 1e-9"},
            {"cdf_errors_m", rep.sorted_errors}};
}

inline void write_errors_csv(std::ostream &os, const EvalReport &rep)
{
    os << "query,x,y,z,x_pred,y_pred,z_pred,error_m\n";
    for (std::size_t q = 0; q < rep.errors.size(); ++q)
    {
        const auto &t = rep.truth[q];
        const auto &p = rep.predicted[q];
        os << q + 1 << ',' << fixed6(t.x) << ',' << fixed6(t.y) << ',' << fixed6(t.z) << ',' << fixed6(p.x) << ','
           << fixed6(p.y) << ',' << fixed6(p.z) << ',' << fixed6(rep.errors[q]) << '\n';
    }
}

inline void write_cir_csv(std::ostream &os, const Cir &cir)
{
    os << "tap,kind,cluster,delay_s,antenna,re,im\n";
    for (std::size_t t = 0; t < cir.taps.size(); ++t)
    {
        const auto &tap = cir.taps[t];
        for (std::size_t m = 0; m < tap.amplitudes.size(); ++m)
            os << t + 1 << ',' << to_string(tap.kind) << ',' << tap.source << ',' << shortest(tap.delay) << ',' << m + 1 << ','
               << shortest(tap.amplitudes[m].real()) << ',' << shortest(tap.amplitudes[m].imag()) << '\n';
    }
}

// Generation timestamp from SOURCE_DATE_EPOCH when set, otherwise absent so repeated runs stay byte-identical
inline std::optional<std::string> reproducible_timestamp()
{
    const char *env = std::getenv("SOURCE_DATE_EPOCH");
    if (!env || !*env)
        return std::nullopt;
    long long secs = 0;
    auto res = std::from_chars(env, env + std::char_traits<char>::length(env), secs);
    if (res.ec != std::errc())
        return std::nullopt;
    std::time_t t = std::time_t(secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

inline void write_text_file(const std::filesystem::path &path, const std::string &text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("Cannot write '" + path.string() + "'.");
    out << text;
    if (!out)
        throw std::runtime_error("Write to '" + path.string() + "' failed.");
}

inline std::string digest_hex(std::string_view bytes)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

} // namespace risfp
