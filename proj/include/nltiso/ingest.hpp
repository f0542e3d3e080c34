/*
 * Copyright 2026 The nltiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#ifndef NLTISO_INGEST_HPP
#define NLTISO_INGEST_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace nltiso
{

struct RawColumn
{
    std::string label;
    /// Free-form sensor kind, e.g. "pressure"; empty when the header has none.
    std::string unit;
    /// Sample times in seconds, strictly increasing.
    std::vector<double> times;
    std::vector<double> values;
};

struct RawTable
{
    std::vector<RawColumn> columns;
    double sample_period = 1.0;

    std::size_t num_columns() const noexcept { return columns.size(); }
    std::size_t num_rows() const noexcept { return columns.empty() ? 0 : columns.front().values.size(); }
};

struct CsvOptions
{
    /// First column holds timestamps (epoch seconds or ISO-8601).
    bool time_column = false;
    char delimiter = ',';
    /// Spacing assigned to rows when there is no time column.
    double sample_period = 1.0;
};

namespace detail
{

inline std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        s = s.substr(1, s.size() - 2);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char delimiter)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline bool parse_double(std::string_view s, double& out) noexcept
{
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) noexcept
{
    if (pos + len > s.size())
        return false;
    const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc() && ptr == s.data() + pos + len;
}

/// YYYY-MM-DD[T| ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM] to seconds since the epoch.
inline bool parse_iso8601(std::string_view s, double& out) noexcept
{
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
        s[16] != ':')
        return false;
    if (!parse_fixed(s, 0, 4, year) || !parse_fixed(s, 5, 2, month) || !parse_fixed(s, 8, 2, day) ||
        !parse_fixed(s, 11, 2, hour) || !parse_fixed(s, 14, 2, minute) || !parse_fixed(s, 17, 2, second))
        return false;
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                             std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 60)
        return false;
    double fraction = 0.0;
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        std::size_t end = pos + 1;
        while (end < s.size() && s[end] >= '0' && s[end] <= '9')
            ++end;
        if (end == pos + 1 || !parse_double(std::string("0") + std::string(s.substr(pos, end - pos)), fraction))
            return false;
        pos = end;
    }
    double offset = 0.0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            // UTC
        } else if ((s[pos] == '+' || s[pos] == '-') && s.size() == pos + 6 && s[pos + 3] == ':') {
            int oh = 0, om = 0;
            if (!parse_fixed(s, pos + 1, 2, oh) || !parse_fixed(s, pos + 4, 2, om))
                return false;
            offset = (s[pos] == '+' ? 1.0 : -1.0) * (oh * 3600.0 + om * 60.0);
        } else {
            return false;
        }
    }
    const auto days = sys_days{ymd}.time_since_epoch().count();
    out = static_cast<double>(days) * 86400.0 + hour * 3600.0 + minute * 60.0 + second + fraction - offset;
    return true;
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// "name [unit]" -> {name, unit}
inline std::pair<std::string, std::string> split_label(std::string_view header)
{
    const auto open = header.rfind('[');
    if (open != std::string_view::npos && !header.empty() && header.back() == ']') {
        return {std::string(trim(header.substr(0, open))),
                std::string(trim(header.substr(open + 1, header.size() - open - 2)))};
    }
    return {std::string(header), {}};
}

} // namespace detail

/// Reads a delimited numeric table with one header row. Lines starting with
/// '#' and blank lines are skipped. Any unparseable or missing cell rejects
/// the file with its line and column.
inline RawTable load_csv(const std::string& path, const CsvOptions& options = {})
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    if (!(options.sample_period > 0.0))
        throw ConfigError("sample period must be positive");

    RawTable table;
    std::vector<double> times;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = detail::trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        const auto cells = detail::split(line, options.delimiter);
        if (!have_header) {
            expected = cells.size();
            const std::size_t first = options.time_column ? 1 : 0;
            if (expected <= first)
                throw ParseError(path + ":" + std::to_string(line_no) + ": header has no data columns");
            for (std::size_t c = first; c < cells.size(); ++c) {
                auto [label, unit] = detail::split_label(cells[c]);
                table.columns.push_back(RawColumn{std::move(label), std::move(unit), {}, {}});
            }
            have_header = true;
            continue;
        }
        if (cells.size() != expected)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                             " fields, found " + std::to_string(cells.size()));
        std::size_t c = 0;
        if (options.time_column) {
            double t = 0.0;
            if (!detail::parse_double(cells[0], t) && !detail::parse_iso8601(cells[0], t))
                throw ParseError(path + ":" + std::to_string(line_no) + ": column 1: invalid timestamp '" +
                                 std::string(cells[0]) + "'");
            if (!times.empty() && t <= times.back())
                throw ParseError(path + ":" + std::to_string(line_no) + ": timestamps must increase");
            times.push_back(t);
            c = 1;
        } else {
            times.push_back(static_cast<double>(times.size()) * options.sample_period);
        }
        for (std::size_t col = 0; c < cells.size(); ++c, ++col) {
            double v = 0.0;
            if (!detail::parse_double(cells[c], v))
                throw ParseError(path + ":" + std::to_string(line_no) + ": column " + std::to_string(c + 1) + " ('" +
                                 table.columns[col].label + "'): " +
                                 (cells[c].empty() ? std::string("missing value")
                                                   : "not a number: '" + std::string(cells[c]) + "'"));
            table.columns[col].values.push_back(v);
        }
    }
    if (!have_header)
        throw ParseError(path + ": no header row");
    if (times.empty())
        throw ParseError(path + ": no data rows");
    for (auto& col : table.columns)
        col.times = times;
    if (options.time_column && times.size() >= 2) {
        std::vector<double> diffs;
        for (std::size_t i = 1; i < times.size(); ++i)
            diffs.push_back(times[i] - times[i - 1]);
        std::nth_element(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(diffs.size() / 2), diffs.end());
        table.sample_period = diffs[diffs.size() / 2];
    } else {
        table.sample_period = options.sample_period;
    }
    return table;
}

/// Writes `table` with 17 significant digits. Columns must share their
/// time grid when `time_column` is set. `preamble` lines are written as
/// '#' comments before the header.
inline void write_csv(const RawTable& table, const std::string& path, bool time_column = false,
                      const std::vector<std::string>& preamble = {})
{
    const std::size_t rows = table.num_rows();
    for (const auto& col : table.columns)
        if (col.values.size() != rows || (time_column && col.times.size() != rows))
            throw DimensionError("cannot write ragged table to '" + path + "'");
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    for (const auto& line : preamble)
        out << "# " << line << '\n';
    bool first = true;
    if (time_column) {
        out << "time";
        first = false;
    }
    for (const auto& col : table.columns) {
        if (!first)
            out << ',';
        out << col.label;
        if (!col.unit.empty())
            out << " [" << col.unit << ']';
        first = false;
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        first = true;
        if (time_column) {
            out << detail::format_double(table.columns.front().times[r]);
            first = false;
        }
        for (const auto& col : table.columns) {
            if (!first)
                out << ',';
            out << detail::format_double(col.values[r]);
            first = false;
        }
        out << '\n';
    }
    if (!out)
        throw InputError("failed writing '" + path + "'");
}

inline RawTable table_from_series(const SeriesMatrix& series, double sample_period = 1.0)
{
    RawTable table;
    table.sample_period = sample_period;
    for (std::size_t n = 0; n < series.num_nodes(); ++n) {
        RawColumn col;
        col.label = series.node_ids()[n];
        const auto row = series.row(n);
        col.values.assign(row.begin(), row.end());
        for (std::size_t t = 0; t < row.size(); ++t)
            col.times.push_back(static_cast<double>(t) * sample_period);
        table.columns.push_back(std::move(col));
    }
    return table;
}

/// Result of standardization: the unit-variance series and the per-column
/// affine map back to the original units.
struct Standardized
{
    SeriesMatrix series;
    std::vector<double> means;
    std::vector<double> scales;

    /// Original-unit value of a standardized sample of `node`.
    double invert(std::size_t node, double z) const noexcept { return z * scales[node] + means[node]; }

    std::vector<std::vector<double>> inverse(const SeriesMatrix& z) const
    {
        if (z.num_nodes() != means.size())
            throw DimensionError("inverse transform expects " + std::to_string(means.size()) + " rows");
        std::vector<std::vector<double>> rows(z.num_nodes());
        for (std::size_t n = 0; n < z.num_nodes(); ++n)
            for (double v : z.row(n))
                rows[n].push_back(invert(n, v));
        return rows;
    }
};

/// Zero mean, unit sample variance (1 / (L - 1) estimator) per row.
inline Standardized standardize(const std::vector<std::vector<double>>& rows, std::vector<std::string> labels)
{
    if (rows.empty())
        throw InputError("nothing to standardize");
    Standardized out;
    std::vector<std::vector<double>> z(rows.size());
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const auto& r = rows[n];
        const std::string name = n < labels.size() ? labels[n] : std::to_string(n);
        if (r.size() < 2)
            throw DegenerateError("column '" + name + "' needs at least 2 samples to standardize");
        if (r.size() != rows.front().size())
            throw DimensionError("column '" + name + "' has a different length");
        double mean = 0.0;
        for (double v : r)
            mean += v;
        mean /= static_cast<double>(r.size());
        double ss = 0.0;
        for (double v : r)
            ss += (v - mean) * (v - mean);
        const double scale = std::sqrt(ss / static_cast<double>(r.size() - 1));
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw DegenerateError("column '" + name + "' has zero variance");
        z[n].reserve(r.size());
        for (double v : r)
            z[n].push_back((v - mean) / scale);
        out.means.push_back(mean);
        out.scales.push_back(scale);
    }
    out.series = SeriesMatrix(std::move(z), std::move(labels));
    return out;
}

inline Standardized standardize(const RawTable& table)
{
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (const auto& col : table.columns) {
        rows.push_back(col.values);
        labels.push_back(col.label);
    }
    return standardize(rows, std::move(labels));
}

inline Standardized standardize(const SeriesMatrix& series)
{
    std::vector<std::vector<double>> rows;
    for (std::size_t n = 0; n < series.num_nodes(); ++n)
        rows.emplace_back(series.row(n).begin(), series.row(n).end());
    return standardize(rows, series.node_ids());
}

/// Linear interpolation of every column onto t0, t0 + period, ... within
/// the time range shared by all columns.
inline RawTable resample_uniform(const RawTable& table, double period)
{
    if (!(period > 0.0) || !std::isfinite(period))
        throw ConfigError("resampling period must be positive");
    if (table.columns.empty())
        throw RangeError("cannot resample an empty table");
    double start = -std::numeric_limits<double>::infinity();
    double end = std::numeric_limits<double>::infinity();
    for (const auto& col : table.columns) {
        if (col.times.empty() || col.times.size() != col.values.size())
            throw DimensionError("column '" + col.label + "' has mismatched times and values");
        for (std::size_t i = 1; i < col.times.size(); ++i)
            if (!(col.times[i] > col.times[i - 1]))
                throw OrderingError("column '" + col.label + "' timestamps are not increasing");
        start = std::max(start, col.times.front());
        end = std::min(end, col.times.back());
    }
    if (start > end)
        throw RangeError("columns share no common time range");

    std::vector<double> grid;
    const double slack = 1e-9 * period;
    for (std::size_t k = 0;; ++k) {
        const double g = start + static_cast<double>(k) * period;
        if (g > end + slack)
            break;
        grid.push_back(std::min(g, end));
    }

    RawTable out;
    out.sample_period = period;
    for (const auto& col : table.columns) {
        RawColumn r{col.label, col.unit, grid, {}};
        r.values.reserve(grid.size());
        std::size_t i = 0;
        for (double g : grid) {
            while (i + 1 < col.times.size() && col.times[i + 1] <= g)
                ++i;
            if (col.times[i] == g || i + 1 == col.times.size()) {
                r.values.push_back(col.values[i]);
            } else {
                const double w = (g - col.times[i]) / (col.times[i + 1] - col.times[i]);
                r.values.push_back(col.values[i] + w * (col.values[i + 1] - col.values[i]));
            }
        }
        out.columns.push_back(std::move(r));
    }
    return out;
}

} // namespace nltiso

#endif
