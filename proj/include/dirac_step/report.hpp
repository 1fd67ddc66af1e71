#pragma once

/**
 * \file report.hpp
 *
 * \brief Tabular output shared by the CLI: CSV and a JSON mirror.
 *
 * CSV layout: line 1 is the column header, then one line per row, then a
 * trailing `# v0=<value>` metadata comment. Numbers use 17 significant digits
 * (`%.17g`), booleans 0/1. The JSON mirror is
 * `{"v0": ..., "columns": [...], "rows": [{<column>: <value>, ...}, ...]}`
 * with non-finite numbers written as null.
 */

#include "dirac_step/amplitudes.hpp"
#include "dirac_step/analysis.hpp"
#include "dirac_step/wavepacket.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace dirac_step {

using Cell = std::variant<double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    double v0 = 0.0;
};

inline std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_cell(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "1" : "0";
    return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& t)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
    os << "# v0=" << format_number(t.v0) << '\n';
}

inline nlohmann::ordered_json to_json(const Table& t)
{
    nlohmann::ordered_json out;
    out["v0"] = t.v0;
    out["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>) {
                        if (std::isfinite(v)) obj[t.columns[i]] = v;
                        else obj[t.columns[i]] = nullptr;
                    } else {
                        obj[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    out["rows"] = std::move(rows);
    return out;
}

inline Table amplitudes_table(double e, const StepConfig& cfg, const ScatterAmplitudes& a)
{
    Table t{{"e", "zone", "re_r", "im_r", "r_mod", "r_arg", "re_t", "im_t", "alpha"}, {}, cfg.v0()};
    t.rows.push_back({e, std::string(to_string(a.zone)), a.r_amp.real(), a.r_amp.imag(), std::abs(a.r_amp),
                      std::arg(a.r_amp), a.t_amp.real(), a.t_amp.imag(), a.alpha});
    return t;
}

inline Table sweep_table(const std::vector<SweepRow>& rows, const StepConfig& cfg)
{
    Table t{{"e", "zone", "r_mod", "r_arg", "r_arg_unwrapped", "t_mod", "alpha", "d_arg_de", "one_sided"},
            {},
            cfg.v0()};
    t.rows.reserve(rows.size());
    for (const SweepRow& r : rows) {
        t.rows.push_back({r.e, std::string(to_string(r.zone)), r.r_mod, r.r_arg, r.r_arg_unwrapped, r.t_mod,
                          r.alpha, r.d_arg_de, r.one_sided});
    }
    return t;
}

inline Table series_table(const DensitySeries& s, const StepConfig& cfg)
{
    Table t{{"t", "n1", "n2", "r"}, {}, cfg.v0()};
    t.rows.reserve(s.times.size());
    for (std::size_t i = 0; i < s.times.size(); ++i) t.rows.push_back({s.times[i], s.n1[i], s.n2[i], s.r[i]});
    return t;
}

} // namespace dirac_step
