#pragma once

/**
 * \file analysis.hpp
 *
 * \brief Energy sweeps of R and the diagnostics read off them: the phase jump at
 * e = v0, the peak of |R| in the Klein zone and dArg R/dE.
 */

#include "dirac_step/amplitudes.hpp"
#include "dirac_step/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace dirac_step {

struct SweepRow {
    double e;
    Zone zone;
    double r_mod;
    double r_arg;            ///< principal value in (-pi, pi]
    double r_arg_unwrapped;  ///< unwrapped within the row's zone only
    double t_mod;
    double alpha;            ///< alpha or at, depending on zone
    double d_arg_de;
    bool one_sided = false;  ///< e = v0 evaluated on the Klein-tunneling branch
};

struct PhaseJump {
    double arg_below;  ///< e -> v0 from below (Klein tunneling)
    double arg_above;  ///< e -> v0 from above (Dirac tunneling)
    double jump;       ///< arg_above - arg_below
};

struct KleinPeak {
    double e_star;
    double r_mod_star;
    bool boundary_hit;  ///< argmax fell on the first or last grid point
};

struct PhaseDerivative {
    double value;
    bool defined;  ///< false where R vanishes identically (no phase)
};

inline constexpr double default_phase_step = 1e-6;

namespace detail {

/// Difference of two phases folded into (-pi, pi].
inline double phase_delta(double to, double from) noexcept
{
    double d = std::remainder(to - from, 2.0 * std::numbers::pi);
    if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
}

inline double zone_arg(double e, const StepConfig& cfg, Zone zone)
{
    return std::arg(scatter_in_zone(e, cfg, zone).r_amp);
}

/// dArg R/dE on the branch of `zone`: central where the stencil fits inside the
/// zone, otherwise one-sided. NaN if neither fits.
inline double branch_phase_derivative(double e, Zone zone, const StepConfig& cfg, double de)
{
    const EnergyInterval ei = energy_interval(zone, cfg);
    const bool left = ei.contains(e - de);
    const bool right = ei.contains(e + de);
    if (left && right) {
        return phase_delta(zone_arg(e + de, cfg, zone), zone_arg(e - de, cfg, zone)) / (2.0 * de);
    }
    if (right) return phase_delta(zone_arg(e + de, cfg, zone), zone_arg(e, cfg, zone)) / de;
    if (left) return phase_delta(zone_arg(e, cfg, zone), zone_arg(e - de, cfg, zone)) / de;
    return std::numeric_limits<double>::quiet_NaN();
}

inline SweepRow make_row(double e, Zone zone, const StepConfig& cfg, bool one_sided)
{
    const ScatterAmplitudes a = scatter_in_zone(e, cfg, zone);
    const double d_arg = cfg.v0() == 0.0 ? 0.0 : branch_phase_derivative(e, zone, cfg, default_phase_step);
    const double arg = std::arg(a.r_amp);
    return {e, zone, std::abs(a.r_amp), arg, arg, std::abs(a.t_amp), a.alpha, d_arg, one_sided};
}

} // namespace detail

/// Uniform grid over [e_min, e_max] with the zone boundaries v0-1, v0, v0+1
/// inserted. At e = v0 two rows are emitted: the Klein-tunneling limit
/// (one_sided) followed by the Dirac-tunneling value.
inline std::vector<SweepRow> sweep(double e_min, double e_max, std::size_t n_points, const StepConfig& cfg)
{
    if (!(std::isfinite(e_min) && std::isfinite(e_max)) || e_min < 1.0 || !(e_min < e_max)) {
        throw std::invalid_argument("sweep needs 1 <= e_min < e_max");
    }
    if (n_points < 2) throw std::invalid_argument("sweep needs n_points >= 2");

    std::vector<double> grid(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        grid[i] = e_min + (e_max - e_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }
    grid.back() = e_max;
    const double v0 = cfg.v0();
    for (double b : {v0 - 1.0, v0, v0 + 1.0}) {
        if (b >= e_min && b <= e_max) grid.push_back(b);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<SweepRow> rows;
    rows.reserve(grid.size() + 1);
    const bool has_klein_tunneling = !energy_interval(Zone::klein_tunneling, cfg).empty();
    for (double e : grid) {
        const Zone zone = classify_zone(e, cfg);
        if (e == v0 && has_klein_tunneling) {
            rows.push_back(detail::make_row(e, Zone::klein_tunneling, cfg, true));
        }
        rows.push_back(detail::make_row(e, zone, cfg, false));
    }

    for (std::size_t i = 1; i < rows.size(); ++i) {
        SweepRow& cur = rows[i];
        const SweepRow& prev = rows[i - 1];
        if (cur.zone == prev.zone) {
            cur.r_arg_unwrapped = prev.r_arg_unwrapped + detail::phase_delta(cur.r_arg, prev.r_arg);
        }
    }
    return rows;
}

/// One-sided limits of Arg R at e = v0. The two branches are complex
/// conjugates there, so arg_below = -arg_above.
inline PhaseJump phase_jump(const StepConfig& cfg)
{
    const double v0 = cfg.v0();
    if (v0 < 1.0) throw invalid_energy("phase_jump needs v0 >= m so that e = v0 is physical");
    const double below = std::arg(scatter_in_zone(v0, cfg, Zone::klein_tunneling).r_amp);
    const double above = std::arg(scatter_in_zone(v0, cfg, Zone::dirac_tunneling).r_amp);
    return {below, above, above - below};
}

/// Grid argmax of |R| over the Klein zone [1, v0 - 1).
inline KleinPeak klein_peak(const StepConfig& cfg, double grid_step)
{
    if (!(grid_step > 0.0 && grid_step <= 1e-3)) {
        throw std::invalid_argument("klein_peak needs 0 < grid_step <= 1e-3");
    }
    const EnergyInterval ei = energy_interval(Zone::klein, cfg);
    if (ei.empty()) throw empty_zone_error("Klein zone is empty (needs v0 > 2)");

    KleinPeak best{ei.lo, -1.0, false};
    std::size_t best_k = 0;
    std::size_t k = 0;
    for (;; ++k) {
        const double e = ei.lo + grid_step * static_cast<double>(k);
        if (!(e < ei.hi)) break;
        const double r = std::abs(scatter_in_zone(e, cfg, Zone::klein).r_amp);
        if (r > best.r_mod_star) {
            best.e_star = e;
            best.r_mod_star = r;
            best_k = k;
        }
    }
    best.boundary_hit = best_k == 0 || best_k + 1 == k;
    return best;
}

/// Central difference of Arg R on the zone containing e. Throws stencil_error
/// if e - de or e + de lies in another zone.
inline PhaseDerivative phase_derivative(double e, const StepConfig& cfg, double de = default_phase_step)
{
    if (!(de > 0.0)) throw std::invalid_argument("phase_derivative needs de > 0");
    const Zone zone = classify_zone(e, cfg);
    const auto zone_of = [&](double x) {
        if (!std::isfinite(x) || x < 1.0) throw stencil_error("stencil leaves the physical range e >= 1");
        return classify_zone(x, cfg);
    };
    if (zone_of(e - de) != zone || zone_of(e + de) != zone) {
        throw stencil_error("stencil around e = " + std::to_string(e) + " crosses a zone boundary");
    }
    const ScatterAmplitudes lo = scatter_in_zone(e - de, cfg, zone);
    const ScatterAmplitudes hi = scatter_in_zone(e + de, cfg, zone);
    if (lo.r_amp == 0.0 || hi.r_amp == 0.0) return {0.0, false};
    return {detail::phase_delta(std::arg(hi.r_amp), std::arg(lo.r_amp)) / (2.0 * de), true};
}

} // namespace dirac_step
