#pragma once

/**
 * \file amplitudes.hpp
 *
 * \brief Reflection and transmission amplitudes at the step, zone by zone.
 *
 * Matching u(p,E) + R u(-p,E) = T u2 at z = 0 gives, with the real parameter
 * alpha = q (E+m) / (p (E-V0+m)),
 *
 *   diffusion, Klein:   R = (1 - alpha)/(1 + alpha),      T = 2/(1 + alpha)
 *   Dirac tunneling:    R = (1 - i at)/(1 + i at),        T = 2/(1 + i at)
 *   Klein tunneling:    R = (1 + i at)/(1 - i at),        T = 2/(1 - i at)
 *
 * where at = qt (E+m) / (p (E-V0+m)) is the evanescent continuation of alpha.
 * The Klein-tunneling amplitude is the conjugate of the Dirac-tunneling one;
 * the two branches meet at e = v0 with a phase jump.
 */

#include "dirac_step/kinematics.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace dirac_step {

/// Exact-point limits that the closed forms cannot evaluate directly.
enum class AmplitudeLimit {
    none,
    grazing,     ///< e == 1: p = 0
    klein_edge   ///< e == v0 - 1: alpha and at diverge on both branches
};

struct ScatterAmplitudes {
    complex r_amp;
    complex t_amp;
    double alpha;  ///< alpha in oscillatory zones, at in tunneling zones
    Zone zone;
    AmplitudeLimit limit = AmplitudeLimit::none;
};

struct PositronFrame {
    double e_a;  ///< positron energy, -e
    double q_a;  ///< positron momentum, equal to q
    double v_a;  ///< positron group velocity q/(v0 - e), > 0
};

enum class ParticleNature { electron, positron };

inline std::string_view to_string(ParticleNature n) noexcept
{
    return n == ParticleNature::electron ? "electron" : "positron";
}

namespace detail {

inline double matching_ratio(const Kinematics& kin, double k2, const StepConfig& cfg)
{
    const double denom = kin.e - cfg.v0() + StepConfig::mass;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return k2 * (kin.e + StepConfig::mass) / (kin.p * denom);
}

inline void require_zone(Zone actual, bool ok, const char* what)
{
    if (!ok) {
        throw contract_violation(std::string(what) + " is not defined in zone " +
                                 std::string(to_string(actual)));
    }
}

} // namespace detail

/// alpha on the oscillatory branch of `zone` (diffusion or Klein).
inline double alpha_oscillatory(const Kinematics& kin, Zone zone, const StepConfig& cfg)
{
    detail::require_zone(zone, is_oscillatory(zone), "alpha");
    if (kin.p == 0.0) throw degenerate_incidence("alpha is undefined at p = 0");
    return detail::matching_ratio(kin, *kin.q, cfg);
}

inline double alpha_oscillatory(double e, const StepConfig& cfg)
{
    const Zone zone = classify_zone(e, cfg);
    detail::require_zone(zone, is_oscillatory(zone), "alpha");
    return alpha_oscillatory(make_kinematics(e, cfg, zone), zone, cfg);
}

/// at on the evanescent branch. Diverges as e -> v0 - 1 and returns +inf there.
inline double alpha_tilde(const Kinematics& kin, Zone zone, const StepConfig& cfg)
{
    detail::require_zone(zone, is_tunneling(zone), "alpha_tilde");
    if (kin.p == 0.0) throw degenerate_incidence("alpha_tilde is undefined at p = 0");
    return detail::matching_ratio(kin, *kin.qt, cfg);
}

inline double alpha_tilde(double e, const StepConfig& cfg)
{
    const Zone zone = classify_zone(e, cfg);
    detail::require_zone(zone, is_tunneling(zone), "alpha_tilde");
    return alpha_tilde(make_kinematics(e, cfg, zone), zone, cfg);
}

/// Amplitudes on the branch of `zone`, which must contain e (boundary points may
/// be evaluated from either side).
inline ScatterAmplitudes scatter_in_zone(double e, const StepConfig& cfg, Zone zone)
{
    if (!std::isfinite(e) || !std::isfinite(cfg.v0())) {
        throw std::invalid_argument("scatter: non-finite input");
    }
    const Kinematics kin = make_kinematics(e, cfg, zone);
    const double inf = std::numeric_limits<double>::infinity();

    if (kin.p == 0.0) {
        // Both matching ratios diverge as p -> 0, so every branch tends to R = -1.
        if (cfg.v0() == 0.0) return {0.0, 1.0, 1.0, zone, AmplitudeLimit::grazing};
        const double a = zone == Zone::klein ? -inf : inf;
        return {-1.0, 0.0, a, zone, AmplitudeLimit::grazing};
    }

    if (is_oscillatory(zone)) {
        const double a = alpha_oscillatory(kin, zone, cfg);
        if (std::isinf(a)) return {-1.0, 0.0, -inf, zone, AmplitudeLimit::klein_edge};
        return {(1.0 - a) / (1.0 + a), 2.0 / (1.0 + a), a, zone};
    }

    const double at = alpha_tilde(kin, zone, cfg);
    if (std::isinf(at)) return {-1.0, 0.0, at, zone, AmplitudeLimit::klein_edge};
    const complex i_at(0.0, zone == Zone::dirac_tunneling ? at : -at);
    return {(1.0 - i_at) / (1.0 + i_at), 2.0 / (1.0 + i_at), at, zone};
}

inline ScatterAmplitudes scatter(double e, const StepConfig& cfg)
{
    if (!std::isfinite(e)) throw std::invalid_argument("scatter: non-finite energy");
    return scatter_in_zone(e, cfg, classify_zone(e, cfg));
}

/// |R|^2 + alpha |T|^2 - 1. Only meaningful where region II carries flux.
inline double flux_residual(const ScatterAmplitudes& amps)
{
    if (is_tunneling(amps.zone)) {
        throw contract_violation("no flux in region II for an evanescent solution");
    }
    // alpha is infinite exactly where T vanishes.
    if (amps.t_amp == 0.0) return std::norm(amps.r_amp) - 1.0;
    return std::norm(amps.r_amp) + amps.alpha * std::norm(amps.t_amp) - 1.0;
}

/// Spinor continuity residual u(p) + R u(-p) - T u2 at z = 0. Zero componentwise
/// for a consistent set of amplitudes.
inline Spinor4 continuity_residual(double e, const StepConfig& cfg, const ScatterAmplitudes& amps)
{
    const Kinematics kin = make_kinematics(e, cfg, amps.zone);
    Spinor4 res = free_spinor(kin.p, e) + amps.r_amp * free_spinor(-kin.p, e);
    switch (amps.limit) {
        case AmplitudeLimit::none: res -= amps.t_amp * region2_spinor(amps.zone, kin, cfg); break;
        case AmplitudeLimit::grazing:
            if (amps.t_amp != 0.0) res -= amps.t_amp * region2_spinor(amps.zone, kin, cfg);
            break;
        case AmplitudeLimit::klein_edge:
            // T -> 0 while u2.c3 diverges; T u2 -> [0, 0, 2p/(e+m), 0].
            res -= Spinor4{0.0, 0.0, 2.0 * kin.p / (e + StepConfig::mass), 0.0};
            break;
    }
    return res;
}

inline PositronFrame positron_frame(double e, const StepConfig& cfg)
{
    const Zone zone = classify_zone(e, cfg);
    detail::require_zone(zone, zone == Zone::klein, "positron_frame");
    const Kinematics kin = make_kinematics(e, cfg, zone);
    return {-e, *kin.q, *kin.q / (cfg.v0() - e)};
}

/// Electrons under the step above v0, positrons below it.
constexpr ParticleNature region2_nature(Zone zone) noexcept
{
    switch (zone) {
        case Zone::diffusion:
        case Zone::dirac_tunneling: return ParticleNature::electron;
        case Zone::klein_tunneling:
        case Zone::klein: return ParticleNature::positron;
    }
    return ParticleNature::electron;
}

} // namespace dirac_step
