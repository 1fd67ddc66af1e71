#pragma once

/**
 * \file kinematics.hpp
 *
 * \brief Units, energy zones and spin-up Dirac spinors for the electrostatic step.
 *
 * Everything is in units of the rest mass (hbar = c = m = 1): energies are E/m,
 * momenta p/m, times mt and lengths mz. The step is V(z) = 0 for z < 0
 * (region I) and V(z) = v0 for z > 0 (region II).
 */

#include "dirac_step/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace dirac_step {

using complex = std::complex<double>;

class StepConfig {
public:
    static constexpr double mass = 1.0;

    explicit StepConfig(double v0) : v0_(v0)
    {
        if (!std::isfinite(v0) || v0 < 0.0) {
            throw std::invalid_argument("step height v0 must be finite and >= 0");
        }
    }

    double v0() const noexcept { return v0_; }

private:
    double v0_;
};

/// Energy zones in increasing order of energy.
enum class Zone {
    klein,            ///< 1 <= e < v0 - 1, oscillatory region II, |R| > 1
    klein_tunneling,  ///< v0 - 1 <= e < v0, evanescent, positrons under the step
    dirac_tunneling,  ///< v0 <= e < v0 + 1, evanescent, electrons under the step
    diffusion         ///< e >= v0 + 1
};

inline constexpr std::array<Zone, 4> all_zones = {Zone::klein, Zone::klein_tunneling,
                                                  Zone::dirac_tunneling, Zone::diffusion};

inline std::string_view to_string(Zone z) noexcept
{
    switch (z) {
        case Zone::klein: return "klein";
        case Zone::klein_tunneling: return "klein_tunneling";
        case Zone::dirac_tunneling: return "dirac_tunneling";
        case Zone::diffusion: return "diffusion";
    }
    return "unknown";
}

/// Accepts the long names plus the short aliases dt/kt and the numbered zones 1, 2a, 2b, 3.
inline std::optional<Zone> parse_zone(std::string_view s) noexcept
{
    if (s == "klein" || s == "3") return Zone::klein;
    if (s == "klein_tunneling" || s == "kt" || s == "2b") return Zone::klein_tunneling;
    if (s == "dirac_tunneling" || s == "dt" || s == "2a") return Zone::dirac_tunneling;
    if (s == "diffusion" || s == "1") return Zone::diffusion;
    return std::nullopt;
}

inline bool is_tunneling(Zone z) noexcept
{
    return z == Zone::dirac_tunneling || z == Zone::klein_tunneling;
}

inline bool is_oscillatory(Zone z) noexcept { return !is_tunneling(z); }

inline void require_physical_energy(double e)
{
    if (!std::isfinite(e) || e < StepConfig::mass) {
        throw invalid_energy("energy must be finite and >= m, got " + std::to_string(e));
    }
}

/// Boundaries are closed below: e == v0 is Dirac tunneling, e == v0+1 diffusion,
/// e == v0-1 Klein tunneling.
inline Zone classify_zone(double e, const StepConfig& cfg)
{
    require_physical_energy(e);
    const double v0 = cfg.v0();
    if (e >= v0 + 1.0) return Zone::diffusion;
    if (e >= v0) return Zone::dirac_tunneling;
    if (e >= v0 - 1.0) return Zone::klein_tunneling;
    return Zone::klein;
}

/// Closed energy interval [lo, hi] of a zone, clipped to e >= 1. hi is +inf for diffusion.
struct EnergyInterval {
    double lo;
    double hi;

    bool empty() const noexcept { return !(lo < hi); }
    bool contains(double e) const noexcept { return e >= lo && e <= hi; }
};

inline EnergyInterval energy_interval(Zone zone, const StepConfig& cfg) noexcept
{
    const double v0 = cfg.v0();
    const double inf = std::numeric_limits<double>::infinity();
    switch (zone) {
        case Zone::klein: return {1.0, v0 - 1.0};
        case Zone::klein_tunneling: return {std::max(1.0, v0 - 1.0), v0};
        case Zone::dirac_tunneling: return {std::max(1.0, v0), v0 + 1.0};
        case Zone::diffusion: return {std::max(1.0, v0 + 1.0), inf};
    }
    return {inf, inf};
}

/// Momentum of an on-shell particle of energy e.
inline double momentum(double e)
{
    require_physical_energy(e);
    return std::sqrt((e - 1.0) * (e + 1.0));
}

inline double energy(double p) noexcept { return std::sqrt(p * p + 1.0); }

struct Kinematics {
    double e;
    double p;                  ///< region-I momentum
    std::optional<double> q;   ///< region-II momentum, oscillatory zones only
    std::optional<double> qt;  ///< evanescent decay rate, tunneling zones only
};

/// Kinematics evaluated on a given zone's branch. `zone` may be the zone on
/// either side of a boundary point, which is how one-sided limits are taken.
inline Kinematics make_kinematics(double e, const StepConfig& cfg, Zone zone)
{
    require_physical_energy(e);
    const double w = e - cfg.v0();
    // Boundary points computed as v0 +- 1 can land a rounding error on the wrong side.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, w * w);
    const auto clamp = [slack](double x) { return (x < 0.0 && x >= -slack) ? 0.0 : x; };
    Kinematics k{e, momentum(e), std::nullopt, std::nullopt};
    if (is_oscillatory(zone)) {
        const double q2 = clamp((w - 1.0) * (w + 1.0));
        if (q2 < 0.0) {
            throw contract_violation("oscillatory branch requested at a tunneling energy");
        }
        k.q = std::sqrt(q2);
    } else {
        const double qt2 = clamp((1.0 - w) * (1.0 + w));
        if (qt2 < 0.0) {
            throw contract_violation("evanescent branch requested at an oscillatory energy");
        }
        k.qt = std::sqrt(qt2);
    }
    return k;
}

inline Kinematics make_kinematics(double e, const StepConfig& cfg)
{
    return make_kinematics(e, cfg, classify_zone(e, cfg));
}

/// Four-component spinor. Only the spin-up sector (c2 = c4 = 0) is ever populated.
struct Spinor4 {
    complex c1{};
    complex c2{};
    complex c3{};
    complex c4{};

    std::array<complex, 4> components() const noexcept { return {c1, c2, c3, c4}; }

    Spinor4& operator+=(const Spinor4& o) noexcept
    {
        c1 += o.c1;
        c2 += o.c2;
        c3 += o.c3;
        c4 += o.c4;
        return *this;
    }
    Spinor4& operator-=(const Spinor4& o) noexcept
    {
        c1 -= o.c1;
        c2 -= o.c2;
        c3 -= o.c3;
        c4 -= o.c4;
        return *this;
    }
    Spinor4& operator*=(complex s) noexcept
    {
        c1 *= s;
        c2 *= s;
        c3 *= s;
        c4 *= s;
        return *this;
    }

    friend Spinor4 operator+(Spinor4 a, const Spinor4& b) noexcept { return a += b; }
    friend Spinor4 operator-(Spinor4 a, const Spinor4& b) noexcept { return a -= b; }
    friend Spinor4 operator*(complex s, Spinor4 a) noexcept { return a *= s; }
    friend bool operator==(const Spinor4&, const Spinor4&) = default;
};

/// u(p, E) = [1, 0, p/(E+m), 0]. The reflected wave uses p_signed = -p.
inline Spinor4 free_spinor(double p_signed, double e)
{
    require_physical_energy(e);
    return {1.0, 0.0, p_signed / (e + StepConfig::mass), 0.0};
}

/// Region-II spinor u(q, E - V0) and its evanescent continuations:
/// q -> +i qt in Dirac tunneling, q -> -i qt in Klein tunneling.
inline Spinor4 region2_spinor(Zone zone, const Kinematics& kin, const StepConfig& cfg)
{
    const double denom = kin.e - cfg.v0() + StepConfig::mass;
    switch (zone) {
        case Zone::diffusion:
        case Zone::klein:
            if (!kin.q) throw contract_violation("oscillatory zone needs kinematics with q");
            return {1.0, 0.0, *kin.q / denom, 0.0};
        case Zone::dirac_tunneling:
        case Zone::klein_tunneling: {
            if (!kin.qt) throw contract_violation("tunneling zone needs kinematics with qt");
            if (denom == 0.0) {
                throw invalid_energy("region-II spinor is singular at e = v0 - 1");
            }
            const double sign = zone == Zone::dirac_tunneling ? 1.0 : -1.0;
            return {1.0, 0.0, complex(0.0, sign * *kin.qt / denom), 0.0};
        }
    }
    throw contract_violation("unknown zone");
}

} // namespace dirac_step
