#pragma once

/**
 * \file wavepacket.hpp
 *
 * \brief Gaussian wave packets scattered off the step and their region densities.
 *
 * A packet is a superposition of stationary scattering modes weighted by
 * g(p) = exp(-(p - p0)^2 d^2 / 4), restricted to the momentum window of one
 * energy zone so that a single amplitude formula applies to every mode:
 *
 *   region I  : Psi(z,t) = sum_j w_j g_j [u(p_j) e^{i p_j z} + R_j u(-p_j) e^{-i p_j z}] e^{-i E_j t}
 *   region II : Psi(z,t) = sum_j w_j g_j T_j u2_j f_j(z) e^{-i E_j t}
 *
 * with f(z) = e^{i q z} in the oscillatory zones and e^{-qt z} under the step.
 * r(t) is the region-I particle number divided by the incident norm, which is
 * taken from the momentum-space identity 2 pi sum_j w_j g_j^2 |u(p_j)|^2.
 */

#include "dirac_step/amplitudes.hpp"
#include "dirac_step/error.hpp"
#include "dirac_step/kinematics.hpp"
#include "dirac_step/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

namespace dirac_step {

struct MomentumInterval {
    double lo;
    double hi;

    bool empty() const noexcept { return !(lo < hi); }
    bool contains(double p) const noexcept { return p >= lo && p <= hi; }
    double width() const noexcept { return hi - lo; }
};

/// Momenta of incident electrons whose energy lies in `zone`. The diffusion
/// window is unbounded above.
inline MomentumInterval packet_window(Zone zone, const StepConfig& cfg)
{
    const EnergyInterval ei = energy_interval(zone, cfg);
    if (ei.empty()) {
        throw empty_zone_error(std::string("zone ") + std::string(to_string(zone)) +
                               " is empty for v0 = " + std::to_string(cfg.v0()));
    }
    const double hi = std::isinf(ei.hi) ? ei.hi : momentum(ei.hi);
    return {momentum(ei.lo), hi};
}

/// Peak energy used when a run names only a zone: the zone midpoint, or v0 + 2
/// for the unbounded diffusion zone.
inline double mid_zone_energy(Zone zone, const StepConfig& cfg)
{
    const EnergyInterval ei = energy_interval(zone, cfg);
    if (ei.empty()) {
        throw empty_zone_error(std::string("zone ") + std::string(to_string(zone)) + " is empty");
    }
    if (std::isinf(ei.hi)) return cfg.v0() + 2.0;
    return 0.5 * (ei.lo + ei.hi);
}

class GaussianPacket {
public:
    /// Half-width, in units of 1/d, beyond which g(p) < exp(-16) is dropped.
    static constexpr double support_halfwidth = 8.0;

    /// Packet restricted to the window of `zone`.
    GaussianPacket(Zone zone, double p0, double d, const StepConfig& cfg)
        : GaussianPacket(zone, p0, d, packet_window(zone, cfg), cfg)
    {
    }

    /// Packet with an explicit window, which must lie inside the window of `zone`.
    GaussianPacket(Zone zone, double p0, double d, MomentumInterval window, const StepConfig& cfg)
        : zone_(zone), p0_(p0), d_(d), window_(window)
    {
        if (!std::isfinite(d) || d <= 0.0) throw std::invalid_argument("packet width d must be > 0");
        if (!std::isfinite(p0) || p0 < 0.0) throw std::invalid_argument("packet peak p0 must be >= 0");
        const MomentumInterval zw = packet_window(zone, cfg);
        const double tol = 1e-12 * std::max(1.0, zw.lo);
        if (window.empty() || window.lo < zw.lo - tol || window.hi > zw.hi + tol) {
            throw mixed_zone_error("packet window extends outside zone " +
                                   std::string(to_string(zone)));
        }
        if (!(window.lo < p0 && p0 < window.hi)) {
            throw mixed_zone_error("peak momentum " + std::to_string(p0) +
                                   " is not inside the window of zone " +
                                   std::string(to_string(zone)));
        }
    }

    /// Packet in whichever zone contains the peak energy.
    static GaussianPacket at_peak(double p0, double d, const StepConfig& cfg)
    {
        return GaussianPacket(classify_zone(energy(p0), cfg), p0, d, cfg);
    }

    Zone zone() const noexcept { return zone_; }
    double p0() const noexcept { return p0_; }
    double e0() const noexcept { return energy(p0_); }
    double d() const noexcept { return d_; }
    MomentumInterval window() const noexcept { return window_; }

    /// Untruncated gaussian factor.
    double gaussian(double p) const noexcept
    {
        const double x = (p - p0_) * d_;
        return std::exp(-0.25 * x * x);
    }

    /// g(p), zero outside the window.
    double amplitude(double p) const noexcept
    {
        return window_.contains(p) ? gaussian(p) : 0.0;
    }

    /// Window intersected with p0 +- 8/d; the interval the quadrature covers.
    MomentumInterval support() const noexcept
    {
        const double reach = support_halfwidth / d_;
        return {std::max(window_.lo, std::max(0.0, p0_ - reach)), std::min(window_.hi, p0_ + reach)};
    }

    /// Share of the incident norm cut off by the window (diagnostic).
    double tail_mass_fraction() const
    {
        const double reach = support_halfwidth / d_;
        const auto weight = [this](double p) {
            const double g = gaussian(p);
            const double u3 = p / (energy(p) + StepConfig::mass);
            return g * g * (1.0 + u3 * u3);
        };
        const double full_lo = std::max(0.0, p0_ - reach);
        const double full = gauss_legendre(256, full_lo, p0_ + reach).integrate(weight);
        const MomentumInterval s = support();
        const double kept = gauss_legendre(256, s.lo, s.hi).integrate(weight);
        return std::max(0.0, 1.0 - kept / full);
    }

private:
    Zone zone_;
    double p0_;
    double d_;
    MomentumInterval window_;
};

struct QuadratureSpec {
    std::size_t n_p = 256;  ///< momentum nodes
    double z_min = 0.0;     ///< region-I lower cutoff (< 0)
    double dz = 0.0;        ///< spatial grid spacing

    void validate(double d) const
    {
        if (n_p < 64) throw std::invalid_argument("quadrature needs n_p >= 64");
        if (!(z_min < -5.0 * d)) throw std::invalid_argument("quadrature needs z_min < -5 d");
        if (!(dz > 0.0 && dz <= d / 20.0)) throw std::invalid_argument("quadrature needs 0 < dz <= d/20");
    }
};

/// Defaults for a run whose times satisfy |t| <= t_extent:
/// z_min = -(10 d + t_extent v + 5 d) with v = p0/E0, dz = d/50, 256 nodes.
inline QuadratureSpec default_quadrature(const GaussianPacket& pk, double t_extent)
{
    const double v = pk.p0() / pk.e0();
    return {256, -(15.0 * pk.d() + std::abs(t_extent) * v), pk.d() / 50.0};
}

/// Half-span T = 12 d E0/p0 of the default time grid.
inline double default_time_extent(const GaussianPacket& pk)
{
    return 12.0 * pk.d() * pk.e0() / pk.p0();
}

inline std::vector<double> linspace(double a, double b, std::size_t n)
{
    std::vector<double> out(n);
    if (n == 0) return out;
    if (n == 1) {
        out[0] = a;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = b;
    return out;
}

/// t in [-T, T], 401 samples.
inline std::vector<double> default_times(const GaussianPacket& pk, std::size_t n = 401)
{
    const double t = default_time_extent(pk);
    return linspace(-t, t, n);
}

inline double density(const Spinor4& s) noexcept
{
    return std::norm(s.c1) + std::norm(s.c2) + std::norm(s.c3) + std::norm(s.c4);
}

/// Quadrature tables of the stationary modes making up a packet. Immutable after
/// construction and safe to share between threads.
class PacketModes {
public:
    struct Mode {
        double p;
        double e;
        double wg;       ///< quadrature weight times g(p)
        complex r;
        complex t;
        double u3;       ///< p / (E + m)
        complex u2_3;    ///< third component of the region-II spinor
        double k2;       ///< q (oscillatory) or qt (tunneling)
    };

    PacketModes(const GaussianPacket& pk, const StepConfig& cfg, std::size_t n_p)
        : packet_(pk), cfg_(cfg)
    {
        const MomentumInterval s = pk.support();
        const QuadratureRule rule = gauss_legendre(n_p, s.lo, s.hi);
        modes_.reserve(rule.size());
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const double p = rule.nodes[j];
            const double e = energy(p);
            const Zone zone = pk.zone();
            const Kinematics kin = make_kinematics(e, cfg, zone);
            const ScatterAmplitudes amps = scatter_in_zone(e, cfg, zone);
            const Spinor4 u2 = region2_spinor(zone, kin, cfg);
            modes_.push_back({p, e, rule.weights[j] * pk.gaussian(p), amps.r_amp, amps.t_amp,
                              p / (e + StepConfig::mass), u2.c3, is_oscillatory(zone) ? *kin.q : *kin.qt});
        }
        double acc = 0.0;
        for (const Mode& m : modes_) acc += m.wg * pk.gaussian(m.p) * (1.0 + m.u3 * m.u3);
        incident_norm_ = 2.0 * std::numbers::pi * acc;
    }

    const GaussianPacket& packet() const noexcept { return packet_; }
    const StepConfig& config() const noexcept { return cfg_; }
    std::span<const Mode> modes() const noexcept { return modes_; }
    bool oscillatory() const noexcept { return is_oscillatory(packet_.zone()); }

    /// Full-line norm of the incident packet.
    double incident_norm() const noexcept { return incident_norm_; }

    Spinor4 region1(double z, double t) const
    {
        if (z > 0.0) throw std::invalid_argument("region I requires z <= 0");
        complex c1{}, c3{};
        for (const Mode& m : modes_) {
            const complex a = m.wg * std::polar(1.0, -m.e * t);
            const complex in = std::polar(1.0, m.p * z);
            const complex out = std::conj(in) * m.r;
            c1 += a * (in + out);
            c3 += a * m.u3 * (in - out);
        }
        return {c1, 0.0, c3, 0.0};
    }

    Spinor4 region2(double z, double t) const
    {
        if (z < 0.0) throw std::invalid_argument("region II requires z >= 0");
        complex c1{}, c3{};
        for (const Mode& m : modes_) {
            const complex a = m.wg * std::polar(1.0, -m.e * t) * m.t * profile(m, z);
            c1 += a;
            c3 += a * m.u2_3;
        }
        return {c1, 0.0, c3, 0.0};
    }

    /// Smallest evanescent decay rate among the modes (tunneling packets only).
    double min_decay_rate() const noexcept
    {
        double k = std::numeric_limits<double>::infinity();
        for (const Mode& m : modes_) k = std::min(k, m.k2);
        return k;
    }

private:
    complex profile(const Mode& m, double z) const
    {
        return oscillatory() ? std::polar(1.0, m.k2 * z) : complex(std::exp(-m.k2 * z), 0.0);
    }

    GaussianPacket packet_;
    StepConfig cfg_;
    std::vector<Mode> modes_;
    double incident_norm_ = 0.0;
};

struct DensitySeries {
    std::vector<double> times;
    std::vector<double> n1;  ///< region-I particle number
    std::vector<double> n2;  ///< region-II particle number
    std::vector<double> r;   ///< n1 / incident norm
};

/// Particle numbers in both regions on a fixed spatial grid. Mode phases on the
/// grid are tabulated once, so each time sample costs one pass over the table.
class RegionDensities {
public:
    /// Region-II tail e^{-2 qt z} is cut below this level.
    static constexpr double evanescent_tail = 1e-8;

    RegionDensities(const PacketModes& modes, const QuadratureSpec& quad) : modes_(modes)
    {
        quad.validate(modes.packet().d());
        const std::size_t np = modes.modes().size();

        nz1_ = static_cast<std::size_t>(std::ceil(-quad.z_min / quad.dz));
        h1_ = -quad.z_min / static_cast<double>(nz1_);
        z_max_ = -quad.z_min;
        if (!modes.oscillatory()) {
            z_max_ = std::min(z_max_, -std::log(evanescent_tail) / (2.0 * modes.min_decay_rate()));
        }
        nz2_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(z_max_ / quad.dz)));
        h2_ = z_max_ / static_cast<double>(nz2_);

        phase1_re_.resize((nz1_ + 1) * np);
        phase1_im_.resize((nz1_ + 1) * np);
        for (std::size_t k = 0; k <= nz1_; ++k) {
            const double z = k == nz1_ ? 0.0 : quad.z_min + h1_ * static_cast<double>(k);
            for (std::size_t j = 0; j < np; ++j) {
                const double ph = modes.modes()[j].p * z;
                phase1_re_[k * np + j] = std::cos(ph);
                phase1_im_[k * np + j] = std::sin(ph);
            }
        }
        profile2_.resize((nz2_ + 1) * np);
        for (std::size_t k = 0; k <= nz2_; ++k) {
            const double z = h2_ * static_cast<double>(k);
            for (std::size_t j = 0; j < np; ++j) {
                const double k2 = modes.modes()[j].k2;
                profile2_[k * np + j] = modes.oscillatory() ? std::polar(1.0, k2 * z)
                                                            : complex(std::exp(-k2 * z), 0.0);
            }
        }
    }

    double z_min() const noexcept { return -h1_ * static_cast<double>(nz1_); }
    double z_max() const noexcept { return z_max_; }

    /// Integral of |Psi_I|^2 over [z_min, 0].
    double n1(double t) const
    {
        const auto ms = modes_.modes();
        const std::size_t np = ms.size();
        std::vector<double> ar(np), ai(np), br(np), bi(np);
        for (std::size_t j = 0; j < np; ++j) {
            const complex a = ms[j].wg * std::polar(1.0, -ms[j].e * t);
            const complex b = a * ms[j].r;
            ar[j] = a.real();
            ai[j] = a.imag();
            br[j] = b.real();
            bi[j] = b.imag();
        }
        std::vector<double> dens(nz1_ + 1);
        for (std::size_t k = 0; k <= nz1_; ++k) {
            const double* er = &phase1_re_[k * np];
            const double* ei = &phase1_im_[k * np];
            double c1r = 0, c1i = 0, c3r = 0, c3i = 0;
            for (std::size_t j = 0; j < np; ++j) {
                // a e^{ipz} and b e^{-ipz}
                const double inr = ar[j] * er[j] - ai[j] * ei[j];
                const double ini = ar[j] * ei[j] + ai[j] * er[j];
                const double outr = br[j] * er[j] + bi[j] * ei[j];
                const double outi = bi[j] * er[j] - br[j] * ei[j];
                c1r += inr + outr;
                c1i += ini + outi;
                c3r += ms[j].u3 * (inr - outr);
                c3i += ms[j].u3 * (ini - outi);
            }
            dens[k] = c1r * c1r + c1i * c1i + c3r * c3r + c3i * c3i;
        }
        return trapezoid(dens, h1_);
    }

    /// Integral of |Psi_II|^2 over [0, z_max].
    double n2(double t) const
    {
        const auto ms = modes_.modes();
        const std::size_t np = ms.size();
        std::vector<complex> a(np), a3(np);
        for (std::size_t j = 0; j < np; ++j) {
            a[j] = ms[j].wg * std::polar(1.0, -ms[j].e * t) * ms[j].t;
            a3[j] = a[j] * ms[j].u2_3;
        }
        std::vector<double> dens(nz2_ + 1);
        for (std::size_t k = 0; k <= nz2_; ++k) {
            const complex* f = &profile2_[k * np];
            complex c1{}, c3{};
            for (std::size_t j = 0; j < np; ++j) {
                c1 += a[j] * f[j];
                c3 += a3[j] * f[j];
            }
            dens[k] = std::norm(c1) + std::norm(c3);
        }
        return trapezoid(dens, h2_);
    }

    double r(double t) const { return n1(t) / modes_.incident_norm(); }

    /// Evaluates every time sample; samples are independent and are split across
    /// `threads` workers (0 = hardware concurrency). Output order follows `times`.
    DensitySeries series(std::span<const double> times, unsigned threads = 0) const
    {
        DensitySeries out;
        out.times.assign(times.begin(), times.end());
        out.n1.resize(times.size());
        out.n2.resize(times.size());
        out.r.resize(times.size());
        const auto work = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                out.n1[i] = n1(times[i]);
                out.n2[i] = n2(times[i]);
                out.r[i] = out.n1[i] / modes_.incident_norm();
            }
        };
        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, times.size()));
        if (threads <= 1) {
            work(0, times.size());
            return out;
        }
        std::vector<std::jthread> pool;
        const std::size_t chunk = (times.size() + threads - 1) / threads;
        for (std::size_t b = 0; b < times.size(); b += chunk) {
            pool.emplace_back(work, b, std::min(times.size(), b + chunk));
        }
        pool.clear();
        return out;
    }

private:
    const PacketModes& modes_;
    std::size_t nz1_ = 0;
    std::size_t nz2_ = 0;
    double h1_ = 0.0;
    double h2_ = 0.0;
    double z_max_ = 0.0;
    std::vector<double> phase1_re_;
    std::vector<double> phase1_im_;
    std::vector<complex> profile2_;
};

inline Spinor4 psi_region1(double z, double t, const GaussianPacket& pk, const StepConfig& cfg,
                           const QuadratureSpec& quad)
{
    return PacketModes(pk, cfg, quad.n_p).region1(z, t);
}

inline Spinor4 psi_region2(double z, double t, const GaussianPacket& pk, const StepConfig& cfg,
                           const QuadratureSpec& quad)
{
    return PacketModes(pk, cfg, quad.n_p).region2(z, t);
}

inline double r_of_t(double t, const GaussianPacket& pk, const StepConfig& cfg, const QuadratureSpec& quad)
{
    const PacketModes modes(pk, cfg, quad.n_p);
    return RegionDensities(modes, quad).r(t);
}

inline double n2_of_t(double t, const GaussianPacket& pk, const StepConfig& cfg, const QuadratureSpec& quad)
{
    const PacketModes modes(pk, cfg, quad.n_p);
    return RegionDensities(modes, quad).n2(t);
}

inline DensitySeries density_series(const GaussianPacket& pk, const StepConfig& cfg,
                                    const QuadratureSpec& quad, std::span<const double> times,
                                    unsigned threads = 0)
{
    const PacketModes modes(pk, cfg, quad.n_p);
    return RegionDensities(modes, quad).series(times, threads);
}

struct CheckedSeries {
    DensitySeries series;
    double doubling_delta;  ///< max_t |r_{n_p}(t) - r_{2 n_p}(t)|
};

inline constexpr double default_doubling_tolerance = 1e-4;

/// Series at n_p plus a rerun at 2 n_p; throws convergence_error if any r(t)
/// moves by `tol` or more.
inline CheckedSeries checked_density_series(const GaussianPacket& pk, const StepConfig& cfg,
                                            const QuadratureSpec& quad, std::span<const double> times,
                                            double tol = default_doubling_tolerance,
                                            unsigned threads = 0)
{
    CheckedSeries out{density_series(pk, cfg, quad, times, threads), 0.0};
    QuadratureSpec fine = quad;
    fine.n_p *= 2;
    const DensitySeries ref = density_series(pk, cfg, fine, times, threads);
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.doubling_delta = std::max(out.doubling_delta, std::abs(out.series.r[i] - ref.r[i]));
    }
    if (!(out.doubling_delta < tol)) {
        throw convergence_error("doubling n_p changed r(t) by " + std::to_string(out.doubling_delta),
                                out.doubling_delta);
    }
    return out;
}

} // namespace dirac_step
