#include "dirac_step/wavepacket.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace dirac_step;

namespace {

const StepConfig kStep(3.5);
constexpr double kWidth = 10.0;

GaussianPacket mid_zone_packet(Zone zone, const StepConfig& cfg = kStep)
{
    return GaussianPacket(zone, momentum(mid_zone_energy(zone, cfg)), kWidth, cfg);
}

oracle::Branch branch_of(Zone z)
{
    switch (z) {
        case Zone::dirac_tunneling: return oracle::Branch::evanescent_plus;
        case Zone::klein_tunneling: return oracle::Branch::evanescent_minus;
        default: return oracle::Branch::oscillatory;
    }
}

/// Brute-force reference on the untrimmed window with 10x the production nodes.
oracle::Packet reference(const GaussianPacket& pk, std::size_t n_p, const StepConfig& cfg = kStep)
{
    const MomentumInterval w = pk.window();
    const double hi = std::isinf(w.hi) ? pk.p0() + 8.0 / pk.d() : w.hi;
    return {cfg.v0(), pk.p0(), pk.d(), w.lo, hi, branch_of(pk.zone()), 10 * n_p};
}

double rel_diff(const Spinor4& a, const oracle::Field& b)
{
    const double scale = std::max(std::abs(b.c1), std::abs(b.c3));
    return std::max(std::abs(a.c1 - b.c1), std::abs(a.c3 - b.c3)) / scale;
}

} // namespace

TEST(PacketWindow, Examples)
{
    const MomentumInterval dt = packet_window(Zone::dirac_tunneling, kStep);
    EXPECT_NEAR(dt.hi, 4.3874821936960610, 1e-14);
    EXPECT_NEAR(dt.lo, 3.3541019662496845, 1e-14);

    const MomentumInterval k = packet_window(Zone::klein, kStep);
    EXPECT_EQ(k.lo, 0.0);
    EXPECT_NEAR(k.hi, 2.2912878474779200, 1e-14);

    const MomentumInterval kt = packet_window(Zone::klein_tunneling, kStep);
    EXPECT_NEAR(kt.lo, 2.2912878474779200, 1e-14);
    EXPECT_NEAR(kt.hi, dt.lo, 1e-14);

    const MomentumInterval diff = packet_window(Zone::diffusion, kStep);
    EXPECT_NEAR(diff.lo, dt.hi, 1e-14);
    EXPECT_TRUE(std::isinf(diff.hi));

    EXPECT_THROW(packet_window(Zone::klein, StepConfig(1.5)), empty_zone_error);
    EXPECT_THROW(packet_window(Zone::dirac_tunneling, StepConfig(0.0)), empty_zone_error);
    EXPECT_EQ(packet_window(Zone::klein_tunneling, StepConfig(1.5)).lo, 0.0);
}

TEST(GaussianPacket, PeakMustLieInItsZone)
{
    EXPECT_THROW(GaussianPacket(Zone::dirac_tunneling, momentum(5.0), kWidth, kStep), mixed_zone_error);
    EXPECT_THROW(GaussianPacket(Zone::klein, momentum(3.0), kWidth, kStep), mixed_zone_error);
    EXPECT_THROW(GaussianPacket(Zone::klein, 1.0, kWidth, MomentumInterval{0.0, 3.0}, kStep), mixed_zone_error);
    EXPECT_THROW(GaussianPacket(Zone::klein, 1.0, 0.0, kStep), std::invalid_argument);
    EXPECT_EQ(GaussianPacket::at_peak(momentum(3.0), kWidth, kStep).zone(), Zone::klein_tunneling);
}

TEST(GaussianPacket, WindowTruncation)
{
    const GaussianPacket pk = mid_zone_packet(Zone::klein_tunneling);
    EXPECT_EQ(pk.amplitude(pk.window().lo - 1e-9), 0.0);
    EXPECT_EQ(pk.amplitude(pk.p0()), 1.0);
    EXPECT_GT(pk.tail_mass_fraction(), 0.0);
    EXPECT_LT(pk.tail_mass_fraction(), 1e-6);
    EXPECT_EQ(mid_zone_packet(Zone::diffusion).tail_mass_fraction(), 0.0);

    const MomentumInterval s = mid_zone_packet(Zone::diffusion).support();
    EXPECT_NEAR(s.hi - s.lo, 16.0 / kWidth, 1e-12);
}

TEST(Density, Examples)
{
    EXPECT_EQ(density(Spinor4{1.0, 0.0, 0.0, 0.0}), 1.0);
    EXPECT_EQ(density(Spinor4{1.0, 0.0, complex(0.0, 0.5), 0.0}), 1.25);
    const double p = momentum(2.0);
    EXPECT_NEAR(density(free_spinor(p, 2.0)), 1.0 + p * p / 9.0, 1e-15);
}

TEST(QuadratureSpec, Validation)
{
    QuadratureSpec q{256, -60.0, 0.2};
    EXPECT_NO_THROW(q.validate(kWidth));
    EXPECT_THROW((QuadratureSpec{32, -60.0, 0.2}.validate(kWidth)), std::invalid_argument);
    EXPECT_THROW((QuadratureSpec{256, -40.0, 0.2}.validate(kWidth)), std::invalid_argument);
    EXPECT_THROW((QuadratureSpec{256, -60.0, 0.6}.validate(kWidth)), std::invalid_argument);

    const GaussianPacket pk = mid_zone_packet(Zone::dirac_tunneling);
    const QuadratureSpec d = default_quadrature(pk, default_time_extent(pk));
    EXPECT_EQ(d.n_p, 256u);
    EXPECT_DOUBLE_EQ(d.dz, kWidth / 50.0);
    EXPECT_NEAR(d.z_min, -27.0 * kWidth, 1e-9);
}

TEST(PsiRegion1, MatchesBruteForceAtOrigin)
{
    for (Zone zone : all_zones) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const QuadratureSpec q = default_quadrature(pk, default_time_extent(pk));
        const auto ref = reference(pk, q.n_p).modes();
        const Spinor4 got = psi_region1(0.0, 0.0, pk, kStep, q);
        EXPECT_LT(rel_diff(got, oracle::region1(ref, 0.0, 0.0)), 1e-6) << to_string(zone);
        EXPECT_LT(rel_diff(psi_region1(-7.5, 4.0, pk, kStep, q), oracle::region1(ref, -7.5, 4.0)), 1e-6)
            << to_string(zone);
    }
}

TEST(PsiRegion2, MatchesBruteForce)
{
    for (Zone zone : all_zones) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const QuadratureSpec q = default_quadrature(pk, default_time_extent(pk));
        const auto ref = reference(pk, q.n_p).modes();
        for (double z : {0.0, 0.5, 2.0}) {
            EXPECT_LT(rel_diff(psi_region2(z, 0.0, pk, kStep, q), oracle::region2(ref, z, 0.0, branch_of(zone))), 1e-6)
                << to_string(zone) << " z=" << z;
        }
    }
}

TEST(PsiRegion1, ContinuousWithRegion2AtStep)
{
    for (Zone zone : all_zones) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const PacketModes modes(pk, kStep, 256);
        for (double t : {-20.0, 0.0, 15.0}) {
            const Spinor4 d = modes.region1(0.0, t) - modes.region2(0.0, t);
            EXPECT_LT(std::abs(d.c1) + std::abs(d.c3), 1e-12) << to_string(zone);
        }
    }
}

TEST(PacketFields, SpinDownComponentsStayZero)
{
    const GaussianPacket pk = mid_zone_packet(Zone::dirac_tunneling);
    const PacketModes modes(pk, kStep, 256);
    for (double t : {-80.0, 0.0, 80.0}) {
        for (double z : {-100.0, -1.0, 0.0}) {
            const Spinor4 s = modes.region1(z, t);
            EXPECT_EQ(s.c2, 0.0);
            EXPECT_EQ(s.c4, 0.0);
        }
        const Spinor4 s2 = modes.region2(3.0, t);
        EXPECT_EQ(s2.c2, 0.0);
        EXPECT_EQ(s2.c4, 0.0);
    }
    EXPECT_THROW(modes.region1(1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(modes.region2(-1.0, 0.0), std::invalid_argument);
}

TEST(PsiRegion2, EvanescentDecayUnderTheStep)
{
    const GaussianPacket pk = mid_zone_packet(Zone::dirac_tunneling);
    const PacketModes modes(pk, kStep, 256);
    double prev = density(modes.region2(0.0, 0.0));
    EXPECT_GT(prev, 0.0);
    for (double z = 0.25; z <= 12.0; z += 0.25) {
        const double d = density(modes.region2(z, 0.0));
        EXPECT_LT(d, prev) << z;
        prev = d;
    }
    // Local decay rate starts near the peak-mode qt = sqrt(0.75) and relaxes toward
    // the slower modes at the upper zone edge as z grows.
    auto rate = [&](double z) {
        return std::log(density(modes.region2(z - 0.1, 0.0)) / density(modes.region2(z + 0.1, 0.0))) / 0.4;
    };
    EXPECT_NEAR(rate(1.0), std::sqrt(0.75), 0.05);
    double prev_rate = rate(1.0);
    for (double z : {4.0, 8.0, 12.0}) {
        EXPECT_LT(rate(z), prev_rate) << z;
        EXPECT_GT(rate(z), modes.min_decay_rate()) << z;
        prev_rate = rate(z);
    }
}

TEST(PsiRegion2, StationaryPositronsAtKleinEdge)
{
    // Single mode just above e = v0 - 1: T u2 e^{-qt z} tends to [0, 0, 2p/(e+1), 0]
    // with a flat envelope.
    const double e = 2.5 + 1e-10;
    const Kinematics kin = make_kinematics(e, kStep);
    const ScatterAmplitudes a = scatter(e, kStep);
    const Spinor4 at_step = a.t_amp * region2_spinor(Zone::klein_tunneling, kin, kStep);
    const double flat = std::pow(2.0 * kin.p / (e + 1.0), 2);
    EXPECT_NEAR(density(at_step), flat, 1e-4 * flat);
    const double far = density(at_step) * std::exp(-2.0 * *kin.qt * 100.0);
    EXPECT_GT(far / density(at_step), 0.99);
}

TEST(RegionDensities, IncidentNormUsesSame2PiConvention)
{
    // At early times the whole packet is incoming and inside [z_min, 0], so the
    // spatial integral must reproduce the momentum-space norm.
    for (Zone zone : all_zones) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const double t_early = -8.0 * pk.d() * pk.e0() / pk.p0();
        const QuadratureSpec q = default_quadrature(pk, -t_early);
        const PacketModes modes(pk, kStep, q.n_p);
        const RegionDensities dens(modes, q);
        EXPECT_NEAR(dens.n1(t_early) / modes.incident_norm(), 1.0, 1e-6) << to_string(zone);
        EXPECT_NEAR(r_of_t(t_early, pk, kStep, q), 1.0, 1e-3);
    }
}

TEST(RegionDensities, IncidentPacketTravelsAtGroupVelocity)
{
    const GaussianPacket pk = mid_zone_packet(Zone::diffusion);
    const double v = pk.p0() / pk.e0();
    const double t = -8.0 * pk.d() / v;
    const PacketModes modes(pk, kStep, 256);
    double best_z = 0.0, best = 0.0;
    for (double z = -150.0; z <= 0.0; z += 0.1) {
        const double d = density(modes.region1(z, t));
        if (d > best) best = d, best_z = z;
    }
    EXPECT_NEAR(best_z, v * t, 0.5);
    EXPECT_LT(density(modes.region1(0.0, t)), 1e-10 * best);
}

TEST(RegionDensities, DiracTunnelingLosesElectronsDuringTransit)
{
    const GaussianPacket pk = mid_zone_packet(Zone::dirac_tunneling);
    const auto times = default_times(pk, 61);
    const DensitySeries s = density_series(pk, kStep, default_quadrature(pk, times.back()), times);
    EXPECT_LT(*std::min_element(s.r.begin(), s.r.end()), 0.995);
    EXPECT_LE(*std::max_element(s.r.begin(), s.r.end()), 1.0 + 1e-6);
    EXPECT_NEAR(s.r.front(), 1.0, 0.01);
    EXPECT_NEAR(s.r.back(), 1.0, 0.01);
}

TEST(RegionDensities, KleinTunnelingGainsElectronsDuringTransit)
{
    const GaussianPacket pk = mid_zone_packet(Zone::klein_tunneling);
    const auto times = default_times(pk, 61);
    const DensitySeries s = density_series(pk, kStep, default_quadrature(pk, times.back()), times);
    EXPECT_GT(*std::max_element(s.r.begin(), s.r.end()), 1.005);
    EXPECT_GE(*std::min_element(s.r.begin(), s.r.end()), 1.0 - 1e-6);
    EXPECT_NEAR(s.r.front(), 1.0, 0.01);
    EXPECT_NEAR(s.r.back(), 1.0, 0.01);
}

TEST(RegionDensities, LateTimeRatioMatchesMomentumAverage)
{
    for (Zone zone : {Zone::klein, Zone::diffusion}) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const double t_late = default_time_extent(pk);
        const QuadratureSpec q = default_quadrature(pk, t_late);
        const double expected = oracle::mean_reflectance(reference(pk, q.n_p).modes());
        EXPECT_NEAR(r_of_t(t_late, pk, kStep, q) / expected, 1.0, 0.02) << to_string(zone);
        if (zone == Zone::klein) EXPECT_GT(expected, 1.0);
        else EXPECT_LT(expected, 1.0);
    }
}

TEST(RegionDensities, TunnelingOccupationRisesAndFalls)
{
    for (Zone zone : {Zone::dirac_tunneling, Zone::klein_tunneling}) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const double t = default_time_extent(pk);
        const QuadratureSpec q = default_quadrature(pk, t);
        const PacketModes modes(pk, kStep, q.n_p);
        const RegionDensities dens(modes, q);
        const double norm = modes.incident_norm();
        EXPECT_LT(dens.n2(-t), 1e-3 * norm);
        EXPECT_LT(dens.n2(t), 1e-3 * norm);
        EXPECT_GT(dens.n2(0.0), 1e-2 * norm);
        EXPECT_LE(dens.z_max(), -q.z_min);
        EXPECT_NEAR(n2_of_t(0.0, pk, kStep, q), dens.n2(0.0), 1e-14 * norm);
    }
}

TEST(RegionDensities, DiracTunnelingConservesParticleNumber)
{
    const GaussianPacket pk = mid_zone_packet(Zone::dirac_tunneling);
    const auto times = default_times(pk, 81);
    const DensitySeries s = density_series(pk, kStep, default_quadrature(pk, times.back()), times);
    const double ref = s.n1.front() + s.n2.front();
    for (std::size_t i = 0; i < times.size(); ++i) EXPECT_NEAR((s.n1[i] + s.n2[i]) / ref, 1.0, 5e-3) << times[i];
}

TEST(RegionDensities, KleinTunnelingConservesChargeNotNumber)
{
    // Region II holds positrons here: the electron excess in region I matches
    // the region-II occupation, so N1 - N2 stays fixed while N1 + N2 does not.
    const GaussianPacket pk = mid_zone_packet(Zone::klein_tunneling);
    const auto times = default_times(pk, 81);
    const DensitySeries s = density_series(pk, kStep, default_quadrature(pk, times.back()), times);
    const double ref = s.n1.front() - s.n2.front();
    double worst_sum = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_NEAR((s.n1[i] - s.n2[i]) / ref, 1.0, 5e-3) << times[i];
        worst_sum = std::max(worst_sum, std::abs((s.n1[i] + s.n2[i]) / ref - 1.0));
    }
    EXPECT_GT(worst_sum, 0.05);
}

TEST(RegionDensities, DoublingNodesLeavesRatioUnchanged)
{
    for (Zone zone : all_zones) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const auto times = default_times(pk, 21);
        const CheckedSeries c = checked_density_series(pk, kStep, default_quadrature(pk, times.back()), times);
        EXPECT_LT(c.doubling_delta, 1e-4) << to_string(zone);
    }
}

TEST(RegionDensities, TooFewNodesFailsDoublingCheck)
{
    const GaussianPacket pk = mid_zone_packet(Zone::dirac_tunneling);
    const auto times = default_times(pk, 11);
    QuadratureSpec q = default_quadrature(pk, times.back());
    q.n_p = 64;
    EXPECT_THROW(checked_density_series(pk, kStep, q, times), convergence_error);
}

TEST(RegionDensities, MatchesBruteForceRatio)
{
    for (Zone zone : all_zones) {
        const GaussianPacket pk = mid_zone_packet(zone);
        const double extent = default_time_extent(pk);
        const QuadratureSpec q = default_quadrature(pk, extent);
        const PacketModes modes(pk, kStep, q.n_p);
        const RegionDensities dens(modes, q);
        const auto ref = reference(pk, q.n_p).modes();
        const double ref_norm = oracle::incident_norm(ref);
        for (double frac : {-1.0, -0.3, 0.0, 0.2, 1.0}) {
            const double t = frac * extent;
            EXPECT_NEAR(dens.r(t), oracle::n1(ref, t, q.z_min, q.dz) / ref_norm, 1e-4)
                << to_string(zone) << " t=" << t;
        }
    }
}

TEST(RegionDensities, SeriesIndependentOfThreadCount)
{
    const GaussianPacket pk = mid_zone_packet(Zone::klein);
    const auto times = default_times(pk, 17);
    const PacketModes modes(pk, kStep, 256);
    const RegionDensities dens(modes, default_quadrature(pk, times.back()));
    const DensitySeries one = dens.series(times, 1);
    const DensitySeries many = dens.series(times, 4);
    EXPECT_EQ(one.r, many.r);
    EXPECT_EQ(one.n2, many.n2);
}
