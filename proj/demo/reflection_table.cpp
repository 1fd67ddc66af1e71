// Prints R across the four zones of a v0 = 3.5 step and the r(t) extremes of
// a mid-zone packet in each zone.

#include "dirac_step/dirac_step.hpp"

#include <cstdio>

int main()
{
    using namespace dirac_step;
    const StepConfig cfg(3.5);

    std::printf("%-16s %8s %12s %12s %10s\n", "zone", "e", "|R|", "arg R", "nature");
    for (double e : {1.75, 3.0, 3.5, 4.0, 5.5}) {
        const ScatterAmplitudes a = scatter(e, cfg);
        std::printf("%-16s %8.3f %12.6f %12.6f %10s\n", std::string(to_string(a.zone)).c_str(), e,
                    std::abs(a.r_amp), std::arg(a.r_amp), std::string(to_string(region2_nature(a.zone))).c_str());
    }

    std::printf("\n%-16s %10s %10s %10s\n", "packet", "min r", "max r", "r(+T)");
    for (Zone zone : all_zones) {
        const GaussianPacket pk(zone, momentum(mid_zone_energy(zone, cfg)), 10.0, cfg);
        const std::vector<double> times = default_times(pk, 81);
        const DensitySeries s = density_series(pk, cfg, default_quadrature(pk, times.back()), times);
        double lo = s.r.front(), hi = s.r.front();
        for (double r : s.r) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        std::printf("%-16s %10.5f %10.5f %10.5f\n", std::string(to_string(zone)).c_str(), lo, hi, s.r.back());
    }
}
