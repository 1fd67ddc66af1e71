// dirac_step: command-line front end for step-potential scattering runs.
//
//   dirac_step amplitudes --v0 3.5 --e 1.75
//   dirac_step sweep --v0 3.5 --emin 1 --emax 5 --n 4001 --out fig2.csv
//   dirac_step packet --v0 3.5 --d 10 --zone dt --out fig1b.csv
//   dirac_step peak --v0 3.5
//   dirac_step phase-jump --v0 3.5
//
// Exit codes: 0 ok, 1 invalid flags or arguments, 2 empty or mixed zone,
// 3 quadrature doubling check failed.

#include "dirac_step/dirac_step.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace dirac_step;

enum ExitCode { ok = 0, bad_input = 1, zone_error = 2, not_converged = 3 };

struct Output {
    std::string path;
    std::string format = "csv";
};

void emit(const Table& t, const Output& out)
{
    std::ostringstream buf;
    if (out.format == "json") buf << to_json(t).dump(2) << '\n';
    else write_csv(buf, t);

    if (out.path.empty()) {
        std::cout << buf.str();
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out.path);
    f << buf.str();
}

/// key=value line for csv, a one-line JSON object for json.
void emit_line(const std::vector<std::pair<std::string, Cell>>& fields, const Output& out)
{
    std::ostringstream line;
    if (out.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [k, v] : fields) std::visit([&](const auto& x) { j[k] = x; }, v);
        line << j.dump() << '\n';
    } else {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            line << (i ? " " : "") << fields[i].first << '=' << format_cell(fields[i].second);
        }
        line << '\n';
    }
    if (out.path.empty()) {
        std::cout << line.str();
    } else {
        std::ofstream f(out.path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file " + out.path);
        f << line.str();
    }
}

void add_output_flags(CLI::App* cmd, Output& out)
{
    cmd->add_option("--out", out.path, "Output file (stdout if omitted)");
    cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

struct PacketArgs {
    std::optional<std::string> zone;
    std::optional<double> e;
    std::optional<double> p0;
    double d = 10.0;
    std::size_t n_p = 256;
    std::optional<double> z_min;
    std::optional<double> dz;
    std::optional<double> t_min;
    std::optional<double> t_max;
    std::size_t n_t = 401;
    unsigned threads = 0;
    bool no_check = false;
};

int run_packet(const StepConfig& cfg, const PacketArgs& a, const Output& out)
{
    std::optional<Zone> zone;
    if (a.zone) {
        zone = parse_zone(*a.zone);
        if (!zone) throw std::invalid_argument("unknown zone '" + *a.zone + "'");
    }
    double p0 = 0.0;
    if (a.p0) p0 = *a.p0;
    else if (a.e) p0 = momentum(*a.e);
    else if (zone) p0 = momentum(mid_zone_energy(*zone, cfg));
    else throw std::invalid_argument("packet needs --zone, --e or --p0");

    const GaussianPacket pk = zone ? GaussianPacket(*zone, p0, a.d, cfg) : GaussianPacket::at_peak(p0, a.d, cfg);

    const double extent = default_time_extent(pk);
    const double t_min = a.t_min.value_or(-extent);
    const double t_max = a.t_max.value_or(extent);
    if (!(t_min < t_max) || a.n_t < 2) throw std::invalid_argument("packet needs t_min < t_max and --nt >= 2");
    const std::vector<double> times = linspace(t_min, t_max, a.n_t);

    QuadratureSpec quad = default_quadrature(pk, std::max(std::abs(t_min), std::abs(t_max)));
    quad.n_p = a.n_p;
    if (a.z_min) quad.z_min = *a.z_min;
    if (a.dz) quad.dz = *a.dz;
    quad.validate(pk.d());

    std::ostream& log = out.path.empty() ? std::cerr : std::cout;
    log << "packet zone=" << to_string(pk.zone()) << " e0=" << format_number(pk.e0())
        << " p0=" << format_number(pk.p0()) << " d=" << format_number(pk.d())
        << " window=[" << format_number(pk.window().lo) << ", " << format_number(pk.window().hi) << "]"
        << " tail_mass=" << format_number(pk.tail_mass_fraction()) << " n_p=" << quad.n_p
        << " z_min=" << format_number(quad.z_min) << " dz=" << format_number(quad.dz) << '\n';

    DensitySeries series;
    if (a.no_check) {
        series = density_series(pk, cfg, quad, times, a.threads);
    } else {
        CheckedSeries checked = checked_density_series(pk, cfg, quad, times, default_doubling_tolerance, a.threads);
        log << "doubling check: max |r(n_p) - r(2 n_p)| = " << format_number(checked.doubling_delta) << '\n';
        series = std::move(checked.series);
    }
    emit(series_table(series, cfg), out);
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirac step-potential scattering: amplitudes, sweeps and wave packets"};
    app.require_subcommand(1);

    double v0 = 0.0;
    Output out;

    auto* amp = app.add_subcommand("amplitudes", "R, T and alpha at one energy");
    double amp_e = 0.0;
    amp->add_option("--v0", v0, "Step height in units of m")->required();
    amp->add_option("--e", amp_e, "Energy in units of m")->required();
    add_output_flags(amp, out);

    auto* swp = app.add_subcommand("sweep", "Table of R over an energy range");
    double e_min = 1.0, e_max = 5.0;
    std::size_t n_points = 4001;
    swp->add_option("--v0", v0, "Step height in units of m")->required();
    swp->add_option("--emin", e_min, "Lowest energy");
    swp->add_option("--emax", e_max, "Highest energy");
    swp->add_option("--n", n_points, "Number of uniform samples");
    add_output_flags(swp, out);

    auto* pkt = app.add_subcommand("packet", "r(t), N1(t) and N2(t) for a gaussian packet");
    PacketArgs pa;
    pkt->add_option("--v0", v0, "Step height in units of m")->required();
    pkt->add_option("--zone", pa.zone, "diffusion|dt|kt|klein (peak defaults to mid-zone)");
    auto* e_opt = pkt->add_option("--e", pa.e, "Peak energy");
    auto* p_opt = pkt->add_option("--p0", pa.p0, "Peak momentum");
    e_opt->excludes(p_opt);
    pkt->add_option("--d", pa.d, "Localization length in units of 1/m");
    pkt->add_option("--np", pa.n_p, "Momentum nodes");
    pkt->add_option("--zmin", pa.z_min, "Region-I lower cutoff");
    pkt->add_option("--dz", pa.dz, "Spatial grid spacing");
    pkt->add_option("--tmin", pa.t_min, "First time sample");
    pkt->add_option("--tmax", pa.t_max, "Last time sample");
    pkt->add_option("--nt", pa.n_t, "Number of time samples");
    pkt->add_option("--threads", pa.threads, "Worker threads (0 = all cores)");
    pkt->add_flag("--no-check", pa.no_check, "Skip the n_p doubling check");
    add_output_flags(pkt, out);

    auto* peak = app.add_subcommand("peak", "Location of the largest |R| in the Klein zone");
    double grid_step = 1e-4;
    peak->add_option("--v0", v0, "Step height in units of m")->required();
    peak->add_option("--grid-step", grid_step, "Energy grid spacing (<= 1e-3)");
    add_output_flags(peak, out);

    auto* jump = app.add_subcommand("phase-jump", "One-sided phases of R at e = v0");
    jump->add_option("--v0", v0, "Step height in units of m")->required();
    add_output_flags(jump, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_input;
    }

    try {
        const StepConfig cfg(v0);
        if (*amp) {
            emit(amplitudes_table(amp_e, cfg, scatter(amp_e, cfg)), out);
        } else if (*swp) {
            emit(sweep_table(sweep(e_min, e_max, n_points, cfg), cfg), out);
        } else if (*pkt) {
            return run_packet(cfg, pa, out);
        } else if (*peak) {
            const KleinPeak kp = klein_peak(cfg, grid_step);
            emit_line({{"v0", v0}, {"e_star", kp.e_star}, {"r_mod_star", kp.r_mod_star},
                       {"boundary_hit", kp.boundary_hit}},
                      out);
        } else if (*jump) {
            const PhaseJump pj = phase_jump(cfg);
            emit_line({{"v0", v0}, {"arg_below", pj.arg_below}, {"arg_above", pj.arg_above}, {"jump", pj.jump}},
                      out);
        }
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return not_converged;
    } catch (const empty_zone_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return zone_error;
    } catch (const mixed_zone_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return zone_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    }
    return ok;
}
