// Command-line front end: each subcommand reproduces one analysis of the
// cavity interaction-free detection model and writes plot-ready tables plus a
// run manifest.

#include "ifdcav/config.hpp"
#include "ifdcav/io.hpp"
#include "ifdcav/montecarlo.hpp"
#include "ifdcav/optimize.hpp"
#include "ifdcav/rng.hpp"
#include "ifdcav/version.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ifd;

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void add_common_options(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config_path, "path to a JSON run configuration");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", args.seed, "override the Monte-Carlo seed");
    cmd->add_option("--threads", args.threads, "worker threads (0 = runtime default)");
}

RunConfig load_config(const CliArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig{}
                                             : RunConfig::from_file(args.config_path);
    // output directory precedence: --out flag, then environment, then config
    if (const char* env = std::getenv("IFDCAV_OUT_DIR"); env && *env)
        cfg.out_dir = env;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (!args.format.empty()) cfg.format = args.format;
    if (args.seed) cfg.montecarlo.seed = *args.seed;
    if (args.threads) cfg.threads = *args.threads;
    cfg.validate();
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    return cfg;
}

io::RunWriter make_writer(const RunConfig& cfg) {
    return io::RunWriter(cfg.out_dir, cfg.to_json(), cfg.montecarlo.seed, cfg.threads);
}

int cmd_coeffs(const RunConfig& cfg) {
    const PortCoefficients absent = port_coefficients(cfg.cavity, ObjectState::Absent);
    const PortCoefficients present = port_coefficients(cfg.cavity, ObjectState::Present);

    std::printf("state  %-22s %-22s %-22s %s\n", "R", "T", "A", "eta");
    for (bool is_present : {false, true}) {
        const PortCoefficients& c = is_present ? present : absent;
        std::printf("%-6s %-22.16g %-22.16g %-22.16g %.16g\n",
                    is_present ? "P" : "A", c.R, c.T, c.A, 1.0 - c.A);
    }
    std::printf("max photon flux: %.16g photons/s\n", max_photon_flux(cfg.cavity));

    io::RunWriter writer = make_writer(cfg);
    if (cfg.format == "json")
        writer.write_json("coeffs.json", io::json_coeffs(absent, present));
    else
        writer.write_text("coeffs.csv", io::csv_coeffs(absent, present));
    writer.finish();
    return 0;
}

int cmd_sweep_xi(const RunConfig& cfg) {
    const std::vector<double> xis = cfg.xi_values();
    const SweepGrid<MetricsBundle> grid =
        sweep_xi(cfg.cavity, cfg.detectors, cfg.n0_values, xis);

    io::RunWriter writer = make_writer(cfg);
    if (cfg.format == "json")
        writer.write_json("sweep_xi.json", io::json_sweep_xi(grid));
    else
        writer.write_text("sweep_xi.csv", io::csv_sweep_xi(grid));
    writer.finish();
    std::printf("sweep-xi: %zu n0 blocks x %zu xi points -> %s\n", grid.ax0.size(),
                grid.ax1.size(), writer.dir().c_str());
    return 0;
}

int cmd_optimize(const RunConfig& cfg) {
    const std::vector<double> xis = cfg.xi_values();
    const Constraints none;

    nlohmann::json out;
    bool all_feasible = true;
    for (Port port : {Port::Reflection, Port::Transmission}) {
        const DetectorSpec& det = cfg.detectors.at(port);
        const OptimumReport global =
            maximize_zeta(cfg.cavity, det, port, none, xis, cfg.n0_range);
        const OptimumReport conditional =
            maximize_zeta(cfg.cavity, det, port, cfg.constraints, xis, cfg.n0_range);
        out["global"][port_name(port)] = io::json_optimum(global);
        out["conditional"][port_name(port)] = io::json_optimum(conditional);
        all_feasible = all_feasible && conditional.feasible;
        std::printf("%s: global xi*=%.4g zeta*=%.6g | conditional xi*=%.4g "
                    "zeta*=%.6g n0*=%.6g%s\n",
                    port_name(port), global.xi_star, global.zeta_star,
                    conditional.xi_star, conditional.zeta_star, conditional.n0_star,
                    conditional.feasible ? "" : " (infeasible)");
    }
    out["conditional"]["constraints"] = {
        {"min_eta_tot",
         cfg.constraints.min_eta_tot ? nlohmann::json(*cfg.constraints.min_eta_tot)
                                     : nlohmann::json()},
        {"min_snr", cfg.constraints.min_snr ? nlohmann::json(*cfg.constraints.min_snr)
                                            : nlohmann::json()}};

    io::RunWriter writer = make_writer(cfg);
    writer.write_json("optimize.json", out);
    writer.finish();
    return all_feasible ? 0 : kExitInfeasible;
}

int cmd_param_map(const RunConfig& cfg) {
    const std::vector<double> xis = cfg.xi_values();
    const Axis k3 = cfg.kappa3_grid.axis("kappa3");
    const Axis dp = cfg.delta_p_grid.axis("deltaP");
    // regime maps locate the global maxima; the conditional constraints are
    // an optimize-subcommand concern
    const ParamMaps maps = sweep_kappa3_delta_p(cfg.cavity, cfg.detectors, k3, dp,
                                                Constraints{}, xis, cfg.n0_range);

    io::RunWriter writer = make_writer(cfg);
    const auto emit = [&](const SweepGrid<OptimumReport>& grid, const char* port) {
        for (auto [kind, label] : {std::pair{io::MapValue::ArgmaxXi, "argmax_xi"},
                                   std::pair{io::MapValue::MaxZeta, "max_zeta"}}) {
            const std::string base =
                std::string("param_map_") + port + "_" + label;
            if (cfg.format == "json")
                writer.write_json(base + ".json", io::json_param_map(grid, kind));
            else
                writer.write_text(base + ".csv", io::csv_param_map(grid, kind));
        }
    };
    emit(maps.reflection, "reflection");
    emit(maps.transmission, "transmission");
    writer.finish();
    std::printf("param-map: %zu x %zu cells -> %s\n", k3.size(), dp.size(),
                writer.dir().c_str());
    return 0;
}

int cmd_security_curve(const RunConfig& cfg) {
    const std::vector<double> xis = cfg.xi_values();
    const Axis snr_axis = cfg.snr_grid.axis("snr");

    io::RunWriter writer = make_writer(cfg);
    for (Port port : {Port::Reflection, Port::Transmission}) {
        const DetectorSpec& det = cfg.detectors.at(port);
        const std::optional<double> fixed = port == Port::Reflection
                                                ? cfg.curve_xi_reflection
                                                : cfg.curve_xi_transmission;
        // fall back to the constrained optimum when no coupling is pinned
        const double xi = fixed ? *fixed
                                : maximize_zeta(cfg.cavity, det, port, cfg.constraints,
                                                xis, cfg.n0_range)
                                      .xi_star;
        const auto curve = security_vs_snr_curve(cfg.cavity.with_xi(xi), det, port,
                                                 snr_axis.values());
        const std::string base = std::string("security_curve_") + port_name(port);
        if (cfg.format == "json")
            writer.write_json(base + ".json", io::json_security_curve(curve));
        else
            writer.write_text(base + ".csv", io::csv_security_curve(curve));
        std::printf("%s: xi=%.6g eta_tot(snr=%.3g)=%.6g\n", port_name(port), xi,
                    curve.back().snr, curve.back().eta_tot);
    }
    writer.finish();
    return 0;
}

int cmd_montecarlo(const RunConfig& cfg) {
    const TrialConfig& mc = cfg.montecarlo;
    const DetectorSpec& det = cfg.detectors.at(mc.port);

    const EmpiricalStats stats = simulate_counts(cfg.cavity, det, mc);
    const double survival = simulate_survival(cfg.cavity, mc);

    const double n0 = static_cast<double>(mc.n0);
    const double analytic_snr = snr(cfg.cavity, det, mc.port, n0);
    const double analytic_survival = total_security(cfg.cavity, n0);

    const auto rel_dev = [](double emp, double ref) {
        return ref != 0.0 ? (emp - ref) / ref : 0.0;
    };

    nlohmann::json out{
        {"trials", mc.trials},
        {"n0", mc.n0},
        {"seed", mc.seed},
        {"port", port_name(mc.port)},
        {"rng", ifd::rng::kAlgorithm},
        {"counts",
         {{"mean_signal", stats.mean_signal},
          {"std_noise", stats.std_noise},
          {"empirical_snr", stats.empirical_snr},
          {"degenerate_noise", stats.degenerate_noise},
          {"analytic_snr", analytic_snr},
          {"relative_deviation", rel_dev(stats.empirical_snr, analytic_snr)}}},
        {"survival",
         {{"fraction", survival},
          {"analytic", analytic_survival},
          {"relative_deviation", rel_dev(survival, analytic_survival)}}}};

    io::RunWriter writer = make_writer(cfg);
    writer.write_json("montecarlo.json", out);
    writer.finish();
    std::printf("montecarlo: snr %.6g (analytic %.6g), survival %.6g (analytic %.6g)\n",
                stats.empirical_snr, analytic_snr, survival, analytic_survival);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 " - interaction-free detection cavity analysis"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliArgs args;
    int (*handler)(const RunConfig&) = nullptr;

    const auto add = [&](const char* name, const char* desc,
                         int (*fn)(const RunConfig&)) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common_options(cmd, args);
        cmd->callback([&handler, fn] { handler = fn; });
        return cmd;
    };

    add("coeffs", "cavity R/T/A coefficients and per-photon security", cmd_coeffs);
    add("sweep-xi", "metrics vs coupling efficiency for each N0", cmd_sweep_xi);
    add("optimize", "global and conditional maxima of zeta", cmd_optimize);
    add("param-map", "argmax-xi and max-zeta maps over (kappa3, deltaP)",
        cmd_param_map);
    add("security-curve", "total security as a function of target SNR",
        cmd_security_curve);
    add("montecarlo", "stochastic validation of the SNR and security formulas",
        cmd_montecarlo);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(args);
        return handler(cfg);
    } catch (const ifd::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ifd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
