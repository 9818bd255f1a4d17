#include "ifdcav/io.hpp"

#include "ifdcav/rng.hpp"
#include "ifdcav/version.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace ifd::io {

namespace {

using nlohmann::json;

const char* state_label(bool present) { return present ? "P" : "A"; }

void append_row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        out += format_double(v);
        first = false;
    }
    out += '\n';
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double map_value(const OptimumReport& r, MapValue v) {
    return v == MapValue::ArgmaxXi ? r.xi_star : r.zeta_star;
}

json axis_json(const Axis& ax) {
    return json{{"name", ax.name()},
                {"min", ax.min()},
                {"max", ax.max()},
                {"count", ax.size()},
                {"scale", scale_name(ax.scale())},
                {"values", ax.values()}};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string csv_sweep_xi(const SweepGrid<MetricsBundle>& grid) {
    std::string out = "xi,eta_tot,snr1,snr2,zeta1,zeta2\n";
    for (std::size_t i0 = 0; i0 < grid.ax0.size(); ++i0) {
        for (std::size_t i1 = 0; i1 < grid.ax1.size(); ++i1) {
            const MetricsBundle& m = grid.at(i0, i1);
            append_row(out, {grid.ax1[i1], m.eta_tot, m.snr1, m.snr2, m.zeta1, m.zeta2});
        }
    }
    return out;
}

json json_sweep_xi(const SweepGrid<MetricsBundle>& grid) {
    json cells = json::array();
    for (std::size_t i0 = 0; i0 < grid.ax0.size(); ++i0)
        for (std::size_t i1 = 0; i1 < grid.ax1.size(); ++i1) {
            const MetricsBundle& m = grid.at(i0, i1);
            cells.push_back({{"n0", grid.ax0[i0]},
                             {"xi", grid.ax1[i1]},
                             {"eta_tot", m.eta_tot},
                             {"snr1", m.snr1},
                             {"snr2", m.snr2},
                             {"zeta1", m.zeta1},
                             {"zeta2", m.zeta2}});
        }
    return json{{"axes", {axis_json(grid.ax0), axis_json(grid.ax1)}}, {"cells", cells}};
}

std::string csv_param_map(const SweepGrid<OptimumReport>& grid, MapValue value) {
    std::string out = "kappa3,deltaP,value\n";
    for (std::size_t i0 = 0; i0 < grid.ax0.size(); ++i0)
        for (std::size_t i1 = 0; i1 < grid.ax1.size(); ++i1)
            append_row(out, {grid.ax0[i0], grid.ax1[i1],
                             map_value(grid.at(i0, i1), value)});
    return out;
}

json json_param_map(const SweepGrid<OptimumReport>& grid, MapValue value) {
    json cells = json::array();
    for (std::size_t i0 = 0; i0 < grid.ax0.size(); ++i0)
        for (std::size_t i1 = 0; i1 < grid.ax1.size(); ++i1)
            cells.push_back({{"kappa3", grid.ax0[i0]},
                             {"deltaP", grid.ax1[i1]},
                             {"value", map_value(grid.at(i0, i1), value)}});
    return json{{"axes", {axis_json(grid.ax0), axis_json(grid.ax1)}}, {"cells", cells}};
}

std::string csv_security_curve(const std::vector<SecurityPoint>& curve) {
    std::string out = "snr,n0,eta_tot\n";
    for (const SecurityPoint& p : curve) append_row(out, {p.snr, p.n0, p.eta_tot});
    return out;
}

json json_security_curve(const std::vector<SecurityPoint>& curve) {
    json rows = json::array();
    for (const SecurityPoint& p : curve)
        rows.push_back({{"snr", p.snr}, {"n0", p.n0}, {"eta_tot", p.eta_tot}});
    return rows;
}

std::string csv_coeffs(const PortCoefficients& absent, const PortCoefficients& present) {
    std::string out = "state,R,T,A,eta\n";
    for (bool is_present : {false, true}) {
        const PortCoefficients& c = is_present ? present : absent;
        out += state_label(is_present);
        out += ',';
        out += format_double(c.R);
        out += ',';
        out += format_double(c.T);
        out += ',';
        out += format_double(c.A);
        out += ',';
        out += format_double(1.0 - c.A);
        out += '\n';
    }
    return out;
}

json json_coeffs(const PortCoefficients& absent, const PortCoefficients& present) {
    const auto one = [](const PortCoefficients& c) {
        return json{{"R", c.R}, {"T", c.T}, {"A", c.A}, {"eta", 1.0 - c.A}};
    };
    return json{{"absent", one(absent)}, {"present", one(present)}};
}

json json_optimum(const OptimumReport& report) {
    return json{{"port", port_name(report.port)},
                {"xi_star", report.xi_star},
                {"n0_star", report.n0_star},
                {"zeta_star", report.zeta_star},
                {"eta_tot", report.eta_tot_at_star},
                {"snr", report.snr_at_star},
                {"feasible", report.feasible}};
}

RunWriter::RunWriter(std::filesystem::path dir, json config_echo, std::uint64_t seed,
                     int threads)
    : dir_(std::move(dir)),
      config_echo_(std::move(config_echo)),
      seed_(seed),
      threads_(threads),
      start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(dir_);
}

void RunWriter::write_text(const std::string& filename, const std::string& content) {
    const std::filesystem::path path = dir_ / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    out.close();
    outputs_.push_back({filename, fnv1a64_hex(content),
                        static_cast<std::uint64_t>(content.size())});
}

void RunWriter::write_json(const std::string& filename, const json& j) {
    write_text(filename, j.dump(2) + "\n");
}

void RunWriter::finish() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    json outs = json::array();
    for (const Output& o : outputs_)
        outs.push_back({{"file", o.file}, {"fnv1a64", o.digest}, {"bytes", o.bytes}});
    const json manifest{{"tool", kToolName},
                        {"version", kVersion},
                        {"created_at", iso8601_utc_now()},
                        {"duration_seconds", seconds},
                        {"seed", seed_},
                        {"threads", threads_},
                        {"rng", rng::kAlgorithm},
                        {"config", config_echo_},
                        {"outputs", outs}};
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    if (!out) throw Error("cannot write manifest.json");
    out << manifest.dump(2) << "\n";
}

}  // namespace ifd::io
