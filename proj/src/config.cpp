#include "ifdcav/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace ifd {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InvalidSpec(path, msg);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "must be an object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) {
                known = true;
                break;
            }
        if (!known) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_double(const json& j, const std::string& path, const char* key,
                  double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "must be a number");
    return v.get<double>();
}

std::optional<double> get_optional(const json& j, const std::string& path,
                                   const char* key, std::optional<double> fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) fail(path + "." + key, "must be a number or null");
    return v.get<double>();
}

std::uint64_t get_u64(const json& j, const std::string& path, const char* key,
                      std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_unsigned() && !v.is_number_integer())
        fail(path + "." + key, "must be a non-negative integer");
    if (v.is_number_integer() && v.get<std::int64_t>() < 0)
        fail(path + "." + key, "must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       std::string fallback) {
    if (!j.contains(key)) return std::move(fallback);
    const json& v = j.at(key);
    if (!v.is_string()) fail(path + "." + key, "must be a string");
    return v.get<std::string>();
}

Axis::Scale parse_scale(const json& j, const std::string& path, Axis::Scale fallback) {
    const std::string s = get_string(j, path, "scale", scale_name(fallback));
    if (s == "linear") return Axis::Scale::Linear;
    if (s == "log") return Axis::Scale::Log;
    fail(path + ".scale", "must be 'linear' or 'log'");
}

GridRange parse_grid(const json& parent, const std::string& path, const char* key,
                     GridRange fallback) {
    if (!parent.contains(key)) return fallback;
    const json& j = parent.at(key);
    const std::string p = path + "." + key;
    check_keys(j, p, {"min", "max", "count", "scale"});
    GridRange g = fallback;
    g.min = get_double(j, p, "min", fallback.min);
    g.max = get_double(j, p, "max", fallback.max);
    g.count = static_cast<std::size_t>(get_u64(j, p, "count", fallback.count));
    g.scale = parse_scale(j, p, fallback.scale);
    return g;
}

DetectorSpec parse_detector(const json& parent, const std::string& path,
                            const char* key, DetectorSpec fallback) {
    if (!parent.contains(key)) return fallback;
    const json& j = parent.at(key);
    const std::string p = path + "." + key;
    check_keys(j, p, {"chi", "dark_ratio"});
    DetectorSpec d = fallback;
    d.chi = get_double(j, p, "chi", fallback.chi);
    d.dark_ratio = get_double(j, p, "dark_ratio", fallback.dark_ratio);
    return d;
}

json grid_to_json(const GridRange& g) {
    return json{{"min", g.min},
                {"max", g.max},
                {"count", g.count},
                {"scale", scale_name(g.scale)}};
}

template <typename Fn>
void prefixed(const std::string& prefix, Fn&& fn) {
    try {
        fn();
    } catch (const InvalidSpec& e) {
        throw InvalidSpec(prefix + "." + e.field(), e.message());
    }
}

}  // namespace

Axis GridRange::axis(const std::string& name) const {
    return scale == Axis::Scale::Log ? Axis::log(name, min, max, count)
                                     : Axis::linear(name, min, max, count);
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    check_keys(j, "", {"cavity", "detectors", "sweep", "constraints", "montecarlo",
                       "security_curve", "output"});

    if (j.contains("cavity")) {
        const json& c = j.at("cavity");
        check_keys(c, "cavity", {"kappa_a_hz", "kappa3_hz", "delta_a_hz", "delta_p_hz",
                                 "epsilon_a", "epsilon_p", "xi"});
        cfg.cavity.kappa_a_hz = get_double(c, "cavity", "kappa_a_hz", cfg.cavity.kappa_a_hz);
        cfg.cavity.kappa3_hz = get_double(c, "cavity", "kappa3_hz", cfg.cavity.kappa3_hz);
        cfg.cavity.delta_a_hz = get_double(c, "cavity", "delta_a_hz", cfg.cavity.delta_a_hz);
        cfg.cavity.delta_p_hz = get_double(c, "cavity", "delta_p_hz", cfg.cavity.delta_p_hz);
        cfg.cavity.epsilon_a = get_double(c, "cavity", "epsilon_a", cfg.cavity.epsilon_a);
        cfg.cavity.epsilon_p = get_double(c, "cavity", "epsilon_p", cfg.cavity.epsilon_p);
        cfg.cavity.xi = get_double(c, "cavity", "xi", cfg.cavity.xi);
    }

    if (j.contains("detectors")) {
        const json& d = j.at("detectors");
        check_keys(d, "detectors", {"reflection", "transmission"});
        cfg.detectors.reflection =
            parse_detector(d, "detectors", "reflection", cfg.detectors.reflection);
        cfg.detectors.transmission =
            parse_detector(d, "detectors", "transmission", cfg.detectors.transmission);
    }

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        check_keys(s, "sweep", {"xi_grid", "n0_values", "n0_range", "snr_grid",
                                "kappa3_grid", "delta_p_grid"});
        cfg.xi_grid = parse_grid(s, "sweep", "xi_grid", cfg.xi_grid);
        cfg.snr_grid = parse_grid(s, "sweep", "snr_grid", cfg.snr_grid);
        cfg.kappa3_grid = parse_grid(s, "sweep", "kappa3_grid", cfg.kappa3_grid);
        cfg.delta_p_grid = parse_grid(s, "sweep", "delta_p_grid", cfg.delta_p_grid);
        if (s.contains("n0_values")) {
            const json& v = s.at("n0_values");
            if (!v.is_array() || v.empty())
                fail("sweep.n0_values", "must be a non-empty array of numbers");
            cfg.n0_values.clear();
            for (const auto& e : v) {
                if (!e.is_number()) fail("sweep.n0_values", "must contain only numbers");
                cfg.n0_values.push_back(e.get<double>());
            }
        }
        if (s.contains("n0_range")) {
            const json& r = s.at("n0_range");
            check_keys(r, "sweep.n0_range", {"min", "max"});
            cfg.n0_range.lo = get_double(r, "sweep.n0_range", "min", cfg.n0_range.lo);
            cfg.n0_range.hi = get_double(r, "sweep.n0_range", "max", cfg.n0_range.hi);
        }
    }

    if (j.contains("constraints")) {
        const json& c = j.at("constraints");
        check_keys(c, "constraints", {"min_eta_tot", "min_snr"});
        cfg.constraints.min_eta_tot =
            get_optional(c, "constraints", "min_eta_tot", cfg.constraints.min_eta_tot);
        cfg.constraints.min_snr =
            get_optional(c, "constraints", "min_snr", cfg.constraints.min_snr);
    }

    if (j.contains("montecarlo")) {
        const json& m = j.at("montecarlo");
        check_keys(m, "montecarlo", {"n0", "trials", "seed", "port"});
        cfg.montecarlo.n0 = static_cast<long long>(
            get_u64(m, "montecarlo", "n0", static_cast<std::uint64_t>(cfg.montecarlo.n0)));
        cfg.montecarlo.trials = static_cast<std::size_t>(
            get_u64(m, "montecarlo", "trials", cfg.montecarlo.trials));
        cfg.montecarlo.seed = get_u64(m, "montecarlo", "seed", cfg.montecarlo.seed);
        const std::string port = get_string(m, "montecarlo", "port",
                                            port_name(cfg.montecarlo.port));
        if (port == "reflection")
            cfg.montecarlo.port = Port::Reflection;
        else if (port == "transmission")
            cfg.montecarlo.port = Port::Transmission;
        else
            fail("montecarlo.port", "must be 'reflection' or 'transmission'");
    }

    if (j.contains("security_curve")) {
        const json& s = j.at("security_curve");
        check_keys(s, "security_curve", {"xi_reflection", "xi_transmission"});
        cfg.curve_xi_reflection =
            get_optional(s, "security_curve", "xi_reflection", cfg.curve_xi_reflection);
        cfg.curve_xi_transmission = get_optional(s, "security_curve", "xi_transmission",
                                                 cfg.curve_xi_transmission);
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "output", {"dir", "format", "threads"});
        cfg.out_dir = get_string(o, "output", "dir", cfg.out_dir);
        cfg.format = get_string(o, "output", "format", cfg.format);
        cfg.threads = static_cast<int>(get_u64(o, "output", "threads",
                                               static_cast<std::uint64_t>(cfg.threads)));
    }

    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("config", "cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail("config", std::string("parse error: ") + e.what());
    }
    return from_json(j);
}

void RunConfig::validate() const {
    prefixed("cavity", [&] { cavity.validate(); });
    prefixed("detectors.reflection", [&] { detectors.reflection.validate(); });
    prefixed("detectors.transmission", [&] { detectors.transmission.validate(); });
    prefixed("constraints", [&] { constraints.validate(); });
    prefixed("sweep", [&] { n0_range.validate(); });
    prefixed("montecarlo", [&] { montecarlo.validate(); });

    if (!(xi_grid.min > 0.0 && xi_grid.max < 1.0 && xi_grid.min <= xi_grid.max))
        fail("sweep.xi_grid", "xi values must stay inside the open interval (0, 1)");
    if (xi_grid.count == 0) fail("sweep.xi_grid.count", "must be >= 1");
    for (double v : n0_values)
        if (!(v >= 0.0) || !std::isfinite(v))
            fail("sweep.n0_values", "entries must be finite and >= 0");
    for (std::size_t i = 1; i < n0_values.size(); ++i)
        if (!(n0_values[i] > n0_values[i - 1]))
            fail("sweep.n0_values", "entries must be strictly increasing");
    if (!(snr_grid.min >= 0.0)) fail("sweep.snr_grid.min", "must be >= 0");
    if (snr_grid.count == 0) fail("sweep.snr_grid.count", "must be >= 1");
    if (!(kappa3_grid.min > 0.0)) fail("sweep.kappa3_grid.min", "must be > 0");
    if (!(delta_p_grid.min > 0.0)) fail("sweep.delta_p_grid.min", "must be > 0");
    if (curve_xi_reflection && !(*curve_xi_reflection > 0.0 && *curve_xi_reflection < 1.0))
        fail("security_curve.xi_reflection", "must lie in the open interval (0, 1)");
    if (curve_xi_transmission &&
        !(*curve_xi_transmission > 0.0 && *curve_xi_transmission < 1.0))
        fail("security_curve.xi_transmission", "must lie in the open interval (0, 1)");
    if (format != "csv" && format != "json")
        fail("output.format", "must be 'csv' or 'json'");
    if (threads < 0) fail("output.threads", "must be >= 0");
}

json RunConfig::to_json() const {
    json j;
    j["cavity"] = {{"kappa_a_hz", cavity.kappa_a_hz},
                   {"kappa3_hz", cavity.kappa3_hz},
                   {"delta_a_hz", cavity.delta_a_hz},
                   {"delta_p_hz", cavity.delta_p_hz},
                   {"epsilon_a", cavity.epsilon_a},
                   {"epsilon_p", cavity.epsilon_p},
                   {"xi", cavity.xi}};
    j["detectors"] = {{"reflection",
                       {{"chi", detectors.reflection.chi},
                        {"dark_ratio", detectors.reflection.dark_ratio}}},
                      {"transmission",
                       {{"chi", detectors.transmission.chi},
                        {"dark_ratio", detectors.transmission.dark_ratio}}}};
    j["sweep"] = {{"xi_grid", grid_to_json(xi_grid)},
                  {"n0_values", n0_values},
                  {"n0_range", {{"min", n0_range.lo}, {"max", n0_range.hi}}},
                  {"snr_grid", grid_to_json(snr_grid)},
                  {"kappa3_grid", grid_to_json(kappa3_grid)},
                  {"delta_p_grid", grid_to_json(delta_p_grid)}};
    j["constraints"] = {
        {"min_eta_tot", constraints.min_eta_tot ? json(*constraints.min_eta_tot) : json()},
        {"min_snr", constraints.min_snr ? json(*constraints.min_snr) : json()}};
    j["montecarlo"] = {{"n0", montecarlo.n0},
                       {"trials", montecarlo.trials},
                       {"seed", montecarlo.seed},
                       {"port", port_name(montecarlo.port)}};
    j["security_curve"] = {
        {"xi_reflection", curve_xi_reflection ? json(*curve_xi_reflection) : json()},
        {"xi_transmission",
         curve_xi_transmission ? json(*curve_xi_transmission) : json()}};
    j["output"] = {{"dir", out_dir}, {"format", format}, {"threads", threads}};
    return j;
}

}  // namespace ifd
