#pragma once

#include "ifdcav/grid.hpp"
#include "ifdcav/montecarlo.hpp"
#include "ifdcav/optimize.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ifd {

// One structured config file drives every subcommand. Physical quantities
// carry explicit unit suffixes in their keys (_hz) to keep the 2*pi
// convention unambiguous. Unknown keys are rejected; every violation is
// reported with the dotted path of the offending field.
//
// The defaults reproduce the bundled reference system (kappa_A/2pi = 1.5e7 Hz,
// kappa_3/2pi = 6.5e6 Hz, Delta_P/2pi = 2e7 Hz, eps_P = 0.2, chi = 0.5,
// D = 1e-3), so a bare invocation needs no config at all.

struct GridRange {
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;
    Axis::Scale scale = Axis::Scale::Linear;

    Axis axis(const std::string& name) const;
};

struct RunConfig {
    CavitySpec cavity;
    DetectorPair detectors;

    GridRange xi_grid{0.001, 0.999, 500, Axis::Scale::Linear};
    std::vector<double> n0_values{5.0, 55.0};
    N0Range n0_range{1.0, 1000.0};
    GridRange snr_grid{0.0, 5.0, 100, Axis::Scale::Linear};
    GridRange kappa3_grid{1.5e4, 1.5e10, 25, Axis::Scale::Log};
    GridRange delta_p_grid{1.5e4, 1.5e10, 25, Axis::Scale::Log};

    Constraints constraints{0.85, 2.0};

    TrialConfig montecarlo;

    // fixed couplings for the security curve; when absent they are derived
    // from the constrained optimum per port
    std::optional<double> curve_xi_reflection;
    std::optional<double> curve_xi_transmission;

    std::string out_dir = "out";
    std::string format = "csv";  // csv | json
    int threads = 0;             // 0 = runtime default

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);

    nlohmann::json to_json() const;  // fully resolved echo
    void validate() const;

    std::vector<double> xi_values() const { return xi_grid.axis("xi").values(); }
};

}  // namespace ifd
