#pragma once

#include "ifdcav/grid.hpp"
#include "ifdcav/metrics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ifd {

// Search for the maxima of zeta = SNR * eta_tot over the (xi, N0) plane.
//
// For fixed xi, zeta(N0) = c * sqrt(N0) * (1-A)^N0 has exactly one interior
// stationary point, N0* = -1 / (2 ln(1-A)), so the 2D problem reduces to a
// scan over xi with a closed form per point. Constraints carve a feasible
// N0 interval per xi (eta_tot >= m caps N0 from above, SNR >= s bounds it
// from below) and the unimodal zeta is clamped into it.
//
// Grid cells are independent; the parallel kernels assemble results by index
// and reduce serially, so output is bit-identical to the serial reference for
// any thread count.

struct Constraints {
    std::optional<double> min_eta_tot;  // lowest acceptable total security
    std::optional<double> min_snr;      // lowest acceptable SNR

    bool unconstrained() const { return !min_eta_tot && !min_snr; }
    void validate() const;
};

struct N0Range {
    double lo = 1.0;
    double hi = 1000.0;

    void validate() const;
};

struct OptimumReport {
    Port port = Port::Reflection;
    double xi_star = 0.0;
    double n0_star = 0.0;
    double zeta_star = 0.0;
    double eta_tot_at_star = 1.0;
    double snr_at_star = 0.0;
    bool feasible = true;  // false: constraints unsatisfiable, fields hold the
                           // unconstrained best instead
};

struct N0Optimum {
    double n0 = 0.0;
    double zeta = 0.0;
};

// Stationary point of zeta in N0 at the given coupling efficiency, and zeta
// there. Verified to be a maximum by a three-point stencil. Throws
// UnboundedInN0 when A(xi) == 0 (caller must cap N0 instead).
N0Optimum optimal_n0_at_xi(const CavitySpec& spec, const DetectorSpec& det,
                           Port port, double xi);

// Best zeta over the xi grid with the per-xi closed form clamped into
// n0_range and the constraint-feasible interval. Ties break toward the xi
// nearest 0.5.
OptimumReport maximize_zeta(const CavitySpec& spec, const DetectorSpec& det,
                            Port port, const Constraints& constraints,
                            std::span<const double> xi_grid, const N0Range& n0_range);
OptimumReport maximize_zeta_serial(const CavitySpec& spec, const DetectorSpec& det,
                                   Port port, const Constraints& constraints,
                                   std::span<const double> xi_grid,
                                   const N0Range& n0_range);

// MetricsBundle at every (N0, xi) pair; ax0 = n0, ax1 = xi.
SweepGrid<MetricsBundle> sweep_xi(const CavitySpec& spec, const DetectorPair& dets,
                                  std::span<const double> n0_values,
                                  std::span<const double> xi_grid);
SweepGrid<MetricsBundle> sweep_xi_serial(const CavitySpec& spec,
                                         const DetectorPair& dets,
                                         std::span<const double> n0_values,
                                         std::span<const double> xi_grid);

// Per-cell optimum over a (kappa3, delta_P) grid, one map per port;
// ax0 = kappa3, ax1 = delta_P.
struct ParamMaps {
    SweepGrid<OptimumReport> reflection;
    SweepGrid<OptimumReport> transmission;
};

ParamMaps sweep_kappa3_delta_p(const CavitySpec& base_spec, const DetectorPair& dets,
                               const Axis& kappa3_axis, const Axis& delta_p_axis,
                               const Constraints& constraints,
                               std::span<const double> xi_grid,
                               const N0Range& n0_range);
ParamMaps sweep_kappa3_delta_p_serial(const CavitySpec& base_spec,
                                      const DetectorPair& dets,
                                      const Axis& kappa3_axis, const Axis& delta_p_axis,
                                      const Constraints& constraints,
                                      std::span<const double> xi_grid,
                                      const N0Range& n0_range);

// Default xi scan: 500 points on [0.001, 0.999]. Endpoints stay inside the
// open interval because xi in {0, 1} makes the cavity one-sided.
std::vector<double> default_xi_grid();

}  // namespace ifd
