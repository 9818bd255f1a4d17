#include "ifdcav/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>

namespace ifd {

namespace {

// Exceptions must not escape an OpenMP region; the first one thrown by any
// lane is captured and rethrown after the join.
struct LaneError {
    std::atomic<bool> failed{false};
    std::exception_ptr error;

    void capture() {
        if (!failed.exchange(true)) error = std::current_exception();
    }
    void rethrow_if_any() const {
        if (failed.load() && error) std::rethrow_exception(error);
    }
};

double select(const PortCoefficients& c, Port port) {
    return port == Port::Reflection ? c.R : c.T;
}

// Everything maximize_zeta needs from one xi grid point.
struct XiCandidate {
    double xi = 0.0;
    bool feasible = false;
    double n0 = 0.0;
    double zeta = -1.0;
    double eta_tot = 1.0;
    double snr = 0.0;
    // per-xi best ignoring constraints (clamped to the N0 range only)
    double n0_free = 0.0;
    double zeta_free = -1.0;
    double eta_tot_free = 1.0;
    double snr_free = 0.0;
};

double snr_or_zero(const CavitySpec& spec, const DetectorSpec& det, Port port,
                   double n0) {
    try {
        return snr(spec, det, port, n0);
    } catch (const DegenerateNoise&) {
        return 0.0;  // no counts in either state: no signal at this xi
    }
}

XiCandidate evaluate_xi(const CavitySpec& spec, const DetectorSpec& det, Port port,
                        const Constraints& cons, double xi, const N0Range& range) {
    const CavitySpec at_xi = spec.with_xi(xi);
    const PortCoefficients pa = port_coefficients(at_xi, ObjectState::Absent);
    const PortCoefficients pp = port_coefficients(at_xi, ObjectState::Present);
    const double absorption = pp.A;

    XiCandidate cand;
    cand.xi = xi;

    // interior stationary point; +inf when zeta keeps growing (A == 0)
    const double stationary =
        absorption > 0.0 ? -1.0 / (2.0 * std::log1p(-absorption))
                         : std::numeric_limits<double>::infinity();

    const auto clamp_n0 = [](double v, double lo, double hi) {
        return std::min(std::max(v, lo), hi);
    };

    cand.n0_free = clamp_n0(stationary, range.lo, range.hi);
    cand.snr_free = snr_or_zero(at_xi, det, port, cand.n0_free);
    cand.eta_tot_free = total_security(at_xi, cand.n0_free);
    cand.zeta_free = cand.snr_free * cand.eta_tot_free;

    double lo = range.lo;
    double hi = range.hi;
    if (cons.min_snr && *cons.min_snr > 0.0) {
        if (select(pa, port) == select(pp, port)) return cand;  // no contrast here
        lo = std::max(lo, n0_for_snr(at_xi, det, port, *cons.min_snr));
    }
    if (cons.min_eta_tot && *cons.min_eta_tot > 0.0 && absorption > 0.0) {
        // (1-A)^n0 >= m  <=>  n0 <= ln m / ln(1-A)
        hi = std::min(hi, std::log(*cons.min_eta_tot) / std::log1p(-absorption));
    }
    if (lo > hi) return cand;

    cand.feasible = true;
    cand.n0 = clamp_n0(stationary, lo, hi);
    cand.snr = snr_or_zero(at_xi, det, port, cand.n0);
    cand.eta_tot = total_security(at_xi, cand.n0);
    cand.zeta = cand.snr * cand.eta_tot;
    return cand;
}

// zeta descending; ties go to the xi nearest 0.5.
bool better(double zeta, double xi, double best_zeta, double best_xi) {
    if (zeta != best_zeta) return zeta > best_zeta;
    return std::abs(xi - 0.5) < std::abs(best_xi - 0.5);
}

OptimumReport reduce_candidates(const std::vector<XiCandidate>& cands, Port port) {
    std::int64_t best = -1;
    std::int64_t best_free = -1;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(cands.size()); ++i) {
        const XiCandidate& c = cands[i];
        if (c.feasible &&
            (best < 0 || better(c.zeta, c.xi, cands[best].zeta, cands[best].xi)))
            best = i;
        if (best_free < 0 || better(c.zeta_free, c.xi, cands[best_free].zeta_free,
                                    cands[best_free].xi))
            best_free = i;
    }

    OptimumReport rep;
    rep.port = port;
    if (best >= 0) {
        const XiCandidate& c = cands[best];
        rep.feasible = true;
        rep.xi_star = c.xi;
        rep.n0_star = c.n0;
        rep.zeta_star = c.zeta;
        rep.eta_tot_at_star = c.eta_tot;
        rep.snr_at_star = c.snr;
    } else {
        const XiCandidate& c = cands[best_free];
        rep.feasible = false;
        rep.xi_star = c.xi;
        rep.n0_star = c.n0_free;
        rep.zeta_star = c.zeta_free;
        rep.eta_tot_at_star = c.eta_tot_free;
        rep.snr_at_star = c.snr_free;
    }
    return rep;
}

void check_maximize_inputs(const CavitySpec& spec, const DetectorSpec& det,
                           const Constraints& cons, std::span<const double> xi_grid,
                           const N0Range& range) {
    spec.validate();
    det.validate();
    cons.validate();
    range.validate();
    if (xi_grid.empty()) throw EmptyGrid("maximize_zeta: empty xi grid");
}

template <bool Parallel>
OptimumReport maximize_impl(const CavitySpec& spec, const DetectorSpec& det,
                            Port port, const Constraints& cons,
                            std::span<const double> xi_grid, const N0Range& range) {
    check_maximize_inputs(spec, det, cons, xi_grid, range);
    std::vector<XiCandidate> cands(xi_grid.size());
    const std::int64_t n = static_cast<std::int64_t>(xi_grid.size());
    LaneError lane;
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        if (lane.failed.load(std::memory_order_relaxed)) continue;
        try {
            cands[i] = evaluate_xi(spec, det, port, cons, xi_grid[i], range);
        } catch (...) {
            lane.capture();
        }
    }
    lane.rethrow_if_any();
    return reduce_candidates(cands, port);
}

GridMeta spec_meta(const CavitySpec& spec) {
    GridMeta meta;
    meta.fixed = {
        {"kappa_a_hz", format_double(spec.kappa_a_hz)},
        {"kappa3_hz", format_double(spec.kappa3_hz)},
        {"delta_a_hz", format_double(spec.delta_a_hz)},
        {"delta_p_hz", format_double(spec.delta_p_hz)},
        {"epsilon_a", format_double(spec.epsilon_a)},
        {"epsilon_p", format_double(spec.epsilon_p)},
    };
    return meta;
}

template <bool Parallel>
SweepGrid<MetricsBundle> sweep_xi_impl(const CavitySpec& spec, const DetectorPair& dets,
                                       std::span<const double> n0_values,
                                       std::span<const double> xi_grid) {
    spec.validate();
    dets.validate();
    if (n0_values.empty()) throw EmptyGrid("sweep_xi: empty n0 list");
    if (xi_grid.empty()) throw EmptyGrid("sweep_xi: empty xi grid");

    SweepGrid<MetricsBundle> grid(
        Axis::list("n0", {n0_values.begin(), n0_values.end()}),
        Axis::list("xi", {xi_grid.begin(), xi_grid.end()}));
    grid.meta = spec_meta(spec);

    const std::int64_t total = static_cast<std::int64_t>(grid.cells.size());
    const std::int64_t nxi = static_cast<std::int64_t>(xi_grid.size());
    LaneError lane;
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        if (lane.failed.load(std::memory_order_relaxed)) continue;
        try {
            const double n0 = n0_values[static_cast<std::size_t>(idx / nxi)];
            const double xi = xi_grid[static_cast<std::size_t>(idx % nxi)];
            grid.cells[static_cast<std::size_t>(idx)] =
                evaluate_metrics(spec, dets, {xi, n0});
        } catch (...) {
            lane.capture();
        }
    }
    lane.rethrow_if_any();
    return grid;
}

template <bool Parallel>
ParamMaps sweep_map_impl(const CavitySpec& base, const DetectorPair& dets,
                         const Axis& kappa3_axis, const Axis& delta_p_axis,
                         const Constraints& cons, std::span<const double> xi_grid,
                         const N0Range& range) {
    base.validate();
    dets.validate();
    cons.validate();
    range.validate();
    if (xi_grid.empty()) throw EmptyGrid("sweep_kappa3_delta_p: empty xi grid");

    ParamMaps maps{SweepGrid<OptimumReport>(kappa3_axis, delta_p_axis),
                   SweepGrid<OptimumReport>(kappa3_axis, delta_p_axis)};
    maps.reflection.meta = spec_meta(base);
    maps.transmission.meta = spec_meta(base);

    const std::int64_t np = static_cast<std::int64_t>(delta_p_axis.size());
    const std::int64_t total = static_cast<std::int64_t>(kappa3_axis.size()) * np;
    LaneError lane;
    // parallel over cells; each cell runs the serial scan internally
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        if (lane.failed.load(std::memory_order_relaxed)) continue;
        try {
            CavitySpec spec = base;
            spec.kappa3_hz = kappa3_axis[static_cast<std::size_t>(idx / np)];
            spec.delta_p_hz = delta_p_axis[static_cast<std::size_t>(idx % np)];
            maps.reflection.cells[static_cast<std::size_t>(idx)] =
                maximize_impl<false>(spec, dets.reflection, Port::Reflection, cons,
                                     xi_grid, range);
            maps.transmission.cells[static_cast<std::size_t>(idx)] =
                maximize_impl<false>(spec, dets.transmission, Port::Transmission,
                                     cons, xi_grid, range);
        } catch (...) {
            lane.capture();
        }
    }
    lane.rethrow_if_any();
    return maps;
}

}  // namespace

void Constraints::validate() const {
    if (min_eta_tot && !(*min_eta_tot >= 0.0 && *min_eta_tot <= 1.0))
        throw InvalidSpec("min_eta_tot", "must lie in [0, 1]");
    if (min_snr && (!(*min_snr >= 0.0) || !std::isfinite(*min_snr)))
        throw InvalidSpec("min_snr", "must be finite and >= 0");
}

void N0Range::validate() const {
    if (!(lo >= 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo))
        throw InvalidSpec("n0_range", "needs finite 0 <= lo <= hi");
}

N0Optimum optimal_n0_at_xi(const CavitySpec& spec, const DetectorSpec& det,
                           Port port, double xi) {
    const CavitySpec at_xi = spec.with_xi(xi);
    at_xi.validate();
    det.validate();

    const double absorption = port_coefficients(at_xi, ObjectState::Present).A;
    if (absorption <= 0.0)
        throw UnboundedInN0("optimal_n0_at_xi: A(xi) == 0, cap N0 at the caller");

    const double n0_star = -1.0 / (2.0 * std::log1p(-absorption));
    const auto zeta_at = [&](double n0) {
        return snr_or_zero(at_xi, det, port, n0) * total_security(at_xi, n0);
    };
    const double zeta_star = zeta_at(n0_star);

    // local three-point stencil: the stationary point must dominate, up to
    // rounding slack in the nearly flat neighborhood
    const double h = n0_star * 1e-3;
    const double tol = zeta_star * 1e-9;
    if (zeta_at(n0_star - h) > zeta_star + tol || zeta_at(n0_star + h) > zeta_star + tol)
        throw std::logic_error("optimal_n0_at_xi: stationary point is not a maximum");

    return {n0_star, zeta_star};
}

OptimumReport maximize_zeta(const CavitySpec& spec, const DetectorSpec& det,
                            Port port, const Constraints& constraints,
                            std::span<const double> xi_grid, const N0Range& n0_range) {
    return maximize_impl<true>(spec, det, port, constraints, xi_grid, n0_range);
}

OptimumReport maximize_zeta_serial(const CavitySpec& spec, const DetectorSpec& det,
                                   Port port, const Constraints& constraints,
                                   std::span<const double> xi_grid,
                                   const N0Range& n0_range) {
    return maximize_impl<false>(spec, det, port, constraints, xi_grid, n0_range);
}

SweepGrid<MetricsBundle> sweep_xi(const CavitySpec& spec, const DetectorPair& dets,
                                  std::span<const double> n0_values,
                                  std::span<const double> xi_grid) {
    return sweep_xi_impl<true>(spec, dets, n0_values, xi_grid);
}

SweepGrid<MetricsBundle> sweep_xi_serial(const CavitySpec& spec,
                                         const DetectorPair& dets,
                                         std::span<const double> n0_values,
                                         std::span<const double> xi_grid) {
    return sweep_xi_impl<false>(spec, dets, n0_values, xi_grid);
}

ParamMaps sweep_kappa3_delta_p(const CavitySpec& base_spec, const DetectorPair& dets,
                               const Axis& kappa3_axis, const Axis& delta_p_axis,
                               const Constraints& constraints,
                               std::span<const double> xi_grid,
                               const N0Range& n0_range) {
    return sweep_map_impl<true>(base_spec, dets, kappa3_axis, delta_p_axis,
                                constraints, xi_grid, n0_range);
}

ParamMaps sweep_kappa3_delta_p_serial(const CavitySpec& base_spec,
                                      const DetectorPair& dets,
                                      const Axis& kappa3_axis, const Axis& delta_p_axis,
                                      const Constraints& constraints,
                                      std::span<const double> xi_grid,
                                      const N0Range& n0_range) {
    return sweep_map_impl<false>(base_spec, dets, kappa3_axis, delta_p_axis,
                                 constraints, xi_grid, n0_range);
}

std::vector<double> default_xi_grid() {
    constexpr std::size_t kCount = 500;
    std::vector<double> grid(kCount);
    for (std::size_t i = 0; i < kCount; ++i)
        grid[i] = 0.001 + static_cast<double>(i) * (0.999 - 0.001) /
                              static_cast<double>(kCount - 1);
    return grid;
}

}  // namespace ifd
