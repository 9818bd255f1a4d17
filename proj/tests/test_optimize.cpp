#include "ifdcav/optimize.hpp"

#include "support.hpp"

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstring>

using namespace ifd;
using namespace testsup;

namespace {

// brute-force oracle: log-spaced scan over N0 in (lo, hi]
struct GridBest {
    double n0;
    double zeta;
};

GridBest brute_force_n0(const CavitySpec& spec, const DetectorSpec& det, Port port,
                        double xi, double lo, double hi, int points) {
    GridBest best{lo, -1.0};
    for (int i = 0; i < points; ++i) {
        const double n0 =
            std::exp(std::log(lo) + i * (std::log(hi) - std::log(lo)) / (points - 1));
        const double z = zeta(spec, det, port, {xi, n0});
        if (z > best.zeta) best = {n0, z};
    }
    return best;
}

bool same_report(const OptimumReport& a, const OptimumReport& b) {
    return a.port == b.port && a.xi_star == b.xi_star && a.n0_star == b.n0_star &&
           a.zeta_star == b.zeta_star && a.eta_tot_at_star == b.eta_tot_at_star &&
           a.snr_at_star == b.snr_at_star && a.feasible == b.feasible;
}

}  // namespace

TEST_CASE("closed-form n0 optimum matches the reference value and the grid search") {
    const CavitySpec s = reference_spec();
    const DetectorSpec d = reference_detector();
    const N0Optimum opt = optimal_n0_at_xi(s, d, Port::Transmission, 0.5);
    CHECK(opt.n0 == doctest::Approx(frozen::kN0Star).epsilon(1e-12));

    const GridBest grid = brute_force_n0(s, d, Port::Transmission, 0.5, 1e-3, 1e3, 1000);
    const double log_step = (std::log(1e3) - std::log(1e-3)) / 999.0;
    CHECK(std::abs(std::log(grid.n0) - std::log(opt.n0)) <= log_step);
    CHECK(opt.zeta >= grid.zeta);
}

TEST_CASE("closed form vs brute force for random specs") {
    SpecSampler sampler(4242);
    const Port ports[] = {Port::Reflection, Port::Transmission};
    int accepted = 0;
    while (accepted < 50) {
        const CavitySpec s = sampler.next();
        const DetectorSpec d = sampler.next_detector();
        const Port port = ports[accepted % 2];
        const double xi = s.xi;
        double n0_star;
        try {
            n0_star = optimal_n0_at_xi(s, d, port, xi).n0;
        } catch (const UnboundedInN0&) {
            continue;
        }
        if (n0_star > 1e3 || n0_star < 2e-3) continue;  // outside the oracle grid
        const GridBest grid = brute_force_n0(s, d, port, xi, 1e-3, 1e3, 1000);
        const double log_step = (std::log(1e3) - std::log(1e-3)) / 999.0;
        CHECK(std::abs(std::log(grid.n0) - std::log(n0_star)) <= log_step);
        ++accepted;
    }
}

TEST_CASE("interior optimum always leaves security at exp(-1/2)") {
    // (1-A)^(N0*) = exp(-1/2) identically when the stationary point is interior
    SpecSampler sampler(31);
    for (int i = 0; i < 50; ++i) {
        const CavitySpec s = sampler.next();
        const double a = port_coefficients(s, ObjectState::Present).A;
        if (a <= 0.0) continue;
        const double n0 = -1.0 / (2.0 * std::log1p(-a));
        CHECK(total_security(s, n0) ==
              doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    }
}

TEST_CASE("zero absorption is unbounded in N0") {
    CavitySpec s = reference_spec();
    s.kappa3_hz = 0.0;
    CHECK_THROWS_AS(optimal_n0_at_xi(s, reference_detector(), Port::Transmission, 0.5),
                    UnboundedInN0);
}

TEST_CASE("conditional optima at the reference parameters") {
    const CavitySpec s = reference_spec();
    const Constraints cons{0.85, 2.0};
    const std::vector<double> grid = default_xi_grid();
    const N0Range range{1.0, 1000.0};

    const OptimumReport trans = maximize_zeta(s, reference_detector(),
                                              Port::Transmission, cons, grid, range);
    CHECK(trans.feasible);
    CHECK(trans.xi_star == doctest::Approx(frozen::kCondTransXi).epsilon(1e-9));
    CHECK(trans.zeta_star == doctest::Approx(frozen::kCondTransZeta).epsilon(1e-9));
    CHECK(trans.eta_tot_at_star >= 0.85 - 1e-12);
    CHECK(trans.snr_at_star >= 2.0 - 1e-12);

    const OptimumReport refl = maximize_zeta(s, reference_detector(),
                                             Port::Reflection, cons, grid, range);
    CHECK(refl.feasible);
    CHECK(refl.xi_star == doctest::Approx(frozen::kCondReflXi).epsilon(1e-9));
    CHECK(refl.zeta_star == doctest::Approx(frozen::kCondReflZeta).epsilon(1e-9));

    CHECK(trans.zeta_star > refl.zeta_star);
}

TEST_CASE("unconstrained maxima at the reference parameters") {
    const CavitySpec s = reference_spec();
    const std::vector<double> grid = default_xi_grid();
    const OptimumReport trans =
        maximize_zeta(s, reference_detector(), Port::Transmission, {}, grid,
                      {1.0, 1000.0});
    const OptimumReport refl = maximize_zeta(s, reference_detector(),
                                             Port::Reflection, {}, grid, {1.0, 1000.0});
    CHECK(trans.zeta_star == doctest::Approx(frozen::kGlobTransZeta).epsilon(1e-9));
    CHECK(refl.zeta_star == doctest::Approx(frozen::kGlobReflZeta).epsilon(1e-9));
    // both optima sit below critical coupling
    CHECK(trans.xi_star < 0.5);
    CHECK(refl.xi_star < 0.5);
}

TEST_CASE("constraint soundness: feasible reports satisfy their constraints") {
    SpecSampler sampler(888);
    const std::vector<double> grid = default_xi_grid();
    for (int i = 0; i < 30; ++i) {
        const CavitySpec s = sampler.next();
        const DetectorSpec d = sampler.next_detector();
        const Constraints cons{sampler.uniform(0.1, 0.99), sampler.uniform(0.1, 3.0)};
        const OptimumReport rep =
            maximize_zeta(s, d, Port::Transmission, cons, grid, {1.0, 1000.0});
        if (!rep.feasible) continue;
        // re-evaluate through the metrics module
        const CavitySpec at = s.with_xi(rep.xi_star);
        CHECK(total_security(at, rep.n0_star) >= *cons.min_eta_tot - 1e-9);
        CHECK(snr(at, d, Port::Transmission, rep.n0_star) >= *cons.min_snr - 1e-9);
        CHECK(zeta(s, d, Port::Transmission, {rep.xi_star, rep.n0_star}) ==
              doctest::Approx(rep.zeta_star).epsilon(1e-10));
    }
}

TEST_CASE("tightening the security constraint never improves zeta") {
    const CavitySpec s = reference_spec();
    const DetectorSpec d = reference_detector();
    const std::vector<double> grid = default_xi_grid();
    double prev = std::numeric_limits<double>::infinity();
    for (double m : {0.1, 0.5, 0.7, 0.85, 0.95, 0.99}) {
        const OptimumReport rep =
            maximize_zeta(s, d, Port::Transmission, {m, 2.0}, grid, {1.0, 1000.0});
        if (!rep.feasible) break;
        CHECK(rep.zeta_star <= prev + 1e-12);
        prev = rep.zeta_star;
    }
}

TEST_CASE("impossible constraints report infeasible with the unconstrained best") {
    const CavitySpec s = reference_spec();
    const DetectorSpec d = reference_detector();
    const std::vector<double> grid = default_xi_grid();
    const OptimumReport rep =
        maximize_zeta(s, d, Port::Transmission, {1.0, 2.0}, grid, {1.0, 1000.0});
    CHECK_FALSE(rep.feasible);
    CHECK(rep.zeta_star == doctest::Approx(frozen::kGlobTransZeta).epsilon(1e-9));
}

TEST_CASE("ties in argmax break toward xi nearest 0.5") {
    // zero contrast everywhere: all zetas are exactly zero
    CavitySpec s = reference_spec();
    s.kappa3_hz = 0.0;
    s.delta_p_hz = 0.0;
    s.epsilon_p = 1.0;
    const std::vector<double> grid{0.2, 0.4, 0.8};
    const OptimumReport rep = maximize_zeta(s, reference_detector(),
                                            Port::Transmission, {}, grid,
                                            {1.0, 1000.0});
    CHECK(rep.xi_star == 0.4);
}

TEST_CASE("empty grids are rejected") {
    const CavitySpec s = reference_spec();
    const DetectorSpec d = reference_detector();
    CHECK_THROWS_AS(maximize_zeta(s, d, Port::Reflection, {}, {}, {1.0, 1000.0}),
                    EmptyGrid);
    CHECK_THROWS_AS(sweep_xi(s, reference_detectors(), {}, default_xi_grid()),
                    EmptyGrid);
}

TEST_CASE("sweep_xi cells agree with pointwise metrics and the expected shapes") {
    const CavitySpec s = reference_spec();
    const DetectorPair dets = reference_detectors();
    const std::vector<double> n0s{5.0, 55.0};
    const std::vector<double> xis = default_xi_grid();
    const SweepGrid<MetricsBundle> grid = sweep_xi(s, dets, n0s, xis);

    REQUIRE(grid.cells.size() == n0s.size() * xis.size());

    // eta_tot at N0=55 lies pointwise at or below the N0=5 block
    for (std::size_t i = 0; i < xis.size(); ++i)
        CHECK(grid.at(1, i).eta_tot <= grid.at(0, i).eta_tot);

    // SNR columns peak nearest xi = 0.5 at the reference parameters
    for (std::size_t block : {std::size_t{0}, std::size_t{1}}) {
        std::size_t best1 = 0, best2 = 0;
        for (std::size_t i = 0; i < xis.size(); ++i) {
            if (grid.at(block, i).snr1 > grid.at(block, best1).snr1) best1 = i;
            if (grid.at(block, i).snr2 > grid.at(block, best2).snr2) best2 = i;
        }
        CHECK(std::abs(xis[best1] - 0.5) <= 0.002);
        CHECK(std::abs(xis[best2] - 0.5) <= 0.002);
    }

    // spot-check one cell against the metrics module
    std::size_t i_half = 0;
    for (std::size_t i = 0; i < xis.size(); ++i)
        if (std::abs(xis[i] - 0.5) < std::abs(xis[i_half] - 0.5)) i_half = i;
    const MetricsBundle direct = evaluate_metrics(s, dets, {xis[i_half], 5.0});
    CHECK(grid.at(0, i_half).zeta2 == direct.zeta2);
    CHECK(grid.at(0, i_half).zeta2 ==
          doctest::Approx(frozen::kZetaTrans5).epsilon(5e-4));
}

TEST_CASE("parallel and serial kernels produce bit-identical results") {
    const CavitySpec s = reference_spec();
    const DetectorPair dets = reference_detectors();
    const std::vector<double> n0s{5.0, 55.0};
    const std::vector<double> xis = default_xi_grid();

    const SweepGrid<MetricsBundle> par = sweep_xi(s, dets, n0s, xis);
    const SweepGrid<MetricsBundle> ser = sweep_xi_serial(s, dets, n0s, xis);
    REQUIRE(par.cells.size() == ser.cells.size());
    for (std::size_t i = 0; i < par.cells.size(); ++i)
        CHECK(std::memcmp(&par.cells[i], &ser.cells[i], sizeof(MetricsBundle)) == 0);

    const Constraints cons{0.85, 2.0};
    const OptimumReport mp = maximize_zeta(s, dets.transmission, Port::Transmission,
                                           cons, xis, {1.0, 1000.0});
    const OptimumReport ms = maximize_zeta_serial(s, dets.transmission,
                                                  Port::Transmission, cons, xis,
                                                  {1.0, 1000.0});
    CHECK(same_report(mp, ms));

    const Axis k3 = Axis::log("kappa3", 1.5e4, 1.5e10, 3);
    const Axis dp = Axis::log("deltaP", 1.5e4, 1.5e10, 3);
    const ParamMaps pmap = sweep_kappa3_delta_p(s, dets, k3, dp, {}, xis, {1.0, 1000.0});
    const ParamMaps smap =
        sweep_kappa3_delta_p_serial(s, dets, k3, dp, {}, xis, {1.0, 1000.0});
    for (std::size_t i = 0; i < pmap.reflection.cells.size(); ++i) {
        CHECK(same_report(pmap.reflection.cells[i], smap.reflection.cells[i]));
        CHECK(same_report(pmap.transmission.cells[i], smap.transmission.cells[i]));
    }

#ifdef _OPENMP
    // thread count must not change results
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const SweepGrid<MetricsBundle> one = sweep_xi(s, dets, n0s, xis);
    omp_set_num_threads(saved);
    for (std::size_t i = 0; i < par.cells.size(); ++i)
        CHECK(std::memcmp(&par.cells[i], &one.cells[i], sizeof(MetricsBundle)) == 0);
#endif
}

TEST_CASE("regime map headline cells") {
    const CavitySpec s = reference_spec();
    const DetectorPair dets = reference_detectors();
    const Axis k3 = Axis::log("kappa3", 1.5e4, 1.5e10, 3);
    const Axis dp = Axis::log("deltaP", 1.5e4, 1.5e10, 3);
    const ParamMaps maps =
        sweep_kappa3_delta_p(s, dets, k3, dp, {}, default_xi_grid(), {1.0, 1000.0});

    // kappa3 = kappa_A, Delta_P <= kappa_A: undercoupled for both ports,
    // transmission more so, and with the larger maximum
    for (std::size_t ip : {std::size_t{0}, std::size_t{1}}) {
        const OptimumReport& r = maps.reflection.at(1, ip);
        const OptimumReport& t = maps.transmission.at(1, ip);
        CHECK(r.xi_star < 0.5);
        CHECK(t.xi_star < 0.1);
        CHECK(t.zeta_star >= r.zeta_star);
    }

    // strongly detuned column: essentially no absorption penalty, the optimum
    // returns to critical coupling
    for (std::size_t ik : {std::size_t{0}, std::size_t{1}}) {
        CHECK(std::abs(maps.reflection.at(ik, 2).xi_star - 0.5) < 0.01);
        CHECK(std::abs(maps.transmission.at(ik, 2).xi_star - 0.5) < 0.01);
    }

    // reproducibility: identical inputs give bit-identical maps
    const ParamMaps again =
        sweep_kappa3_delta_p(s, dets, k3, dp, {}, default_xi_grid(), {1.0, 1000.0});
    for (std::size_t i = 0; i < maps.reflection.cells.size(); ++i)
        CHECK(same_report(maps.reflection.cells[i], again.reflection.cells[i]));
}
