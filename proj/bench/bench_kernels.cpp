// Timing harness for the data-parallel kernels: runs each one with the serial
// reference and the OpenMP implementation, reports the speedup and verifies
// the outputs are bit-identical.

#include "ifdcav/montecarlo.hpp"
#include "ifdcav/optimize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace ifd;
using clock_type = std::chrono::steady_clock;

double time_call(const std::function<void()>& fn) {
    const auto t0 = clock_type::now();
    fn();
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s %10.4f s %10.4f s %8.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, identical ? "bit-identical" : "MISMATCH");
}

std::vector<double> dense_xi_grid(std::size_t count) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i)
        xs[i] = 0.001 + static_cast<double>(i) * 0.998 / static_cast<double>(count - 1);
    return xs;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP: both columns run serially\n");
#endif
    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    const CavitySpec spec;
    const DetectorPair dets;

    {
        const std::vector<double> xis = dense_xi_grid(20000);
        const std::vector<double> n0s{1.0, 5.0, 55.0, 500.0};
        SweepGrid<MetricsBundle> ser(Axis::list("n0", n0s), Axis::list("xi", xis));
        SweepGrid<MetricsBundle> par = ser;
        const double ts = time_call([&] { ser = sweep_xi_serial(spec, dets, n0s, xis); });
        const double tp = time_call([&] { par = sweep_xi(spec, dets, n0s, xis); });
        const bool same = std::memcmp(ser.cells.data(), par.cells.data(),
                                      ser.cells.size() * sizeof(MetricsBundle)) == 0;
        report("sweep_xi", ts, tp, same);
    }

    {
        const std::vector<double> xis = dense_xi_grid(400);
        const Axis k3 = Axis::log("kappa3", 1.5e4, 1.5e10, 24);
        const Axis dp = Axis::log("deltaP", 1.5e4, 1.5e10, 24);
        ParamMaps ser{SweepGrid<OptimumReport>(k3, dp), SweepGrid<OptimumReport>(k3, dp)};
        ParamMaps par = ser;
        const double ts = time_call([&] {
            ser = sweep_kappa3_delta_p_serial(spec, dets, k3, dp, {}, xis,
                                              {1.0, 1000.0});
        });
        const double tp = time_call([&] {
            par = sweep_kappa3_delta_p(spec, dets, k3, dp, {}, xis, {1.0, 1000.0});
        });
        const auto equal = [](const OptimumReport& a, const OptimumReport& b) {
            return a.port == b.port && a.xi_star == b.xi_star &&
                   a.n0_star == b.n0_star && a.zeta_star == b.zeta_star &&
                   a.eta_tot_at_star == b.eta_tot_at_star &&
                   a.snr_at_star == b.snr_at_star && a.feasible == b.feasible;
        };
        bool same = true;
        for (std::size_t i = 0; i < ser.reflection.cells.size(); ++i)
            same = same && equal(ser.reflection.cells[i], par.reflection.cells[i]) &&
                   equal(ser.transmission.cells[i], par.transmission.cells[i]);
        report("sweep_kappa3_delta_p", ts, tp, same);
    }

    {
        TrialConfig cfg;
        cfg.n0 = 55;
        cfg.trials = 400000;
        cfg.seed = 12345;
        EmpiricalStats ser, par;
        const double ts =
            time_call([&] { ser = simulate_counts_serial(spec, DetectorSpec{}, cfg); });
        const double tp =
            time_call([&] { par = simulate_counts(spec, DetectorSpec{}, cfg); });
        const bool same = ser.mean_signal == par.mean_signal &&
                          ser.std_noise == par.std_noise &&
                          ser.empirical_snr == par.empirical_snr;
        report("simulate_counts", ts, tp, same);
    }

    {
        TrialConfig cfg;
        cfg.n0 = 55;
        cfg.trials = 400000;
        cfg.seed = 12345;
        double ser = 0.0, par = 0.0;
        const double ts = time_call([&] { ser = simulate_survival_serial(spec, cfg); });
        const double tp = time_call([&] { par = simulate_survival(spec, cfg); });
        report("simulate_survival", ts, tp, ser == par);
    }

    return 0;
}
