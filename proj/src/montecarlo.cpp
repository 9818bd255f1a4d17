#include "ifdcav/montecarlo.hpp"

#include "ifdcav/rng.hpp"

#include <cmath>
#include <vector>

namespace ifd {

namespace {

// substream ids keep the two simulations statistically independent even when
// run with the same master seed
constexpr std::uint64_t kCountsStream = 1;
constexpr std::uint64_t kSurvivalStream = 2;

double port_value(const PortCoefficients& c, Port port) {
    return port == Port::Reflection ? c.R : c.T;
}

template <bool Parallel>
EmpiricalStats counts_impl(const CavitySpec& spec, const DetectorSpec& det,
                           const TrialConfig& cfg) {
    cfg.validate();
    det.validate();
    const double n0 = static_cast<double>(cfg.n0);
    const double j_a =
        port_value(port_coefficients(spec, ObjectState::Absent), cfg.port);
    const double j_p =
        port_value(port_coefficients(spec, ObjectState::Present), cfg.port);
    // dark counts fold into the Poisson mean: a sum of independent Poissons
    // is Poisson in the summed mean
    const double lambda_a = det.chi * n0 * j_a + det.dark_ratio * n0;
    const double lambda_p = det.chi * n0 * j_p + det.dark_ratio * n0;

    std::vector<long long> diff(cfg.trials);
    const std::int64_t n = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t t = 0; t < n; ++t) {
        std::mt19937_64 gen(rng::substream_seed(cfg.seed, kCountsStream,
                                                static_cast<std::uint64_t>(t)));
        const long long counts_a = rng::poisson(gen, lambda_a);
        const long long counts_p = rng::poisson(gen, lambda_p);
        diff[static_cast<std::size_t>(t)] = counts_a - counts_p;
    }

    // serial reduction keeps the statistics bit-identical for any lane count
    double sum = 0.0;
    for (long long d : diff) sum += static_cast<double>(d);
    const double mean = sum / static_cast<double>(cfg.trials);

    double ss = 0.0;
    for (long long d : diff) {
        const double r = static_cast<double>(d) - mean;
        ss += r * r;
    }

    EmpiricalStats stats;
    stats.mean_signal = std::abs(mean);
    stats.std_noise =
        cfg.trials > 1 ? std::sqrt(ss / static_cast<double>(cfg.trials - 1)) : 0.0;
    if (stats.std_noise > 0.0) {
        stats.empirical_snr = stats.mean_signal / stats.std_noise;
    } else {
        stats.degenerate_noise = true;
        stats.empirical_snr = 0.0;
    }
    return stats;
}

template <bool Parallel>
double survival_impl(const CavitySpec& spec, const TrialConfig& cfg) {
    cfg.validate();
    const double absorption = port_coefficients(spec, ObjectState::Present).A;

    std::vector<unsigned char> survived(cfg.trials);
    const std::int64_t n = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t t = 0; t < n; ++t) {
        std::mt19937_64 gen(rng::substream_seed(cfg.seed, kSurvivalStream,
                                                static_cast<std::uint64_t>(t)));
        bool absorbed = false;
        for (long long photon = 0; photon < cfg.n0 && !absorbed; ++photon)
            absorbed = rng::bernoulli(gen, absorption);
        survived[static_cast<std::size_t>(t)] = absorbed ? 0 : 1;
    }

    std::size_t alive = 0;
    for (unsigned char s : survived) alive += s;
    return static_cast<double>(alive) / static_cast<double>(cfg.trials);
}

}  // namespace

void TrialConfig::validate() const {
    if (n0 < 0) throw InvalidSpec("n0", "must be >= 0");
    if (trials < 1) throw InvalidSpec("trials", "must be >= 1");
}

EmpiricalStats simulate_counts(const CavitySpec& spec, const DetectorSpec& det,
                               const TrialConfig& cfg) {
    return counts_impl<true>(spec, det, cfg);
}

EmpiricalStats simulate_counts_serial(const CavitySpec& spec, const DetectorSpec& det,
                                      const TrialConfig& cfg) {
    return counts_impl<false>(spec, det, cfg);
}

double simulate_survival(const CavitySpec& spec, const TrialConfig& cfg) {
    return survival_impl<true>(spec, cfg);
}

double simulate_survival_serial(const CavitySpec& spec, const TrialConfig& cfg) {
    return survival_impl<false>(spec, cfg);
}

}  // namespace ifd
