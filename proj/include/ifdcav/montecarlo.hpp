#pragma once

#include "ifdcav/metrics.hpp"

#include <cstdint>

namespace ifd {

// Stochastic cross-check of the analytic SNR and total security: photon
// counting with Poissonian statistics and dark counts, and per-photon
// Bernoulli absorption survival. Serves as an oracle independent of the
// closed-form expressions.

struct TrialConfig {
    long long n0 = 5;             // whole photons per trial
    std::size_t trials = 100000;  // >= 1
    std::uint64_t seed = 12345;
    Port port = Port::Transmission;

    void validate() const;
};

struct EmpiricalStats {
    double mean_signal = 0.0;        // |mean of (N_A - N_P)| over trials
    double std_noise = 0.0;          // sample standard deviation of the difference
    double empirical_snr = 0.0;      // mean_signal / std_noise, 0 when degenerate
    double survival_fraction = 1.0;  // filled by the survival simulation
    bool degenerate_noise = false;   // all counts identical (e.g. n0 = 0, D = 0)
};

// Per trial, draws total counts (signal plus dark, a sum of independent
// Poissons) for the object-absent and object-present cases and forms their
// difference. Deterministic for a fixed seed and independent of thread count.
EmpiricalStats simulate_counts(const CavitySpec& spec, const DetectorSpec& det,
                               const TrialConfig& cfg);
EmpiricalStats simulate_counts_serial(const CavitySpec& spec, const DetectorSpec& det,
                                      const TrialConfig& cfg);

// Sends n0 photons per trial, each absorbed with probability A_P; returns the
// fraction of trials with zero absorptions. Converges to (1 - A_P)^n0.
double simulate_survival(const CavitySpec& spec, const TrialConfig& cfg);
double simulate_survival_serial(const CavitySpec& spec, const TrialConfig& cfg);

}  // namespace ifd
