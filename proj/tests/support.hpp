#pragma once

#include "ifdcav/cavity.hpp"
#include "ifdcav/metrics.hpp"

#include <cmath>
#include <random>

// Shared fixtures for the test suites. Expected values marked "frozen" were
// computed with an independent script that evaluates the formulas directly;
// they are not produced by the library under test.
namespace testsup {

// The bundled reference system: kappa_A/2pi = 1.5e7 Hz, kappa_3/2pi = 6.5e6 Hz,
// Delta_P/2pi = 2e7 Hz, eps_P = 0.2, chi = 0.5, D = 1e-3. These are the
// library defaults, asserted explicitly here so a drift in defaults fails
// loudly.
inline ifd::CavitySpec reference_spec() {
    ifd::CavitySpec s;
    s.kappa_a_hz = 1.5e7;
    s.kappa3_hz = 6.5e6;
    s.delta_a_hz = 0.0;
    s.delta_p_hz = 2.0e7;
    s.epsilon_a = 1.0;
    s.epsilon_p = 0.2;
    s.xi = 0.5;
    return s;
}

inline ifd::DetectorSpec reference_detector() {
    return {0.5, 1e-3};
}

inline ifd::DetectorPair reference_detectors() {
    return {reference_detector(), reference_detector()};
}

// frozen oracle values at the reference system, xi = 0.5
namespace frozen {
inline constexpr double kRP = 0.9592677900351558;
inline constexpr double kTP = 0.021820826766880835;
inline constexpr double kAP = 0.01891138319796339;
inline constexpr double kEta = 0.9810886168020366;
inline constexpr double kSnrTrans5 = 1.5270479001904427;
inline constexpr double kSnrRefl5 = 1.5453837712375977;
inline constexpr double kSnrTrans55 = 5.064644921831781;
inline constexpr double kSnrRefl55 = 5.125458126299535;
inline constexpr double kEtaTot5 = 0.9089524905199742;
inline constexpr double kEtaTot55 = 0.3499073163216866;
inline constexpr double kZetaTrans5 = 1.3880139920213999;
inline constexpr double kN0Star = 26.188307048503766;
inline constexpr double kFluxBound = 2.15e7;
// conditional optima (eta_tot >= 0.85, snr >= 2) on the default 500-point
// xi grid
inline constexpr double kCondReflXi = 0.397;
inline constexpr double kCondReflZeta = 1.8060819605433078;
inline constexpr double kCondTransXi = 0.031;
inline constexpr double kCondTransZeta = 2.3351411575696224;
// unconstrained maxima on the same grid, N0 in [1, 1000]
inline constexpr double kGlobReflZeta = 2.260498971881355;
inline constexpr double kGlobTransZeta = 2.922671451906899;
}  // namespace frozen

// Random valid cavity specs covering many decades of rates.
class SpecSampler {
public:
    explicit SpecSampler(std::uint64_t seed) : gen_(seed) {}

    ifd::CavitySpec next(bool absorbing = true) {
        ifd::CavitySpec s;
        s.kappa_a_hz = log_uniform(1e3, 1e12);
        s.kappa3_hz = absorbing ? log_uniform(1e2, 1e12) : 0.0;
        s.delta_a_hz = symmetric(1e9);
        s.delta_p_hz = symmetric(1e10);
        s.epsilon_a = uniform(0.0, 1.0);
        s.epsilon_p = absorbing ? uniform(1e-3, 1.0) : uniform(0.0, 1.0);
        s.xi = uniform(1e-3, 1.0 - 1e-3);
        return s;
    }

    ifd::DetectorSpec next_detector() {
        return {uniform(0.05, 1.0), log_uniform(1e-6, 1e-1)};
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    double symmetric(double mag) { return uniform(-mag, mag); }

private:
    std::mt19937_64 gen_;
};

}  // namespace testsup
