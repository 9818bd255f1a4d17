#pragma once

#include "ifdcav/cavity.hpp"

#include <vector>

namespace ifd {

// Statistical figures of merit for deciding, from photon counts in one output
// port, whether the object is inside the cavity.

// The two accessible output ports.
enum class Port { Reflection, Transmission };

constexpr const char* port_name(Port p) {
    return p == Port::Reflection ? "reflection" : "transmission";
}

struct DetectorSpec {
    double chi = 0.5;          // quantum efficiency, (0, 1]
    double dark_ratio = 1e-3;  // dark counts per input photon, D = C_j/C_0

    void validate() const;
};

// One detector per accessible port.
struct DetectorPair {
    DetectorSpec reflection;
    DetectorSpec transmission;

    const DetectorSpec& at(Port p) const {
        return p == Port::Reflection ? reflection : transmission;
    }
    void validate() const {
        reflection.validate();
        transmission.validate();
    }
};

// A point in the (xi, N0) plane. N0 is a non-negative real: the formulas are
// smooth in it and optimization over a continuum is cleaner; only the
// Monte-Carlo simulator rounds to whole photons.
struct OperatingPoint {
    double xi = 0.5;
    double n0 = 0.0;

    void validate() const;
};

// Everything evaluated at one operating point.
struct MetricsBundle {
    PortCoefficients coeffs_a;
    PortCoefficients coeffs_p;
    double eta = 1.0;      // per-photon security, 1 - A_P
    double eta_tot = 1.0;  // eta^n0
    double snr1 = 0.0;     // reflection
    double snr2 = 0.0;     // transmission
    double zeta1 = 0.0;    // snr1 * eta_tot
    double zeta2 = 0.0;    // snr2 * eta_tot
};

// Signal-to-noise ratio of the count difference between the object-absent and
// object-present cases:
//
//   SNR = sqrt(N0) * chi * |J_A - J_P| / sqrt(chi*(J_A + J_P) + 2*D)
//
// where J is R in reflection and T in transmission. Scales exactly as
// sqrt(N0). Throws DegenerateNoise when the denominator vanishes (possible
// only with D == 0 and a dark signal) and n0 > 0.
double snr(const CavitySpec& spec, const DetectorSpec& det, Port port, double n0);

// Probability that none of n0 photons is absorbed: (1 - A_P)^n0.
double total_security(const CavitySpec& spec, double n0);

// The merit product snr * total_security, optimized elsewhere over (xi, N0).
double zeta(const CavitySpec& spec, const DetectorSpec& det, Port port,
            const OperatingPoint& point);

// Inverse of snr in N0:
//
//   N0 = s^2 * (chi*(J_A + J_P) + 2*D) / (chi^2 * (J_A - J_P)^2)
//
// Throws ZeroContrast when J_A == J_P.
double n0_for_snr(const CavitySpec& spec, const DetectorSpec& det, Port port,
                  double target_snr);

struct SecurityPoint {
    double snr = 0.0;
    double n0 = 0.0;
    double eta_tot = 1.0;
};

// eta_tot as a function of the SNR one insists on: for each grid value s,
// the photon budget N0(s) is inverted from the SNR expression and substituted
// into the total security. Non-increasing in s.
std::vector<SecurityPoint> security_vs_snr_curve(const CavitySpec& spec,
                                                 const DetectorSpec& det, Port port,
                                                 const std::vector<double>& snr_grid);

// Full bundle at one operating point (both states, both ports).
MetricsBundle evaluate_metrics(const CavitySpec& spec, const DetectorPair& dets,
                               const OperatingPoint& point);

}  // namespace ifd
