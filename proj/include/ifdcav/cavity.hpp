#pragma once

#include "ifdcav/errors.hpp"

namespace ifd {

// Steady-state model of a two-mirror cavity with a semitransparent object
// inside. Decay through the input mirror (kappa_1), the far mirror (kappa_2)
// and object absorption (kappa_3) define three output ports; the coefficients
//
//   R = 1 - eps*k1*(k - k1)/((k/2)^2 + Delta^2)
//   T = eps*k1*k2 / ((k/2)^2 + Delta^2)
//   A = eps*k1*k3 / ((k/2)^2 + Delta^2)
//
// are the probabilities that a drive photon leaves through each of them.
// They sum to one because k - k1 = k2 + k3.
//
// Unit convention: every rate and detuning is stored as an ordinary
// frequency, i.e. the value of X/(2*pi) in Hz. The coefficient formulas are
// homogeneous of degree zero in (kappa, Delta), so the 2*pi factors cancel
// and the stored values can be used directly.

// Whether the object sits inside the cavity. Selects which (kappa, Delta,
// epsilon) triple enters the coefficient formulas.
enum class ObjectState { Absent, Present };

struct CavitySpec {
    double kappa_a_hz = 1.5e7;   // empty-cavity total decay rate, kappa_A/(2pi)
    double kappa3_hz = 6.5e6;    // object-absorption decay rate, kappa_3/(2pi)
    double delta_a_hz = 0.0;     // empty-cavity detuning, Delta_A/(2pi)
    double delta_p_hz = 2.0e7;   // detuning with the object present, Delta_P/(2pi)
    double epsilon_a = 1.0;      // mode matching, object absent
    double epsilon_p = 0.2;      // mode matching, object present
    double xi = 0.5;             // coupling efficiency kappa_1/(kappa_1+kappa_2)

    // The smaller mirror rate is taken as the exact complement of the larger
    // one (Sterbenz: a - b is exact for b in [a/2, a]), so that
    // kappa1 + kappa2 == kappa_a_hz holds exactly in floating point.
    double kappa1_hz() const {
        const double k1 = xi * kappa_a_hz;
        if (xi > 0.5) return k1;
        return kappa_a_hz - (kappa_a_hz - k1);
    }
    double kappa2_hz() const { return kappa_a_hz - kappa1_hz(); }

    // Copy with a different coupling efficiency; used by all xi sweeps.
    CavitySpec with_xi(double new_xi) const {
        CavitySpec s = *this;
        s.xi = new_xi;
        return s;
    }

    // Throws InvalidSpec naming the offending field.
    void validate() const;
};

struct PortCoefficients {
    double R = 0.0;
    double T = 0.0;
    double A = 0.0;
};

// Eq. coefficients for the selected object state. For Absent the absorption
// channel is switched off and A == 0 exactly.
PortCoefficients port_coefficients(const CavitySpec& spec, ObjectState state);

// Probability that one photon avoids absorption with the object present:
// 1 - A_P.
double per_photon_security(const CavitySpec& spec);

// Quasi-steady-state flux bound kappa_P/(2pi). With the Hz storage
// convention this is numerically kappa_a_hz + kappa3_hz.
double max_photon_flux(const CavitySpec& spec);

// True when a proposed drive flux (photons/s) respects the bound above.
bool flux_within_bound(const CavitySpec& spec, double flux_per_s);

}  // namespace ifd
