#pragma once

#include "ifdcav/cavity.hpp"

#include <vector>

namespace ifd {

// Optional route for deriving the object-induced detuning from physical
// parameters instead of treating it as a free input. The object acts as a
// mechanical mode coupled to the cavity field; radiation pressure shifts its
// equilibrium and with it the cavity resonance:
//
//   alpha = sqrt(kappa_1 * eps) * a_in / (kappa/2 + i*Delta)
//   beta  = -g0 * |alpha|^2 / omega_m
//   Delta = Delta_A - 2 g0^2 |alpha|^2 / omega_m
//
// Eliminating Delta gives a cubic in u = |alpha|^2:
//
//   u * [(kappa/2)^2 + (Delta_A - 2 g0^2 u / omega_m)^2] = kappa_1 eps |a_in|^2
//
// All fields here are in angular units (rad/s) except lengths; the interface
// converts from the Hz convention of CavitySpec internally.
struct OptomechanicalParams {
    double g0 = 0.0;                 // vacuum optomechanical coupling, rad/s
    double omega_m = 0.0;            // mechanical frequency, rad/s
    double omega_c = 0.0;            // cavity resonance frequency, rad/s
    double cavity_length = 0.0;      // m
    double r_m = 0.0;                // membrane field reflectivity magnitude
    double x_zpf = 0.0;              // zero-point fluctuation amplitude, m
    double drive_photon_flux = 0.0;  // |a_in|^2, photons/s

    void validate() const;
};

struct SteadyStateSolution {
    double alpha_sq = 0.0;       // intracavity photon number |alpha|^2
    double beta = 0.0;           // mechanical steady-state amplitude
    double delta_shifted_hz = 0.0;  // self-consistent detuning, Hz convention
    int branch_count = 1;        // real roots of the fixed-point cubic (1 or 3)
};

// Coupling at the optimal object position, 2*(omega_c/L)*|r_m|*x_zpf.
double g0_max(const OptomechanicalParams& params);

// All non-negative real roots of the self-consistency cubic, sorted ascending
// in alpha_sq. Every root is polished to a relative residual below 1e-10;
// NoConvergence is thrown otherwise. When the cubic has three real roots
// (bistability) all of them are returned and the caller selects.
std::vector<SteadyStateSolution> solve_steady_state(const CavitySpec& spec,
                                                    const OptomechanicalParams& params);

}  // namespace ifd
