#include "ifdcav/cavity.hpp"

#include <cmath>

namespace ifd {

void CavitySpec::validate() const {
    if (!(kappa_a_hz > 0.0) || !std::isfinite(kappa_a_hz))
        throw InvalidSpec("kappa_a_hz", "must be finite and > 0");
    if (!(kappa3_hz >= 0.0) || !std::isfinite(kappa3_hz))
        throw InvalidSpec("kappa3_hz", "must be finite and >= 0");
    if (!std::isfinite(delta_a_hz))
        throw InvalidSpec("delta_a_hz", "must be finite");
    if (!std::isfinite(delta_p_hz))
        throw InvalidSpec("delta_p_hz", "must be finite");
    if (!(epsilon_a >= 0.0 && epsilon_a <= 1.0))
        throw InvalidSpec("epsilon_a", "must lie in [0, 1]");
    if (!(epsilon_p >= 0.0 && epsilon_p <= 1.0))
        throw InvalidSpec("epsilon_p", "must lie in [0, 1]");
    // Open interval: xi in {0, 1} makes the cavity one-sided and the
    // detection signal degenerate.
    if (!(xi > 0.0 && xi < 1.0))
        throw InvalidSpec("xi", "must lie in the open interval (0, 1)");
}

PortCoefficients port_coefficients(const CavitySpec& spec, ObjectState state) {
    spec.validate();

    const bool present = (state == ObjectState::Present);
    const double k1 = spec.kappa1_hz();
    const double k2 = spec.kappa2_hz();
    const double k3 = present ? spec.kappa3_hz : 0.0;
    const double kappa = spec.kappa_a_hz + k3;
    const double delta = present ? spec.delta_p_hz : spec.delta_a_hz;
    const double eps = present ? spec.epsilon_p : spec.epsilon_a;

    const double denom = (kappa / 2.0) * (kappa / 2.0) + delta * delta;

    PortCoefficients c;
    c.R = 1.0 - eps * k1 * (kappa - k1) / denom;
    c.T = eps * k1 * k2 / denom;
    c.A = eps * k1 * k3 / denom;
    return c;
}

double per_photon_security(const CavitySpec& spec) {
    return 1.0 - port_coefficients(spec, ObjectState::Present).A;
}

double max_photon_flux(const CavitySpec& spec) {
    spec.validate();
    return spec.kappa_a_hz + spec.kappa3_hz;
}

bool flux_within_bound(const CavitySpec& spec, double flux_per_s) {
    return flux_per_s >= 0.0 && flux_per_s <= max_photon_flux(spec);
}

}  // namespace ifd
