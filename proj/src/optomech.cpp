#include "ifdcav/optomech.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ifd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidSpec(field, "must be finite and > 0");
}

// f(u) = a3 u^3 + a2 u^2 + a1 u + a0 and a magnitude scale for relative
// residuals.
struct Cubic {
    double a3, a2, a1, a0;

    double eval(double u) const {
        return ((a3 * u + a2) * u + a1) * u + a0;
    }
    double deriv(double u) const {
        return (3.0 * a3 * u + 2.0 * a2) * u + a1;
    }
    double scale(double u) const {
        return std::abs(a3 * u * u * u) + std::abs(a2 * u * u) +
               std::abs(a1 * u) + std::abs(a0);
    }
};

// Real roots of a monic-izable cubic via the trigonometric / Cardano forms in
// long double, before Newton polishing. Returns roots with multiplicity.
std::vector<double> real_roots(const Cubic& c) {
    const long double a = c.a3, b = c.a2, d = c.a1, e = c.a0;
    // depressed form t^3 + p t + q with u = t - b/(3a)
    const long double shift = b / (3.0L * a);
    const long double p = d / a - shift * shift * 3.0L;
    const long double q =
        2.0L * shift * shift * shift - shift * (d / a) + e / a;

    std::vector<double> roots;
    const long double disc = -4.0L * p * p * p - 27.0L * q * q;
    if (disc > 0.0L) {
        // three distinct real roots
        const long double m = 2.0L * std::sqrt(-p / 3.0L);
        const long double arg =
            std::clamp(3.0L * q / (p * m), -1.0L, 1.0L);
        const long double theta = std::acos(arg) / 3.0L;
        for (int k = 0; k < 3; ++k) {
            const long double t =
                m * std::cos(theta - 2.0L * std::numbers::pi_v<long double> * k / 3.0L);
            roots.push_back(static_cast<double>(t - shift));
        }
    } else if (disc == 0.0L) {
        if (p == 0.0L) {
            roots.assign(3, static_cast<double>(-shift));
        } else {
            const long double t1 = 3.0L * q / p;
            const long double t2 = -t1 / 2.0L;
            roots.push_back(static_cast<double>(t1 - shift));
            roots.push_back(static_cast<double>(t2 - shift));
            roots.push_back(static_cast<double>(t2 - shift));
        }
    } else {
        // one real root (Cardano)
        const long double half_q = q / 2.0L;
        const long double r = std::sqrt(half_q * half_q + p * p * p / 27.0L);
        const long double s = std::cbrt(-half_q + r);
        const long double t = std::cbrt(-half_q - r);
        roots.push_back(static_cast<double>(s + t - shift));
    }
    return roots;
}

double polish(const Cubic& c, double u) {
    for (int it = 0; it < 64; ++it) {
        const double f = c.eval(u);
        if (std::abs(f) <= 1e-14 * c.scale(u)) break;
        const double df = c.deriv(u);
        if (df == 0.0) break;
        const double step = f / df;
        const double next = u - step;
        if (next == u) break;
        u = next;
    }
    return u;
}

}  // namespace

void OptomechanicalParams::validate() const {
    if (!(g0 >= 0.0) || !std::isfinite(g0))
        throw InvalidSpec("g0", "must be finite and >= 0");
    require_positive(omega_m, "omega_m");
    require_positive(omega_c, "omega_c");
    require_positive(cavity_length, "cavity_length");
    if (!(r_m >= 0.0 && r_m <= 1.0))
        throw InvalidSpec("r_m", "must lie in [0, 1]");
    require_positive(x_zpf, "x_zpf");
    require_positive(drive_photon_flux, "drive_photon_flux");
}

double g0_max(const OptomechanicalParams& params) {
    require_positive(params.omega_c, "omega_c");
    require_positive(params.cavity_length, "cavity_length");
    require_positive(params.x_zpf, "x_zpf");
    if (!(params.r_m >= 0.0 && params.r_m <= 1.0))
        throw InvalidSpec("r_m", "must lie in [0, 1]");
    return 2.0 * (params.omega_c / params.cavity_length) * params.r_m * params.x_zpf;
}

std::vector<SteadyStateSolution> solve_steady_state(const CavitySpec& spec,
                                                    const OptomechanicalParams& params) {
    spec.validate();
    if (!(params.g0 >= 0.0) || !std::isfinite(params.g0))
        throw InvalidSpec("g0", "must be finite and >= 0");
    require_positive(params.omega_m, "omega_m");
    require_positive(params.drive_photon_flux, "drive_photon_flux");

    // object-present fixed point, in angular units
    const double kappa = kTwoPi * (spec.kappa_a_hz + spec.kappa3_hz);
    const double k1 = kTwoPi * spec.kappa1_hz();
    const double delta_a = kTwoPi * spec.delta_a_hz;
    const double lorentz = (kappa / 2.0) * (kappa / 2.0) + delta_a * delta_a;
    const double pump = k1 * spec.epsilon_p * params.drive_photon_flux;
    const double c2 = 2.0 * params.g0 * params.g0 / params.omega_m;  // shift per photon

    const auto make_solution = [&](double u, int branches) {
        SteadyStateSolution s;
        s.alpha_sq = u;
        s.beta = -params.g0 * u / params.omega_m;
        s.delta_shifted_hz = spec.delta_a_hz - c2 * u / kTwoPi;
        s.branch_count = branches;
        return s;
    };

    if (c2 == 0.0) {
        // no back-action: the cubic collapses to a linear equation
        return {make_solution(pump / lorentz, 1)};
    }

    const Cubic cubic{c2 * c2, -2.0 * delta_a * c2, lorentz, -pump};
    std::vector<double> roots = real_roots(cubic);
    const int branches = static_cast<int>(roots.size());

    std::vector<SteadyStateSolution> out;
    for (double r : roots) {
        const double u = polish(cubic, r);
        if (u < 0.0) continue;  // unphysical branch
        if (std::abs(cubic.eval(u)) > 1e-10 * cubic.scale(u))
            throw NoConvergence("steady-state root residual exceeds 1e-10 relative");
        out.push_back(make_solution(u, branches));
    }
    std::sort(out.begin(), out.end(),
              [](const SteadyStateSolution& a, const SteadyStateSolution& b) {
                  return a.alpha_sq < b.alpha_sq;
              });
    // collapse duplicates from a tangent (double) root
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SteadyStateSolution& a, const SteadyStateSolution& b) {
                              return a.alpha_sq == b.alpha_sq;
                          }),
              out.end());
    return out;
}

}  // namespace ifd
