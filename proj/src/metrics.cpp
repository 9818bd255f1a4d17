#include "ifdcav/metrics.hpp"

#include <cmath>

namespace ifd {

namespace {

double coefficient(const PortCoefficients& c, Port port) {
    return port == Port::Reflection ? c.R : c.T;
}

struct Contrast {
    double j_a;
    double j_p;
};

Contrast port_contrast(const CavitySpec& spec, Port port) {
    const PortCoefficients a = port_coefficients(spec, ObjectState::Absent);
    const PortCoefficients p = port_coefficients(spec, ObjectState::Present);
    return {coefficient(a, port), coefficient(p, port)};
}

}  // namespace

void DetectorSpec::validate() const {
    if (!(chi > 0.0 && chi <= 1.0))
        throw InvalidSpec("chi", "must lie in (0, 1]");
    if (!(dark_ratio >= 0.0) || !std::isfinite(dark_ratio))
        throw InvalidSpec("dark_ratio", "must be finite and >= 0");
}

void OperatingPoint::validate() const {
    if (!(xi > 0.0 && xi < 1.0))
        throw InvalidSpec("xi", "must lie in the open interval (0, 1)");
    if (!(n0 >= 0.0) || !std::isfinite(n0))
        throw InvalidSpec("n0", "must be finite and >= 0");
}

double snr(const CavitySpec& spec, const DetectorSpec& det, Port port, double n0) {
    det.validate();
    if (!(n0 >= 0.0) || !std::isfinite(n0))
        throw InvalidSpec("n0", "must be finite and >= 0");
    if (n0 == 0.0) return 0.0;

    const auto [j_a, j_p] = port_contrast(spec, port);
    const double noise_sq = det.chi * (j_a + j_p) + 2.0 * det.dark_ratio;
    if (noise_sq == 0.0)
        throw DegenerateNoise("snr: zero counts in both states and no dark counts");
    return std::sqrt(n0) * det.chi * std::abs(j_a - j_p) / std::sqrt(noise_sq);
}

double total_security(const CavitySpec& spec, double n0) {
    if (!(n0 >= 0.0) || !std::isfinite(n0))
        throw InvalidSpec("n0", "must be finite and >= 0");
    if (n0 == 0.0) return 1.0;
    const double a = port_coefficients(spec, ObjectState::Present).A;
    // (1-A)^n0 via log1p keeps full precision when A is many orders of
    // magnitude below 1
    return std::exp(n0 * std::log1p(-a));
}

double zeta(const CavitySpec& spec, const DetectorSpec& det, Port port,
            const OperatingPoint& point) {
    point.validate();
    const CavitySpec at_xi = spec.with_xi(point.xi);
    return snr(at_xi, det, port, point.n0) * total_security(at_xi, point.n0);
}

double n0_for_snr(const CavitySpec& spec, const DetectorSpec& det, Port port,
                  double target_snr) {
    det.validate();
    if (!(target_snr >= 0.0) || !std::isfinite(target_snr))
        throw InvalidSpec("target_snr", "must be finite and >= 0");

    const auto [j_a, j_p] = port_contrast(spec, port);
    if (j_a == j_p)
        throw ZeroContrast("n0_for_snr: J_A == J_P, no photon number reaches the target");
    const double noise_sq = det.chi * (j_a + j_p) + 2.0 * det.dark_ratio;
    const double contrast = det.chi * (j_a - j_p);
    return target_snr * target_snr * noise_sq / (contrast * contrast);
}

std::vector<SecurityPoint> security_vs_snr_curve(const CavitySpec& spec,
                                                 const DetectorSpec& det, Port port,
                                                 const std::vector<double>& snr_grid) {
    if (snr_grid.empty()) throw EmptyGrid("security_vs_snr_curve: empty SNR grid");
    std::vector<SecurityPoint> curve;
    curve.reserve(snr_grid.size());
    for (double s : snr_grid) {
        const double n0 = n0_for_snr(spec, det, port, s);
        curve.push_back({s, n0, total_security(spec, n0)});
    }
    return curve;
}

MetricsBundle evaluate_metrics(const CavitySpec& spec, const DetectorPair& dets,
                               const OperatingPoint& point) {
    point.validate();
    const CavitySpec at_xi = spec.with_xi(point.xi);

    MetricsBundle m;
    m.coeffs_a = port_coefficients(at_xi, ObjectState::Absent);
    m.coeffs_p = port_coefficients(at_xi, ObjectState::Present);
    m.eta = 1.0 - m.coeffs_p.A;
    m.eta_tot = total_security(at_xi, point.n0);
    m.snr1 = snr(at_xi, dets.reflection, Port::Reflection, point.n0);
    m.snr2 = snr(at_xi, dets.transmission, Port::Transmission, point.n0);
    m.zeta1 = m.snr1 * m.eta_tot;
    m.zeta2 = m.snr2 * m.eta_tot;
    return m;
}

}  // namespace ifd
