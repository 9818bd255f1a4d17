#include "ifdcav/cavity.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ifd;
using namespace testsup;

TEST_CASE("critically coupled resonant lossless cavity transmits fully") {
    CavitySpec s;
    s.kappa_a_hz = 1.5e7;
    s.kappa3_hz = 0.0;
    s.delta_a_hz = 0.0;
    s.epsilon_a = 1.0;
    s.xi = 0.5;
    const PortCoefficients c = port_coefficients(s, ObjectState::Absent);
    CHECK(c.R == 0.0);
    CHECK(c.T == 1.0);
    CHECK(c.A == 0.0);
}

TEST_CASE("reference system coefficients match the independent evaluation") {
    const PortCoefficients c = port_coefficients(reference_spec(), ObjectState::Present);
    CHECK(c.R == doctest::Approx(frozen::kRP).epsilon(1e-12));
    CHECK(c.T == doctest::Approx(frozen::kTP).epsilon(1e-12));
    CHECK(c.A == doctest::Approx(frozen::kAP).epsilon(1e-12));
    CHECK(per_photon_security(reference_spec()) ==
          doctest::Approx(frozen::kEta).epsilon(1e-12));
}

TEST_CASE("R+T+A sums to one for randomized specs in both states") {
    SpecSampler sampler(20240517);
    for (int i = 0; i < 2000; ++i) {
        const CavitySpec s = sampler.next(i % 3 != 0);
        for (ObjectState st : {ObjectState::Absent, ObjectState::Present}) {
            const PortCoefficients c = port_coefficients(s, st);
            CHECK(c.R + c.T + c.A == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(c.R >= -1e-12);
            CHECK(c.T >= 0.0);
            CHECK(c.A >= 0.0);
            CHECK(c.R <= 1.0 + 1e-12);
            CHECK(c.T <= 1.0 + 1e-12);
            CHECK(c.A <= 1.0 + 1e-12);
        }
        CHECK(port_coefficients(s, ObjectState::Absent).A == 0.0);
    }
}

TEST_CASE("absent-state transmission peaks at xi = 0.5 on a dense scan") {
    CavitySpec s = reference_spec();
    s.kappa3_hz = 0.0;
    double best_t = -1.0;
    double best_xi = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double xi = 0.001 + i * (0.998 / 2000.0);
        const double t = port_coefficients(s.with_xi(xi), ObjectState::Absent).T;
        if (t > best_t) {
            best_t = t;
            best_xi = xi;
        }
    }
    CHECK(std::abs(best_xi - 0.5) < 1e-3);
    CHECK(best_t == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("absorption grows with epsilon_p and falls with detuning magnitude") {
    SpecSampler sampler(77);
    for (int i = 0; i < 200; ++i) {
        const CavitySpec s = sampler.next();
        CavitySpec more_eps = s;
        more_eps.epsilon_p = std::min(1.0, s.epsilon_p * 1.5 + 1e-3);
        CHECK(port_coefficients(more_eps, ObjectState::Present).A >
              port_coefficients(s, ObjectState::Present).A);

        CavitySpec more_detuned = s;
        more_detuned.delta_p_hz = s.delta_p_hz * 2.0 + 1e3;
        if (more_detuned.delta_p_hz * more_detuned.delta_p_hz >
            s.delta_p_hz * s.delta_p_hz)
            CHECK(port_coefficients(more_detuned, ObjectState::Present).A <
                  port_coefficients(s, ObjectState::Present).A);
    }
}

TEST_CASE("mirror exchange symmetry T(xi) = T(1-xi) at zero detuning, no object") {
    SpecSampler sampler(12);
    for (int i = 0; i < 300; ++i) {
        CavitySpec s = sampler.next(false);
        s.kappa3_hz = 0.0;
        s.delta_a_hz = 0.0;
        const double t1 = port_coefficients(s, ObjectState::Absent).T;
        const double t2 =
            port_coefficients(s.with_xi(1.0 - s.xi), ObjectState::Absent).T;
        CHECK(t1 == doctest::Approx(t2).epsilon(1e-12));
    }
}

TEST_CASE("security limits") {
    CavitySpec s = reference_spec();
    s.kappa3_hz = 0.0;
    CHECK(per_photon_security(s) == 1.0);

    s = reference_spec();
    s.epsilon_p = 0.0;
    CHECK(per_photon_security(s) == 1.0);
}

TEST_CASE("flux bound is the total present-state linewidth") {
    CHECK(max_photon_flux(reference_spec()) == frozen::kFluxBound);
    CavitySpec s = reference_spec();
    s.kappa3_hz = 0.0;
    CHECK(max_photon_flux(s) == 1.5e7);
    // typical detector flux passes for the systems considered
    CHECK(flux_within_bound(reference_spec(), 1e6));
    CHECK_FALSE(flux_within_bound(reference_spec(), 3e7));
}

TEST_CASE("invalid specs are rejected with the offending field") {
    CavitySpec s = reference_spec();
    s.xi = 1.5;
    CHECK_THROWS_WITH_AS(port_coefficients(s, ObjectState::Absent),
                         doctest::Contains("xi"), InvalidSpec);

    s = reference_spec();
    s.kappa_a_hz = -1.0;
    try {
        port_coefficients(s, ObjectState::Present);
        FAIL("expected InvalidSpec");
    } catch (const InvalidSpec& e) {
        CHECK(e.field() == "kappa_a_hz");
    }

    s = reference_spec();
    s.epsilon_p = 1.2;
    CHECK_THROWS_AS(per_photon_security(s), InvalidSpec);
}

TEST_CASE("kappa split is exact") {
    SpecSampler sampler(5);
    for (int i = 0; i < 500; ++i) {
        const CavitySpec s = sampler.next();
        CHECK(s.kappa1_hz() + s.kappa2_hz() == s.kappa_a_hz);
    }
}
