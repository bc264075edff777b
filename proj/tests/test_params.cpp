#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/params.hpp"
#include "rydpol/potentials.hpp"

#include <cmath>
#include <random>
#include <string>

using namespace rydpol;

namespace {
PhysicalParams base() {
    PhysicalParams p;
    p.omega = 1.0;
    p.delta = 12.0;
    p.gamma = 0.0;
    p.g_coupling = 3.0;
    p.c6 = -40.0;
    p.c_light = 250.0;
    return p;
}
} // namespace

TEST_CASE("alpha at symmetric coupling") {
    PhysicalParams p = base();
    p.g_coupling = p.omega;
    CHECK(derive(p).alpha == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("slow-light limit alpha -> 1") {
    PhysicalParams p = base();
    p.omega = 1.0;
    p.g_coupling = 100.0;
    CHECK(derive(p).alpha == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("the two lambda formulas agree to 1e-12") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        PhysicalParams p = base();
        p.omega = uni(rng);
        p.g_coupling = uni(rng) * 3.0;
        p.delta = 20.0 * p.omega * uni(rng);
        p.c6 = -uni(rng) * 50.0;
        p.c_light = 100.0 + 400.0 * uni(rng);
        const DerivedParams d = derive(p);
        const double g2 = p.g_coupling * p.g_coupling;
        const double o2 = p.omega * p.omega;
        const double via_kappa = d.kappa_xi * d.kappa_xi * (o2 + g2) / g2;
        CHECK(std::abs(d.lambda - via_kappa) <= 1e-12 * via_kappa);
        CHECK(d.lambda > 0.0);
        CHECK(d.xi > 0.0);
        CHECK(d.alpha >= 0.0);
        CHECK(d.alpha <= 1.0);
    }
}

TEST_CASE("distinct diagnostics for degenerate inputs") {
    auto msg = [](PhysicalParams p) -> std::string {
        try {
            derive(p);
        } catch (const ValidationError& e) {
            return e.what();
        }
        return "";
    };
    PhysicalParams p = base();
    p.omega = 0.0;
    CHECK(msg(p).find("Omega") != std::string::npos);
    p = base();
    p.g_coupling = 0.0;
    CHECK(msg(p).find("coupling g") != std::string::npos);
    p = base();
    p.delta = 0.0;
    CHECK(msg(p).find("Delta") != std::string::npos);
    p = base();
    p.c6 = 0.0;
    CHECK(msg(p).find("C6") != std::string::npos);
}

TEST_CASE("far-detuning validity gate") {
    PhysicalParams p = base();
    p.delta = 4.0 * p.omega; // below the default ratio_min = 5
    CHECK_THROWS_AS(derive(p), ValidationError);
    p.delta = 7.0 * p.omega; // valid but below 10: warn
    const DerivedParams d = derive(p);
    CHECK(!d.warnings.empty());
    p.delta = 30.0 * p.omega;
    CHECK(derive(p).warnings.empty());
}

TEST_CASE("gamma carries through as complex chi, flagged incoherent") {
    PhysicalParams p = base();
    p.gamma = 0.4;
    const DerivedParams d = derive(p);
    CHECK(!d.coherent);
    CHECK(d.chi.imag() != 0.0);
    CHECK(d.lambda > 0.0);
    p.gamma = -0.1;
    CHECK_THROWS_AS(derive(p), ValidationError);
}

TEST_CASE("dimensionless mode") {
    const DerivedParams d = dimensionless_mode(1.0, 0.1);
    CHECK(d.alpha == 1.0);
    CHECK(d.lambda == 0.1);
    CHECK(!d.has_physical);
    CHECK(std::isnan(d.xi));
    CHECK_NOTHROW(dimensionless_mode(0.0, 1.0)); // pure two-body model
    CHECK_THROWS_AS(dimensionless_mode(1.5, 0.1), ValidationError);
    CHECK_THROWS_AS(dimensionless_mode(0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(dimensionless_mode(0.5, 1.0, 3), ValidationError);
}

TEST_CASE("alpha is monotone in g at fixed Omega") {
    PhysicalParams p = base();
    double prev = -1.0;
    for (double g = 0.5; g < 20.0; g *= 1.5) {
        p.g_coupling = g;
        const double a = derive(p).alpha;
        CHECK(a > prev);
        prev = a;
    }
}

TEST_CASE("rescaling C6 by 64 doubles xi and keeps alpha") {
    PhysicalParams p = base();
    const DerivedParams d1 = derive(p);
    p.c6 *= 64.0;
    const DerivedParams d2 = derive(p);
    CHECK(d2.xi == doctest::Approx(2.0 * d1.xi).epsilon(1e-13));
    CHECK(d2.alpha == d1.alpha);
}

TEST_CASE("attractive regime: pair potential negative everywhere") {
    PhysicalParams p = base(); // c6 < 0, delta > 0 -> C6*Delta < 0
    const DerivedParams d = derive(p);
    CHECK(d.sign_regime == -1);
    for (double r = 0.0; r < 12.0; r += 0.03) CHECK(pair_potential(r) < 0.0);
}
