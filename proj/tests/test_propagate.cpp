#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/common.hpp"
#include "rydpol/eigensolve.hpp"
#include "rydpol/propagate.hpp"
#include "rydpol/reference.hpp"

#include <cmath>

using namespace rydpol;

TEST_CASE("free evolution keeps the uniform field uniform") {
    const Grid2D g = Grid2D::make(10.0, 33);
    Propagator2D prop(g, Field::Zero(33, 33), {});
    WaveField f = uniform_field(g);
    prop.evolve(f, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 33; ++i)
        for (int j = 0; j < 33; ++j) worst = std::max(worst, std::abs(f.amp(i, j) - 1.0));
    CHECK(worst < 1e-13);
}

TEST_CASE("split-step core is unitary to machine precision") {
    const Grid2D g = Grid2D::make(15.0, 65);
    Propagator2D prop(g, hamiltonian_potential(g, 1.0, 0.1), {});
    WaveField f = uniform_field(g);
    const EvolveStats st = prop.evolve(f, 5.0);
    CHECK(st.max_step_norm_drift < 1e-8);
    CHECK(st.max_step_norm_drift < 1e-12);
}

TEST_CASE("step rejection contract") {
    const Grid2D g = Grid2D::make(10.0, 33);
    EvolveOptions eo;
    eo.unitarity_budget = 0.0;
    Propagator2D prop(g, hamiltonian_potential(g, 1.0, 0.1), eo);
    WaveField f = uniform_field(g);
    CHECK_THROWS_AS(prop.evolve(f, 1.0), SolverError);
}

TEST_CASE("eigenstates acquire exactly their energy phase") {
    const Grid2D g = Grid2D::make(14.0, 89);
    const Field v = hamiltonian_potential(g, 1.0, 0.1);
    Hamiltonian2D H(g, v, Kinetic::spectral_periodic);
    SolveOptions so;
    so.n_states = 3;
    so.tol_rel = 1e-10;
    so.throw_on_leak = false;
    const EigenSolution es = solve_lowest(H, so);
    const double dtau = choose_dtau(g, v, es.wavefunctions[0] * g.h, es.energies[0], 10.0, 1e-6);
    for (int s = 0; s < 3; ++s) {
        const EigenphaseCheck chk =
            eigenphase_check(g, v, es.wavefunctions[static_cast<std::size_t>(s)] * g.h,
                             es.energies[static_cast<std::size_t>(s)], 10.0, dtau);
        CHECK(chk.phase_error < 1e-6);
        CHECK(chk.overlap_deficit < 1e-6);
        CHECK(chk.stats.max_step_norm_drift < 1e-8);
    }
}

TEST_CASE("split-step matches the dense eigenexpansion") {
    const Grid2D g = Grid2D::make(9.0, 28);
    const Field v = hamiltonian_potential(g, 1.0, 0.1);
    const auto spec = reference::dense_diagonalize_spectral2d(g, v);
    WaveField f = uniform_field(g);
    Eigen::VectorXcd psi0(28 * 28);
    for (int i = 0; i < 28; ++i)
        for (int j = 0; j < 28; ++j) psi0(i * 28 + j) = f.amp(i, j);
    const double tau = 5.0;
    const Eigen::VectorXcd ref = reference::propagate_by_eigenexpansion(spec, psi0, tau);
    EvolveOptions eo;
    eo.dtau = 0.002;
    Propagator2D prop(g, v, eo);
    prop.evolve(f, tau);
    double worst = 0.0;
    for (int i = 0; i < 28; ++i)
        for (int j = 0; j < 28; ++j) worst = std::max(worst, std::abs(f.amp(i, j) - ref(i * 28 + j)));
    CHECK(worst < 1e-6);
}

TEST_CASE("medium length to phase-time conversion") {
    CHECK(tau_from_medium(1.0, 0.1, 20.0) ==
          doctest::Approx(2.0 * 20.0 / std::sqrt(0.1)).epsilon(1e-14));
    CHECK(tau_from_medium(1.0, 0.1, 0.0) == 0.0);
    CHECK_THROWS_AS(tau_from_medium(0.0, 0.1, 20.0), ValidationError);
    CHECK_THROWS_AS(tau_from_medium(1.0, -0.1, 20.0), ValidationError);
    CHECK_THROWS_AS(tau_from_medium(1.0, 0.1, -1.0), ValidationError);
}

TEST_CASE("connected correlation bookkeeping") {
    const Grid2D g = Grid2D::make(5.0, 21);
    // g3 = 1 with flat pair correlations gives exactly zero
    CubicSpline flat({0.0, 100.0}, {1.0, 1.0});
    const Field zero = connected_g3(Field::Constant(21, 21, 1.0), g, flat);
    CHECK(zero.abs().maxCoeff() < 1e-14);

    // additive pair structure cancels exactly: g3 = sum f(r_ij) - 2
    std::vector<double> r, fr;
    for (double x = 0.0; x <= 100.0; x += 0.05) {
        r.push_back(x);
        fr.push_back(1.0 + 0.4 * std::exp(-0.2 * x * x));
    }
    CubicSpline f(r, fr);
    Field g3(21, 21);
    for (int i = 0; i < 21; ++i)
        for (int j = 0; j < 21; ++j) {
            const PairDistances d = pair_distances_from_jacobi(g.x(i), g.x(j));
            g3(i, j) = f(d.r12) + f(d.r13) + f(d.r23) - 2.0;
        }
    CHECK(connected_g3(g3, g, f).abs().maxCoeff() < 1e-12);

    // interpolation range is enforced
    CubicSpline narrow({0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(connected_g3(g3, g, narrow), ValidationError);
}

TEST_CASE("zero medium length gives uncorrelated photons exactly") {
    CorrelationOptions co;
    co.box_l = 20.0;
    co.n = 65;
    co.box_l_1d = 40.0;
    co.n_1d = 1023;
    const CorrelationResult c = correlations_after_medium(1.0, 0.1, 0.0, co);
    CHECK((c.g3 - 1.0).abs().maxCoeff() < 1e-10);
    CHECK(c.g3_connected.abs().maxCoeff() < 1e-10);
    for (double v : c.g2) CHECK(std::abs(v - 1.0) < 1e-10);
}

TEST_CASE("six-fold symmetry of the evolved field on a resolving grid") {
    CorrelationOptions co;
    co.box_l = 20.0;
    co.n = 511;
    co.box_l_1d = 45.0;
    co.n_1d = 1215;
    co.dtau = 0.02;
    co.absorber_2d = false;
    // tau = 5 stays well inside the box
    const double r_xi = 5.0 * std::sqrt(0.1) / 2.0;
    const CorrelationResult c = correlations_after_medium(1.0, 0.1, r_xi, co);
    CHECK(c.tau == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(c.sixfold_asymmetry < 1e-6);
}

TEST_CASE("radial profile peak width of a known gaussian") {
    const Grid2D g = Grid2D::make(10.0, 201);
    Field f(201, 201);
    for (int i = 0; i < 201; ++i)
        for (int j = 0; j < 201; ++j) {
            const double r2 = g.x(i) * g.x(i) + g.x(j) * g.x(j);
            f(i, j) = std::exp(-r2 / 4.0); // FWHM = 2 sqrt(4 ln 2) = 3.330
        }
    const RadialProfile p = radial_profile(f, g, 9.0);
    CHECK(p.peak == doctest::Approx(1.0).epsilon(0.01));
    CHECK(p.fwhm == doctest::Approx(3.330).epsilon(0.03));
}

TEST_CASE("correlation pipeline regression (coarse configuration)") {
    // frozen from the first validated run of this exact configuration
    CorrelationOptions co;
    co.box_l = 40.0;
    co.n = 129;
    co.box_l_1d = 80.0;
    co.n_1d = 2047;
    co.dtau = 0.05;
    const CorrelationResult c = correlations_after_medium(1.0, 0.1, 20.0, co);
    const int mid = (co.n - 1) / 2;
    CHECK(c.tau == doctest::Approx(126.49110640673517).epsilon(1e-12));
    CHECK(c.g2[0] == doctest::Approx(3.0910902).epsilon(1e-5));
    CHECK(c.g3(mid, mid) == doctest::Approx(27.172116).epsilon(1e-5));
    CHECK(c.g3_connected(mid, mid) == doctest::Approx(19.899907).epsilon(1e-5));
    CHECK(c.fwhm_radial == doctest::Approx(8.3527).epsilon(1e-3));
}
