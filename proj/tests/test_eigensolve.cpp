#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/common.hpp"
#include "rydpol/eigensolve.hpp"
#include "rydpol/reference.hpp"

#include <cmath>
#include <random>

using namespace rydpol;

TEST_CASE("two-body ground state approaches the delta limit for weak coupling") {
    const EigenSolution s = two_body_ground_auto(0.05);
    const double e_delta = reference::delta_limit_two_body(0.05);
    CHECK(s.energies[0] < 0.0);
    CHECK(std::abs(s.energies[0] - e_delta) < 0.1 * std::abs(e_delta));
    CHECK(s.bound_count == 1);
    // physical-measure normalization
    double norm2 = 0.0;
    for (int i = 0; i < s.grid_n; ++i) norm2 += s.wavefunctions[0](i) * s.wavefunctions[0](i);
    CHECK(norm2 * s.grid_h == doctest::Approx(1.0).epsilon(1e-10));
    // ground state nodeless
    bool nodeless = true;
    for (int i = 0; i < s.grid_n; ++i)
        if (s.wavefunctions[0](i) < -1e-9) nodeless = false;
    CHECK(nodeless);
}

TEST_CASE("two-body binding vanishes with lambda") {
    const EigenSolution s = two_body_ground_auto(0.01);
    CHECK(s.energies[0] < 0.0);
    CHECK(s.energies[0] > -2e-5);
}

TEST_CASE("two-body at lambda = 1 matches the dense oracle on the same grid") {
    const Grid1D grid = Grid1D::make(25.0, 2001);
    const EigenSolution s = two_body_ground(1.0, grid, {});
    // dense reference on the identical tridiagonal
    const double ih2 = 1.0 / (grid.h * grid.h);
    std::vector<double> d(2001), e(2000, -ih2);
    for (int i = 0; i < 2001; ++i)
        d[static_cast<std::size_t>(i)] =
            2.0 * ih2 + pair_potential(std::sqrt(2.0) * std::abs(grid.x(i)));
    const auto dense = reference::dense_diagonalize_tridiag(d, e);
    CHECK(std::abs(s.energies[0] - dense.eigenvalues(0)) < 1e-8);
}

TEST_CASE("box-too-small detection") {
    const Grid1D tiny = Grid1D::make(12.0, 601);
    CHECK_THROWS_AS(two_body_ground(0.05, tiny, {}), SolverError);
    SolveOptions lax;
    lax.throw_on_leak = false;
    const EigenSolution s = two_body_ground(0.05, tiny, lax);
    CHECK(!s.notes.empty());
}

TEST_CASE("discretized Hamiltonians are symmetric under both kinetics") {
    const Grid2D g = Grid2D::make(6.0, 33);
    const Field v = hamiltonian_potential(g, 1.0, 0.5);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (Kinetic k : {Kinetic::fd5_dirichlet, Kinetic::spectral_periodic}) {
        Hamiltonian2D H(g, v, k);
        Eigen::VectorXd a(33 * 33), b(33 * 33), Ha(33 * 33), Hb(33 * 33);
        for (int t = 0; t < 5; ++t) {
            for (int i = 0; i < 33 * 33; ++i) {
                a(i) = uni(rng);
                b(i) = uni(rng);
            }
            H.apply(a, Ha);
            H.apply(b, Hb);
            const double scale = Ha.norm() * b.norm() + 1.0;
            CHECK(std::abs(a.dot(Hb) - Ha.dot(b)) < 1e-12 * scale);
        }
    }
}

TEST_CASE("iterative and dense 2D solvers agree to 1e-8 on identical grids") {
    const Grid2D g = Grid2D::make(10.0, 40);
    const Field v = hamiltonian_potential(g, 1.0, 1.0);
    Hamiltonian2D H(g, v, Kinetic::fd5_dirichlet);
    SolveOptions so;
    so.n_states = 3;
    so.tol_rel = 1e-10;
    so.throw_on_leak = false;
    const EigenSolution sparse = solve_lowest(H, so);
    const auto dense = reference::dense_diagonalize_fd2d(g, v);
    for (int s = 0; s < 3; ++s)
        CHECK(std::abs(sparse.energies[static_cast<std::size_t>(s)] - dense.eigenvalues(s)) < 1e-8);
    for (double r : sparse.residuals) CHECK(r <= so.tol_rel * H.norm_estimate());
}

TEST_CASE("three-body ground state: McGuire neighborhood at moderate coupling") {
    const EigenSolution e2 = two_body_ground_auto(0.5);
    const EigenSolution e3 = three_body_ground_auto(0.5, 0.0);
    const double ratio = e3.energies[0] / e2.energies[0];
    CHECK(e3.energies[0] < e2.energies[0]);
    CHECK(e2.energies[0] < 0.0);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.05);
    CHECK(e3.bound_count >= 1);
    // 2D normalization and sign-definite ground state
    double norm2 = 0.0, most_neg = 0.0;
    for (long a = 0; a < e3.wavefunctions[0].size(); ++a) {
        norm2 += e3.wavefunctions[0](a) * e3.wavefunctions[0](a);
        most_neg = std::min(most_neg, e3.wavefunctions[0](a));
    }
    CHECK(norm2 * e3.grid_h * e3.grid_h == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(most_neg > -1e-6 * e3.wavefunctions[0].maxCoeff());
}

TEST_CASE("three-body repulsion weakens the trimer") {
    const EigenSolution a0 = three_body_ground_auto(0.5, 0.0);
    const EigenSolution a1 = three_body_ground_auto(0.5, 1.0);
    CHECK(a1.energies[0] > a0.energies[0]); // less bound with the repulsive term
}

TEST_CASE("ratio scan: invariants, failure recording, threading") {
    ScanOptions so;
    so.threads = 2;
    const ScanResult res = ratio_scan({0.5}, {0.0, 1.0}, so);
    REQUIRE(res.points.size() == 2);
    for (const auto& p : res.points) {
        REQUIRE(p.ok);
        CHECK(p.e3 <= p.e2);
        CHECK(p.e2 < 0.0);
        CHECK(p.ratio >= 1.0);
    }
    CHECK(res.points[1].ratio < res.points[0].ratio);

    CHECK_THROWS_AS(ratio_scan({}, {0.0}, {}), ValidationError);
    CHECK_THROWS_AS(ratio_scan({0.1}, {2.0}, {}), ValidationError);
    CHECK_THROWS_AS(ratio_scan({-0.1}, {0.0}, {}), ValidationError);
}

TEST_CASE("lambda above one is flagged") {
    const Grid2D g = suggest_grid2d(1.4, 0.0);
    SolveOptions so;
    so.throw_on_leak = false;
    const EigenSolution s = three_body_ground(1.4, 0.0, g, so);
    bool flagged = false;
    for (const auto& n : s.notes)
        if (n.find("low-energy") != std::string::npos) flagged = true;
    CHECK(flagged);
}

TEST_CASE("parameter validation") {
    const Grid2D g = Grid2D::make(10.0, 33);
    CHECK_THROWS_AS(three_body_ground(-1.0, 0.0, g), ValidationError);
    CHECK_THROWS_AS(three_body_ground(0.5, 2.0, g), ValidationError);
    CHECK_THROWS_AS(two_body_ground(0.0, Grid1D::make(10.0, 33)), ValidationError);
}
