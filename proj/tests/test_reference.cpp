#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/common.hpp"
#include "rydpol/geometry.hpp"
#include "rydpol/potentials.hpp"
#include "rydpol/reference.hpp"

#include <cmath>

using namespace rydpol;

TEST_CASE("mcguire constant and its domain guard") {
    CHECK(reference::mcguire_ratio() == 4.0);
    CHECK(reference::mcguire_ratio(0.0) == 4.0);
    CHECK_THROWS_AS(reference::mcguire_ratio(0.5), ValidationError);
}

TEST_CASE("pair potential integral equals 2 pi / 3") {
    const double q = reference::pair_potential_integral_quadrature();
    CHECK(std::abs(q - 2.0 * pi / 3.0) < 1e-10);
}

TEST_CASE("delta-limit two-body energy") {
    std::string note;
    CHECK(reference::delta_limit_two_body(0.05, &note) ==
          doctest::Approx(-1.3707783890401885e-3).epsilon(1e-12));
    CHECK(note.empty());
    CHECK(reference::delta_limit_two_body(1e-6) == doctest::Approx(0.0));
    reference::delta_limit_two_body(0.5, &note);
    CHECK(!note.empty()); // outside the validity window
}

TEST_CASE("saturation constants") {
    const auto s1 = reference::saturation_constants(1.0);
    CHECK(s1[0] == -1.0);
    CHECK(s1[1] == 3.0);
    CHECK(s1[2] == 0.0);
    const auto s0 = reference::saturation_constants(0.0);
    CHECK(s0[1] == 0.0);
    CHECK(s0[2] == -3.0);
    const auto s = reference::saturation_constants(0.1);
    CHECK(s[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(s[2] == doctest::Approx(-2.7).epsilon(1e-15));
    CHECK_THROWS_AS(reference::saturation_constants(1.5), ValidationError);
}

TEST_CASE("dense 2D Dirichlet spectrum: free stencil values") {
    const Grid2D g = Grid2D::make(3.0, 16);
    const Field v = Field::Zero(16, 16);
    const auto spec = reference::dense_diagonalize_fd2d(g, v);
    const double ih2 = 1.0 / (g.h * g.h);
    auto mu = [&](int p) { return (2.0 - 2.0 * std::cos(pi * p / 17.0)) * ih2; };
    CHECK(spec.eigenvalues(0) == doctest::Approx(2.0 * mu(1)).epsilon(1e-12));
    CHECK(spec.eigenvalues(1) == doctest::Approx(mu(1) + mu(2)).epsilon(1e-12));
    CHECK(spec.eigenvalues(2) == doctest::Approx(mu(1) + mu(2)).epsilon(1e-12));
}

TEST_CASE("dense spectral spectrum: free lattice values") {
    const Grid2D g = Grid2D::make(3.0, 16);
    const Field v = Field::Zero(16, 16);
    const auto spec = reference::dense_diagonalize_spectral2d(g, v);
    const double k1 = 2.0 * pi / (g.h * 16);
    CHECK(std::abs(spec.eigenvalues(0)) < 1e-10);
    for (int i = 1; i <= 4; ++i)
        CHECK(spec.eigenvalues(i) == doctest::Approx(k1 * k1).epsilon(1e-10));
}

TEST_CASE("memory guards") {
    const Grid2D g = Grid2D::make(10.0, 80); // 6400 > 4096
    const Field v = Field::Zero(80, 80);
    CHECK_THROWS_AS(reference::dense_diagonalize_fd2d(g, v), ValidationError);
    CHECK_THROWS_AS(reference::dense_diagonalize_spectral2d(g, v), ValidationError);
}

TEST_CASE("eigenexpansion propagation phases an eigenstate") {
    const Grid2D g = Grid2D::make(4.0, 20);
    Field v(20, 20);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            v(i, j) = 0.3 * total_potential_jacobi(g.x(i), g.x(j), 1.0).u_total;
    const auto spec = reference::dense_diagonalize_spectral2d(g, v);
    const Eigen::VectorXcd psi0 = spec.eigenvectors.col(0).cast<complexd>();
    const double tau = 3.7;
    const Eigen::VectorXcd out = reference::propagate_by_eigenexpansion(spec, psi0, tau);
    const complexd expect = std::exp(complexd(0.0, -spec.eigenvalues(0) * tau));
    double worst = 0.0;
    for (int a = 0; a < 400; ++a) worst = std::max(worst, std::abs(out(a) - expect * psi0(a)));
    CHECK(worst < 1e-12);
}

TEST_CASE("angular average asymptote value") {
    CHECK(reference::angular_average_asymptote(50.0) == doctest::Approx(-std::sqrt(2.0) / 50.0));
}
