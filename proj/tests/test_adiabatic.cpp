#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/adiabatic.hpp"
#include "rydpol/common.hpp"
#include "rydpol/eigensolve.hpp"
#include "rydpol/geometry.hpp"
#include "rydpol/potentials.hpp"
#include "rydpol/reference.hpp"

#include <cmath>

using namespace rydpol;

TEST_CASE("selection rule: only multiples of six survive (measured, not assumed)") {
    for (double rho : {0.5, 2.0, 10.0}) {
        const FourierCoeffs fc = angular_fourier(rho, 1.0, 24, 512, /*exploit_symmetry=*/false);
        CHECK(fc.max_imag < 1e-12);
        for (int n = 1; n <= 24; ++n) {
            if (n % 6 == 0) continue;
            CHECK(std::abs(fc.c[static_cast<std::size_t>(n)]) < 1e-10);
        }
        CHECK(std::abs(fc.c[6]) > 1e-8); // the allowed ones are genuinely there
    }
}

TEST_CASE("coupling matrix is symmetric with zero forbidden blocks") {
    const ChannelBasis full{12, ChannelBasis::Sector::full};
    const Eigen::MatrixXd H = fourier_coupling(1.5, 1.0, 0.1, full);
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const int K = 12;
    for (int a = 0; a < 2 * K + 1; ++a)
        for (int b = 0; b < 2 * K + 1; ++b)
            if (std::abs(a - b) % 6 != 0) CHECK(std::abs(H(a, b)) < 1e-10);
    CHECK_THROWS_AS(fourier_coupling(1.0, 1.0, 0.1, ChannelBasis{10, ChannelBasis::Sector::full}),
                    ValidationError);
}

TEST_CASE("large-rho angle average follows the valley line integrals") {
    // each pair valley contributes (-2 pi/3)/(sqrt(2) rho) twice per circle:
    // c0 -> -sqrt(2)/rho, while the potential between valleys is negligible
    const double rho = 50.0;
    const FourierCoeffs fc = angular_fourier(rho, 1.0, 12);
    const double expect = reference::angular_average_asymptote(rho);
    CHECK(std::abs(fc.c[0] - expect) < 0.01 * std::abs(expect));
    double eta, zeta;
    from_hyperspherical(rho, pi / 6.0, eta, zeta); // ridge between valleys
    CHECK(std::abs(total_potential_jacobi(eta, zeta, 1.0).u_total) < 1e-6);
}

TEST_CASE("only the k = 0 channel is attractive at alpha = 1, lambda = 0.1") {
    const ChannelBasis basis{18, ChannelBasis::Sector::full};
    const auto rho = geometric_grid(0.05, 40.0, 160);
    const AdiabaticChannelSet set = adiabatic_curves(basis, rho, 1.0, 0.1);
    for (std::size_t s = 0; s < set.labels.size(); ++s) {
        const double lam_min = set.lambda_curves.col(static_cast<Eigen::Index>(s)).minCoeff();
        if (set.labels[s] == 0 &&
            static_cast<int>(s) == set.channel_of(0))
            CHECK(lam_min < 0.0);
        else if (set.labels[s] != 0)
            CHECK(lam_min > 0.0);
    }
    CHECK(set.max_quad_error < 1e-8);
}

TEST_CASE("short-range limit of Delta_0 is the saturation value") {
    for (double alpha : {0.0, 0.5, 1.0}) {
        GroundChannelOptions go;
        go.diagonal_correction = false;
        const auto c = ground_channel({0.05, 0.06}, alpha, 0.1, go);
        CHECK(std::abs(c.delta0[0] - (-3.0 * (1.0 - alpha) * 0.1)) < 1e-5);
    }
}

TEST_CASE("Delta_0 approaches the two-body energy at large rho") {
    const EigenSolution e2 = two_body_ground_auto(0.1);
    GroundChannelOptions go;
    go.diagonal_correction = false;
    const auto c = ground_channel({99.0, 100.0}, 1.0, 0.1, go);
    CHECK(std::abs(c.delta0[1] - e2.energies[0]) < 0.01 * std::abs(e2.energies[0]));
}

TEST_CASE("even sector reproduces the full-basis lowest eigenvalue") {
    for (double rho : {0.3, 2.0, 8.0}) {
        const Eigen::MatrixXd Hf =
            fourier_coupling(rho, 1.0, 0.1, ChannelBasis{24, ChannelBasis::Sector::full});
        const Eigen::MatrixXd He =
            fourier_coupling(rho, 1.0, 0.1, ChannelBasis{24, ChannelBasis::Sector::bosonic_even});
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ef(Hf), ee(He);
        CHECK(ee.eigenvalues()(0) == doctest::Approx(ef.eigenvalues()(0)).epsilon(1e-11));
    }
}

TEST_CASE("basis convergence on the figure range") {
    // k_max 18 -> 36 moves Lambda_0 by less than 0.5% for rho <= 6
    const auto rho = geometric_grid(0.05, 6.0, 60);
    const AdiabaticChannelSet s18 =
        adiabatic_curves(ChannelBasis{18, ChannelBasis::Sector::bosonic_even}, rho, 1.0, 0.1);
    const AdiabaticChannelSet s36 =
        adiabatic_curves(ChannelBasis{36, ChannelBasis::Sector::bosonic_even}, rho, 1.0, 0.1);
    const int c18 = s18.channel_of(0), c36 = s36.channel_of(0);
    for (int i = 0; i < 60; ++i) {
        const double a = s18.lambda_curves(i, c18), b = s36.lambda_curves(i, c36);
        CHECK(std::abs(a - b) <= 0.005 * std::abs(b));
    }
}

TEST_CASE("tracked curves are continuous in rho") {
    const ChannelBasis basis{18, ChannelBasis::Sector::full};
    const auto rho = geometric_grid(0.1, 30.0, 200);
    const AdiabaticChannelSet set = adiabatic_curves(basis, rho, 1.0, 0.1);
    for (Eigen::Index s = 0; s < set.lambda_curves.cols(); ++s)
        for (int i = 1; i < 200; ++i) {
            const double a = set.lambda_curves(i - 1, s), b = set.lambda_curves(i, s);
            CHECK(std::abs(b - a) <= 0.2 * (std::abs(a) + std::abs(b)) + 1e-9);
        }
}

TEST_CASE("high channels approach their centrifugal curves") {
    const ChannelBasis basis{24, ChannelBasis::Sector::bosonic_even};
    const auto rho_grid = geometric_grid(0.05, 60.0, 120);
    const AdiabaticChannelSet set = adiabatic_curves(basis, rho_grid, 1.0, 0.1);
    const int ch = set.channel_of(12);
    const double rho = set.rho.back();
    const double cent = (144.0 - 0.25) / (rho * rho);
    const double lam = set.lambda_curves(set.lambda_curves.rows() - 1, ch);
    CHECK(std::abs(lam - cent) < 0.10 * cent); // potential shift is a few percent here
    const FourierCoeffs fc = angular_fourier(rho, 1.0, 12);
    CHECK(std::abs(lam - cent - 0.1 * fc.c[0]) < 0.02 * cent);
}

TEST_CASE("free radial channel supports no bound state") {
    AdiabaticChannelSet flat;
    flat.rho = uniform_grid(0.05, 40.0, 200);
    flat.labels = {0};
    flat.lambda_curves.resize(200, 1);
    flat.delta_curves = Eigen::MatrixXd::Zero(200, 1);
    for (int i = 0; i < 200; ++i)
        flat.lambda_curves(i, 0) = -0.25 / (flat.rho[static_cast<std::size_t>(i)] *
                                            flat.rho[static_cast<std::size_t>(i)]);
    const RadialResult r = solve_radial(0, flat, {});
    CHECK(r.energies.empty()); // empty result, not a failure
    CHECK(!r.all_energies.empty());
    CHECK(r.all_energies[0] > -1e-10);
}

TEST_CASE("adiabatic ground state reproduces McGuire at weak coupling") {
    const EigenSolution e2 = two_body_ground_auto(0.1);
    const AdiabaticGround g = adiabatic_ground(0.0, 0.1);
    REQUIRE(g.bound);
    const double ratio = g.energy / e2.energies[0];
    CHECK(ratio > 3.8);
    CHECK(ratio < 4.2);
}

TEST_CASE("binding deepens monotonically with lambda") {
    double prev = 0.0;
    for (double lambda : {0.08, 0.1, 0.12}) {
        const AdiabaticGround g = adiabatic_ground(0.0, lambda);
        REQUIRE(g.bound);
        CHECK(g.energy < prev);
        prev = g.energy;
    }
}

TEST_CASE("numerov shooting agrees with the finite-difference radial solver") {
    AdiabaticGroundOptions opts;
    opts.radial.numerov_check = true;
    const AdiabaticGround g = adiabatic_ground(0.0, 0.5, opts);
    REQUIRE(g.bound);
    REQUIRE(g.radial.has_numerov);
    CHECK(std::abs(g.radial.numerov_energy - g.energy) < 2e-4 * std::abs(g.energy));
}

TEST_CASE("diagonal correction is non-negative and small") {
    GroundChannelOptions go;
    go.diagonal_correction = true;
    const auto rho = geometric_grid(0.5, 30.0, 80);
    const auto c = ground_channel(rho, 1.0, 0.1, go);
    REQUIRE(c.delta0_corrected.size() == c.delta0.size());
    for (std::size_t i = 1; i < c.rho.size(); ++i) {
        CHECK(c.delta0_corrected[i] >= c.delta0[i] - 1e-14);
        CHECK(c.delta0_corrected[i] - c.delta0[i] < 0.1);
    }
}

TEST_CASE("ground channel matches the tracked curve set at moderate rho") {
    const auto rho = geometric_grid(0.1, 10.0, 40);
    GroundChannelOptions go;
    go.diagonal_correction = false;
    const auto gc = ground_channel(rho, 1.0, 0.1, go);
    const AdiabaticChannelSet set =
        adiabatic_curves(ChannelBasis{36, ChannelBasis::Sector::bosonic_even}, rho, 1.0, 0.1);
    const int ch = set.channel_of(0);
    for (int i = 0; i < 40; ++i)
        CHECK(gc.delta0[static_cast<std::size_t>(i)] ==
              doctest::Approx(set.delta_curves(i, ch)).epsilon(1e-8));
}
