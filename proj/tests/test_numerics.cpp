#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/common.hpp"
#include "rydpol/numerics.hpp"
#include "rydpol/reference.hpp"

#include <cmath>
#include <random>

using namespace rydpol;

TEST_CASE("cubic spline reproduces smooth functions") {
    const int n = 60;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 0.1 + 0.15 * i;
        y[i] = std::sin(x[i]) / x[i];
    }
    CubicSpline s(x, y);
    double worst = 0.0;
    for (double q = 0.2; q < 8.8; q += 0.0137)
        worst = std::max(worst, std::abs(s(q) - std::sin(q) / q));
    CHECK(worst < 2e-6);
    // clamped outside the range
    CHECK(s(0.0) == y.front());
    CHECK(s(100.0) == y.back());
}

TEST_CASE("spline rejects bad input") {
    CHECK_THROWS_AS(CubicSpline({1.0, 1.0}, {0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(CubicSpline({1.0}, {0.0}), ValidationError);
}

TEST_CASE("tridiagonal lowest eigenpairs match the dense reference") {
    // free-particle Dirichlet Laplacian has the analytic stencil spectrum
    const int n = 200;
    const double h = 0.1, ih2 = 1.0 / (h * h);
    std::vector<double> d(n, 2.0 * ih2), e(n - 1, -ih2);
    const TridiagEigen te = tridiag_lowest(d, e, 3, true);
    for (int p = 1; p <= 3; ++p) {
        const double exact = (2.0 - 2.0 * std::cos(pi * p / (n + 1))) * ih2;
        CHECK(te.eigenvalues[p - 1] == doctest::Approx(exact).epsilon(1e-12));
    }

    // random symmetric tridiagonal vs Eigen's independent QR
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> dr(80), er(79);
    for (auto& v : dr) v = uni(rng);
    for (auto& v : er) v = uni(rng);
    const TridiagEigen mine = tridiag_lowest(dr, er, 4, true);
    const auto dense = reference::dense_diagonalize_tridiag(dr, er);
    for (int s = 0; s < 4; ++s) {
        CHECK(mine.eigenvalues[s] == doctest::Approx(dense.eigenvalues(s)).epsilon(1e-12));
        double dot = 0.0;
        for (int i = 0; i < 80; ++i) dot += mine.eigenvectors[s][i] * dense.eigenvectors(i, s);
        CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("simpson integrates to high order") {
    const double val = simpson([](double x) { return std::exp(-x * x); }, 0.0, 3.0, 2000);
    CHECK(val == doctest::Approx(0.88620734825774157).epsilon(1e-12));
}

TEST_CASE("fft friendly sizes are odd with smooth n+1") {
    for (int n : {100, 255, 1000, 1619}) {
        const int m = fft_friendly_odd(n);
        CHECK(m >= n);
        int q = m + 1;
        for (int p : {2, 3, 5})
            while (q % p == 0) q /= p;
        CHECK(q == 1);
    }
}

TEST_CASE("grids") {
    const auto g = geometric_grid(0.05, 80.0, 100);
    CHECK(g.front() == doctest::Approx(0.05));
    CHECK(g.back() == doctest::Approx(80.0));
    CHECK(g[50] / g[49] == doctest::Approx(g[20] / g[19]).epsilon(1e-12));
    CHECK_THROWS_AS(geometric_grid(-1.0, 2.0, 10), ValidationError);
    const auto u = uniform_grid(-1.0, 1.0, 21);
    CHECK(u[10] == doctest::Approx(0.0));
}
