#include "rydpol/reference.hpp"
#include "rydpol/common.hpp"
#include "rydpol/numerics.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace rydpol::reference {

double mcguire_ratio(double alpha) {
    if (alpha != 0.0)
        throw ValidationError("mcguire_ratio: the -4B result holds for pairwise delta "
                              "interactions only (alpha = 0, lambda -> 0)");
    return 4.0;
}

double pair_potential_integral_quadrature() {
    const double R = 10.0;
    const double body = simpson([](double r) { return 1.0 / (1.0 + std::pow(r, 6)); }, 0.0, R, 200000);
    // tail: integral_R^inf dr/(1+r^6) = R^-5/5 - R^-11/11 + R^-17/17 - R^-23/23 + ...
    double tail = 0.0, sign = 1.0;
    for (int k = 0; k < 5; ++k) {
        const double p = 5.0 + 6.0 * k;
        tail += sign * std::pow(R, -p) / p;
        sign = -sign;
    }
    return 2.0 * (body + tail);
}

double delta_limit_two_body(double lambda, std::string* note) {
    if (note) {
        *note = (lambda <= 0.2) ? ""
                                : "lambda > 0.2: outside the delta-potential validity window, "
                                  "value is the extrapolated closed form";
    }
    const double strength = lambda * 2.0 * pi / 3.0;
    return -strength * strength / 8.0;
}

std::array<double, 3> saturation_constants(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("saturation_constants: alpha must lie in [0, 1]");
    return {-1.0, 3.0 * alpha, -3.0 * (1.0 - alpha)};
}

double angular_average_asymptote(double rho) { return -std::sqrt(2.0) / rho; }

namespace {

DenseSpectrum solve_dense(Eigen::MatrixXd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw SolverError("dense diagonalization failed");
    DenseSpectrum s;
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    return s;
}

} // namespace

DenseSpectrum dense_diagonalize_tridiag(const std::vector<double>& diag,
                                        const std::vector<double>& off) {
    const int n = static_cast<int>(diag.size());
    if (n > 4096) throw ValidationError("dense_diagonalize_tridiag: n > 4096");
    if (static_cast<int>(off.size()) + 1 != n)
        throw ValidationError("dense_diagonalize_tridiag: bad sizes");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(
        Eigen::Map<const Eigen::VectorXd>(diag.data(), n),
        Eigen::Map<const Eigen::VectorXd>(off.data(), n - 1));
    if (es.info() != Eigen::Success) throw SolverError("tridiagonal QR failed");
    DenseSpectrum s;
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    return s;
}

DenseSpectrum dense_diagonalize_fd2d(const Grid2D& grid, const Field& potential) {
    const int n = grid.n;
    const long ntot = static_cast<long>(n) * n;
    if (ntot > 4096) throw ValidationError("dense_diagonalize_fd2d: grid larger than 64x64");
    const double ih2 = 1.0 / (grid.h * grid.h);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ntot, ntot);
    auto id = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = id(i, j);
            H(a, a) = 4.0 * ih2 + potential(i, j);
            if (i > 0) H(a, id(i - 1, j)) = -ih2;
            if (i + 1 < n) H(a, id(i + 1, j)) = -ih2;
            if (j > 0) H(a, id(i, j - 1)) = -ih2;
            if (j + 1 < n) H(a, id(i, j + 1)) = -ih2;
        }
    return solve_dense(H);
}

DenseSpectrum dense_diagonalize_spectral2d(const Grid2D& grid, const Field& potential) {
    const int n = grid.n;
    const long ntot = static_cast<long>(n) * n;
    if (ntot > 4096) throw ValidationError("dense_diagonalize_spectral2d: grid larger than 64x64");

    // 1D circulant kinetic symbol: c[s] = (1/n) sum_m k_m^2 cos(2 pi m s / n)
    const double period = grid.h * n;
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int m = 0; m < n; ++m) {
        const int mm = (m <= n / 2) ? m : m - n;
        const double k = 2.0 * pi * mm / period;
        for (int s = 0; s < n; ++s)
            c[static_cast<std::size_t>(s)] += k * k * std::cos(2.0 * pi * m * s / n) / n;
    }

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ntot, ntot);
    auto id = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = id(i, j);
            for (int s = 0; s < n; ++s) {
                H(a, id((i + s) % n, j)) += c[static_cast<std::size_t>(s)];
                H(a, id(i, (j + s) % n)) += c[static_cast<std::size_t>(s)];
            }
            H(a, a) += potential(i, j);
        }
    // symmetrize away circulant round-off
    Eigen::MatrixXd Hs = 0.5 * (H + H.transpose());
    return solve_dense(Hs);
}

Eigen::VectorXcd propagate_by_eigenexpansion(const DenseSpectrum& spec,
                                             const Eigen::VectorXcd& psi0, double tau) {
    const Eigen::VectorXcd coeff = spec.eigenvectors.transpose().cast<complexd>() * psi0;
    Eigen::VectorXcd phased(coeff.size());
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        phased(i) = coeff(i) * std::exp(complexd(0.0, -spec.eigenvalues(i) * tau));
    return spec.eigenvectors.cast<complexd>() * phased;
}

} // namespace rydpol::reference
