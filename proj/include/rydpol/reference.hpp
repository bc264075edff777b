#ifndef RYDPOL_REFERENCE_HPP
#define RYDPOL_REFERENCE_HPP

#include "rydpol/geometry.hpp"
#include "rydpol/potentials.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace rydpol::reference {

/// Oracles used by tests and the acceptance suite. Everything here is
/// deliberately computed with plain, slow, independent numerics (dense
/// linear algebra, composite quadrature, closed forms) and never calls the
/// solver paths it validates.

struct OracleReport {
    std::string quantity;
    double value = 0.0;
    std::string method; // "analytic" | "dense-grid" | "quadrature"
    double tolerance = 0.0;
};

/// Exact three-to-two binding-energy ratio for 1D bosons with pairwise
/// delta interactions. Applies only to the alpha = 0, lambda -> 0 limit;
/// citing it for alpha > 0 is an error.
double mcguire_ratio(double alpha = 0.0);

/// Integral of 1/(1+r^6) over the whole line by composite Simpson plus an
/// analytic tail series. Equals 2 pi/3.
double pair_potential_integral_quadrature();

/// Two-body ground energy in the delta-potential limit:
/// E = -(lambda * 2 pi/3)^2 / 8 in the -d^2/d eta^2 normalization.
/// Outside the validity window lambda <= 0.2 the value is still returned and
/// `note`, when given, carries a warning annotation.
double delta_limit_two_body(double lambda, std::string* note = nullptr);

/// Short-distance saturation values in alpha^2/|chi| units:
/// { pair -> -1, connected three-body -> 3 alpha, total -> -3(1-alpha) }.
std::array<double, 3> saturation_constants(double alpha);

/// Large-rho limit of the angular average of the total potential at fixed
/// hyperradius. Each of the three pair valleys crosses the circle twice and
/// contributes its line integral -2 pi/3 compressed by the local angular
/// scale sqrt(2) rho, so c0(rho) -> -sqrt(2)/rho.
double angular_average_asymptote(double rho);

/// Brute-force dense spectra. Guarded to small problems; these exist to
/// cross-check the iterative solvers and the split-step propagator.
struct DenseSpectrum {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns, unit 2-norm
};

/// Dense spectrum of a symmetric tridiagonal operator (1D Hamiltonians).
DenseSpectrum dense_diagonalize_tridiag(const std::vector<double>& diag,
                                        const std::vector<double>& off);

/// Dense spectrum of the Dirichlet five-point Laplacian plus potential,
/// row-major flattening (i*n + j). Requires n*n <= 4096.
DenseSpectrum dense_diagonalize_fd2d(const Grid2D& grid, const Field& potential);

/// Dense spectrum of the periodic spectral-kinetic Hamiltonian on the same
/// flattening; kinetic part built from the exact circulant symbol.
DenseSpectrum dense_diagonalize_spectral2d(const Grid2D& grid, const Field& potential);

/// exp(-i H tau) psi0 through the full eigenexpansion of a dense spectrum.
Eigen::VectorXcd propagate_by_eigenexpansion(const DenseSpectrum& spec,
                                             const Eigen::VectorXcd& psi0, double tau);

} // namespace rydpol::reference

#endif
