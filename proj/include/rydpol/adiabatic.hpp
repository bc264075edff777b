#ifndef RYDPOL_ADIABATIC_HPP
#define RYDPOL_ADIABATIC_HPP

#include "rydpol/numerics.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace rydpol {

/// Partial-wave basis exp(i k theta) on the hyperangle. The six-fold
/// symmetry of the potential couples only k differing by multiples of 6;
/// bound states live in the reflection-even k = 0 (mod 6) block, which is
/// the bosonic sector used by the radial solver. The full basis is kept for
/// curve plots and the selection-rule checks.
struct ChannelBasis {
    enum class Sector { bosonic_even, full };
    int k_max = 36; // multiple of 6, >= 12
    Sector sector = Sector::bosonic_even;
};

/// Angular Fourier coefficients c_n of the total potential at fixed rho:
/// c_n = (1/2pi) Int U(rho, theta) exp(-i n theta) dtheta. Real and even in
/// n; zero unless 6 | n. Computed by uniform trapezoid sampling, which is
/// spectrally accurate for this smooth periodic integrand.
struct FourierCoeffs {
    std::vector<double> c; // c[n], n = 0..n_max
    double quad_error = 0.0; // Richardson estimate against half sampling
    double max_imag = 0.0;   // imaginary residue of the quadrature
};

/// n_theta points per pi/3 sextant. With exploit_symmetry the potential is
/// evaluated on one sextant and tiled; the selection-rule tests disable this
/// so the vanishing of c_n for 6 not| n is a measured property.
FourierCoeffs angular_fourier(double rho, double alpha, int n_max, int n_theta = 512,
                              bool exploit_symmetry = true);

/// Coupling matrix of the radial-equation system at fixed rho:
/// lambda c_{k-k'} plus the centrifugal diagonal (k^2 - 1/4)/rho^2.
Eigen::MatrixXd fourier_coupling(double rho, double alpha, double lambda,
                                 const ChannelBasis& basis, int n_theta = 512,
                                 bool exploit_symmetry = true);

struct AdiabaticChannelSet {
    std::vector<double> rho;
    std::vector<int> labels;          // dominant |k| per tracked channel
    Eigen::MatrixXd lambda_curves;    // (n_rho x n_channels), centrifugal included
    Eigen::MatrixXd delta_curves;     // Lambda_k - (k^2-1/4)/rho^2
    Eigen::MatrixXd delta_corrected;  // with the diagonal coupling term; empty unless requested
    double alpha = 0.0, lambda = 0.0;
    int k_max = 0;
    ChannelBasis::Sector sector = ChannelBasis::Sector::bosonic_even;
    double max_quad_error = 0.0;

    int channel_of(int k) const; // index of the channel labelled k (throws if absent)
};

struct AdiabaticOptions {
    int n_theta = 512;
    bool exploit_symmetry = true;
    bool diagonal_correction = false; // also export Delta_k + <d phi|d phi>
    double quad_error_tol = 1e-6;
};

/// Diagonalize the coupling matrices over a rho grid and track channels by
/// eigenvector overlap; labels are assigned where the channels decouple at
/// the largest rho.
AdiabaticChannelSet adiabatic_curves(const ChannelBasis& basis, const std::vector<double>& rho_grid,
                                     double alpha, double lambda, const AdiabaticOptions& opts = {});

/// Lowest adiabatic channel over a rho grid with a rho-adaptive partial-wave
/// cutoff: the pair valleys narrow like 1/rho, so representing the angular
/// ground state to fixed accuracy needs k_max growing linearly with rho. The
/// cosine basis is nested, which keeps the adaptive sweep consistent.
struct GroundChannelOptions {
    double k_scale = 2.8; // k_max(rho) ~ k_scale * sqrt(2) * rho
    int k_floor = 36;
    int k_cap = 2400;
    int n_theta = 512;
    bool diagonal_correction = true; // also build Delta_0 + <d phi|d phi>
    double quad_error_tol = 1e-6;
};

struct GroundChannelCurve {
    std::vector<double> rho;
    std::vector<double> lambda0;           // lowest Lambda_0(rho), centrifugal included
    std::vector<double> delta0;            // Lambda_0 + 1/(4 rho^2)
    std::vector<double> delta0_corrected;  // empty unless requested
    std::vector<int> kmax_used;
    double max_quad_error = 0.0;
};

GroundChannelCurve ground_channel(const std::vector<double>& rho_grid, double alpha, double lambda,
                                  const GroundChannelOptions& opts = {});

struct RadialOptions {
    double h = 0.05;
    double rho_hi = -1.0;  // default: last curve point
    int n_states = 1;
    bool numerov_check = false;
};

struct RadialResult {
    std::vector<double> energies;               // bound states only (below threshold)
    std::vector<Eigen::VectorXd> wavefunctions; // sum phi^2 h = 1
    std::vector<double> all_energies;           // lowest computed, bound or not
    double threshold = 0.0;                     // continuum onset Delta_k(rho_max)
    double eps_floor = 0.0;                     // spurious-depth estimate of the free problem
    double rho_lo = 0.0, h = 0.0;
    int n = 0;
    double numerov_energy = 0.0; // filled when numerov_check and a bound state exists
    bool has_numerov = false;
};

/// Solve the one-dimensional radial equation
///   (-d^2/d rho^2 + (k^2 - 1/4)/rho^2 + Delta_k(rho)) Phi = E Phi
/// with Delta_k spline-interpolated between curve points. Finding no state
/// below the channel threshold is a valid empty result, not an error.
RadialResult solve_radial(int k, const AdiabaticChannelSet& channels, const RadialOptions& opts = {});

/// Same radial solve on a ground-channel curve (k = 0).
RadialResult solve_radial(const GroundChannelCurve& curve, bool use_corrected = false,
                          const RadialOptions& opts = {});

struct AdiabaticGroundOptions {
    double rho_lo = 0.05;
    double rho_hi = -1.0; // < 0: heuristic from the delta-limit decay length
    int n_rho = 400;
    bool use_corrected = false; // plain adiabatic approximation by default
    GroundChannelOptions channel{};
    RadialOptions radial{};
};

struct AdiabaticGround {
    double energy = 0.0;
    bool bound = false;
    GroundChannelCurve curve;
    RadialResult radial;
};

/// Convenience pipeline: rho-adaptive lowest-channel curve plus the k = 0
/// radial ground state.
AdiabaticGround adiabatic_ground(double alpha, double lambda, AdiabaticGroundOptions opts = {});

} // namespace rydpol

#endif
