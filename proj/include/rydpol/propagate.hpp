#ifndef RYDPOL_PROPAGATE_HPP
#define RYDPOL_PROPAGATE_HPP

#include "rydpol/geometry.hpp"
#include "rydpol/numerics.hpp"
#include "rydpol/potentials.hpp"

#include <memory>
#include <vector>

namespace rydpol {

/// Three-photon relative wavefunction on the Jacobi plane. The grid doubles
/// as a periodic lattice of period n*h for the spectral stepping.
struct WaveField {
    Grid2D grid;
    CField amp;
    double tau = 0.0;

    double norm() const; // sqrt(sum |amp|^2 h^2)
};

WaveField uniform_field(const Grid2D& grid);

struct WaveLine {
    Grid1D grid;
    Eigen::ArrayXcd amp;
    double tau = 0.0;

    double norm() const;
};

WaveLine uniform_line(const Grid1D& grid);

struct EvolveStats {
    int steps = 0;
    double dtau = 0.0;
    double max_step_norm_drift = 0.0; // relative, measured before the edge mask
    double absorbed_fraction = 0.0;   // 1 - (final/initial norm)^2
    double edge_amplitude = 0.0;      // max |psi| on the outermost ring at the end
};

struct EvolveOptions {
    double dtau = 0.02;
    bool absorber = false;
    double absorber_width = 8.0;
    double unitarity_budget = 1e-8; // per-step relative drift of the unitary core
};

/// Strang split-step propagator exp(-i H tau), kinetic part exact on the
/// periodic lattice, potential part pointwise. The optional absorber is a
/// smooth edge mask applied after each step; the unitarity budget is checked
/// on the pre-mask step.
class Propagator2D {
public:
    Propagator2D(const Grid2D& grid, Field potential, const EvolveOptions& opts);
    ~Propagator2D();
    Propagator2D(const Propagator2D&) = delete;
    Propagator2D& operator=(const Propagator2D&) = delete;

    /// Advance by tau (>= 0). The step count is ceil(tau/dtau) with the step
    /// shrunk to land exactly on tau.
    EvolveStats evolve(WaveField& field, double tau);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

class Propagator1D {
public:
    Propagator1D(const Grid1D& grid, Eigen::ArrayXd potential, const EvolveOptions& opts);
    ~Propagator1D();
    Propagator1D(const Propagator1D&) = delete;
    Propagator1D& operator=(const Propagator1D&) = delete;

    EvolveStats evolve(WaveLine& line, double tau);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Phase-time accumulated over a medium of length R (blockade-radius units)
/// with slow-light kinematics at alpha_kin: tau = 2 alpha_kin^2 R / kappa_xi,
/// kappa_xi = sqrt(alpha_kin lambda).
double tau_from_medium(double alpha_kin, double lambda, double r_xi);

struct EigenphaseCheck {
    double phase_error = 0.0;     // |arg(<psi|psi(tau)> e^{i E tau})|
    double overlap_deficit = 0.0; // 1 - |<psi|psi(tau)>| / (norms)
    EvolveStats stats;
};

/// Evolve an eigenstate of the spectral-kinetic Hamiltonian (same grid and
/// potential) and compare the accumulated phase against -E tau.
EigenphaseCheck eigenphase_check(const Grid2D& grid, const Field& potential,
                                 const Eigen::VectorXd& psi, double energy, double tau,
                                 double dtau);

/// Halve dtau until the eigenphase error over tau stays below target.
double choose_dtau(const Grid2D& grid, const Field& potential, const Eigen::VectorXd& psi,
                   double energy, double tau, double target, double dtau0 = 0.04);

struct CorrelationOptions {
    double box_l = 40.0;
    int n = 255; // odd: keeps the origin on the grid
    double box_l_1d = 160.0;
    int n_1d = 4095;
    double dtau = 0.02;
    bool absorber_2d = true;
    double absorber_width = 8.0;
    /// Kinematic slow-light point for the R -> tau conversion. The paper's
    /// correlation figures switch the three-body term off while keeping the
    /// propagation kinematics, so this stays at 1 unless the caller really
    /// wants the literal alpha scaling.
    double alpha_kinematic = 1.0;
    int sixfold_samples = 48;
};

struct CorrelationResult {
    Grid2D grid;
    std::vector<double> r_grid; // pair distance >= 0
    std::vector<double> g2;     // g2(r) from the two-photon run
    Field g3;                   // |psi|^2 over (eta, zeta)
    Field g3_connected;         // 2 + g3 - sum g2(r_ij)
    double tau = 0.0;
    double medium_length = 0.0;

    double peak = 0.0;        // max of g3_connected near the origin
    double fwhm_radial = 0.0; // from the angle-averaged profile
    double fwhm_eta = 0.0;    // along the zeta = 0 cut
    /// max |g3_connected| where every pair separation exceeds annulus_lo
    /// (all three photons mutually separated; this is the region where the
    /// connected part must die off)
    double far_field_max = 0.0;
    /// same over the plain hyperradius annulus; the valley lines it contains
    /// keep one pair close, and at finite tau the two-photon antibunching
    /// wake (g2 < 1 out to ~v tau) leaves an O(1) additive residue there
    double far_field_max_any = 0.0;
    double annulus_lo = 0.0, annulus_hi = 0.0;
    double sixfold_asymmetry = 0.0;

    EvolveStats stats_2d, stats_1d;
};

/// Full pipeline: evolve the three-photon and two-photon uniform inputs over
/// the same tau, assemble g3, g2 and the connected correlation.
CorrelationResult correlations_after_medium(double alpha, double lambda, double r_xi,
                                            const CorrelationOptions& opts = {});

/// 2 + g3 - sum of pair correlations at the three pair distances of each
/// grid point; g2 must cover every distance the grid reaches.
Field connected_g3(const Field& g3, const Grid2D& grid, const CubicSpline& g2_of_r);

/// Angle-averaged radial profile and full width at half maximum of the
/// central peak of a field (background taken as zero).
struct RadialProfile {
    std::vector<double> rho, value;
    double peak = 0.0;
    double fwhm = 0.0;
};

RadialProfile radial_profile(const Field& f, const Grid2D& grid, double rho_max);

} // namespace rydpol

#endif
