#ifndef RYDPOL_EIGENSOLVE_HPP
#define RYDPOL_EIGENSOLVE_HPP

#include "rydpol/geometry.hpp"
#include "rydpol/potentials.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rydpol {

enum class Kinetic {
    fd5_dirichlet,    // five-point Laplacian, zero beyond the grid edge
    spectral_periodic // exact k^2 on the periodic lattice of period n*h
};

/// Matrix-free relative-motion Hamiltonian H = -Laplacian + V on a Grid2D,
/// flattened row-major (i*n + j with i the eta index). Symmetric for both
/// kinetic choices. One instance is not safe for concurrent apply() calls
/// (the spectral path owns scratch buffers); use one instance per thread.
class Hamiltonian2D {
public:
    Hamiltonian2D(Grid2D grid, Field potential, Kinetic kinetic);
    ~Hamiltonian2D();
    Hamiltonian2D(Hamiltonian2D&&) noexcept;
    Hamiltonian2D(const Hamiltonian2D&) = delete;
    Hamiltonian2D& operator=(const Hamiltonian2D&) = delete;

    void apply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const;

    long size() const;
    double norm_estimate() const; // rough upper bound on ||H||
    const Grid2D& grid() const;
    const Field& potential() const;
    Kinetic kinetic() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct LobpcgOptions {
    int n_states = 1;
    int guard_vectors = 1;   // extra block columns that are iterated but not converged
    double tol_abs = 1e-8;   // residual 2-norm target per requested state
    int max_iter = 600;
    std::uint64_t seed = 12345;
    double precond_shift = -1.0; // < 0: pick automatically
};

struct LobpcgResult {
    std::vector<double> eigenvalues; // ascending, n_states entries
    Eigen::MatrixXd vectors;         // columns, unit 2-norm
    std::vector<double> residuals;
    int iterations = 0;
    bool converged = false;
};

/// Block preconditioned eigensolver for the lowest eigenpairs of H.
/// Deterministic given the seed.
LobpcgResult lobpcg(const Hamiltonian2D& H, const LobpcgOptions& opts);

struct EigenSolution {
    std::vector<double> energies;                // ascending
    std::vector<Eigen::VectorXd> wavefunctions;  // sum |psi|^2 h^dim = 1
    std::vector<double> residuals;               // ||H psi - E psi||_2
    int dim = 1;
    int grid_n = 0;
    double grid_h = 0.0;
    double box_l = 0.0;
    double boundary_leak = 0.0; // max |psi| on the edge / max |psi|
    double eps_box = 0.0;       // discretization floor used as bound-state cut
    int bound_count = 0;        // energies below -eps_box
    int iterations = 0;
    bool converged = true;
    std::vector<std::string> notes;
};

struct SolveOptions {
    int n_states = 1;
    double tol_rel = 1e-9; // residual target relative to ||H|| estimate
    int max_iter = 600;
    std::uint64_t seed = 12345;
    double leak_threshold = 1e-6;
    bool throw_on_leak = true; // otherwise record a note and continue
};

/// Two-photon relative problem H2 = -d^2/d eta^2 + lambda U2(sqrt(2) eta)
/// on a Dirichlet grid; the sqrt(2) maps the two-particle Jacobi coordinate
/// to the pair distance.
EigenSolution two_body_ground(double lambda, const Grid1D& grid, const SolveOptions& opts = {});

/// Same, with the box sized from the delta-limit decay constant and enlarged
/// automatically if the wavefunction still touches the boundary.
EigenSolution two_body_ground_auto(double lambda, const SolveOptions& opts = {});

Grid1D suggest_grid1d(double lambda);
Grid2D suggest_grid2d(double lambda, double alpha, double h_target = -1.0, int n_cap = 1700);

/// Three-photon relative problem on the Jacobi plane,
/// H = -dd_eta - dd_zeta + lambda Utotal(eta, zeta; alpha), Dirichlet box.
EigenSolution three_body_ground(double lambda, double alpha, const Grid2D& grid,
                                const SolveOptions& opts = {});

/// Heuristic box first, then one resize from the measured valley decay
/// sqrt(E2 - E3) if the state still touches the edge.
EigenSolution three_body_ground_auto(double lambda, double alpha, const SolveOptions& opts = {},
                                     double h_target = -1.0, int n_cap = 1700);

/// Lowest states of an arbitrary assembled Hamiltonian (used by the
/// propagation tests with the spectral kinetic operator).
EigenSolution solve_lowest(const Hamiltonian2D& H, const SolveOptions& opts = {});

struct ScanPoint {
    double lambda = 0.0, alpha = 0.0;
    double e2 = 0.0, e3 = 0.0, ratio = 0.0;
    double residual2 = 0.0, residual3 = 0.0;
    double boundary_leak = 0.0;
    int grid_n = 0;
    double box_l = 0.0;
    bool ok = false;
    bool flagged_high_lambda = false; // lambda > 1 leaves the low-energy regime
    std::string error;
};

struct ScanResult {
    std::vector<double> lambdas, alphas;
    std::vector<ScanPoint> points; // row-major over (lambda, alpha)
};

struct ScanOptions {
    int threads = 1;
    double h_target = -1.0; // < 0: per-lambda heuristic
    int n_cap = 1700;
    SolveOptions solve{};
};

/// Binding-energy ratio scan over a (lambda, alpha) table. Per-point
/// failures are recorded in the point and do not abort the scan.
ScanResult ratio_scan(const std::vector<double>& lambdas, const std::vector<double>& alphas,
                      const ScanOptions& opts = {});

} // namespace rydpol

#endif
