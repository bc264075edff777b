#include "rydpol/eigensolve.hpp"
#include "rydpol/common.hpp"
#include "rydpol/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace rydpol {

namespace {

double fd1d_floor(int n, double h) { return (2.0 - 2.0 * std::cos(pi / (n + 1))) / (h * h); }

// residual of a tridiagonal eigenpair, unit-vector scaling
double tridiag_residual(const std::vector<double>& d, const std::vector<double>& e,
                        double ev, const std::vector<double>& v) {
    const std::size_t n = d.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (d[i] - ev) * v[i];
        if (i > 0) r += e[i - 1] * v[i - 1];
        if (i + 1 < n) r += e[i] * v[i + 1];
        acc += r * r;
    }
    return std::sqrt(acc);
}

int smooth_odd_at_most(int cap) {
    for (int n = cap; n >= 16; --n) {
        int m = n + 1;
        for (int p : {2, 3, 5})
            while (m % p == 0) m /= p;
        if (m == 1) return n;
    }
    return 16;
}

} // namespace

EigenSolution two_body_ground(double lambda, const Grid1D& grid, const SolveOptions& opts) {
    if (!(lambda > 0.0)) throw ValidationError("two_body_ground: lambda must be > 0");
    const int n = grid.n;
    const double h = grid.h;
    const double ih2 = 1.0 / (h * h);
    const double s2 = std::sqrt(2.0);

    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1), -ih2);
    for (int i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] = 2.0 * ih2 + lambda * pair_potential(s2 * std::abs(grid.x(i)));

    const TridiagEigen te = tridiag_lowest(d, e, opts.n_states, true);

    EigenSolution sol;
    sol.dim = 1;
    sol.grid_n = n;
    sol.grid_h = h;
    sol.box_l = grid.box_l;
    sol.eps_box = fd1d_floor(n, h);
    sol.energies = te.eigenvalues;
    for (int s = 0; s < opts.n_states; ++s) {
        const auto& v = te.eigenvectors[static_cast<std::size_t>(s)];
        sol.residuals.push_back(tridiag_residual(d, e, te.eigenvalues[static_cast<std::size_t>(s)], v));
        Eigen::VectorXd psi = Eigen::Map<const Eigen::VectorXd>(v.data(), n) / std::sqrt(h);
        sol.wavefunctions.push_back(std::move(psi));
    }
    {
        const auto& v = te.eigenvectors[0];
        double vmax = 0.0;
        for (double x : v) vmax = std::max(vmax, std::abs(x));
        sol.boundary_leak = std::max(std::abs(v.front()), std::abs(v.back())) / vmax;
    }
    for (double E : sol.energies)
        if (E < -sol.eps_box) ++sol.bound_count;
    if (sol.boundary_leak > opts.leak_threshold) {
        if (opts.throw_on_leak)
            throw SolverError("two_body_ground: wavefunction reaches the box edge (leak " +
                              std::to_string(sol.boundary_leak) + "), enlarge the box");
        sol.notes.push_back("boundary leak above threshold");
    }
    return sol;
}

Grid1D suggest_grid1d(double lambda) {
    const double kappa = pi * lambda / (3.0 * std::sqrt(2.0)); // delta-limit decay in eta
    double L = 14.0 / kappa + 25.0;
    L = std::min(L, 2500.0);
    const double h = 0.02;
    int n = static_cast<int>(std::ceil(2.0 * L / h)) + 1;
    return Grid1D::make(L, n);
}

EigenSolution two_body_ground_auto(double lambda, const SolveOptions& opts) {
    Grid1D grid = suggest_grid1d(lambda);
    SolveOptions local = opts;
    local.throw_on_leak = false;
    EigenSolution sol;
    for (int attempt = 0; attempt < 3; ++attempt) {
        sol = two_body_ground(lambda, grid, local);
        if (sol.boundary_leak <= opts.leak_threshold) return sol;
        grid = Grid1D::make(grid.box_l * 1.6, static_cast<int>(std::ceil(grid.n * 1.6)));
    }
    if (opts.throw_on_leak)
        throw SolverError("two_body_ground_auto: box still leaking after enlargement");
    return sol;
}

Grid2D suggest_grid2d(double lambda, double alpha, double h_target, int n_cap) {
    const double e2 = std::pow(2.0 * pi * lambda / 3.0, 2) / 8.0; // |E2| in the delta limit
    // valley decay sqrt(|E3|-|E2|); assume the McGuire ratio for alpha = 0 and
    // a conservative 1.6 once the three-body repulsion is on
    const double excess = (alpha > 0.0) ? 0.6 : 3.0;
    const double kappa = std::sqrt(std::max(excess * e2, 1e-12));
    double L = 16.0 / kappa + 20.0;
    L = std::clamp(L, 25.0, 620.0);

    double h = h_target;
    if (h <= 0.0) h = (lambda <= 0.3) ? 0.35 : (lambda <= 1.5 ? 0.15 : 0.08);
    int n = fft_friendly_odd(static_cast<int>(std::ceil(2.0 * L / h)) + 1);
    if (n > n_cap) n = smooth_odd_at_most(n_cap);
    return Grid2D::make(L, n);
}

namespace {

EigenSolution finish_2d(const Hamiltonian2D& H, const LobpcgResult& r, const SolveOptions& opts) {
    const Grid2D& grid = H.grid();
    const int n = grid.n;
    EigenSolution sol;
    sol.dim = 2;
    sol.grid_n = n;
    sol.grid_h = grid.h;
    sol.box_l = grid.box_l;
    sol.iterations = r.iterations;
    sol.converged = r.converged;
    sol.energies = r.eigenvalues;
    sol.residuals = r.residuals;
    if (H.kinetic() == Kinetic::fd5_dirichlet) {
        sol.eps_box = 2.0 * fd1d_floor(n, grid.h);
    } else {
        sol.eps_box = 0.0;
        sol.notes.push_back("periodic spectral kinetic: no Dirichlet box floor");
    }
    for (std::size_t s = 0; s < r.eigenvalues.size(); ++s)
        sol.wavefunctions.push_back(r.vectors.col(static_cast<Eigen::Index>(s)) / grid.h);

    const Eigen::VectorXd& g = r.vectors.col(0);
    double vmax = g.cwiseAbs().maxCoeff(), edge = 0.0;
    for (int i = 0; i < n; ++i) {
        edge = std::max({edge, std::abs(g(static_cast<long>(i))),
                         std::abs(g(static_cast<long>(n - 1) * n + i)),
                         std::abs(g(static_cast<long>(i) * n)),
                         std::abs(g(static_cast<long>(i) * n + n - 1))});
    }
    sol.boundary_leak = edge / vmax;
    for (double E : sol.energies)
        if (E < -sol.eps_box) ++sol.bound_count;
    if (sol.boundary_leak > opts.leak_threshold) {
        if (opts.throw_on_leak)
            throw SolverError("three_body_ground: wavefunction reaches the box edge (leak " +
                              std::to_string(sol.boundary_leak) + "), enlarge the box");
        sol.notes.push_back("boundary leak above threshold");
    }
    return sol;
}

} // namespace

EigenSolution solve_lowest(const Hamiltonian2D& H, const SolveOptions& opts) {
    LobpcgOptions lo;
    lo.n_states = opts.n_states;
    lo.guard_vectors = (opts.n_states >= 2) ? 2 : 1; // ride through near-degeneracies
    lo.tol_abs = opts.tol_rel * H.norm_estimate();
    lo.max_iter = opts.max_iter;
    lo.seed = opts.seed;
    const LobpcgResult r = lobpcg(H, lo);
    if (!r.converged)
        throw SolverError("eigensolver did not converge within " + std::to_string(opts.max_iter) +
                          " iterations (worst residual " +
                          std::to_string(*std::max_element(r.residuals.begin(), r.residuals.end())) +
                          ")");
    return finish_2d(H, r, opts);
}

EigenSolution three_body_ground(double lambda, double alpha, const Grid2D& grid,
                                const SolveOptions& opts) {
    if (!(lambda > 0.0)) throw ValidationError("three_body_ground: lambda must be > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("three_body_ground: alpha must lie in [0, 1]");
    Hamiltonian2D H(grid, hamiltonian_potential(grid, alpha, lambda), Kinetic::fd5_dirichlet);
    EigenSolution sol = solve_lowest(H, opts);
    if (lambda > 1.0)
        sol.notes.push_back("lambda > 1: outside the guaranteed low-energy regime");
    return sol;
}

EigenSolution three_body_ground_auto(double lambda, double alpha, const SolveOptions& opts,
                                     double h_target, int n_cap) {
    SolveOptions first = opts;
    first.throw_on_leak = false;
    Grid2D grid = suggest_grid2d(lambda, alpha, h_target, n_cap);
    EigenSolution sol = three_body_ground(lambda, alpha, grid, first);
    if (sol.boundary_leak > opts.leak_threshold && grid.box_l < 620.0) {
        const EigenSolution e2 = two_body_ground_auto(lambda, first);
        const double kappa_v = std::sqrt(std::max(e2.energies.at(0) - sol.energies.at(0), 1e-12));
        const double L = std::clamp(16.0 / kappa_v + 20.0, grid.box_l, 620.0);
        int n = fft_friendly_odd(static_cast<int>(std::ceil(2.0 * L / grid.h)) + 1);
        if (n > n_cap) n = smooth_odd_at_most(n_cap);
        sol = three_body_ground(lambda, alpha, Grid2D::make(L, n), opts);
    } else if (sol.boundary_leak > opts.leak_threshold && opts.throw_on_leak) {
        throw SolverError("three_body_ground_auto: box still leaking at the size cap");
    }
    return sol;
}

ScanResult ratio_scan(const std::vector<double>& lambdas, const std::vector<double>& alphas,
                      const ScanOptions& opts) {
    if (lambdas.empty() || alphas.empty())
        throw ValidationError("ratio_scan: lambda and alpha lists must be non-empty");
    for (double l : lambdas)
        if (!(l > 0.0)) throw ValidationError("ratio_scan: lambda values must be > 0");
    for (double a : alphas)
        if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("ratio_scan: alpha values must lie in [0,1]");

    ScanResult res;
    res.lambdas = lambdas;
    res.alphas = alphas;
    res.points.resize(lambdas.size() * alphas.size());

    // two-body energies depend on lambda only
    std::vector<double> e2(lambdas.size()), res2(lambdas.size());
    std::vector<std::string> e2_err(lambdas.size());
    for (std::size_t il = 0; il < lambdas.size(); ++il) {
        try {
            const EigenSolution s = two_body_ground_auto(lambdas[il], opts.solve);
            e2[il] = s.energies.at(0);
            res2[il] = s.residuals.at(0);
        } catch (const std::exception& ex) {
            e2_err[il] = ex.what();
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= res.points.size()) return;
            const std::size_t il = idx / alphas.size();
            const std::size_t ia = idx % alphas.size();
            ScanPoint& pt = res.points[idx];
            pt.lambda = lambdas[il];
            pt.alpha = alphas[ia];
            pt.flagged_high_lambda = pt.lambda > 1.0;
            if (!e2_err[il].empty()) {
                pt.error = "two-body solve failed: " + e2_err[il];
                continue;
            }
            pt.e2 = e2[il];
            pt.residual2 = res2[il];
            try {
                SolveOptions so = opts.solve;
                so.throw_on_leak = false;
                EigenSolution s3 =
                    three_body_ground_auto(pt.lambda, pt.alpha, so, opts.h_target, opts.n_cap);
                pt.grid_n = s3.grid_n;
                pt.box_l = s3.box_l;
                pt.boundary_leak = s3.boundary_leak;
                if (s3.bound_count < 1) {
                    pt.error = "no bound state below the discretization floor";
                    continue;
                }
                pt.e3 = s3.energies.at(0);
                pt.residual3 = s3.residuals.at(0);
                pt.ratio = pt.e3 / pt.e2;
                pt.ok = true;
            } catch (const std::exception& ex) {
                pt.error = ex.what();
            }
        }
    };

    const int nthreads = std::max(1, opts.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return res;
}

} // namespace rydpol
