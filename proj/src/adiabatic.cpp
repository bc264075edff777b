#include "rydpol/adiabatic.hpp"
#include "rydpol/common.hpp"
#include "rydpol/fft.hpp"
#include "rydpol/geometry.hpp"
#include "rydpol/potentials.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace rydpol {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<complexd> sample_potential_circle(double rho, double alpha, int n_full,
                                              bool exploit_symmetry) {
    std::vector<complexd> u(static_cast<std::size_t>(n_full));
    if (exploit_symmetry) {
        const int sext = n_full / 6;
        for (int j = 0; j < sext; ++j) {
            const double theta = 2.0 * pi * j / n_full;
            double eta, zeta;
            from_hyperspherical(rho, theta, eta, zeta);
            const double val = total_potential_jacobi(eta, zeta, alpha).u_total;
            for (int rep = 0; rep < 6; ++rep) u[static_cast<std::size_t>(j + rep * sext)] = val;
        }
    } else {
        for (int j = 0; j < n_full; ++j) {
            const double theta = 2.0 * pi * j / n_full;
            double eta, zeta;
            from_hyperspherical(rho, theta, eta, zeta);
            u[static_cast<std::size_t>(j)] = total_potential_jacobi(eta, zeta, alpha).u_total;
        }
    }
    return u;
}

void dft_coeffs(std::vector<complexd>& samples, int n_max, std::vector<double>& c_out,
                double& max_imag) {
    const int n = static_cast<int>(samples.size());
    Fft1C fft(n, samples.data());
    fft.forward();
    c_out.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    max_imag = 0.0;
    for (int m = 0; m <= n_max && m < n; ++m) {
        const complexd cm = samples[static_cast<std::size_t>(m)] / static_cast<double>(n);
        c_out[static_cast<std::size_t>(m)] = cm.real();
        max_imag = std::max(max_imag, std::abs(cm.imag()));
    }
}

} // namespace

FourierCoeffs angular_fourier(double rho, double alpha, int n_max, int n_theta,
                              bool exploit_symmetry) {
    if (!(rho > 0.0)) throw ValidationError("angular_fourier: rho must be > 0");
    if (n_theta < 64) n_theta = 64;
    // pair valleys sharpen like 1/rho; keep a fixed number of samples across
    // the potential core so the periodic trapezoid rule stays spectral even
    // on the half grid used for the error estimate
    n_theta = std::max(n_theta, 64 + static_cast<int>(32.0 * rho));
    // and enough bins for the requested coefficient range
    n_theta = std::max(n_theta, 32 + (2 * n_max) / 5);
    const int n_full = 6 * n_theta;
    if (n_max >= n_full / 2)
        throw ValidationError("angular_fourier: n_max too large for the quadrature resolution");

    auto samples = sample_potential_circle(rho, alpha, n_full, exploit_symmetry);

    // keep every second sample for the error estimate before the in-place DFT
    std::vector<complexd> half(static_cast<std::size_t>(n_full / 2));
    for (int j = 0; j < n_full / 2; ++j) half[static_cast<std::size_t>(j)] = samples[static_cast<std::size_t>(2 * j)];

    FourierCoeffs fc;
    dft_coeffs(samples, n_max, fc.c, fc.max_imag);
    std::vector<double> c_half;
    double imag_half = 0.0;
    dft_coeffs(half, std::min(n_max, n_full / 4 - 1), c_half, imag_half);
    for (std::size_t m = 0; m < c_half.size(); ++m)
        fc.quad_error = std::max(fc.quad_error, std::abs(fc.c[m] - c_half[m]));
    return fc;
}

namespace {

MatrixXd build_matrix(const FourierCoeffs& fc, double rho, double lambda,
                      const ChannelBasis& basis) {
    const double irho2 = 1.0 / (rho * rho);
    if (basis.sector == ChannelBasis::Sector::full) {
        const int K = basis.k_max;
        const int dim = 2 * K + 1;
        MatrixXd H(dim, dim);
        for (int a = 0; a < dim; ++a) {
            const int ka = a - K;
            for (int b = 0; b < dim; ++b) {
                const int kb = b - K;
                H(a, b) = lambda * fc.c[static_cast<std::size_t>(std::abs(ka - kb))];
            }
            H(a, a) += (ka * ka - 0.25) * irho2;
        }
        return H;
    }
    // reflection-even k = 0 (mod 6) block in the cos basis
    const int A = basis.k_max / 6;
    MatrixXd H(A + 1, A + 1);
    H(0, 0) = lambda * fc.c[0] - 0.25 * irho2;
    for (int b = 1; b <= A; ++b) {
        H(0, b) = H(b, 0) = lambda * std::sqrt(2.0) * fc.c[static_cast<std::size_t>(6 * b)];
        for (int a = 1; a <= A; ++a)
            H(a, b) = lambda * (fc.c[static_cast<std::size_t>(6 * std::abs(a - b))] +
                                fc.c[static_cast<std::size_t>(6 * (a + b))]);
        H(b, b) += (36.0 * b * b - 0.25) * irho2;
    }
    return H;
}

void validate_basis(const ChannelBasis& basis) {
    if (basis.k_max < 12 || basis.k_max % 6 != 0)
        throw ValidationError("ChannelBasis: k_max must be a multiple of 6 and >= 12");
}

} // namespace

Eigen::MatrixXd fourier_coupling(double rho, double alpha, double lambda,
                                 const ChannelBasis& basis, int n_theta, bool exploit_symmetry) {
    validate_basis(basis);
    const FourierCoeffs fc = angular_fourier(rho, alpha, 2 * basis.k_max, n_theta, exploit_symmetry);
    return build_matrix(fc, rho, lambda, basis);
}

int AdiabaticChannelSet::channel_of(int k) const {
    int best = -1;
    double best_val = 0.0;
    for (std::size_t s = 0; s < labels.size(); ++s) {
        if (labels[s] != k) continue;
        const double v = lambda_curves(lambda_curves.rows() - 1, static_cast<Eigen::Index>(s));
        if (best < 0 || v < best_val) {
            best = static_cast<int>(s);
            best_val = v;
        }
    }
    if (best < 0) throw ValidationError("AdiabaticChannelSet: no channel labelled k = " + std::to_string(k));
    return best;
}

AdiabaticChannelSet adiabatic_curves(const ChannelBasis& basis, const std::vector<double>& rho_grid,
                                     double alpha, double lambda, const AdiabaticOptions& opts) {
    validate_basis(basis);
    if (rho_grid.size() < 2) throw ValidationError("adiabatic_curves: need at least 2 rho points");
    for (std::size_t i = 1; i < rho_grid.size(); ++i)
        if (!(rho_grid[i] > rho_grid[i - 1] && rho_grid[i - 1] > 0.0))
            throw ValidationError("adiabatic_curves: rho grid must be positive and increasing");

    const int n_rho = static_cast<int>(rho_grid.size());

    AdiabaticChannelSet set;
    set.rho = rho_grid;
    set.alpha = alpha;
    set.lambda = lambda;
    set.k_max = basis.k_max;
    set.sector = basis.sector;

    MatrixXd prev_vecs; // tracked eigenvectors, column per channel
    std::vector<int> order;
    int dim = 0;

    std::vector<MatrixXd> tracked_vecs(static_cast<std::size_t>(n_rho));

    for (int ir = 0; ir < n_rho; ++ir) {
        const double rho = rho_grid[static_cast<std::size_t>(ir)];
        const FourierCoeffs fc = angular_fourier(rho, alpha, 2 * basis.k_max, opts.n_theta,
                                                 opts.exploit_symmetry);
        set.max_quad_error = std::max(set.max_quad_error, fc.quad_error);
        if (fc.quad_error > opts.quad_error_tol * std::max(1.0, std::abs(fc.c[0])))
            throw SolverError("adiabatic_curves: angular quadrature error " +
                              std::to_string(fc.quad_error) + " above tolerance at rho = " +
                              std::to_string(rho));

        const MatrixXd H = build_matrix(fc, rho, lambda, basis);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
        if (es.info() != Eigen::Success)
            throw SolverError("adiabatic_curves: diagonalization failed at rho = " + std::to_string(rho));

        if (ir == 0) {
            dim = static_cast<int>(H.rows());
            set.lambda_curves.resize(n_rho, dim);
            prev_vecs = es.eigenvectors();
            for (int s = 0; s < dim; ++s) set.lambda_curves(0, s) = es.eigenvalues()(s);
            // label channels here: at the smallest rho the centrifugal term
            // dominates and every eigenvector is a clean partial wave
            set.labels.assign(static_cast<std::size_t>(dim), 0);
            for (int s = 0; s < dim; ++s) {
                Eigen::Index imax;
                prev_vecs.col(s).cwiseAbs().maxCoeff(&imax);
                if (basis.sector == ChannelBasis::Sector::full)
                    set.labels[static_cast<std::size_t>(s)] = std::abs(static_cast<int>(imax) - basis.k_max);
                else
                    set.labels[static_cast<std::size_t>(s)] = 6 * static_cast<int>(imax);
            }
        } else {
            // assign current eigenvectors to tracked channels by max overlap
            const MatrixXd O = (prev_vecs.transpose() * es.eigenvectors()).cwiseAbs();
            std::vector<int> assign(static_cast<std::size_t>(dim), -1);
            std::vector<char> used_row(static_cast<std::size_t>(dim), 0), used_col(static_cast<std::size_t>(dim), 0);
            struct Entry { double v; int r, c; };
            std::vector<Entry> entries;
            entries.reserve(static_cast<std::size_t>(dim) * dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) entries.push_back({O(r, c), r, c});
            std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.v > b.v; });
            int assigned = 0;
            for (const Entry& e : entries) {
                if (assigned == dim) break;
                if (used_row[static_cast<std::size_t>(e.r)] || used_col[static_cast<std::size_t>(e.c)]) continue;
                assign[static_cast<std::size_t>(e.r)] = e.c;
                used_row[static_cast<std::size_t>(e.r)] = used_col[static_cast<std::size_t>(e.c)] = 1;
                ++assigned;
            }
            MatrixXd cur(dim, dim);
            for (int s = 0; s < dim; ++s) {
                const int c = assign[static_cast<std::size_t>(s)];
                set.lambda_curves(ir, s) = es.eigenvalues()(c);
                cur.col(s) = es.eigenvectors().col(c);
                if (cur.col(s).dot(prev_vecs.col(s)) < 0.0) cur.col(s) = -cur.col(s);
            }
            prev_vecs = std::move(cur);
        }
        if (opts.diagonal_correction) tracked_vecs[static_cast<std::size_t>(ir)] = prev_vecs;
    }

    // Delta_k = Lambda_k minus the channel's own centrifugal term
    set.delta_curves.resize(n_rho, dim);
    for (int s = 0; s < dim; ++s) {
        const double k2 = static_cast<double>(set.labels[static_cast<std::size_t>(s)]) *
                          set.labels[static_cast<std::size_t>(s)];
        for (int ir = 0; ir < n_rho; ++ir) {
            const double rho = rho_grid[static_cast<std::size_t>(ir)];
            set.delta_curves(ir, s) = set.lambda_curves(ir, s) - (k2 - 0.25) / (rho * rho);
        }
    }

    if (opts.diagonal_correction) {
        set.delta_corrected = set.delta_curves;
        for (int ir = 0; ir + 1 < n_rho; ++ir) {
            const double drho = rho_grid[static_cast<std::size_t>(ir) + 1] - rho_grid[static_cast<std::size_t>(ir)];
            for (int s = 0; s < dim; ++s) {
                const double w =
                    (tracked_vecs[static_cast<std::size_t>(ir) + 1].col(s) - tracked_vecs[static_cast<std::size_t>(ir)].col(s))
                        .squaredNorm() /
                    (drho * drho);
                set.delta_corrected(ir, s) += w;
            }
        }
        for (int s = 0; s < dim; ++s)
            set.delta_corrected(n_rho - 1, s) = set.delta_corrected(n_rho - 2, s);
    }
    return set;
}

GroundChannelCurve ground_channel(const std::vector<double>& rho_grid, double alpha, double lambda,
                                  const GroundChannelOptions& opts) {
    if (rho_grid.size() < 2) throw ValidationError("ground_channel: need at least 2 rho points");
    const int n_rho = static_cast<int>(rho_grid.size());

    GroundChannelCurve out;
    out.rho = rho_grid;
    out.lambda0.resize(rho_grid.size());
    out.delta0.resize(rho_grid.size());
    out.kmax_used.resize(rho_grid.size());
    if (opts.diagonal_correction) out.delta0_corrected.resize(rho_grid.size());

    Eigen::VectorXd prev_vec;
    double prev_rho = 0.0;

    for (int ir = 0; ir < n_rho; ++ir) {
        const double rho = rho_grid[static_cast<std::size_t>(ir)];
        int kmax = static_cast<int>(std::ceil((opts.k_floor + opts.k_scale * std::sqrt(2.0) * rho) / 6.0)) * 6;
        kmax = std::min(kmax, opts.k_cap);
        out.kmax_used[static_cast<std::size_t>(ir)] = kmax;

        const FourierCoeffs fc = angular_fourier(rho, alpha, 2 * kmax, opts.n_theta, true);
        out.max_quad_error = std::max(out.max_quad_error, fc.quad_error);
        if (fc.quad_error > opts.quad_error_tol * std::max(1.0, std::abs(fc.c[0])))
            throw SolverError("ground_channel: angular quadrature error above tolerance at rho = " +
                              std::to_string(rho));

        const ChannelBasis basis{kmax, ChannelBasis::Sector::bosonic_even};
        const MatrixXd H = build_matrix(fc, rho, lambda, basis);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
        if (es.info() != Eigen::Success)
            throw SolverError("ground_channel: diagonalization failed at rho = " + std::to_string(rho));

        out.lambda0[static_cast<std::size_t>(ir)] = es.eigenvalues()(0);
        out.delta0[static_cast<std::size_t>(ir)] = es.eigenvalues()(0) + 0.25 / (rho * rho);

        if (opts.diagonal_correction) {
            Eigen::VectorXd v = es.eigenvectors().col(0);
            if (prev_vec.size() > 0) {
                // the cosine basis is nested: compare on the common prefix and
                // account for the weight the smaller expansion lacks
                const Eigen::Index m = std::min(prev_vec.size(), v.size());
                Eigen::VectorXd a = Eigen::VectorXd::Zero(std::max(prev_vec.size(), v.size()));
                a.head(prev_vec.size()) = prev_vec;
                Eigen::VectorXd b = Eigen::VectorXd::Zero(a.size());
                b.head(v.size()) = v;
                if (a.head(m).dot(b.head(m)) < 0.0) b = -b;
                const double drho = rho - prev_rho;
                out.delta0_corrected[static_cast<std::size_t>(ir)] =
                    out.delta0[static_cast<std::size_t>(ir)] + (a - b).squaredNorm() / (drho * drho);
            }
            prev_vec = es.eigenvectors().col(0);
            prev_rho = rho;
        }
    }
    if (opts.diagonal_correction && n_rho >= 2)
        out.delta0_corrected[0] = out.delta0_corrected[1] - out.delta0[1] + out.delta0[0];
    return out;
}

namespace {

// Numerov residual of the matched outward/inward solution at index m.
double numerov_mismatch(const std::vector<double>& f, double h, int m, int k) {
    const int n = static_cast<int>(f.size());
    const double h2 = h * h;
    auto w_of = [&](double fi) { return 1.0 - h2 * fi / 12.0; };

    // outward; the grid is half-offset, rho_i = (i + 1/2) h
    std::vector<double> yo(static_cast<std::size_t>(m) + 2, 0.0);
    yo[0] = std::pow(0.5 * h, std::abs(k) + 0.5);
    yo[1] = std::pow(1.5 * h, std::abs(k) + 0.5);
    for (int i = 1; i <= m; ++i) {
        const double wi = w_of(f[static_cast<std::size_t>(i)]) * yo[static_cast<std::size_t>(i)];
        const double wim = w_of(f[static_cast<std::size_t>(i) - 1]) * yo[static_cast<std::size_t>(i) - 1];
        const double wip = 2.0 * wi - wim + h2 * f[static_cast<std::size_t>(i)] * yo[static_cast<std::size_t>(i)];
        yo[static_cast<std::size_t>(i) + 1] = wip / w_of(f[static_cast<std::size_t>(i) + 1]);
        if (std::abs(yo[static_cast<std::size_t>(i) + 1]) > 1e250)
            for (int j = 0; j <= i + 1; ++j) yo[static_cast<std::size_t>(j)] *= 1e-250;
    }
    // inward
    std::vector<double> yi(static_cast<std::size_t>(n), 0.0);
    const double kap = std::sqrt(std::max(f[static_cast<std::size_t>(n) - 1], 1e-12));
    yi[static_cast<std::size_t>(n) - 1] = 1e-18;
    yi[static_cast<std::size_t>(n) - 2] = 1e-18 * std::exp(kap * h);
    for (int i = n - 2; i > m - 1 && i > 0; --i) {
        const double wi = w_of(f[static_cast<std::size_t>(i)]) * yi[static_cast<std::size_t>(i)];
        const double wip = w_of(f[static_cast<std::size_t>(i) + 1]) * yi[static_cast<std::size_t>(i) + 1];
        const double wim = 2.0 * wi - wip + h2 * f[static_cast<std::size_t>(i)] * yi[static_cast<std::size_t>(i)];
        yi[static_cast<std::size_t>(i) - 1] = wim / w_of(f[static_cast<std::size_t>(i) - 1]);
        if (std::abs(yi[static_cast<std::size_t>(i) - 1]) > 1e250)
            for (int j = n - 1; j >= i - 1; --j) yi[static_cast<std::size_t>(j)] *= 1e-250;
    }
    const double so = yo[static_cast<std::size_t>(m)];
    const double si = yi[static_cast<std::size_t>(m)];
    if (so == 0.0 || si == 0.0) return 1e300;
    const double om = yo[static_cast<std::size_t>(m) - 1] / so;
    const double ip = yi[static_cast<std::size_t>(m) + 1] / si;
    return w_of(f[static_cast<std::size_t>(m) - 1]) * om + w_of(f[static_cast<std::size_t>(m) + 1]) * ip -
           (2.0 + 10.0 * h2 * f[static_cast<std::size_t>(m)] / 12.0);
}

} // namespace

namespace {

RadialResult solve_radial_core(int k, const CubicSpline& spl, double curve_rho_max,
                               const RadialOptions& opts);

} // namespace

RadialResult solve_radial(int k, const AdiabaticChannelSet& channels, const RadialOptions& opts) {
    const int ch = channels.channel_of(k);
    std::vector<double> delta(channels.rho.size());
    for (std::size_t i = 0; i < channels.rho.size(); ++i)
        delta[i] = channels.delta_curves(static_cast<Eigen::Index>(i), ch);
    return solve_radial_core(k, CubicSpline(channels.rho, delta), channels.rho.back(), opts);
}

RadialResult solve_radial(const GroundChannelCurve& curve, bool use_corrected,
                          const RadialOptions& opts) {
    if (use_corrected && curve.delta0_corrected.empty())
        throw ValidationError("solve_radial: no diagonal-corrected curve available");
    return solve_radial_core(0,
                             CubicSpline(curve.rho, use_corrected ? curve.delta0_corrected : curve.delta0),
                             curve.rho.back(), opts);
}

namespace {

RadialResult solve_radial_core(int k, const CubicSpline& spl, double curve_rho_max,
                               const RadialOptions& opts) {
    // The reduced operator carries the critically singular -1/(4 rho^2); a
    // naive grid on Phi selects the wrong self-adjoint extension at the
    // origin. Substitute Phi = sqrt(rho) u and discretize the regular
    // cylindrical form -(1/rho)(rho u')' + k^2/rho^2 u on a half-offset grid,
    // where the inner flux vanishes identically (Friedrichs extension). The
    // symmetric tridiagonal follows from the similarity u_i -> sqrt(rho_i) u_i.
    const double rho_hi = (opts.rho_hi > 0.0) ? opts.rho_hi : curve_rho_max;
    const double h = opts.h;
    const int n = static_cast<int>(std::floor(rho_hi / h - 0.5));
    if (n < 32) throw ValidationError("solve_radial: radial grid too small");
    const double ih2 = 1.0 / (h * h);
    const double k2 = static_cast<double>(k) * k;

    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rho[static_cast<std::size_t>(i)] = (i + 0.5) * h;

    std::vector<double> d(static_cast<std::size_t>(n)), dfree(static_cast<std::size_t>(n)),
        e(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        const double r = rho[static_cast<std::size_t>(i)];
        const double flux_in = (i == 0) ? 0.0 : (r - 0.5 * h);
        const double flux_out = r + 0.5 * h;
        dfree[static_cast<std::size_t>(i)] = (flux_in + flux_out) * ih2 / r + k2 / (r * r);
        d[static_cast<std::size_t>(i)] = dfree[static_cast<std::size_t>(i)] + spl(r);
        if (i + 1 < n)
            e[static_cast<std::size_t>(i)] =
                -flux_out * ih2 / std::sqrt(r * (r + h));
    }

    RadialResult out;
    out.rho_lo = rho.front();
    out.h = h;
    out.n = n;
    out.threshold = spl(rho_hi);

    const TridiagEigen free_te = tridiag_lowest(dfree, e, 1, false);
    out.eps_floor = std::max(0.0, -free_te.eigenvalues[0]);

    const TridiagEigen te = tridiag_lowest(d, e, opts.n_states, true);
    out.all_energies = te.eigenvalues;
    const double cut = out.threshold - out.eps_floor - 1e-12;
    for (int s = 0; s < opts.n_states; ++s) {
        if (te.eigenvalues[static_cast<std::size_t>(s)] >= cut) continue;
        out.energies.push_back(te.eigenvalues[static_cast<std::size_t>(s)]);
        // back to Phi = sqrt(rho) u; the similarity already carries sqrt(rho),
        // so the eigenvector components are sqrt(rho_i) u_i up to the measure
        Eigen::VectorXd phi =
            Eigen::Map<const Eigen::VectorXd>(te.eigenvectors[static_cast<std::size_t>(s)].data(), n) /
            std::sqrt(h);
        out.wavefunctions.push_back(std::move(phi));
    }

    if (opts.numerov_check && !out.energies.empty()) {
        // bracket around the finite-difference ground energy, then bisect the
        // Numerov matching residual
        // the shooting works on the reduced Phi-form; its rho^(|k|+1/2) start
        // imposes the physical origin behavior explicitly
        std::vector<double> veff(static_cast<std::size_t>(n));
        int m = 0;
        for (int i = 0; i < n; ++i) {
            const double r = rho[static_cast<std::size_t>(i)];
            veff[static_cast<std::size_t>(i)] = (k2 - 0.25) / (r * r) + spl(r);
            if (veff[static_cast<std::size_t>(i)] < veff[static_cast<std::size_t>(m)]) m = i;
        }
        m = std::max(2, std::min(m, n - 3));
        auto mismatch = [&](double E) {
            std::vector<double> f(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = veff[static_cast<std::size_t>(i)] - E;
            return numerov_mismatch(f, h, m, k);
        };
        const double E0 = out.energies[0];
        double w = std::max(2e-3 * std::abs(E0), 1e-10);
        double a = E0 - w, b = std::min(E0 + w, out.threshold - 1e-14);
        double fa = mismatch(a), fb = mismatch(b);
        for (int widen = 0; widen < 8 && fa * fb > 0.0; ++widen) {
            w *= 3.0;
            a = E0 - w;
            b = std::min(E0 + w, out.threshold - 1e-14);
            fa = mismatch(a);
            fb = mismatch(b);
        }
        if (fa * fb <= 0.0) {
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = mismatch(mid);
                if (fa * fm <= 0.0) {
                    b = mid;
                    fb = fm;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            out.numerov_energy = 0.5 * (a + b);
            out.has_numerov = true;
        }
    }
    return out;
}

} // namespace

AdiabaticGround adiabatic_ground(double alpha, double lambda, AdiabaticGroundOptions opts) {
    const double e2_delta = std::pow(2.0 * pi * lambda / 3.0, 2) / 8.0;
    const double excess = (alpha > 0.0) ? 0.6 : 3.0;
    const double kappa_v = std::sqrt(std::max(excess * e2_delta, 1e-12));

    if (opts.rho_hi <= 0.0) opts.rho_hi = std::min(14.0 / kappa_v + 40.0, 900.0);
    if (opts.radial.h <= 0.0) opts.radial.h = 0.05;
    opts.radial.h = std::min(opts.radial.h, opts.rho_hi / 3000.0);
    if (opts.radial.h < 1e-4) opts.radial.h = 1e-4;
    opts.channel.diagonal_correction = opts.channel.diagonal_correction || opts.use_corrected;

    const auto rho_grid = geometric_grid(opts.rho_lo, opts.rho_hi, opts.n_rho);

    AdiabaticGround g;
    g.curve = ground_channel(rho_grid, alpha, lambda, opts.channel);
    g.radial = solve_radial(g.curve, opts.use_corrected, opts.radial);
    g.bound = !g.radial.energies.empty();
    g.energy = g.bound ? g.radial.energies[0] : 0.0;
    return g;
}

} // namespace rydpol
