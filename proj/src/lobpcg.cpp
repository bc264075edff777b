#include "rydpol/eigensolve.hpp"
#include "rydpol/common.hpp"
#include "rydpol/fft.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

namespace rydpol {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Shifted inverse of the kinetic operator, applied exactly through the
// diagonalizing transform (DST-I for the Dirichlet stencil, DFT for the
// periodic spectral operator). A mediocre shift only costs iterations.
class KineticPreconditioner {
public:
    KineticPreconditioner(const Grid2D& grid, Kinetic kinetic, double shift)
        : n_(grid.n), kinetic_(kinetic), shift_(shift) {
        const int n = n_;
        if (kinetic_ == Kinetic::fd5_dirichlet) {
            real_.resize(n, n);
            dst_ = std::make_unique<Dst2R>(n, n, real_.data());
            mu_.resize(static_cast<std::size_t>(n));
            const double ih2 = 1.0 / (grid.h * grid.h);
            for (int p = 0; p < n; ++p)
                mu_[static_cast<std::size_t>(p)] = (2.0 - 2.0 * std::cos(pi * (p + 1) / (n + 1))) * ih2;
            dst_norm_ = 1.0 / (4.0 * (n + 1.0) * (n + 1.0));
        } else {
            cplx_.resize(n, n);
            fft_ = std::make_unique<Fft2C>(n, n, cplx_.data());
            mu_.resize(static_cast<std::size_t>(n));
            const double period = grid.h * n;
            for (int m = 0; m < n; ++m) {
                const int mm = (m <= n / 2) ? m : m - n;
                const double k = 2.0 * pi * mm / period;
                mu_[static_cast<std::size_t>(m)] = k * k;
            }
        }
    }

    void apply(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> y) {
        const int n = n_;
        const long ntot = static_cast<long>(n) * n;
        if (kinetic_ == Kinetic::fd5_dirichlet) {
            double* w = real_.data();
            for (long a = 0; a < ntot; ++a) w[a] = x[a];
            dst_->execute();
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    real_(p, q) /= mu_[static_cast<std::size_t>(p)] + mu_[static_cast<std::size_t>(q)] + shift_;
            dst_->execute();
            for (long a = 0; a < ntot; ++a) y[a] = w[a] * dst_norm_;
        } else {
            complexd* w = cplx_.data();
            for (long a = 0; a < ntot; ++a) w[a] = x[a];
            fft_->forward();
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    cplx_(p, q) /= mu_[static_cast<std::size_t>(p)] + mu_[static_cast<std::size_t>(q)] + shift_;
            fft_->backward();
            for (long a = 0; a < ntot; ++a) y[a] = w[a].real();
        }
    }

private:
    int n_;
    Kinetic kinetic_;
    double shift_;
    Field real_;
    CField cplx_;
    std::unique_ptr<Dst2R> dst_;
    std::unique_ptr<Fft2C> fft_;
    std::vector<double> mu_;
    double dst_norm_ = 1.0;
};

void apply_block(const Hamiltonian2D& H, const MatrixXd& X, MatrixXd& HX) {
    HX.resize(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        VectorXd y(X.rows());
        H.apply(X.col(c), y);
        HX.col(c) = y;
    }
}

// Orthonormalize the columns of S through the eigendecomposition of the Gram
// matrix, dropping near-dependent directions. The generous cut matters: with
// a good preconditioner the residual directions collapse onto the iterate
// block and keeping them amplifies round-off into spurious Ritz values.
MatrixXd gram_orthonormalize(const MatrixXd& S) {
    MatrixXd G = S.transpose() * S;
    G = 0.5 * (G + G.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
    const VectorXd& ev = es.eigenvalues();
    const double cut = std::max(ev.maxCoeff(), 1e-300) * 1e-10;
    int keep = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cut) ++keep;
    MatrixXd C(S.cols(), keep);
    int c = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cut) C.col(c++) = es.eigenvectors().col(i) / std::sqrt(ev(i));
    return C;
}

} // namespace

LobpcgResult lobpcg(const Hamiltonian2D& H, const LobpcgOptions& opts) {
    const long n = H.size();
    const int m = opts.n_states;
    const int b = m + std::max(0, opts.guard_vectors);
    if (m < 1 || b > 12 || n < 4 * b) throw ValidationError("lobpcg: bad block configuration");

    double shift = opts.precond_shift;
    if (shift < 0.0) {
        // keep the shift at the scale of the lowest kinetic excitation: the
        // periodic operator has a zero mode and a near-zero shift would turn
        // the preconditioner into a rank-one amplifier of it
        const double vmax = H.potential().abs().maxCoeff();
        const double k1 = 2.0 * pi / (H.grid().h * H.grid().n);
        shift = std::max({0.05 * vmax, k1 * k1, 1e-10 * H.norm_estimate()});
    }
    KineticPreconditioner T(H.grid(), H.kinetic(), shift);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    MatrixXd X(n, b);
    for (long i = 0; i < n; ++i)
        for (int c = 0; c < b; ++c) X(i, c) = uni(rng);
    X = X * gram_orthonormalize(X);

    MatrixXd HX;
    apply_block(H, X, HX);

    MatrixXd P, HP;
    bool have_p = false;

    LobpcgResult out;
    VectorXd theta(b);
    double best_worst = std::numeric_limits<double>::max();
    int since_improved = 0;

    for (int it = 1; it <= opts.max_iter; ++it) {
        // Rayleigh-Ritz inside the current block
        MatrixXd A = X.transpose() * HX;
        A = 0.5 * (A + A.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
        theta = es.eigenvalues();
        X = (X * es.eigenvectors()).eval();
        HX = (HX * es.eigenvectors()).eval();

        MatrixXd R = HX - X * theta.asDiagonal();
        out.residuals.assign(static_cast<std::size_t>(m), 0.0);
        double worst = 0.0;
        for (int c = 0; c < m; ++c) {
            out.residuals[static_cast<std::size_t>(c)] = R.col(c).norm();
            worst = std::max(worst, out.residuals[static_cast<std::size_t>(c)]);
        }
        out.iterations = it;
        if (worst < opts.tol_abs) {
            out.converged = true;
            break;
        }
        if (worst < 0.98 * best_worst) {
            best_worst = worst;
            since_improved = 0;
        } else if (++since_improved > 40) {
            break; // stalled at the round-off floor
        }

        MatrixXd W(n, b);
        for (int c = 0; c < b; ++c) {
            VectorXd w(n);
            T.apply(R.col(c), w);
            W.col(c) = w / std::max(w.norm(), 1e-300);
        }
        MatrixXd HW;
        apply_block(H, W, HW);

        const int s = b + b + (have_p ? b : 0);
        MatrixXd S(n, s), HS(n, s);
        S.leftCols(b) = X;
        S.middleCols(b, b) = W;
        HS.leftCols(b) = HX;
        HS.middleCols(b, b) = HW;
        if (have_p) {
            S.rightCols(b) = P;
            HS.rightCols(b) = HP;
        }

        MatrixXd C = gram_orthonormalize(S);
        MatrixXd Q = S * C;
        MatrixXd HQ = HS * C;
        // second pass cleans the O(sqrt(cut)) residue of the first
        const MatrixXd C2 = gram_orthonormalize(Q);
        if (C2.cols() != Q.cols() || (C2 - MatrixXd::Identity(C2.rows(), C2.cols())).norm() > 1e-12) {
            Q = (Q * C2).eval();
            HQ = (HQ * C2).eval();
        }

        MatrixXd Ar = Q.transpose() * HQ;
        Ar = 0.5 * (Ar + Ar.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXd> esr(Ar);
        const MatrixXd Y = esr.eigenvectors().leftCols(b);

        MatrixXd Xn = Q * Y;
        MatrixXd HXn = HQ * Y;

        // implicit conjugate-direction block: new iterate minus its X component.
        // A collapsing column means HP = H P only up to cancellation noise, and
        // dividing by its norm would amplify that into the Ritz problem; drop
        // such columns instead (zero columns fall out of the Gram cut).
        const MatrixXd Z = X.transpose() * Xn;
        P = Xn - X * Z;
        HP = HXn - HX * Z;
        for (int c = 0; c < b; ++c) {
            const double nc = P.col(c).norm();
            if (nc > 1e-8) {
                P.col(c) /= nc;
                HP.col(c) /= nc;
            } else {
                P.col(c).setZero();
                HP.col(c).setZero();
            }
        }
        have_p = true;
        X = std::move(Xn);
        HX = std::move(HXn);
    }

    // final Rayleigh-Ritz and residuals
    MatrixXd A = X.transpose() * HX;
    A = 0.5 * (A + A.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
    X = (X * es.eigenvectors()).eval();
    HX = (HX * es.eigenvectors()).eval();
    theta = es.eigenvalues();

    out.eigenvalues.assign(theta.data(), theta.data() + m);
    out.vectors = X.leftCols(m);
    out.residuals.assign(static_cast<std::size_t>(m), 0.0);
    for (int c = 0; c < m; ++c)
        out.residuals[static_cast<std::size_t>(c)] = (HX.col(c) - theta(c) * X.col(c)).norm();
    for (int c = 0; c < m; ++c) {
        // fix overall sign: make the largest-magnitude entry positive
        Eigen::Index imax;
        out.vectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (out.vectors(imax, c) < 0.0) out.vectors.col(c) = -out.vectors.col(c);
    }
    return out;
}

} // namespace rydpol
