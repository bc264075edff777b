#include "rydpol/eigensolve.hpp"
#include "rydpol/common.hpp"
#include "rydpol/fft.hpp"

#include <cmath>
#include <vector>

namespace rydpol {

struct Hamiltonian2D::Impl {
    Grid2D grid;
    Field potential;
    Kinetic kinetic;

    // spectral scratch
    mutable CField work;
    mutable std::unique_ptr<Fft2C> fft;
    Field k2; // kx^2 + ky^2 on the periodic lattice

    Impl(Grid2D g, Field v, Kinetic k) : grid(std::move(g)), potential(std::move(v)), kinetic(k) {
        if (potential.rows() != grid.n || potential.cols() != grid.n)
            throw ValidationError("Hamiltonian2D: potential shape does not match grid");
        if (kinetic == Kinetic::spectral_periodic) {
            const int n = grid.n;
            const double period = grid.h * n;
            std::vector<double> k1(static_cast<std::size_t>(n));
            for (int m = 0; m < n; ++m) {
                const int mm = (m <= n / 2) ? m : m - n;
                k1[static_cast<std::size_t>(m)] = 2.0 * pi * mm / period;
            }
            k2.resize(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    k2(i, j) = k1[static_cast<std::size_t>(i)] * k1[static_cast<std::size_t>(i)] +
                               k1[static_cast<std::size_t>(j)] * k1[static_cast<std::size_t>(j)];
            work.resize(n, n);
            fft = std::make_unique<Fft2C>(n, n, work.data());
        }
    }
};

Hamiltonian2D::Hamiltonian2D(Grid2D grid, Field potential, Kinetic kinetic)
    : impl_(std::make_unique<Impl>(std::move(grid), std::move(potential), kinetic)) {}

Hamiltonian2D::~Hamiltonian2D() = default;
Hamiltonian2D::Hamiltonian2D(Hamiltonian2D&&) noexcept = default;

long Hamiltonian2D::size() const { return static_cast<long>(impl_->grid.n) * impl_->grid.n; }

double Hamiltonian2D::norm_estimate() const {
    const double vmax = impl_->potential.abs().maxCoeff();
    if (impl_->kinetic == Kinetic::fd5_dirichlet)
        return 8.0 / (impl_->grid.h * impl_->grid.h) + vmax;
    return 2.0 * pi * pi / (impl_->grid.h * impl_->grid.h) + vmax;
}

const Grid2D& Hamiltonian2D::grid() const { return impl_->grid; }
const Field& Hamiltonian2D::potential() const { return impl_->potential; }
Kinetic Hamiltonian2D::kinetic() const { return impl_->kinetic; }

void Hamiltonian2D::apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                          Eigen::Ref<Eigen::VectorXd> y) const {
    const int n = impl_->grid.n;
    const long ntot = static_cast<long>(n) * n;
    if (x.size() != ntot || y.size() != ntot) throw ValidationError("Hamiltonian2D: bad vector size");

    const double* v = impl_->potential.data();
    const double* xs = x.data();
    double* ys = y.data();

    if (impl_->kinetic == Kinetic::fd5_dirichlet) {
        const double ih2 = 1.0 / (impl_->grid.h * impl_->grid.h);
        for (int i = 0; i < n; ++i) {
            const long row = static_cast<long>(i) * n;
            for (int j = 0; j < n; ++j) {
                const long a = row + j;
                double acc = 4.0 * xs[a];
                if (i > 0) acc -= xs[a - n];
                if (i + 1 < n) acc -= xs[a + n];
                if (j > 0) acc -= xs[a - 1];
                if (j + 1 < n) acc -= xs[a + 1];
                ys[a] = acc * ih2 + v[a] * xs[a];
            }
        }
    } else {
        complexd* w = impl_->work.data();
        for (long a = 0; a < ntot; ++a) w[a] = xs[a];
        impl_->fft->forward();
        const double* kk = impl_->k2.data();
        for (long a = 0; a < ntot; ++a) w[a] *= kk[a];
        impl_->fft->backward();
        for (long a = 0; a < ntot; ++a) ys[a] = w[a].real() + v[a] * xs[a];
    }
}

} // namespace rydpol
