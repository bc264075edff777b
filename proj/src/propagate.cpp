#include "rydpol/propagate.hpp"
#include "rydpol/common.hpp"
#include "rydpol/fft.hpp"

#include <algorithm>
#include <cmath>

namespace rydpol {

double WaveField::norm() const { return std::sqrt(amp.abs2().sum()) * grid.h; }
double WaveLine::norm() const { return std::sqrt(amp.abs2().sum() * grid.h); }

WaveField uniform_field(const Grid2D& grid) {
    WaveField f;
    f.grid = grid;
    f.amp = CField::Constant(grid.n, grid.n, complexd(1.0, 0.0));
    return f;
}

WaveLine uniform_line(const Grid1D& grid) {
    WaveLine l;
    l.grid = grid;
    l.amp = Eigen::ArrayXcd::Constant(grid.n, complexd(1.0, 0.0));
    return l;
}

namespace {

std::vector<double> periodic_k(int n, double h) {
    std::vector<double> k(static_cast<std::size_t>(n));
    const double period = h * n;
    for (int m = 0; m < n; ++m) {
        const int mm = (m <= n / 2) ? m : m - n;
        k[static_cast<std::size_t>(m)] = 2.0 * pi * mm / period;
    }
    return k;
}

double edge_mask_1d(double x, double box_l, double width) {
    const double d = box_l - std::abs(x);
    if (d >= width) return 1.0;
    if (d <= 0.0) return 0.0;
    const double s = std::sin(0.5 * pi * d / width);
    return s * s;
}

} // namespace

struct Propagator2D::Impl {
    Grid2D grid;
    Field potential;
    EvolveOptions opts;
    CField work, expV_half, expK;
    Field mask;
    std::unique_ptr<Fft2C> fft;
    double table_dtau = -1.0;

    Impl(const Grid2D& g, Field v, const EvolveOptions& o) : grid(g), potential(std::move(v)), opts(o) {
        const int n = grid.n;
        if (potential.rows() != n || potential.cols() != n)
            throw ValidationError("Propagator2D: potential shape does not match grid");
        work.resize(n, n);
        expV_half.resize(n, n);
        expK.resize(n, n);
        fft = std::make_unique<Fft2C>(n, n, work.data());
        if (opts.absorber) {
            mask.resize(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    mask(i, j) = edge_mask_1d(grid.x(i), grid.box_l, opts.absorber_width) *
                                 edge_mask_1d(grid.x(j), grid.box_l, opts.absorber_width);
        }
    }

    void build_tables(double dt) {
        if (dt == table_dtau) return;
        const int n = grid.n;
        const auto k = periodic_k(n, grid.h);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                expV_half(i, j) = std::exp(complexd(0.0, -0.5 * dt * potential(i, j)));
                const double k2 = k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)] +
                                  k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
                expK(i, j) = std::exp(complexd(0.0, -dt * k2));
            }
        table_dtau = dt;
    }
};

Propagator2D::Propagator2D(const Grid2D& grid, Field potential, const EvolveOptions& opts)
    : impl_(std::make_unique<Impl>(grid, std::move(potential), opts)) {}

Propagator2D::~Propagator2D() = default;

EvolveStats Propagator2D::evolve(WaveField& field, double tau) {
    EvolveStats stats;
    if (tau < 0.0) throw ValidationError("evolve: tau must be >= 0");
    const int n = impl_->grid.n;
    if (field.amp.rows() != n || field.amp.cols() != n)
        throw ValidationError("evolve: field does not match the propagator grid");
    if (tau == 0.0) {
        stats.dtau = impl_->opts.dtau;
        stats.edge_amplitude = field.amp.abs().row(0).maxCoeff();
        return stats;
    }

    const int steps = std::max(1, static_cast<int>(std::ceil(tau / impl_->opts.dtau - 1e-12)));
    const double dt = tau / steps;
    impl_->build_tables(dt);
    stats.dtau = dt;
    stats.steps = steps;

    CField& w = impl_->work;
    w = field.amp;
    const double norm0 = std::sqrt(w.abs2().sum());
    double norm_prev = norm0;

    for (int s = 0; s < steps; ++s) {
        w *= impl_->expV_half;
        impl_->fft->forward();
        w *= impl_->expK;
        impl_->fft->backward();
        w *= impl_->expV_half;
        const double norm_new = std::sqrt(w.abs2().sum());
        const double drift = std::abs(norm_new / norm_prev - 1.0);
        stats.max_step_norm_drift = std::max(stats.max_step_norm_drift, drift);
        if (drift > impl_->opts.unitarity_budget)
            throw SolverError("evolve: per-step unitarity drift " + std::to_string(drift) +
                              " exceeds the budget; reduce dtau");
        if (impl_->opts.absorber) w *= impl_->mask;
        norm_prev = std::sqrt(w.abs2().sum());
    }

    field.amp = w;
    field.tau += tau;
    stats.absorbed_fraction = 1.0 - (norm_prev * norm_prev) / (norm0 * norm0);
    double edge = 0.0;
    for (int i = 0; i < n; ++i)
        edge = std::max({edge, std::abs(field.amp(0, i)), std::abs(field.amp(n - 1, i)),
                         std::abs(field.amp(i, 0)), std::abs(field.amp(i, n - 1))});
    stats.edge_amplitude = edge;
    return stats;
}

struct Propagator1D::Impl {
    Grid1D grid;
    Eigen::ArrayXd potential;
    EvolveOptions opts;
    Eigen::ArrayXcd work, expV_half, expK;
    Eigen::ArrayXd mask;
    std::unique_ptr<Fft1C> fft;
    double table_dtau = -1.0;

    Impl(const Grid1D& g, Eigen::ArrayXd v, const EvolveOptions& o)
        : grid(g), potential(std::move(v)), opts(o) {
        const int n = grid.n;
        if (potential.size() != n) throw ValidationError("Propagator1D: potential size mismatch");
        work.resize(n);
        expV_half.resize(n);
        expK.resize(n);
        fft = std::make_unique<Fft1C>(n, work.data());
        if (opts.absorber) {
            mask.resize(n);
            for (int i = 0; i < n; ++i)
                mask(i) = edge_mask_1d(grid.x(i), grid.box_l, opts.absorber_width);
        }
    }

    void build_tables(double dt) {
        if (dt == table_dtau) return;
        const int n = grid.n;
        const auto k = periodic_k(n, grid.h);
        for (int i = 0; i < n; ++i) {
            expV_half(i) = std::exp(complexd(0.0, -0.5 * dt * potential(i)));
            const double kk = k[static_cast<std::size_t>(i)];
            expK(i) = std::exp(complexd(0.0, -dt * kk * kk));
        }
        table_dtau = dt;
    }
};

Propagator1D::Propagator1D(const Grid1D& grid, Eigen::ArrayXd potential, const EvolveOptions& opts)
    : impl_(std::make_unique<Impl>(grid, std::move(potential), opts)) {}

Propagator1D::~Propagator1D() = default;

EvolveStats Propagator1D::evolve(WaveLine& line, double tau) {
    EvolveStats stats;
    if (tau < 0.0) throw ValidationError("evolve: tau must be >= 0");
    const int n = impl_->grid.n;
    if (line.amp.size() != n) throw ValidationError("evolve: line does not match the propagator grid");
    if (tau == 0.0) {
        stats.dtau = impl_->opts.dtau;
        stats.edge_amplitude = std::max(std::abs(line.amp(0)), std::abs(line.amp(n - 1)));
        return stats;
    }

    const int steps = std::max(1, static_cast<int>(std::ceil(tau / impl_->opts.dtau - 1e-12)));
    const double dt = tau / steps;
    impl_->build_tables(dt);
    stats.dtau = dt;
    stats.steps = steps;

    Eigen::ArrayXcd& w = impl_->work;
    w = line.amp;
    const double norm0 = std::sqrt(w.abs2().sum());
    double norm_prev = norm0;

    for (int s = 0; s < steps; ++s) {
        w *= impl_->expV_half;
        impl_->fft->forward();
        w *= impl_->expK;
        impl_->fft->backward();
        w *= impl_->expV_half;
        const double norm_new = std::sqrt(w.abs2().sum());
        const double drift = std::abs(norm_new / norm_prev - 1.0);
        stats.max_step_norm_drift = std::max(stats.max_step_norm_drift, drift);
        if (drift > impl_->opts.unitarity_budget)
            throw SolverError("evolve: per-step unitarity drift exceeds the budget; reduce dtau");
        if (impl_->opts.absorber) w *= impl_->mask;
        norm_prev = std::sqrt(w.abs2().sum());
    }

    line.amp = w;
    line.tau += tau;
    stats.absorbed_fraction = 1.0 - (norm_prev * norm_prev) / (norm0 * norm0);
    stats.edge_amplitude = std::max(std::abs(line.amp(0)), std::abs(line.amp(n - 1)));
    return stats;
}

double tau_from_medium(double alpha_kin, double lambda, double r_xi) {
    if (!(alpha_kin > 0.0 && alpha_kin <= 1.0))
        throw ValidationError("tau_from_medium: kinematic alpha must lie in (0, 1]");
    if (!(lambda > 0.0)) throw ValidationError("tau_from_medium: lambda must be > 0");
    if (r_xi < 0.0) throw ValidationError("tau_from_medium: medium length must be >= 0");
    const double kappa_xi = std::sqrt(alpha_kin * lambda);
    return 2.0 * alpha_kin * alpha_kin * r_xi / kappa_xi;
}

EigenphaseCheck eigenphase_check(const Grid2D& grid, const Field& potential,
                                 const Eigen::VectorXd& psi, double energy, double tau,
                                 double dtau) {
    const int n = grid.n;
    if (psi.size() != static_cast<long>(n) * n)
        throw ValidationError("eigenphase_check: state size mismatch");

    WaveField f;
    f.grid = grid;
    f.amp.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.amp(i, j) = psi(static_cast<long>(i) * n + j);

    EvolveOptions opts;
    opts.dtau = dtau;
    Propagator2D prop(grid, potential, opts);

    EigenphaseCheck out;
    out.stats = prop.evolve(f, tau);

    complexd overlap(0.0, 0.0);
    double norm_new2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            overlap += psi(static_cast<long>(i) * n + j) * f.amp(i, j);
            norm_new2 += std::norm(f.amp(i, j));
        }
    const double norm0 = psi.norm();
    out.phase_error = std::abs(std::arg(overlap * std::exp(complexd(0.0, energy * tau))));
    out.overlap_deficit = 1.0 - std::abs(overlap) / (norm0 * std::sqrt(norm_new2));
    return out;
}

double choose_dtau(const Grid2D& grid, const Field& potential, const Eigen::VectorXd& psi,
                   double energy, double tau, double target, double dtau0) {
    double dt = dtau0;
    for (int halvings = 0; halvings < 10; ++halvings) {
        const EigenphaseCheck chk = eigenphase_check(grid, potential, psi, energy, tau, dt);
        if (chk.phase_error < target) return dt;
        dt *= 0.5;
    }
    throw SolverError("choose_dtau: eigenphase target not reached by step halving");
}

Field connected_g3(const Field& g3, const Grid2D& grid, const CubicSpline& g2_of_r) {
    const int n = grid.n;
    if (g3.rows() != n || g3.cols() != n) throw ValidationError("connected_g3: shape mismatch");
    const double r_cover = g2_of_r.x_max() * (1.0 + 1e-12);
    Field out(n, n);
    for (int i = 0; i < n; ++i) {
        const double eta = grid.x(i);
        for (int j = 0; j < n; ++j) {
            const PairDistances d = pair_distances_from_jacobi(eta, grid.x(j));
            if (d.r12 > r_cover || d.r13 > r_cover || d.r23 > r_cover)
                throw ValidationError("connected_g3: g2 table does not cover pair distance " +
                                      std::to_string(std::max({d.r12, d.r13, d.r23})));
            out(i, j) = 2.0 + g3(i, j) - g2_of_r(d.r12) - g2_of_r(d.r13) - g2_of_r(d.r23);
        }
    }
    return out;
}

RadialProfile radial_profile(const Field& f, const Grid2D& grid, double rho_max) {
    const int n = grid.n;
    const double h = grid.h;
    const int nb = static_cast<int>(std::floor(rho_max / h)) + 1;
    std::vector<double> sum(static_cast<std::size_t>(nb), 0.0);
    std::vector<long> cnt(static_cast<std::size_t>(nb), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double rho = std::hypot(grid.x(i), grid.x(j));
            const int b = static_cast<int>(std::floor(rho / h));
            if (b < nb) {
                sum[static_cast<std::size_t>(b)] += f(i, j);
                ++cnt[static_cast<std::size_t>(b)];
            }
        }
    RadialProfile p;
    for (int b = 0; b < nb; ++b)
        if (cnt[static_cast<std::size_t>(b)] > 0) {
            p.rho.push_back((b + 0.5) * h);
            p.value.push_back(sum[static_cast<std::size_t>(b)] / cnt[static_cast<std::size_t>(b)]);
        }
    if (p.value.empty()) return p;

    std::size_t ipk = 0;
    for (std::size_t i = 0; i < p.value.size(); ++i)
        if (p.value[i] > p.value[ipk]) ipk = i;
    p.peak = p.value[ipk];
    const double half = 0.5 * p.peak;

    auto cross_out = [&](bool rightward) -> double {
        if (rightward) {
            for (std::size_t i = ipk; i + 1 < p.value.size(); ++i)
                if (p.value[i + 1] < half) {
                    const double t = (p.value[i] - half) / (p.value[i] - p.value[i + 1]);
                    return p.rho[i] + t * (p.rho[i + 1] - p.rho[i]);
                }
            return p.rho.back();
        }
        for (std::size_t i = ipk; i > 0; --i)
            if (p.value[i - 1] < half) {
                const double t = (p.value[i] - half) / (p.value[i] - p.value[i - 1]);
                return p.rho[i] - t * (p.rho[i] - p.rho[i - 1]);
            }
        return -1.0; // stays above half down to the origin
    };

    const double xr = cross_out(true);
    const double xl = cross_out(false);
    p.fwhm = (xl < 0.0) ? 2.0 * xr : (xr - xl);
    return p;
}

namespace {

// Band-limited evaluation of the periodic field at an arbitrary point.
complexd trig_eval(const CField& hat, const Grid2D& grid, double x, double y) {
    const int n = grid.n;
    const double ix = (x + grid.box_l) / grid.h;
    const double iy = (y + grid.box_l) / grid.h;
    Eigen::ArrayXcd ex(n), ey(n);
    for (int m = 0; m < n; ++m) {
        const int mm = (m <= n / 2) ? m : m - n;
        ex(m) = std::exp(complexd(0.0, 2.0 * pi * ix * mm / n));
        ey(m) = std::exp(complexd(0.0, 2.0 * pi * iy * mm / n));
    }
    complexd acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        complexd row(0.0, 0.0);
        for (int j = 0; j < n; ++j) row += hat(i, j) * ey(j);
        acc += row * ex(i);
    }
    return acc / (static_cast<double>(n) * n);
}

double fwhm_on_cut(const Field& f, const Grid2D& grid) {
    const int n = grid.n;
    const int jc = (n - 1) / 2; // zeta = 0 column (n odd)
    int ipk = 0;
    for (int i = 0; i < n; ++i)
        if (f(i, jc) > f(ipk, jc)) ipk = i;
    const double peak = f(ipk, jc);
    const double half = 0.5 * peak;
    double xr = grid.x(n - 1), xl = grid.x(0);
    for (int i = ipk; i + 1 < n; ++i)
        if (f(i + 1, jc) < half) {
            const double t = (f(i, jc) - half) / (f(i, jc) - f(i + 1, jc));
            xr = grid.x(i) + t * grid.h;
            break;
        }
    for (int i = ipk; i > 0; --i)
        if (f(i - 1, jc) < half) {
            const double t = (f(i, jc) - half) / (f(i, jc) - f(i - 1, jc));
            xl = grid.x(i) - t * grid.h;
            break;
        }
    return xr - xl;
}

} // namespace

CorrelationResult correlations_after_medium(double alpha, double lambda, double r_xi,
                                            const CorrelationOptions& opts) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("correlations: alpha must lie in [0, 1]");
    if (!(lambda > 0.0)) throw ValidationError("correlations: lambda must be > 0");
    if (opts.n % 2 == 0) throw ValidationError("correlations: n must be odd (origin on the grid)");
    if (opts.n_1d % 2 == 0) throw ValidationError("correlations: n_1d must be odd");

    CorrelationResult res;
    res.grid = Grid2D::make(opts.box_l, opts.n);
    res.medium_length = r_xi;
    res.tau = tau_from_medium(opts.alpha_kinematic, lambda, r_xi);

    // pair distances reached by the 2D grid must be covered by the 1D run
    const double max_r = (1.0 / std::sqrt(2.0) + std::sqrt(1.5)) * opts.box_l;
    if (std::sqrt(2.0) * opts.box_l_1d < max_r)
        throw ValidationError("correlations: box_l_1d too small to cover the pair distances of "
                              "the 2D grid");

    // three-photon run
    EvolveOptions e2d;
    e2d.dtau = opts.dtau;
    e2d.absorber = opts.absorber_2d;
    e2d.absorber_width = opts.absorber_width;
    Propagator2D prop2(res.grid, hamiltonian_potential(res.grid, alpha, lambda), e2d);
    WaveField psi3 = uniform_field(res.grid);
    res.stats_2d = prop2.evolve(psi3, res.tau);
    if (!opts.absorber_2d && std::abs(res.stats_2d.edge_amplitude - 1.0) > 0.05)
        throw SolverError("correlations: scattered waves reached the box edge; enlarge the box "
                          "or enable the absorber");

    res.g3 = psi3.amp.abs2();

    // two-photon run, same tau convention
    const Grid1D grid1 = Grid1D::make(opts.box_l_1d, opts.n_1d);
    Eigen::ArrayXd v1(opts.n_1d);
    for (int i = 0; i < opts.n_1d; ++i)
        v1(i) = lambda * pair_potential(std::sqrt(2.0) * std::abs(grid1.x(i)));
    EvolveOptions e1d;
    e1d.dtau = opts.dtau;
    Propagator1D prop1(grid1, v1, e1d);
    WaveLine psi2 = uniform_line(grid1);
    res.stats_1d = prop1.evolve(psi2, res.tau);
    if (std::abs(res.stats_1d.edge_amplitude - 1.0) > 0.05)
        throw SolverError("correlations: two-photon waves reached the 1D box edge; enlarge "
                          "box_l_1d");

    const int c = (opts.n_1d - 1) / 2;
    for (int k = c; k < opts.n_1d; ++k) {
        const double r = std::sqrt(2.0) * grid1.x(k);
        const double val = 0.5 * (std::norm(psi2.amp(k)) + std::norm(psi2.amp(opts.n_1d - 1 - k)));
        res.r_grid.push_back(r);
        res.g2.push_back(val);
    }
    CubicSpline g2spl(res.r_grid, res.g2);

    res.g3_connected = connected_g3(res.g3, res.grid, g2spl);

    // peak metrics and the far-field bounds
    res.annulus_lo = 15.0;
    res.annulus_hi = opts.absorber_2d ? (opts.box_l - opts.absorber_width - 2.0) : 0.9 * opts.box_l;
    const int n = opts.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double rho = std::hypot(res.grid.x(i), res.grid.x(j));
            if (rho <= res.annulus_lo) {
                res.peak = std::max(res.peak, res.g3_connected(i, j));
            } else if (rho <= res.annulus_hi) {
                const double a = std::abs(res.g3_connected(i, j));
                res.far_field_max_any = std::max(res.far_field_max_any, a);
                const PairDistances d = pair_distances_from_jacobi(res.grid.x(i), res.grid.x(j));
                if (std::min({d.r12, d.r13, d.r23}) >= res.annulus_lo)
                    res.far_field_max = std::max(res.far_field_max, a);
            }
        }

    const RadialProfile prof = radial_profile(res.g3_connected, res.grid, res.annulus_lo);
    res.fwhm_radial = prof.fwhm;
    res.fwhm_eta = fwhm_on_cut(res.g3_connected, res.grid);

    // six-fold symmetry of |psi|^2, band-limited resampling at rotated points
    if (opts.sixfold_samples > 0 && res.tau > 0.0) {
        CField hat = psi3.amp;
        Fft2C fft(n, n, hat.data());
        fft.forward();
        const double g3max = res.g3.maxCoeff();
        const double rot = pi / 3.0;
        double worst = 0.0;
        for (int s = 0; s < opts.sixfold_samples; ++s) {
            const double rho = 1.0 + 9.0 * (s + 0.5) / opts.sixfold_samples;
            const double th = 2.399963229728653 * s; // golden angle, decorrelates samples
            const double x = rho * std::sin(th), y = rho * std::cos(th);
            const double xr = rho * std::sin(th + rot), yr = rho * std::cos(th + rot);
            const double a = std::norm(trig_eval(hat, res.grid, x, y));
            const double b = std::norm(trig_eval(hat, res.grid, xr, yr));
            worst = std::max(worst, std::abs(a - b) / g3max);
        }
        res.sixfold_asymmetry = worst;
    }
    return res;
}

} // namespace rydpol
