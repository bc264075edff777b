#include "rydpol/potentials.hpp"

#include <cmath>

namespace rydpol {

namespace {

inline double pow6(double x) { return (x * x) * (x * x) * (x * x); }

inline double dist3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double u3_from_u(double u12, double u13, double u23, double alpha) {
    const double S = u12 + u13 + u23;
    const double v3 = S / (3.0 - 2.0 * S);
    return alpha * ((v3 - u12) / (1.0 - u12) + (v3 - u13) / (1.0 - u13) + (v3 - u23) / (1.0 - u23));
}

} // namespace

double vdw_u(double r) {
    const double rc = std::max(r, r_min_saturation);
    return -1.0 / pow6(rc);
}

double pair_potential(double r) { return -1.0 / (1.0 + pow6(r)); }

double connected_three_body(const PairDistances& d, double alpha) {
    if (alpha == 0.0) return 0.0;
    return u3_from_u(vdw_u(d.r12), vdw_u(d.r13), vdw_u(d.r23), alpha);
}

double connected_three_body(double x1, double x2, double x3, double alpha) {
    const PairDistances d{std::abs(x1 - x2), std::abs(x1 - x3), std::abs(x2 - x3)};
    return connected_three_body(d, alpha);
}

double connected_three_body(const std::array<double, 3>& p1, const std::array<double, 3>& p2,
                            const std::array<double, 3>& p3, double alpha) {
    const PairDistances d{dist3(p1, p2), dist3(p1, p3), dist3(p2, p3)};
    return connected_three_body(d, alpha);
}

PotentialSample total_potential(const PairDistances& d, double alpha) {
    PotentialSample s;
    s.u2_pairs = {pair_potential(d.r12), pair_potential(d.r13), pair_potential(d.r23)};
    s.u3_connected = connected_three_body(d, alpha);
    s.u_total = s.u2_pairs[0] + s.u2_pairs[1] + s.u2_pairs[2] + s.u3_connected;
    return s;
}

PotentialSample total_potential(double x1, double x2, double x3, double alpha) {
    const PairDistances d{std::abs(x1 - x2), std::abs(x1 - x3), std::abs(x2 - x3)};
    return total_potential(d, alpha);
}

PotentialSample total_potential_jacobi(double eta, double zeta, double alpha) {
    return total_potential(pair_distances_from_jacobi(eta, zeta), alpha);
}

PotentialSampleC total_potential_general(const PairDistances& d, double alpha, complexd unit_factor) {
    PotentialSampleC s;
    const double r[3] = {d.r12, d.r13, d.r23};
    complexd u[3];
    for (int i = 0; i < 3; ++i) {
        const double rc = std::max(r[i], r_min_saturation);
        u[i] = unit_factor / pow6(rc);
        s.u2_pairs[static_cast<std::size_t>(i)] = u[i] / (1.0 - u[i]);
    }
    const complexd S = u[0] + u[1] + u[2];
    const complexd v3 = S / (3.0 - 2.0 * S);
    s.u3_connected = alpha * ((v3 - u[0]) / (1.0 - u[0]) + (v3 - u[1]) / (1.0 - u[1]) +
                              (v3 - u[2]) / (1.0 - u[2]));
    s.u_total = s.u2_pairs[0] + s.u2_pairs[1] + s.u2_pairs[2] + s.u3_connected;
    s.solver_regime = (unit_factor == complexd(-1.0, 0.0));
    return s;
}

PotentialFields potential_on_jacobi_grid(const Grid2D& grid, double alpha) {
    const int n = grid.n;
    PotentialFields f;
    f.u2_sum.resize(n, n);
    f.u3.resize(n, n);
    f.u_total.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const double eta = grid.x(i);
        for (int j = 0; j < n; ++j) {
            const PotentialSample s = total_potential_jacobi(eta, grid.x(j), alpha);
            f.u2_sum(i, j) = s.u2_pairs[0] + s.u2_pairs[1] + s.u2_pairs[2];
            f.u3(i, j) = s.u3_connected;
            f.u_total(i, j) = s.u_total;
        }
    }
    return f;
}

Field hamiltonian_potential(const Grid2D& grid, double alpha, double lambda) {
    const int n = grid.n;
    Field v(n, n);
    for (int i = 0; i < n; ++i) {
        const double eta = grid.x(i);
        for (int j = 0; j < n; ++j)
            v(i, j) = lambda * total_potential_jacobi(eta, grid.x(j), alpha).u_total;
    }
    return v;
}

} // namespace rydpol
