#include "rydpol/geometry.hpp"
#include "rydpol/common.hpp"

#include <cmath>

namespace rydpol {

namespace {
const double s2 = std::sqrt(2.0);
const double s3 = std::sqrt(3.0);
const double s6 = std::sqrt(6.0);
const double s32 = std::sqrt(1.5);
} // namespace

JacobiCoords to_jacobi(double x1, double x2, double x3) {
    JacobiCoords j;
    j.R = (x1 + x2 + x3) / s3;
    j.eta = (x1 - x2) / s2;
    j.zeta = std::sqrt(2.0 / 3.0) * (0.5 * (x1 + x2) - x3);
    return j;
}

std::array<double, 3> positions_from_jacobi(const JacobiCoords& j) {
    const double cm = j.R / s3;
    return {cm + j.eta / s2 + j.zeta / s6, cm - j.eta / s2 + j.zeta / s6, cm - 2.0 * j.zeta / s6};
}

PairDistances pair_distances_from_jacobi(double eta, double zeta) {
    PairDistances d;
    d.r12 = s2 * std::abs(eta);
    d.r13 = std::abs(eta / s2 + s32 * zeta);
    d.r23 = std::abs(-eta / s2 + s32 * zeta);
    return d;
}

Hyperspherical to_hyperspherical(double eta, double zeta) {
    Hyperspherical hs;
    hs.rho = std::hypot(eta, zeta);
    hs.theta = std::atan2(eta, zeta); // theta measured from the zeta axis
    if (hs.theta < 0.0) hs.theta += 2.0 * pi;
    return hs;
}

void from_hyperspherical(double rho, double theta, double& eta, double& zeta) {
    eta = rho * std::sin(theta);
    zeta = rho * std::cos(theta);
}

std::array<std::array<double, 2>, 6> symmetry_orbit(double eta, double zeta) {
    const auto x = positions_from_jacobi({0.0, eta, zeta});
    static const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                    {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::array<std::array<double, 2>, 6> orbit;
    for (int p = 0; p < 6; ++p) {
        const JacobiCoords j = to_jacobi(x[perms[p][0]], x[perms[p][1]], x[perms[p][2]]);
        orbit[static_cast<std::size_t>(p)] = {j.eta, j.zeta};
    }
    return orbit;
}

Grid2D Grid2D::make(double box_l, int n) {
    if (!(box_l > 0.0)) throw ValidationError("grid: box half-width must be > 0");
    if (n < 16) throw ValidationError("grid: need at least 16 points per axis");
    Grid2D g;
    g.box_l = box_l;
    g.n = n;
    g.h = 2.0 * box_l / (n - 1);
    g.axis.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.axis[static_cast<std::size_t>(i)] = -box_l + g.h * i;
    return g;
}

Grid1D Grid1D::make(double box_l, int n) {
    if (!(box_l > 0.0)) throw ValidationError("grid: box half-width must be > 0");
    if (n < 16) throw ValidationError("grid: need at least 16 points");
    Grid1D g;
    g.box_l = box_l;
    g.n = n;
    g.h = 2.0 * box_l / (n - 1);
    g.axis.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.axis[static_cast<std::size_t>(i)] = -box_l + g.h * i;
    return g;
}

} // namespace rydpol
