#ifndef RYDPOL_GEOMETRY_HPP
#define RYDPOL_GEOMETRY_HPP

#include <array>
#include <vector>

namespace rydpol {

/// Mass-symmetric Jacobi coordinates of three equal-mass particles on a line,
/// all in blockade-radius units:
///   R    = (x1 + x2 + x3)/sqrt(3)
///   eta  = (x1 - x2)/sqrt(2)
///   zeta = sqrt(2/3) ((x1 + x2)/2 - x3)
/// The map is orthogonal, so the kinetic operator stays diagonal.
struct JacobiCoords {
    double R, eta, zeta;
};

JacobiCoords to_jacobi(double x1, double x2, double x3);
std::array<double, 3> positions_from_jacobi(const JacobiCoords& j);

struct PairDistances {
    double r12, r13, r23; // all >= 0
};

/// Pair distances as functions of the relative plane only:
/// r12 = sqrt(2)|eta|, r13 = |eta/sqrt(2) + sqrt(3/2) zeta|,
/// r23 = |-eta/sqrt(2) + sqrt(3/2) zeta|.
PairDistances pair_distances_from_jacobi(double eta, double zeta);

/// Polar coordinates of the relative plane: eta = rho sin(theta),
/// zeta = rho cos(theta), theta in [0, 2 pi).
struct Hyperspherical {
    double rho, theta;
};

Hyperspherical to_hyperspherical(double eta, double zeta);
void from_hyperspherical(double rho, double theta, double& eta, double& zeta);

/// Images of (eta, zeta) under the six particle permutations. All images
/// share the same hyperradius and the same interaction energy.
std::array<std::array<double, 2>, 6> symmetry_orbit(double eta, double zeta);

/// Uniform square grid on [-box_l, box_l]^2, spacing h = 2 box_l/(n-1),
/// symmetric about the origin. Used both as a Dirichlet eigensolver grid and
/// as a periodic split-step lattice (period n*h).
struct Grid2D {
    double box_l = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> axis;

    static Grid2D make(double box_l, int n);
    double x(int i) const { return axis[static_cast<std::size_t>(i)]; }
};

struct Grid1D {
    double box_l = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> axis;

    static Grid1D make(double box_l, int n);
    double x(int i) const { return axis[static_cast<std::size_t>(i)]; }
};

} // namespace rydpol

#endif
