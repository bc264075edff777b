#ifndef RYDPOL_POTENTIALS_HPP
#define RYDPOL_POTENTIALS_HPP

#include "rydpol/common.hpp"
#include "rydpol/geometry.hpp"

#include <Eigen/Core>

#include <array>

namespace rydpol {

/// Row-major real/complex fields over (eta index, zeta index); row-major so
/// the raw buffer matches FFTW's 2D layout.
using Field = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CField = Eigen::Array<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Distances below this are evaluated on the analytic saturation branch;
/// 1/r^6 loses accuracy in intermediate expressions long before it overflows.
inline constexpr double r_min_saturation = 1e-4;

/// Dimensionless van der Waals product chi*V at pair distance r (xi units),
/// attractive regime C6*Delta < 0: u(r) = -1/r^6, clamped at the saturation
/// radius.
double vdw_u(double r);

/// Dimensionless two-body potential chi*Veff2/alpha^2 = u/(1-u) = -1/(1+r^6).
/// Bounded in [-1, 0) for all r >= 0; no saturation branch needed.
double pair_potential(double r);

/// Connected three-body term chi*Veff3/alpha^2 from the three pair distances:
///   u_ij = chi V(r_ij),  S = sum u_ij,  V3 = S/(3 - 2S),
///   U3 = alpha * sum_ij (V3 - u_ij)/(1 - u_ij).
/// Vanishes identically when one particle separates from the other two and
/// saturates at 3*alpha when all three coincide.
double connected_three_body(const PairDistances& d, double alpha);
double connected_three_body(double x1, double x2, double x3, double alpha);

/// General-dimension configuration (d <= 3); only pair distances enter.
double connected_three_body(const std::array<double, 3>& p1, const std::array<double, 3>& p2,
                            const std::array<double, 3>& p3, double alpha);

struct PotentialSample {
    std::array<double, 3> u2_pairs{}; // U2(r12), U2(r13), U2(r23)
    double u3_connected = 0.0;
    double u_total = 0.0; // sum of the above, exactly
};

PotentialSample total_potential(double x1, double x2, double x3, double alpha);
PotentialSample total_potential(const PairDistances& d, double alpha);
PotentialSample total_potential_jacobi(double eta, double zeta, double alpha);

/// Complex-chi evaluation for gamma != 0 (or the repulsive regime): the unit
/// factor is chi*C6/|chi*C6|. For inspection and plotting only — all solvers
/// require the real attractive regime. In the repulsive real regime the pair
/// term has a genuine pole at r = 1.
struct PotentialSampleC {
    std::array<complexd, 3> u2_pairs{};
    complexd u3_connected{};
    complexd u_total{};
    bool solver_regime = false; // true only for the real attractive case
};

PotentialSampleC total_potential_general(const PairDistances& d, double alpha, complexd unit_factor);

struct PotentialFields {
    Field u2_sum;  // sum of the three pair terms
    Field u3;      // connected three-body term
    Field u_total; // total
};

/// Evaluate all three fields over a Jacobi-plane grid (eta rows, zeta cols).
PotentialFields potential_on_jacobi_grid(const Grid2D& grid, double alpha);

/// lambda * u_total on the grid — the potential entering the relative-motion
/// Hamiltonian.
Field hamiltonian_potential(const Grid2D& grid, double alpha, double lambda);

} // namespace rydpol

#endif
