#ifndef RYDPOL_PARAMS_HPP
#define RYDPOL_PARAMS_HPP

#include "rydpol/common.hpp"

#include <string>
#include <vector>

namespace rydpol {

/// Microscopic inputs of the three-level Rydberg EIT scheme. All rates are
/// angular frequencies with hbar = 1, so energies and frequencies share one
/// unit; c6 is (frequency) * (length)^6 and c_light a plain velocity in the
/// same length unit. Consistency of the length unit is the caller's job —
/// everything downstream is dimensionless anyway.
struct PhysicalParams {
    double omega = 0.0;      // control Rabi frequency, > 0
    double delta = 0.0;      // real part of the intermediate-state detuning
    double gamma = 0.0;      // intermediate-state decay rate, >= 0
    double g_coupling = 0.0; // collective atom-photon coupling, > 0
    double c6 = 0.0;         // van der Waals coefficient, sign free
    double c_light = 0.0;    // speed of light in the host medium, > 0

    double detuning_ratio_min = 5.0; // hard validity floor for |Delta|/Omega
};

/// Everything the dimensionless solvers need, plus the physical derived
/// quantities when they exist. In dimensionless mode only alpha, lambda and
/// sign_regime are meaningful; the physical fields are NaN and has_physical
/// is false.
struct DerivedParams {
    double alpha = 0.0;   // Rydberg fraction g^2/(g^2+Omega^2), in [0,1]
    double lambda = 0.0;  // interaction strength of the relative Hamiltonian
    int sign_regime = -1; // sign of C6*delta; -1 is the attractive regime

    complexd chi{0.0, 0.0}; // Delta/(2 Omega^2); complex when gamma != 0
    double xi = 0.0;        // blockade radius |C6 chi|^(1/6)
    double kappa_xi = 0.0;  // off-resonant optical depth per blockade radius
    double v_group = 0.0;   // slow-light group velocity
    complexd mass{0.0, 0.0};

    bool has_physical = false;
    bool coherent = true; // gamma == 0; solvers require this
    std::vector<std::string> warnings;
};

/// Derive all dimensionless quantities from physical inputs.
/// Rejects omega/g/Delta/C6 = 0 with distinct messages and enforces the
/// far-detuned validity condition |Delta| >= detuning_ratio_min * Omega.
DerivedParams derive(const PhysicalParams& p);

/// Enter directly on the (alpha, lambda) axes used by all solvers.
DerivedParams dimensionless_mode(double alpha, double lambda, int sign_regime = -1);

} // namespace rydpol

#endif
