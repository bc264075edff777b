#include "rydpol/params.hpp"

#include <cmath>
#include <limits>

namespace rydpol {

DerivedParams derive(const PhysicalParams& p) {
    if (!(p.omega > 0.0)) throw ValidationError("params: Rabi frequency Omega must be > 0");
    if (!(p.g_coupling > 0.0)) throw ValidationError("params: collective coupling g must be > 0");
    if (p.gamma < 0.0) throw ValidationError("params: decay rate gamma must be >= 0");
    if (!(p.c_light > 0.0)) throw ValidationError("params: speed of light must be > 0");
    if (p.c6 == 0.0) throw ValidationError("params: van der Waals coefficient C6 must be nonzero");

    const complexd Delta(p.delta, -p.gamma);
    const double abs_delta = std::abs(Delta);
    if (abs_delta == 0.0) throw ValidationError("params: detuning Delta must be nonzero");
    if (abs_delta < p.detuning_ratio_min * p.omega)
        throw ValidationError("params: far-detuned regime requires |Delta| >= " +
                              std::to_string(p.detuning_ratio_min) + " * Omega");

    DerivedParams d;
    d.has_physical = true;
    d.coherent = (p.gamma == 0.0);
    if (abs_delta < 10.0 * p.omega)
        d.warnings.push_back("|Delta|/Omega < 10: adiabatic elimination of the intermediate "
                             "level is marginal");
    if (!d.coherent)
        d.warnings.push_back("gamma != 0: chi is complex; only potential evaluation supports "
                             "this, eigen/propagation solvers will reject it");

    const double g2 = p.g_coupling * p.g_coupling;
    const double o2 = p.omega * p.omega;

    d.alpha = g2 / (g2 + o2);
    d.chi = Delta / (2.0 * o2);
    d.xi = std::pow(std::abs(p.c6 * d.chi), 1.0 / 6.0);
    d.kappa_xi = d.xi * g2 / (abs_delta * p.c_light);
    d.v_group = o2 * p.c_light / (g2 + o2);
    const double s = g2 + o2;
    d.mass = s * s * s / (2.0 * p.c_light * p.c_light * g2 * o2 * Delta);
    d.lambda = std::abs(d.alpha * d.alpha * d.mass * d.xi * d.xi / d.chi);
    d.sign_regime = (p.c6 * p.delta < 0.0) ? -1 : +1;
    return d;
}

DerivedParams dimensionless_mode(double alpha, double lambda, int sign_regime) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("params: alpha must lie in [0, 1]");
    if (!(lambda > 0.0)) throw ValidationError("params: lambda must be > 0");
    if (sign_regime != -1 && sign_regime != +1)
        throw ValidationError("params: sign_regime must be -1 or +1");

    DerivedParams d;
    d.alpha = alpha;
    d.lambda = lambda;
    d.sign_regime = sign_regime;
    d.has_physical = false;
    d.coherent = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    d.chi = complexd(nan, 0.0);
    d.xi = nan;
    d.kappa_xi = nan;
    d.v_group = nan;
    d.mass = complexd(nan, 0.0);
    return d;
}

} // namespace rydpol
