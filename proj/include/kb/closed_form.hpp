#pragma once

#include "kb/model.hpp"

// Analytic results of the Laplace-transform treatment: identity-relation
// residuals, the energy spectrum, the bound-state wavefunction, its
// normalization constant and the rms radius. The identity relations are
// reported, never enforced: for physical channels with N >= 3 they cannot
// hold jointly, and quantifying that gap is the point of this module.

namespace kb {

// Residuals of the three pole-substitution identities; each vanishes
// exactly when its identity holds.
struct IdentityResiduals {
    double r25;  // gamma - (n+1)/(4 alpha)
    double r26;  // gamma beta - mu c / (2 alpha)
    double r27;  // (n+1)(n+2) - (n+1) lambda - (mu c / (2 alpha)) beta
};

// Bound-state radial function A r^p exp(-alpha r^2 - beta r) with analytic
// derivatives (used by the ODE-residual oracle; finite differences would
// pollute the very residual under study). Evaluation at r < 0 is a domain
// error.
struct RadialWavefunction {
    double amplitude;  // C / n!
    double power;      // l + n
    double alpha;
    double beta;

    double operator()(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;
};

struct ClosedFormState {
    Channel channel;
    PotentialParams params;
    double energy;
    double norm_constant;
    IdentityResiduals residuals;
};

// sqrt(a/(2 mu)) (2n + 2l + N) - b^2/(4a)
double energy_eigenvalue(const Channel& ch, const PotentialParams& p);

// lambda inside r27 is evaluated at the closed-form energy, which makes r27
// a self-consistency meter for the spectrum derivation.
IdentityResiduals identity_residuals(const Channel& ch, const PotentialParams& p);

// c = b (2n + 2l + N - 1) / (4 alpha): the Coulomb strength for which the
// closed-form wavefunction is an exact zero-residual solution of the radial
// equation at the closed-form energy when n = 0. Derived engineering
// helper, validated against the ODE-residual oracle; not a formula from the
// analytic derivation itself.
double exact_solvability_constraint(const Channel& ch, const PotentialParams& p);

// n! { 2 (2 alpha)^{l+n+N/2} / Gamma(l+n+N/2) e^{-beta^2/(2 alpha)} }^{1/2},
// assembled in log space. Throws std::range_error on overflow.
double normalization_constant(const Channel& ch, const PotentialParams& p);

RadialWavefunction radial_wavefunction(const Channel& ch, const PotentialParams& p);

// sqrt((l + n + N/2) / (2 alpha)); the N = 3 case is the quarkonium
// formula, other N follow the same moment ratio.
double rms_radius(const Channel& ch, const PotentialParams& p);

ClosedFormState closed_form_state(const Channel& ch, const PotentialParams& p);

}  // namespace kb
