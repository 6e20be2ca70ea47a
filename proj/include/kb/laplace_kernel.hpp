#pragma once

#include <functional>
#include <vector>

#include "kb/model.hpp"

// Numerical embodiment of the transform-space reasoning: the forward
// transform by quadrature, the pole/inverse pair, and the polynomial left
// over when the pole ansatz is substituted into the transformed ODE
//
//   (s + beta) phi'' + (s^2/(4 alpha) + lambda) phi' + (gamma s - mu c/(2 alpha)) phi = 0.
//
// Unphysical algebra (non-integer or non-positive pole orders forced by the
// identity relations) is admitted here as pure polynomial identity checking;
// everywhere else the physical PoleAnsatz/Channel route applies.

namespace kb::laplace {

// phi(s) = C / (s - s0)^v, the behavior of the transform at the singular
// point of the transformed ODE.
struct PoleAnsatz {
    int order;           // v >= 1
    double location;     // s0
    double coefficient;  // C, finite and nonzero

    PoleAnsatz(int order_, double location_, double coefficient_);
};

// Coefficients (ascending powers of s) of the numerator polynomial after
// substituting the pole ansatz and clearing the common C (s+beta)^{-(n+2)}
// factor. coefficient_scale is the magnitude the coefficients would have
// with no cancellation; is_zero measures against it, so "zero polynomial"
// is a cancellation-aware statement.
struct ResidualPolynomial {
    std::vector<double> coefficients;
    double coefficient_scale;

    double max_abs() const;
    bool is_zero(double rel_tol = 1e-12) const;
};

// integral_0^inf e^{-s r} f(r) dr by composite Gauss-Legendre panels marched
// until the contributions die out, plus an exponential tail estimate from
// the measured decay. Absolute accuracy target 1e-10. Throws NumericalError
// when s is at or below the decay abscissa of f (the panel contributions
// fail to decay).
double numeric_laplace(const std::function<double(double)>& f, double s);

// r -> (C / Gamma(v)) r^{v-1} e^{s0 r}, the inverse of the pole form.
std::function<double(double)> pole_inverse(const PoleAnsatz& p);

// The pole form with v = 1 has f(0) = C != 0, conflicting with the f(0) = 0
// boundary condition assumed when transforming. Recorded as a flag; no
// behavioral change.
bool violates_f0_boundary(const PoleAnsatz& p);

// Raw algebra: any real order is admitted. coulomb stands for mu c/(2 alpha).
ResidualPolynomial pole_substitution_residual(double order, double alpha, double beta,
                                              double gamma, double lambda,
                                              double coulomb);

// Physical route: requires p.location == -beta(pp) and p.order == ch.n + 1.
// All coefficients vanish exactly when the three identity relations hold at
// energy E.
ResidualPolynomial transformed_ode_residual(const PoleAnsatz& p,
                                            const PotentialParams& pp,
                                            const Channel& ch, double energy);

}  // namespace kb::laplace
