#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kb/closed_form.hpp"
#include "kb/model.hpp"

// Independent numerical ground truth for the radial problem: the hyperradial
// equation is reduced to first-derivative-free form by u = r^{(N-1)/2} R,
// discretized with the 3-point stencil, and solved by Sturm-sequence
// bisection. Quadrature norms, moments and pointwise ODE residuals complete
// the battery. Nothing here reuses the closed-form spectrum.

namespace kb::oracle {

// Uniform grid with `steps` interior points r_min, r_min + h, ..., r_max - h
// and Dirichlet values pinned one spacing outside at r_min - h and r_max;
// h = (r_max - r_min)/steps. The default grid places r_min = h so the left
// boundary condition sits exactly at the origin, where u(0) = 0 is exact for
// the reduced problem; the 1/r and 1/r^2 terms are never evaluated at r = 0.
struct RadialGrid {
    double r_min;
    double r_max;
    int steps;
    double h;

    RadialGrid(double r_min_, double r_max_, int steps_);

    // i-th interior point, i in [0, steps)
    double point(int i) const { return r_min + i * h; }
};

// the h/2 grid sharing both Dirichlet boundaries, used for Richardson pairs
RadialGrid refined_grid(const RadialGrid& g);

struct GridFunction {
    RadialGrid grid;
    std::vector<double> values;  // one per interior point
};

// u'' + [2 mu (E - V(r)) - lambda_eff / r^2] u = 0 with
// lambda_eff = l(l+N-2) + (N-1)(N-3)/4 = L(L+1), L = l + (N-3)/2.
// Equality of the two forms is asserted at construction.
struct EffectiveProblem {
    PotentialParams params;
    int l;
    int dim;
    double centrifugal_coefficient;

    EffectiveProblem(const PotentialParams& p, int l_, int dim_);
};

// Symmetric tridiagonal operator; off holds the single off-diagonal
// sequence (identical above and below the diagonal by construction).
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> off;
};

EffectiveProblem reduce_to_normal_form(const PotentialParams& p, const Channel& ch);

// r_max satisfies 2 alpha r_max^2 >= 80 and r_max >= 3x the closed-form rms
// radius, so the wavefunction is below double-precision noise at the
// boundary; steps defaults to 4000.
RadialGrid default_grid(const PotentialParams& p, const Channel& ch, int steps = 4000,
                        std::optional<double> r_max_override = std::nullopt);

TridiagonalOperator discretize(const EffectiveProblem& ep, const RadialGrid& g);

// number of eigenvalues below the shift (Sturm sequence sign count)
int sturm_count_below(const TridiagonalOperator& op, double shift);

// `count` smallest eigenvalues, each bracketed by bisection to absolute
// width <= 1e-12 max(1, |E|).
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count);

// Richardson extrapolation of grids at h and h/2 (steps and 2*steps + 1),
// cancelling the leading O(h^2) stencil error.
std::vector<double> lowest_eigenvalues_extrapolated(const EffectiveProblem& ep,
                                                    const RadialGrid& g, int count);

// Inverse iteration from a fixed pseudo-random start; E must be within
// ~1e-8 of an eigenvalue. Normalized so sum u_i^2 h = 1 with the first
// nonzero component positive. Throws NumericalError after 10 sweeps without
// convergence.
GridFunction eigenfunction(const TridiagonalOperator& op, const RadialGrid& g,
                           double eigenvalue);

// interior sign changes, ignoring entries below 1e-8 of the peak
int count_sign_changes(const GridFunction& u);

// integral of R(r)^2 r^{N-1} over (0, r_max] by composite Simpson plus an
// exponential tail estimate from the measured boundary decay.
double quadrature_norm(const std::function<double(double)>& radial, const Channel& ch,
                       const RadialGrid& g);

// <r^2> as a moment ratio; any overall scaling of R divides out.
double expectation_r2(const std::function<double(double)>& radial, const Channel& ch,
                      const RadialGrid& g);

// max over the samples of the pointwise hyperradial-equation residual of R
// at energy E, normalized by max(1, peak |R| over the samples). Derivatives
// are analytic, so the residual measures the formula, not the grid.
double ode_residual(const RadialWavefunction& R, double energy,
                    const PotentialParams& p, const Channel& ch,
                    const std::vector<double>& samples);

}  // namespace kb::oracle
