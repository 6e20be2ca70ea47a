#pragma once

#include <stdexcept>

// Domain types and parameter algebra for the anharmonic radial problem
//
//     V(r) = a r^2 + b r - c / r ,   a > 0
//
// in natural units (hbar = c = 1). All quantities are pure values; nothing
// here owns mutable state, so everything is safe to use concurrently.

namespace kb {

// Thrown when an iterative routine fails to converge or an integral is
// found to diverge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Physical inputs: potential strengths plus the reduced mass. The harmonic
// strength a and the reduced mass mu must be strictly positive; b and c may
// be any real number including zero.
struct PotentialParams {
    double a;   // harmonic strength
    double b;   // linear strength
    double c;   // Coulomb strength
    double mu;  // reduced mass

    PotentialParams(double a_, double b_, double c_, double mu_);

    // V(r); r = 0 is outside the domain (Coulomb term).
    double operator()(double r) const { return a * r * r + b * r - c / r; }
};

// Quantum numbers labelling a state: pole order n >= 0, angular momentum
// l >= 0, dimension N >= 2. N = 1 and N = 0 are rejected because the
// centrifugal reduction used by the numerical oracle needs N >= 2.
struct Channel {
    int n;
    int l;
    int dim;

    Channel(int n_, int l_, int dim_);

    // l (l + N - 2), eigenvalue of the hyperangular momentum operator.
    double separation_constant() const {
        return static_cast<double>(l) * (l + dim - 2);
    }
};

// Transform-space abbreviations:
//   alpha = sqrt(mu a / 2)          Gaussian width of the asymptotic tail
//   beta  = mu b / (2 alpha)        exponential slope
//   gamma = (3 - 2 l - N)/(4 alpha)
//   eta   = 2 l + N - 1             (at the physical root k = l)
//   q     = Q(k, l, N) at k = l     (zero by construction)
// epsilon and lambda depend on the energy; the two-argument
// derive_transform_params leaves them NaN.
struct DerivedParams {
    double alpha;
    double beta;
    double gamma;
    double eta;
    double q;
    double epsilon;  // 2 mu E - 2 alpha N - 4 alpha l
    double lambda;   // mu E / (2 alpha) - (l + N/2 - 2)
};

// Roots of Q(k, l, N) = k(k-1) + k(N-1) - l(l+N-2) = 0. Downstream code
// uses k_plus = l only; k_minus is unbounded at the origin and kept for
// tests.
struct KRoots {
    double k_plus;
    double k_minus;
};

double derive_alpha(const PotentialParams& p);
double q_polynomial(double k, const Channel& ch);
KRoots solve_k(const Channel& ch);
DerivedParams derive_transform_params(const PotentialParams& p, const Channel& ch);
DerivedParams derive_transform_params(const PotentialParams& p, const Channel& ch,
                                      double energy);
double lambda_of_energy(double energy, const PotentialParams& p, const Channel& ch);
double epsilon_of_energy(double energy, const PotentialParams& p, const Channel& ch);

}  // namespace kb
