#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kb/model.hpp"

// Quark-antiquark phenomenology on top of the closed-form spectrum: state
// masses M = m1 + m2 + E, rms radii in femtometers, and least-squares
// fitting of the potential parameters to observed masses. All unit
// conversion lives here; the rest of the library works in natural units.

namespace kb::quarkonium {

// hbar c in GeV fm, kept at the 4-figure value the phenomenology uses
inline constexpr double kHbarC = 0.1973;

struct QuarkSystem {
    double m1;  // quark mass, GeV
    double m2;  // antiquark mass, GeV
    PotentialParams params;
    std::string label;  // e.g. "bbbar"

    // params.mu must equal m1 m2/(m1+m2) within 1e-12 relative
    QuarkSystem(double m1_, double m2_, PotentialParams params_, std::string label_);
};

// convenience constructor deriving the reduced mass
QuarkSystem make_system(double m1, double m2, double a, double b, double c,
                        std::string label);

struct Bounds {
    double lo;
    double hi;
};

struct FitProblem {
    std::vector<std::pair<Channel, double>> observations;  // (channel, mass GeV)
    bool free_a = true;
    bool free_b = true;
    bool free_c = false;
    Bounds bounds_a{1e-4, 5.0};
    Bounds bounds_b{-5.0, 5.0};
    Bounds bounds_c{-5.0, 5.0};
};

struct FitResult {
    PotentialParams params;
    std::vector<double> residuals;  // predicted - observed, per observation
    double objective;               // sum of squared residuals
    bool converged;                 // simplex collapsed within budget
    int iterations;                 // iterations of the winning start
    int winning_start;
    std::uint64_t seed;
};

double state_mass(const QuarkSystem& sys, const Channel& ch);

// sqrt((l + n + 3/2)/(2 alpha)) * hbar c; defined for N = 3 only
double rms_radius_fm(const QuarkSystem& sys, const Channel& ch);

// Derivative-free simplex search with 8 deterministic multi-starts run
// concurrently; merge is min-by-objective with ties broken by lowest start
// index. Non-convergence is reported in the result, not thrown.
FitResult fit_parameters(const FitProblem& fp, const QuarkSystem& sys,
                         std::uint64_t seed = 1);

// Published 1S rms radii for comparison. They depend on fitted potential
// parameters that are not part of this repository, so they serve as golden
// references only once a user supplies parameters.
struct ReferenceRadius {
    const char* system;
    const char* state;
    double radius_fm;
    bool requires_external_parameters;
};
const std::array<ReferenceRadius, 2>& reference_radii();

}  // namespace kb::quarkonium
