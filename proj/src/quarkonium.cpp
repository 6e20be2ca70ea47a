#include "kb/quarkonium.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "kb/closed_form.hpp"

namespace kb::quarkonium {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

constexpr int kStarts = 8;
constexpr int kMaxIterations = 5000;
constexpr double kDiameterTol = 1e-11;

struct StartOutcome {
    std::vector<double> x;
    double objective;
    bool converged;
    int iterations;
};

PotentialParams assemble(const FitProblem& fp, const PotentialParams& base,
                         const std::vector<double>& x) {
    double a = base.a, b = base.b, c = base.c;
    std::size_t i = 0;
    if (fp.free_a) a = x[i++];
    if (fp.free_b) b = x[i++];
    if (fp.free_c) c = x[i++];
    return {a, b, c, base.mu};
}

// sum of squared mass residuals, with a smooth penalty outside the bounds so
// the simplex is steered back without ever constructing invalid parameters
double objective_of(const FitProblem& fp, const QuarkSystem& sys,
                    const std::vector<Bounds>& box, const std::vector<double>& x) {
    double violation = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < box[i].lo) violation += box[i].lo - x[i];
        if (x[i] > box[i].hi) violation += x[i] - box[i].hi;
    }
    if (violation > 0.0) return 1e8 * (1.0 + violation * violation);

    const PotentialParams trial = assemble(fp, sys.params, x);
    double sum = 0.0;
    for (const auto& [ch, observed] : fp.observations) {
        const double predicted = sys.m1 + sys.m2 + energy_eigenvalue(ch, trial);
        const double r = predicted - observed;
        sum += r * r;
    }
    return sum;
}

// standard Nelder-Mead with reflection 1, expansion 2, contraction 1/2,
// shrink 1/2
StartOutcome nelder_mead(const FitProblem& fp, const QuarkSystem& sys,
                         const std::vector<Bounds>& box, std::vector<double> x0) {
    const std::size_t dim = x0.size();
    auto f = [&](const std::vector<double>& x) { return objective_of(fp, sys, box, x); };

    std::vector<std::vector<double>> vertex(dim + 1, x0);
    for (std::size_t j = 0; j < dim; ++j) {
        double step = 0.05 * (box[j].hi - box[j].lo);
        if (x0[j] + step > box[j].hi) step = -step;
        vertex[j + 1][j] += step;
    }
    std::vector<double> value(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) value[i] = f(vertex[i]);

    int iterations = 0;
    bool converged = false;
    for (; iterations < kMaxIterations; ++iterations) {
        std::vector<std::size_t> order(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = order.front(), worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                diameter = std::max(diameter,
                                    std::abs(vertex[i][j] - vertex[best][j]));
        if (diameter < kDiameterTol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += vertex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j)
                p[j] = centroid[j] + t * (vertex[worst][j] - centroid[j]);
            return p;
        };

        const std::vector<double> reflected = blend(-1.0);
        const double f_reflected = f(reflected);
        if (f_reflected < value[best]) {
            const std::vector<double> expanded = blend(-2.0);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                vertex[worst] = expanded;
                value[worst] = f_expanded;
            } else {
                vertex[worst] = reflected;
                value[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < value[worst];
        const std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
        const double f_contracted = f(contracted);
        if (f_contracted < std::min(f_reflected, value[worst])) {
            vertex[worst] = contracted;
            value[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {  // shrink toward the best vertex
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j)
                vertex[i][j] = vertex[best][j] + 0.5 * (vertex[i][j] - vertex[best][j]);
            value[i] = f(vertex[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (value[i] < value[best]) best = i;
    return {vertex[best], value[best], converged, iterations};
}

}  // namespace

QuarkSystem::QuarkSystem(double m1_, double m2_, PotentialParams params_,
                         std::string label_)
    : m1(m1_), m2(m2_), params(params_), label(std::move(label_)) {
    require(m1 > 0.0 && m2 > 0.0, "quark masses must be positive");
    const double reduced = m1 * m2 / (m1 + m2);
    require(std::abs(params.mu - reduced) <= 1e-12 * reduced,
            "params.mu must equal the reduced mass of (m1, m2)");
}

QuarkSystem make_system(double m1, double m2, double a, double b, double c,
                        std::string label) {
    const double reduced = m1 * m2 / (m1 + m2);
    return QuarkSystem(m1, m2, PotentialParams(a, b, c, reduced), std::move(label));
}

double state_mass(const QuarkSystem& sys, const Channel& ch) {
    return sys.m1 + sys.m2 + energy_eigenvalue(ch, sys.params);
}

double rms_radius_fm(const QuarkSystem& sys, const Channel& ch) {
    require(ch.dim == 3, "rms radius in fm is defined for N = 3");
    return rms_radius(ch, sys.params) * kHbarC;
}

FitResult fit_parameters(const FitProblem& fp, const QuarkSystem& sys,
                         std::uint64_t seed) {
    std::vector<Bounds> box;
    std::vector<double> current;
    if (fp.free_a) {
        box.push_back(fp.bounds_a);
        current.push_back(sys.params.a);
    }
    if (fp.free_b) {
        box.push_back(fp.bounds_b);
        current.push_back(sys.params.b);
    }
    if (fp.free_c) {
        box.push_back(fp.bounds_c);
        current.push_back(sys.params.c);
    }
    require(!box.empty(), "fit needs at least one free parameter");
    for (const Bounds& bd : box)
        require(bd.lo < bd.hi, "parameter bounds must satisfy lo < hi");
    require(fp.bounds_a.lo > 0.0, "lower bound on a must be positive");
    require(fp.observations.size() >= box.size(),
            "need at least as many observations as free parameters");
    for (const auto& [ch, mass] : fp.observations)
        require(std::isfinite(mass), "observed masses must be finite");

    // start 0: the caller's parameters clamped into the box; the rest are
    // seeded draws, one generator per start so concurrency cannot reorder them
    auto start_point = [&](int index) {
        std::vector<double> x(box.size());
        if (index == 0) {
            for (std::size_t j = 0; j < box.size(); ++j)
                x[j] = std::clamp(current[j], box[j].lo, box[j].hi);
        } else {
            std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(index));
            for (std::size_t j = 0; j < box.size(); ++j) {
                std::uniform_real_distribution<double> pick(box[j].lo, box[j].hi);
                x[j] = pick(rng);
            }
        }
        return x;
    };

    std::vector<std::future<StartOutcome>> futures;
    futures.reserve(kStarts);
    for (int s = 0; s < kStarts; ++s)
        futures.push_back(std::async(std::launch::async, [&, s] {
            return nelder_mead(fp, sys, box, start_point(s));
        }));

    StartOutcome best{};
    int winner = -1;
    for (int s = 0; s < kStarts; ++s) {
        StartOutcome outcome = futures[s].get();
        if (winner < 0 || outcome.objective < best.objective) {
            best = std::move(outcome);
            winner = s;
        }
    }

    const PotentialParams fitted = assemble(fp, sys.params, best.x);
    std::vector<double> residuals;
    residuals.reserve(fp.observations.size());
    for (const auto& [ch, observed] : fp.observations)
        residuals.push_back(sys.m1 + sys.m2 + energy_eigenvalue(ch, fitted) - observed);

    return {fitted, std::move(residuals), best.objective,
            best.converged, best.iterations, winner, seed};
}

const std::array<ReferenceRadius, 2>& reference_radii() {
    static const std::array<ReferenceRadius, 2> refs{{
        {"bbbar", "1S", 0.2672, true},
        {"ccbar", "1S", 0.4839, true},
    }};
    return refs;
}

}  // namespace kb::quarkonium
