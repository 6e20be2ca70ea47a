#include "kb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace kb::oracle {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Gaussian elimination with partial pivoting for (T - sigma I) x = b; the
// shifted matrix is nearly singular by design, which is exactly what drives
// inverse iteration toward the eigenvector.
struct ShiftedTridiagSolver {
    std::vector<double> lower;   // multipliers after factorization
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> upper2;  // fill-in from row swaps
    std::vector<char> swapped;

    ShiftedTridiagSolver(const TridiagonalOperator& op, double sigma) {
        const std::size_t m = op.diag.size();
        lower.assign(op.off.begin(), op.off.end());
        diag.resize(m);
        for (std::size_t i = 0; i < m; ++i) diag[i] = op.diag[i] - sigma;
        upper.assign(op.off.begin(), op.off.end());
        upper2.assign(m > 2 ? m - 2 : 0, 0.0);
        swapped.assign(m > 1 ? m - 1 : 0, 0);

        double mat_scale = 0.0;
        for (double d : diag) mat_scale = std::max(mat_scale, std::abs(d));
        for (double e : upper) mat_scale = std::max(mat_scale, std::abs(e));
        const double tiny = std::numeric_limits<double>::epsilon() *
                            std::numeric_limits<double>::epsilon() *
                            std::max(1.0, mat_scale);

        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (std::abs(diag[i]) >= std::abs(lower[i])) {
                if (diag[i] == 0.0) diag[i] = tiny;
                const double fact = lower[i] / diag[i];
                lower[i] = fact;
                diag[i + 1] -= fact * upper[i];
                if (i + 2 < m) upper2[i] = 0.0;
            } else {
                const double fact = diag[i] / lower[i];
                diag[i] = lower[i];
                lower[i] = fact;
                const double temp = upper[i];
                upper[i] = diag[i + 1];
                diag[i + 1] = temp - fact * diag[i + 1];
                if (i + 2 < m) {
                    upper2[i] = upper[i + 1];
                    upper[i + 1] = -fact * upper[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (diag[m - 1] == 0.0) diag[m - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t m = diag.size();
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= lower[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - lower[i] * b[i];
            }
        }
        b[m - 1] /= diag[m - 1];
        if (m >= 2) b[m - 2] = (b[m - 2] - upper[m - 2] * b[m - 1]) / diag[m - 2];
        for (std::size_t k = m; k-- > 2;) {
            const std::size_t i = k - 2;
            b[i] = (b[i] - upper[i] * b[i + 1] - upper2[i] * b[i + 2]) / diag[i];
        }
    }
};

double simpson(const std::function<double(double)>& f, double a, double b,
               int panels) {
    if (panels % 2 == 1) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int j = 1; j < panels; ++j) sum += f(a + j * h) * (j % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// integral over (0, r_max] of weight(r) R(r)^2 r^{N-1}, Simpson plus the
// exponential tail estimated from the decay across the last spacing
double radial_integral(const std::function<double(double)>& radial, int dim,
                       const RadialGrid& g, int extra_power) {
    auto integrand = [&](double r) {
        const double value = radial(r);
        return value * value * std::pow(r, dim - 1 + extra_power);
    };
    const int panels = g.steps + (g.steps % 2);
    const double body = simpson(integrand, 0.0, g.r_max, panels);

    const double probe = g.r_max - g.h;
    const double f_end = integrand(g.r_max);
    const double f_probe = integrand(probe);
    double tail = 0.0;
    if (f_end > 0.0 && f_probe > f_end) {
        const double decay = std::log(f_probe / f_end) / g.h;
        if (decay > 0.0) tail = f_end / decay;
    }
    return body + tail;
}

}  // namespace

RadialGrid::RadialGrid(double r_min_, double r_max_, int steps_)
    : r_min(r_min_), r_max(r_max_), steps(steps_), h(0.0) {
    require(std::isfinite(r_min) && std::isfinite(r_max), "grid bounds must be finite");
    require(r_min > 0.0, "r_min must be positive");
    require(r_max > r_min, "r_max must exceed r_min");
    require(steps >= 100, "grid too coarse: need at least 100 interior points");
    h = (r_max - r_min) / steps;
}

RadialGrid refined_grid(const RadialGrid& g) {
    // same Dirichlet boundaries (g.r_min - h and g.r_max), half the spacing
    return RadialGrid(g.r_min - 0.5 * g.h, g.r_max, 2 * g.steps + 1);
}

EffectiveProblem::EffectiveProblem(const PotentialParams& p, int l_, int dim_)
    : params(p), l(l_), dim(dim_), centrifugal_coefficient(0.0) {
    require(l >= 0 && dim >= 2, "effective problem needs l >= 0 and N >= 2");
    const double direct =
        static_cast<double>(l) * (l + dim - 2) + (dim - 1.0) * (dim - 3.0) / 4.0;
    const double shifted_l = l + (dim - 3.0) / 2.0;
    const double factored = shifted_l * (shifted_l + 1.0);
    if (std::abs(direct - factored) > 1e-12 * std::max(1.0, std::abs(direct)))
        throw std::logic_error("centrifugal coefficient forms disagree");
    centrifugal_coefficient = direct;
}

EffectiveProblem reduce_to_normal_form(const PotentialParams& p, const Channel& ch) {
    return EffectiveProblem(p, ch.l, ch.dim);
}

RadialGrid default_grid(const PotentialParams& p, const Channel& ch, int steps,
                        std::optional<double> r_max_override) {
    const double alpha = derive_alpha(p);
    const double rms = std::sqrt((ch.l + ch.n + ch.dim / 2.0) / (2.0 * alpha));
    double r_max = std::max(std::sqrt(40.0 / alpha), 3.0 * rms);
    if (r_max_override) r_max = *r_max_override;
    const double r_min = r_max / (steps + 1.0);  // left boundary exactly at 0
    return RadialGrid(r_min, r_max, steps);
}

TridiagonalOperator discretize(const EffectiveProblem& ep, const RadialGrid& g) {
    require(g.steps >= 100, "grid too coarse: need at least 100 interior points");
    const double mu = ep.params.mu;
    const double kinetic = 1.0 / (mu * g.h * g.h);
    TridiagonalOperator op;
    op.diag.resize(g.steps);
    op.off.assign(g.steps - 1, -0.5 * kinetic);
    for (int i = 0; i < g.steps; ++i) {
        const double r = g.point(i);
        op.diag[i] =
            kinetic + ep.params(r) + ep.centrifugal_coefficient / (2.0 * mu * r * r);
    }
    return op;
}

int sturm_count_below(const TridiagonalOperator& op, double shift) {
    double max_off2 = 0.0;
    for (double e : op.off) max_off2 = std::max(max_off2, e * e);
    const double pivmin =
        std::numeric_limits<double>::min() * std::max(1.0, max_off2);

    int count = 0;
    double q = op.diag[0] - shift;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t j = 1; j < op.diag.size(); ++j) {
        q = op.diag[j] - shift - op.off[j - 1] * op.off[j - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count) {
    const int m = static_cast<int>(op.diag.size());
    require(count >= 1 && count <= m, "eigenvalue count out of range");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < m; ++i) {
        const double radius = (i > 0 ? std::abs(op.off[i - 1]) : 0.0) +
                              (i + 1 < m ? std::abs(op.off[i]) : 0.0);
        lo = std::min(lo, op.diag[i] - radius);
        hi = std::max(hi, op.diag[i] + radius);
    }
    const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    lo -= pad;
    hi += pad;

    std::vector<double> values;
    values.reserve(count);
    for (int k = 1; k <= count; ++k) {
        double a = values.empty() ? lo : values.back();
        double b = hi;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (b - a <= 1e-12 * std::max(1.0, std::abs(mid))) break;
            if (sturm_count_below(op, mid) >= k)
                b = mid;
            else
                a = mid;
        }
        values.push_back(0.5 * (a + b));
    }
    return values;
}

std::vector<double> lowest_eigenvalues_extrapolated(const EffectiveProblem& ep,
                                                    const RadialGrid& g, int count) {
    const auto coarse = lowest_eigenvalues(discretize(ep, g), count);
    const auto fine = lowest_eigenvalues(discretize(ep, refined_grid(g)), count);
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

GridFunction eigenfunction(const TridiagonalOperator& op, const RadialGrid& g,
                           double eigenvalue) {
    const std::size_t m = op.diag.size();
    require(static_cast<int>(m) == g.steps, "operator and grid sizes disagree");

    const ShiftedTridiagSolver solver(op, eigenvalue);

    // fixed-seed start keeps the whole pipeline reproducible
    std::vector<double> u(m);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < m; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        u[i] = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    }
    auto l2 = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    };
    double norm = l2(u);
    for (double& v : u) v /= norm;

    bool converged = false;
    for (int sweep = 0; sweep < 10 && !converged; ++sweep) {
        std::vector<double> next = u;
        solver.solve(next);
        norm = l2(next);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw NumericalError("inverse iteration produced a degenerate vector");
        for (double& v : next) v /= norm;
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += next[i] * u[i];
        if (dot < 0.0)
            for (double& v : next) v = -v;
        double diff = 0.0;
        for (std::size_t i = 0; i < m; ++i) diff += (next[i] - u[i]) * (next[i] - u[i]);
        converged = std::sqrt(diff) < 1e-10;
        u = std::move(next);
    }
    if (!converged)
        throw NumericalError("inverse iteration failed to converge in 10 sweeps");

    const double scale = 1.0 / std::sqrt(g.h);
    for (double& v : u) v *= scale;  // sum u_i^2 h = 1

    double peak = 0.0;
    for (double v : u) peak = std::max(peak, std::abs(v));
    for (double v : u) {
        if (std::abs(v) > 1e-8 * peak) {
            if (v < 0.0)
                for (double& w : u) w = -w;
            break;
        }
    }
    return {g, std::move(u)};
}

int count_sign_changes(const GridFunction& u) {
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    const double floor = 1e-8 * peak;
    int changes = 0;
    int last_sign = 0;
    for (double v : u.values) {
        if (std::abs(v) <= floor) continue;
        const int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++changes;
        last_sign = sign;
    }
    return changes;
}

double quadrature_norm(const std::function<double(double)>& radial, const Channel& ch,
                       const RadialGrid& g) {
    return radial_integral(radial, ch.dim, g, 0);
}

double expectation_r2(const std::function<double(double)>& radial, const Channel& ch,
                      const RadialGrid& g) {
    const double weighted = radial_integral(radial, ch.dim, g, 2);
    const double norm = radial_integral(radial, ch.dim, g, 0);
    return weighted / norm;
}

double ode_residual(const RadialWavefunction& R, double energy,
                    const PotentialParams& p, const Channel& ch,
                    const std::vector<double>& samples) {
    require(!samples.empty(), "need at least one sample point");
    const double separation = ch.separation_constant();
    double scale = 1.0;
    for (double r : samples) scale = std::max(scale, std::abs(R(r)));
    double worst = 0.0;
    for (double r : samples) {
        require(r > 0.0, "residual samples must be positive");
        const double value = R(r);
        const double lhs = R.second_derivative(r) +
                           (ch.dim - 1.0) / r * R.derivative(r) -
                           separation / (r * r) * value +
                           2.0 * p.mu * (energy - p(r)) * value;
        worst = std::max(worst, std::abs(lhs));
    }
    return worst / scale;
}

}  // namespace kb::oracle
