#include "kb/model.hpp"

#include <cmath>
#include <limits>

namespace kb {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

PotentialParams::PotentialParams(double a_, double b_, double c_, double mu_)
    : a(a_), b(b_), c(c_), mu(mu_) {
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(mu),
            "potential parameters must be finite");
    require(a > 0.0, "harmonic strength a must be positive");
    require(mu > 0.0, "reduced mass mu must be positive");
}

Channel::Channel(int n_, int l_, int dim_) : n(n_), l(l_), dim(dim_) {
    require(n >= 0, "quantum number n must be non-negative");
    require(l >= 0, "quantum number l must be non-negative");
    require(dim >= 2, "dimension N must be at least 2");
}

double derive_alpha(const PotentialParams& p) {
    return std::sqrt(p.mu * p.a / 2.0);
}

double q_polynomial(double k, const Channel& ch) {
    return k * (k - 1.0) + k * (ch.dim - 1.0) - ch.separation_constant();
}

KRoots solve_k(const Channel& ch) {
    return {static_cast<double>(ch.l), -static_cast<double>(ch.l + ch.dim - 2)};
}

DerivedParams derive_transform_params(const PotentialParams& p, const Channel& ch) {
    const double alpha = derive_alpha(p);
    DerivedParams d{};
    d.alpha = alpha;
    d.beta = p.mu * p.b / (2.0 * alpha);
    d.gamma = (3.0 - 2.0 * ch.l - ch.dim) / (4.0 * alpha);
    d.eta = 2.0 * ch.l + ch.dim - 1.0;
    d.q = q_polynomial(solve_k(ch).k_plus, ch);
    d.epsilon = std::numeric_limits<double>::quiet_NaN();
    d.lambda = std::numeric_limits<double>::quiet_NaN();
    return d;
}

DerivedParams derive_transform_params(const PotentialParams& p, const Channel& ch,
                                      double energy) {
    DerivedParams d = derive_transform_params(p, ch);
    d.epsilon = epsilon_of_energy(energy, p, ch);
    d.lambda = lambda_of_energy(energy, p, ch);
    return d;
}

double lambda_of_energy(double energy, const PotentialParams& p, const Channel& ch) {
    const double alpha = derive_alpha(p);
    return p.mu * energy / (2.0 * alpha) - (ch.l + ch.dim / 2.0 - 2.0);
}

double epsilon_of_energy(double energy, const PotentialParams& p, const Channel& ch) {
    const double alpha = derive_alpha(p);
    return 2.0 * p.mu * energy - 2.0 * alpha * ch.dim - 4.0 * alpha * ch.l;
}

}  // namespace kb
