#include "kb/closed_form.hpp"

#include <cmath>
#include <limits>

namespace kb {

namespace {

// log of the braced factor in the normalization constant; the n! prefactor
// is added separately so the wavefunction amplitude C/n! never goes through
// a large intermediate.
double log_norm_braces(const Channel& ch, const PotentialParams& p) {
    const DerivedParams d = derive_transform_params(p, ch);
    const double s = ch.l + ch.n + ch.dim / 2.0;
    return std::log(2.0) + s * std::log(2.0 * d.alpha) - std::lgamma(s)
         - d.beta * d.beta / (2.0 * d.alpha);
}

}  // namespace

double energy_eigenvalue(const Channel& ch, const PotentialParams& p) {
    return std::sqrt(p.a / (2.0 * p.mu)) * (2.0 * ch.n + 2.0 * ch.l + ch.dim)
         - p.b * p.b / (4.0 * p.a);
}

IdentityResiduals identity_residuals(const Channel& ch, const PotentialParams& p) {
    const double energy = energy_eigenvalue(ch, p);
    const DerivedParams d = derive_transform_params(p, ch, energy);
    const double coulomb = p.mu * p.c / (2.0 * d.alpha);
    IdentityResiduals r;
    r.r25 = d.gamma - (ch.n + 1.0) / (4.0 * d.alpha);
    r.r26 = d.gamma * d.beta - coulomb;
    r.r27 = (ch.n + 1.0) * (ch.n + 2.0) - (ch.n + 1.0) * d.lambda - coulomb * d.beta;
    return r;
}

double exact_solvability_constraint(const Channel& ch, const PotentialParams& p) {
    const double alpha = derive_alpha(p);
    return p.b * (2.0 * ch.n + 2.0 * ch.l + ch.dim - 1.0) / (4.0 * alpha);
}

double normalization_constant(const Channel& ch, const PotentialParams& p) {
    const double log_c = std::lgamma(ch.n + 1.0) + 0.5 * log_norm_braces(ch, p);
    if (log_c >= std::log(std::numeric_limits<double>::max()))
        throw std::range_error("normalization constant overflows double range");
    return std::exp(log_c);
}

double RadialWavefunction::operator()(double r) const {
    if (r < 0.0) throw std::domain_error("radial coordinate must be non-negative");
    return amplitude * std::pow(r, power) * std::exp(-alpha * r * r - beta * r);
}

double RadialWavefunction::derivative(double r) const {
    if (r < 0.0) throw std::domain_error("radial coordinate must be non-negative");
    const double envelope = std::exp(-alpha * r * r - beta * r);
    const double slope = 2.0 * alpha * r + beta;
    // p r^{p-1} written so that p = 0 never touches r^{-1}
    const double power_term = (power == 0.0) ? 0.0 : power * std::pow(r, power - 1.0);
    return amplitude * envelope * (power_term - slope * std::pow(r, power));
}

double RadialWavefunction::second_derivative(double r) const {
    if (r < 0.0) throw std::domain_error("radial coordinate must be non-negative");
    const double envelope = std::exp(-alpha * r * r - beta * r);
    const double slope = 2.0 * alpha * r + beta;
    const double t0 = (power == 0.0 || power == 1.0)
                          ? 0.0
                          : power * (power - 1.0) * std::pow(r, power - 2.0);
    const double t1 = (power == 0.0) ? 0.0
                                     : -2.0 * power * slope * std::pow(r, power - 1.0);
    const double t2 = (slope * slope - 2.0 * alpha) * std::pow(r, power);
    return amplitude * envelope * (t0 + t1 + t2);
}

RadialWavefunction radial_wavefunction(const Channel& ch, const PotentialParams& p) {
    const DerivedParams d = derive_transform_params(p, ch);
    const double log_amplitude = 0.5 * log_norm_braces(ch, p);
    if (log_amplitude >= std::log(std::numeric_limits<double>::max()))
        throw std::range_error("wavefunction amplitude overflows double range");
    return {std::exp(log_amplitude), static_cast<double>(ch.l + ch.n), d.alpha, d.beta};
}

double rms_radius(const Channel& ch, const PotentialParams& p) {
    const double alpha = derive_alpha(p);
    return std::sqrt((ch.l + ch.n + ch.dim / 2.0) / (2.0 * alpha));
}

ClosedFormState closed_form_state(const Channel& ch, const PotentialParams& p) {
    return {ch, p, energy_eigenvalue(ch, p), normalization_constant(ch, p),
            identity_residuals(ch, p)};
}

}  // namespace kb
