#include "xrrmeta/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "xrrmeta/errors.hpp"

namespace xrrmeta {

double nu_sup(double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw std::domain_error("nu_sup: mu must lie in (0,1), got " + std::to_string(mu));
    return mu * (1.0 - mu) * std::min(mu / (1.0 + mu), (1.0 - mu) / (2.0 - mu));
}

ReParams make_params(double mu, double nu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw ValidationError("mu must lie in (0,1), got " + std::to_string(mu));
    if (nu < 0.0 || nu > nu_sup(mu))
        throw ValidationError("nu must lie in [0, nu_sup(mu)], got " + std::to_string(nu));
    return {mu, nu};
}

std::pair<double, double> reparam_to_alpha_beta(const ReParams& p) {
    if (p.nu <= 0.0)
        throw std::domain_error("nu = 0 is a point mass at mu; no finite shape parameters");
    double c = (p.mu * (1.0 - p.mu) - p.nu) / p.nu;
    return {p.mu * c, (1.0 - p.mu) * c};
}

ReParams alpha_beta_to_reparam(double alpha, double beta) {
    if (alpha <= 0.0 || beta <= 0.0)
        throw std::domain_error("shape parameters must be positive");
    double s = alpha + beta;
    double mu = alpha / s;
    double nu = alpha * beta / (s * s * (s + 1.0));
    return {mu, nu};
}

}  // namespace xrrmeta
