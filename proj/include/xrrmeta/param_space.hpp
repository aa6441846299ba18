#pragma once

#include <utility>

namespace xrrmeta {

// Random-effect parameters on the restricted space: mu in (0,1),
// 0 <= nu <= nu_sup(mu). nu = 0 is the point mass at mu.
struct ReParams {
    double mu = 0.5;
    double nu = 0.0;
};

// Largest admissible variance at a given mean (both shape parameters >= 1
// on or below this boundary). Symmetric under mu <-> 1-mu.
double nu_sup(double mu);

ReParams make_params(double mu, double nu);

// Throws for nu = 0 (no finite shape parameters).
std::pair<double, double> reparam_to_alpha_beta(const ReParams& p);
ReParams alpha_beta_to_reparam(double alpha, double beta);

inline double tau_of(double alpha, double beta) { return 1.0 / (alpha + beta + 1.0); }

}  // namespace xrrmeta
