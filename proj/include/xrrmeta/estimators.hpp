#pragma once

#include <utility>

#include "xrrmeta/dataset.hpp"
#include "xrrmeta/weights.hpp"

namespace xrrmeta {

struct TestStatResult {
    double mu_hat = 0.0;  // point estimate of the treatment contrast
    double nu_hat = 0.0;  // dispersion estimate, floored at 0
    double var_hat = 0.0; // estimated variance of mu_hat
    double t_value = 0.0; // (mu_hat - mu)^2 / var_hat at the hypothesized mu
};

// Sums over studies of the five per-study table terms.
struct MomentSums {
    double mu = 0.0;
    double mu_cc = 0.0;
    double sq_cc = 0.0;
    double inv_cc = 0.0;
    double one_minus_inv = 0.0;

    void add_row(const double* r) {
        mu += r[0];
        mu_cc += r[1];
        sq_cc += r[2];
        inv_cc += r[3];
        one_minus_inv += r[4];
    }
};

// Moment estimators for the all-balanced (n1 == n2) case; throws if any study
// is unbalanced.
std::pair<double, double> mom_balanced(const MetaDataset& data);

// Weighted analogues over the subsampled outcome enumeration; reduces to
// mom_balanced bit-for-bit when every study is balanced.
std::pair<double, double> mom_unbalanced(const MetaDataset& data);

// Shared core: estimates and Wald statistic from accumulated sums.
TestStatResult stat_from_sums(const MomentSums& s, int k, double mu);

MomentSums balanced_sums(const MetaDataset& data);
MomentSums observed_sums(const std::vector<StudyTable>& tables, const MetaDataset& data);

TestStatResult wald_statistic(const MetaDataset& data, double mu);

}  // namespace xrrmeta
