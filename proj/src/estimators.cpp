#include "xrrmeta/estimators.hpp"

#include <cmath>
#include <limits>

#include "xrrmeta/errors.hpp"

namespace xrrmeta {

MomentSums balanced_sums(const MetaDataset& data) {
    MomentSums s;
    for (const auto& st : data.studies) {
        double ys = st.total();
        double t1 = st.y1 + 0.5;
        double td = ys + 1.0;
        s.mu += st.y1 / ys;
        s.mu_cc += t1 / td;
        s.sq_cc += (t1 / td) * (t1 / td);
        s.inv_cc += 1.0 / td;
        s.one_minus_inv += 1.0 - 1.0 / td;
    }
    return s;
}

MomentSums observed_sums(const std::vector<StudyTable>& tables, const MetaDataset& data) {
    MomentSums s;
    for (size_t i = 0; i < tables.size(); ++i) s.add_row(tables[i].row(data.studies[i].y1));
    return s;
}

TestStatResult stat_from_sums(const MomentSums& s, int k, double mu) {
    const double kk = double(k);
    TestStatResult r;
    r.mu_hat = s.mu / kk;
    const double mu_cc = s.mu_cc / kk;
    const double nu_raw = (s.sq_cc - mu_cc * s.inv_cc) / s.one_minus_inv - mu_cc * mu_cc;
    r.nu_hat = std::max(0.0, nu_raw);
    const double var =
        (mu_cc * (1.0 - mu_cc) * s.inv_cc + r.nu_hat * s.one_minus_inv) / (kk * kk);
    const double d = r.mu_hat - mu;
    if (std::isfinite(var) && var > 0.0) {
        r.var_hat = var;
        r.t_value = d * d / r.var_hat;
    } else {
        // unreachable for valid data (every informative study keeps the
        // corrected variance term positive); indicator fallback
        r.var_hat = 0.0;
        r.t_value = d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return r;
}

std::pair<double, double> mom_balanced(const MetaDataset& data) {
    if (!data.all_balanced())
        throw std::invalid_argument("mom_balanced requires n1 == n2 in every study");
    auto r = stat_from_sums(balanced_sums(data), data.k(), 0.5);
    return {r.mu_hat, r.nu_hat};
}

std::pair<double, double> mom_unbalanced(const MetaDataset& data) {
    auto tabs = build_tables(data);
    auto r = stat_from_sums(observed_sums(tabs, data), data.k(), 0.5);
    return {r.mu_hat, r.nu_hat};
}

TestStatResult wald_statistic(const MetaDataset& data, double mu) {
    if (data.all_balanced()) return stat_from_sums(balanced_sums(data), data.k(), mu);
    auto tabs = build_tables(data);
    return stat_from_sums(observed_sums(tabs, data), data.k(), mu);
}

}  // namespace xrrmeta
