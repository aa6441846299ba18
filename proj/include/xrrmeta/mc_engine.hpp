#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "xrrmeta/dataset.hpp"
#include "xrrmeta/estimators.hpp"
#include "xrrmeta/param_space.hpp"
#include "xrrmeta/rng.hpp"
#include "xrrmeta/weights.hpp"

namespace xrrmeta {

struct McConfig {
    int m = 2000;           // Monte Carlo replications
    std::uint64_t seed = 0;
    int threads = 0;        // 0 = OpenMP default
};

// Immutable per-dataset state shared by every replicate: outcome tables plus
// the per-study totals and size ratios the conditional sampler needs.
class McContext {
  public:
    explicit McContext(const MetaDataset& data);

    int k() const { return k_; }
    TestStatResult observed_stat(double mu) const { return stat_from_sums(obs_sums_, k_, mu); }

    // One replicate's Wald statistic under (mu, nu); alpha/beta precomputed
    // by the caller when nu > 0.
    double replicate_stat(Rng& g, double mu, double nu, double alpha, double beta) const;

    const std::vector<int>& totals() const { return y_dot_; }
    const std::vector<double>& ratios() const { return ratio_; }

  private:
    int k_ = 0;
    std::vector<StudyTable> tables_;
    std::vector<int> y_dot_;
    std::vector<double> ratio_;
    MomentSums obs_sums_;
};

// Null dataset conditional on the observed totals: same sizes and y., treated
// counts redrawn under (mu, nu).
MetaDataset generate_null_dataset(const MetaDataset& data, const ReParams& p, Rng& stream);

// Monte Carlo p-value of the observed statistic at (mu, nu); returns (p, t_obs).
// Deterministic for fixed (seed, mu, nu, data) regardless of thread count.
std::pair<double, double> mc_pvalue(const McContext& ctx, double mu, double nu,
                                    const McConfig& cfg);
std::pair<double, double> mc_pvalue(const MetaDataset& data, double mu, double nu,
                                    const McConfig& cfg);

// Serial reference kernel; must match the parallel one exactly.
std::pair<double, double> mc_pvalue_serial(const McContext& ctx, double mu, double nu,
                                           const McConfig& cfg);

}  // namespace xrrmeta
