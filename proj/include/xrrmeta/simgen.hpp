#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xrrmeta/ci_search.hpp"
#include "xrrmeta/dataset.hpp"

namespace xrrmeta {

// Poisson-Gamma generating process: lambda_1 ~ Gamma(alpha0, rate alpha0/r0),
// lambda_2 ~ Gamma(beta0, rate alpha0/r0), counts Poisson(N * lambda); the
// induced study contrast is Beta(alpha0, beta0).
struct Scenario {
    double alpha0 = 1.0;
    double beta0 = 1.0;
    double r0 = 0.01;  // mean treated-arm event rate
    int k_tot = 12;
    std::vector<std::pair<int, int>> size_pool;  // (n1, n2) sampled with replacement
    int reps = 0;
    std::uint64_t seed = 0;

    double implied_mu() const { return alpha0 / (alpha0 + beta0); }
    double implied_nu() const {
        double m = implied_mu();
        return m * (1.0 - m) / (alpha0 + beta0 + 1.0);
    }
    double true_or() const { return alpha0 / beta0; }
};

// The 48 treated/control size pairs of the rosiglitazone study, the default
// size pool.
const std::vector<std::pair<int, int>>& rosiglitazone_size_pool();

// One synthetic dataset (raw, pre-validation). Studies whose Poisson draw
// exceeds the arm size are redrawn; nullopt after 100 failed attempts on a
// study (the replicate is then dropped and counted by the caller).
std::optional<std::vector<StudyRecord>> generate_dataset(const Scenario& sc, long rep_index);

struct MethodSummary {
    std::string method;
    int reps_used = 0;   // replicates this method produced a result for
    int failures = 0;    // replicates where the method could not run
    double reject_rate = 0.0;
    double reject_se = 0.0;
    double coverage = 0.0;       // of mu0 for the exact method, of alpha0/beta0 for comparators
    double mean_ci_length = 0.0; // mu scale / OR scale respectively
};

struct ExperimentResult {
    std::vector<MethodSummary> rows;
    int dropped_replicates = 0;  // generation failure, all-DZ, or k < 2
};

// Per-replicate analysis with every requested method. Replicate r uses the
// stream derived from (sc.seed, rep_start + r), so chunked runs reproduce a
// single long run.
ExperimentResult run_experiment(const Scenario& sc, const std::vector<std::string>& methods,
                                const SearchConfig& xrr_cfg, long rep_start = 0);

}  // namespace xrrmeta
