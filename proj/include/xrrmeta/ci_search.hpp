#pragma once

#include <cstdint>
#include <utility>

#include "xrrmeta/dataset.hpp"
#include "xrrmeta/mc_engine.hpp"

namespace xrrmeta {

struct SearchConfig {
    double alpha = 0.05;
    double step = 0.001;        // grid step on the mu axis
    int correction_window = 10; // extra grid points checked beyond each bound
    int nu_grid = 20;           // nu values per mu in the correction sweep
    int min_k = 2;              // refuse below this many informative studies
    McConfig mc;
};

struct SearchDiagnostics {
    std::uint64_t seed = 0;
    int m = 0;
    double step = 0.0;
    double alpha = 0.0;
    int profile_evals = 0;  // distinct boundary p-value evaluations
    int grid_evals = 0;     // (mu, nu)-grid evaluations in the correction sweep
    bool correction_moved_lower = false;
    bool correction_moved_upper = false;
    bool degenerate = false;  // profile p at both starting points below alpha
};

struct ExactCI {
    double lower = 0.0;
    double upper = 0.0;
    double p_null = 1.0;  // supremum p-value at mu = 0.5
    SearchDiagnostics diag;
};

// Profile p-value along the variance boundary: p(mu, nu_sup(mu)).
double profile_pvalue_boundary(const MetaDataset& data, double mu, const SearchConfig& cfg);

// Starting points from the asymptotic interval, clamped to [s, 1-s]; an
// endpoint whose boundary p-value falls below alpha is replaced by mu_hat.
std::pair<double, double> initialize(const MetaDataset& data, const SearchConfig& cfg);

// Outward grid scan from each start; returns the last conforming grid points.
std::pair<double, double> iterate_bounds(const MetaDataset& data,
                                         std::pair<double, double> starts,
                                         const SearchConfig& cfg);

// Window re-check on the boundary, then the (mu, nu)-grid sweep beyond each
// bound; also evaluates the null p-value at mu = 0.5.
ExactCI correction(const MetaDataset& data, std::pair<double, double> it_bounds,
                   const SearchConfig& cfg);

// Full pipeline. Throws ValidationError when k < cfg.min_k.
ExactCI exact_ci(const MetaDataset& data, const SearchConfig& cfg);

// Dense (mu, nu)-grid inversion over the whole restricted space; debug aid
// for validating the boundary search on small problems.
std::pair<double, double> debug_dense_ci(const MetaDataset& data, const SearchConfig& cfg,
                                         int mu_points);

}  // namespace xrrmeta
