#include "xrrmeta/ci_search.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "xrrmeta/errors.hpp"
#include "xrrmeta/normal.hpp"
#include "xrrmeta/param_space.hpp"

namespace xrrmeta {

namespace {

class Searcher {
  public:
    Searcher(const MetaDataset& data, const SearchConfig& cfg)
        : ctx_(data), cfg_(cfg), obs_(ctx_.observed_stat(0.5)) {}

    double clamp_mu(double mu) const {
        return std::min(std::max(mu, cfg_.step), 1.0 - cfg_.step);
    }

    // cached profile p-value at the variance boundary
    double boundary(double mu) {
        mu = clamp_mu(mu);
        auto it = cache_.find(bits_of(mu));
        if (it != cache_.end()) return it->second;
        double p = mc_pvalue(ctx_, mu, nu_sup(mu), cfg_.mc).first;
        ++profile_evals_;
        cache_.emplace(bits_of(mu), p);
        return p;
    }

    // supremum over the closed nu-grid [0, nu_sup(mu)]
    double sup_grid(double mu) {
        mu = clamp_mu(mu);
        const double ns = nu_sup(mu);
        const int n = std::max(2, cfg_.nu_grid);
        double best = 0.0;
        for (int i = 0; i < n && best < 1.0; ++i) {
            double nu = ns * (double(i) / double(n - 1));
            best = std::max(best, mc_pvalue(ctx_, mu, nu, cfg_.mc).first);
            ++grid_evals_;
        }
        return best;
    }

    // grid points are anchored, never accumulated, so revisits hit the cache
    double grid_point(double anchor, int j, int dir) const {
        return clamp_mu(anchor + double(dir) * (double(j) * cfg_.step));
    }

    std::pair<double, double> starts() {
        const double z = norm_ppf(1.0 - cfg_.alpha / 2.0);
        const double half = z * std::sqrt(obs_.var_hat);
        double lo = clamp_mu(obs_.mu_hat - half);
        double hi = clamp_mu(obs_.mu_hat + half);
        if (boundary(lo) < cfg_.alpha) lo = clamp_mu(obs_.mu_hat);
        if (boundary(hi) < cfg_.alpha) hi = clamp_mu(obs_.mu_hat);
        return {lo, hi};
    }

    int iterate_side(double anchor, int dir) {
        int last = 0;
        for (int j = 1;; ++j) {
            double cand = grid_point(anchor, j, dir);
            if (cand == grid_point(anchor, j - 1, dir)) break;  // clamp reached
            if (boundary(cand) < cfg_.alpha) break;
            last = j;
            if (cand == clamp_mu(dir > 0 ? 1.0 : 0.0)) break;  // at the edge
        }
        return last;
    }

    // outermost conforming point within the window; gaps allowed
    template <typename Eval>
    int window_max(double anchor, int dir, Eval&& eval) {
        int best = 0;
        for (int j = 1; j <= cfg_.correction_window; ++j) {
            double cand = grid_point(anchor, j, dir);
            if (cand == grid_point(anchor, j - 1, dir)) break;
            if (eval(cand) >= cfg_.alpha) best = j;
        }
        return best;
    }

    ExactCI run() {
        auto [start_lo, start_hi] = starts();
        ExactCI out;
        fill_diag(out);
        if (boundary(start_lo) < cfg_.alpha && boundary(start_hi) < cfg_.alpha) {
            out.lower = out.upper = clamp_mu(obs_.mu_hat);
            out.diag.degenerate = true;
            out.p_null = sup_grid(0.5);
            fill_diag(out);
            return out;
        }
        double lo_it = grid_point(start_lo, iterate_side(start_lo, -1), -1);
        double hi_it = grid_point(start_hi, iterate_side(start_hi, +1), +1);
        auto r = correct(lo_it, hi_it);
        fill_diag(r);
        return r;
    }

    // boundary window re-check, then the (mu, nu)-grid sweep past each bound
    ExactCI correct(double lo_it, double hi_it) {
        ExactCI out;
        auto bnd = [this](double mu) { return boundary(mu); };
        auto sup = [this](double mu) { return sup_grid(mu); };
        double lo = grid_point(lo_it, window_max(lo_it, -1, bnd), -1);
        double hi = grid_point(hi_it, window_max(hi_it, +1, bnd), +1);
        out.lower = grid_point(lo, window_max(lo, -1, sup), -1);
        out.upper = grid_point(hi, window_max(hi, +1, sup), +1);
        out.diag.correction_moved_lower = out.lower != lo_it;
        out.diag.correction_moved_upper = out.upper != hi_it;
        out.p_null = sup_grid(0.5);
        fill_diag(out);
        return out;
    }

    void fill_diag(ExactCI& ci) const {
        ci.diag.seed = cfg_.mc.seed;
        ci.diag.m = cfg_.mc.m;
        ci.diag.step = cfg_.step;
        ci.diag.alpha = cfg_.alpha;
        ci.diag.profile_evals = profile_evals_;
        ci.diag.grid_evals = grid_evals_;
    }

    const TestStatResult& observed() const { return obs_; }
    double null_pvalue() { return sup_grid(0.5); }

  private:
    McContext ctx_;
    SearchConfig cfg_;
    TestStatResult obs_;
    std::unordered_map<std::uint64_t, double> cache_;
    int profile_evals_ = 0;
    int grid_evals_ = 0;
};

void check_config(const SearchConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    if (!(cfg.step > 0.0 && cfg.step < 0.5)) throw ValidationError("step must lie in (0, 0.5)");
    if (cfg.correction_window < 1) throw ValidationError("correction window must be >= 1");
    if (cfg.mc.m < 1) throw ValidationError("mc replications must be >= 1");
}

}  // namespace

double profile_pvalue_boundary(const MetaDataset& data, double mu, const SearchConfig& cfg) {
    check_config(cfg);
    Searcher s(data, cfg);
    return s.boundary(mu);
}

std::pair<double, double> initialize(const MetaDataset& data, const SearchConfig& cfg) {
    check_config(cfg);
    Searcher s(data, cfg);
    return s.starts();
}

std::pair<double, double> iterate_bounds(const MetaDataset& data,
                                         std::pair<double, double> starts,
                                         const SearchConfig& cfg) {
    check_config(cfg);
    Searcher s(data, cfg);
    double lo = s.grid_point(starts.first, s.iterate_side(starts.first, -1), -1);
    double hi = s.grid_point(starts.second, s.iterate_side(starts.second, +1), +1);
    return {lo, hi};
}

ExactCI correction(const MetaDataset& data, std::pair<double, double> it_bounds,
                   const SearchConfig& cfg) {
    check_config(cfg);
    Searcher s(data, cfg);
    return s.correct(it_bounds.first, it_bounds.second);
}

ExactCI exact_ci(const MetaDataset& data, const SearchConfig& cfg) {
    check_config(cfg);
    if (data.k() < cfg.min_k)
        throw ValidationError(
            "dataset has " + std::to_string(data.k()) + " informative stud" +
            (data.k() == 1 ? "y" : "ies") + " but the exact interval search requires at least " +
            std::to_string(cfg.min_k) +
            "; estimates from so few studies are unreliable (see --min-k)");
    Searcher s(data, cfg);
    return s.run();
}

std::pair<double, double> debug_dense_ci(const MetaDataset& data, const SearchConfig& cfg,
                                         int mu_points) {
    check_config(cfg);
    Searcher s(data, cfg);
    double lo = 2.0, hi = -1.0;
    for (int i = 0; i < mu_points; ++i) {
        double mu = cfg.step + (1.0 - 2.0 * cfg.step) * double(i) / double(mu_points - 1);
        if (s.sup_grid(mu) >= cfg.alpha) {
            lo = std::min(lo, mu);
            hi = std::max(hi, mu);
        }
    }
    if (hi < lo) {
        double m = s.observed().mu_hat;
        return {m, m};
    }
    return {lo, hi};
}

}  // namespace xrrmeta
