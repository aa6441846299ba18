#include "xrrmeta/mc_engine.hpp"

#include <omp.h>

namespace xrrmeta {

namespace {

inline std::uint64_t replicate_key(const McConfig& cfg, double mu, double nu, int rep) {
    return stream_key(cfg.seed, bits_of(mu), bits_of(nu), std::uint64_t(rep));
}

// success probability of the conditional treated count given pi and n1/n2;
// expit(logit(pi) + log r) without the transcendentals
inline double cond_prob(double pi, double r) {
    return pi * r / (pi * r + (1.0 - pi));
}

}  // namespace

McContext::McContext(const MetaDataset& data)
    : k_(data.k()), tables_(build_tables(data)) {
    y_dot_.reserve(k_);
    ratio_.reserve(k_);
    for (const auto& s : data.studies) {
        y_dot_.push_back(s.total());
        ratio_.push_back(s.size_ratio());
    }
    obs_sums_ = observed_sums(tables_, data);
}

double McContext::replicate_stat(Rng& g, double mu, double nu, double alpha,
                                 double beta) const {
    MomentSums s;
    for (int i = 0; i < k_; ++i) {
        double pi = nu > 0.0 ? g.beta(alpha, beta) : mu;
        int y1 = g.binomial(y_dot_[i], cond_prob(pi, ratio_[i]));
        s.add_row(tables_[i].row(y1));
    }
    return stat_from_sums(s, k_, mu).t_value;
}

MetaDataset generate_null_dataset(const MetaDataset& data, const ReParams& p, Rng& stream) {
    double alpha = 0.0, beta = 0.0;
    if (p.nu > 0.0) {
        auto ab = reparam_to_alpha_beta(p);
        alpha = ab.first;
        beta = ab.second;
    }
    MetaDataset out;
    out.dz_studies = data.dz_studies;
    out.studies.reserve(data.studies.size());
    for (const auto& s : data.studies) {
        double pi = p.nu > 0.0 ? stream.beta(alpha, beta) : p.mu;
        StudyRecord r = s;
        r.y1 = stream.binomial(s.total(), cond_prob(pi, s.size_ratio()));
        r.y2 = s.total() - r.y1;
        out.studies.push_back(r);
    }
    return out;
}

template <bool Parallel>
static std::pair<double, double> run_kernel(const McContext& ctx, double mu, double nu,
                                            const McConfig& cfg) {
    const double t_obs = ctx.observed_stat(mu).t_value;
    double alpha = 0.0, beta = 0.0;
    if (nu > 0.0) {
        auto ab = reparam_to_alpha_beta({mu, nu});
        alpha = ab.first;
        beta = ab.second;
    }
    long count = 0;
    if constexpr (Parallel) {
        const int nt = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for reduction(+ : count) schedule(static) num_threads(nt)
        for (int rep = 0; rep < cfg.m; ++rep) {
            Rng g(replicate_key(cfg, mu, nu, rep));
            if (ctx.replicate_stat(g, mu, nu, alpha, beta) >= t_obs) ++count;
        }
    } else {
        for (int rep = 0; rep < cfg.m; ++rep) {
            Rng g(replicate_key(cfg, mu, nu, rep));
            if (ctx.replicate_stat(g, mu, nu, alpha, beta) >= t_obs) ++count;
        }
    }
    return {double(count) / double(cfg.m), t_obs};
}

std::pair<double, double> mc_pvalue(const McContext& ctx, double mu, double nu,
                                    const McConfig& cfg) {
    return run_kernel<true>(ctx, mu, nu, cfg);
}

std::pair<double, double> mc_pvalue(const MetaDataset& data, double mu, double nu,
                                    const McConfig& cfg) {
    McContext ctx(data);
    return run_kernel<true>(ctx, mu, nu, cfg);
}

std::pair<double, double> mc_pvalue_serial(const McContext& ctx, double mu, double nu,
                                           const McConfig& cfg) {
    return run_kernel<false>(ctx, mu, nu, cfg);
}

}  // namespace xrrmeta
