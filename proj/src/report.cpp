#include "xrrmeta/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "xrrmeta/version.hpp"

namespace xrrmeta {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string round2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

ordered_json number_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

ordered_json interval_json(const char* scale, double est, double lo, double hi, double p) {
    ordered_json j;
    j["scale"] = scale;
    j["estimate"] = number_or_null(est);
    j["ci_lower"] = number_or_null(lo);
    j["ci_upper"] = number_or_null(hi);
    j["ci_length"] = number_or_null(hi - lo);
    j["p_value"] = number_or_null(p);
    j["display"] = round2(est) + " [" + round2(lo) + ", " + round2(hi) + "]";
    return j;
}

}  // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string report_to_json(const AnalysisReport& r) {
    ordered_json j;
    j["schema_version"] = XRRMETA_JSON_SCHEMA_VERSION;
    j["generator"] = std::string("xrrmeta ") + XRRMETA_VERSION;
    j["input"] = r.input_path;
    j["studies"] = ordered_json{{"total", r.k_tot}, {"informative", r.k}, {"double_zero", r.dz}};
    ordered_json cfg;
    cfg["alpha"] = r.alpha;
    cfg["mc_reps"] = r.mc_reps;
    cfg["step"] = r.step;
    cfg["seed"] = r.seed;
    cfg["threads"] = r.threads;
    j["config"] = cfg;
    if (r.has_exact) {
        ordered_json e = interval_json("mu", r.observed.mu_hat, r.ci.lower, r.ci.upper, r.ci.p_null);
        e["p_value_note"] = "p-value for mu = 0.5 (no treated/control difference)";
        e["mu_hat"] = number_or_null(r.observed.mu_hat);
        e["nu_hat"] = number_or_null(r.observed.nu_hat);
        e["var_hat"] = number_or_null(r.observed.var_hat);
        e["degenerate"] = r.ci.diag.degenerate;
        e["correction_moved_lower"] = r.ci.diag.correction_moved_lower;
        e["correction_moved_upper"] = r.ci.diag.correction_moved_upper;
        e["profile_evals"] = r.ci.diag.profile_evals;
        e["grid_evals"] = r.ci.diag.grid_evals;
        j["xrrmeta"] = e;
    }
    ordered_json comps = ordered_json::array();
    for (const auto& c : r.comparators) {
        ordered_json cj = interval_json("or", c.or_hat, c.ci_lo, c.ci_hi, c.p_value);
        ordered_json named;
        named["method"] = method_name(c.method);
        for (auto& [k, v] : cj.items()) named[k] = v;
        if (c.method == Method::DL || c.method == Method::PETO_R)
            named["tau2"] = number_or_null(c.tau2);
        comps.push_back(named);
    }
    j["comparators"] = comps;
    j["wall_ms"] = r.wall_ms;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const AnalysisReport& r) {
    std::ostringstream out;
    out << "method,scale,estimate,ci_lower,ci_upper,ci_length,p_value\n";
    auto row = [&](const std::string& m, const char* scale, double est, double lo, double hi,
                   double p) {
        out << m << ',' << scale << ',' << format_double(est) << ',' << format_double(lo) << ','
            << format_double(hi) << ',' << format_double(hi - lo) << ',' << format_double(p)
            << '\n';
    };
    if (r.has_exact) row("xrrmeta", "mu", r.observed.mu_hat, r.ci.lower, r.ci.upper, r.ci.p_null);
    for (const auto& c : r.comparators)
        row(method_name(c.method), "or", c.or_hat, c.ci_lo, c.ci_hi, c.p_value);
    return out.str();
}

std::string experiment_to_csv(const Scenario& sc, const ExperimentResult& res) {
    std::ostringstream out;
    out << "# alpha0=" << format_double(sc.alpha0) << " beta0=" << format_double(sc.beta0)
        << " r0=" << format_double(sc.r0) << " k=" << sc.k_tot << " reps=" << sc.reps
        << " seed=" << sc.seed << '\n';
    out << "# implied_mu=" << format_double(sc.implied_mu())
        << " implied_nu=" << format_double(sc.implied_nu())
        << " true_or=" << format_double(sc.true_or())
        << " dropped_replicates=" << res.dropped_replicates << '\n';
    out << "method,mu0,nu0,r0,k,reps_used,failures,reject_rate,reject_se,coverage,mean_ci_length\n";
    for (const auto& row : res.rows) {
        out << row.method << ',' << format_double(sc.implied_mu()) << ','
            << format_double(sc.implied_nu()) << ',' << format_double(sc.r0) << ',' << sc.k_tot
            << ',' << row.reps_used << ',' << row.failures << ',' << format_double(row.reject_rate)
            << ',' << format_double(row.reject_se) << ',' << format_double(row.coverage) << ','
            << format_double(row.mean_ci_length) << '\n';
    }
    return out.str();
}

}  // namespace xrrmeta
