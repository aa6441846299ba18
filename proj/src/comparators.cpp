#include "xrrmeta/comparators.hpp"

#include <cmath>
#include <vector>

#include "xrrmeta/errors.hpp"
#include "xrrmeta/normal.hpp"

namespace xrrmeta {

namespace {

constexpr double kZ95 = 1.959963984540054;  // norm_ppf(0.975)

struct Cells {
    double a, b, c, d;  // treated events/non-events, control events/non-events
};

Cells cells_of(const StudyRecord& s, bool cc) {
    Cells x{double(s.y1), double(s.n1 - s.y1), double(s.y2), double(s.n2 - s.y2)};
    if (cc && (x.a == 0.0 || x.b == 0.0 || x.c == 0.0 || x.d == 0.0)) {
        x.a += 0.5;
        x.b += 0.5;
        x.c += 0.5;
        x.d += 0.5;
    }
    return x;
}

OrResult from_log_scale(Method m, double log_or, double se) {
    OrResult r;
    r.method = m;
    r.or_hat = std::exp(log_or);
    r.ci_lo = std::exp(log_or - kZ95 * se);
    r.ci_hi = std::exp(log_or + kZ95 * se);
    r.p_value = 2.0 * norm_sf(std::fabs(log_or) / se);
    return r;
}

// inverse-variance pooling with a DerSimonian-Laird heterogeneity estimate
OrResult dl_pool(Method m, const std::vector<double>& theta, const std::vector<double>& var,
                 double* tau2_out) {
    const std::size_t k = theta.size();
    double sw = 0.0, swt = 0.0, sw2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double w = 1.0 / var[i];
        sw += w;
        swt += w * theta[i];
        sw2 += w * w;
    }
    double fixed = swt / sw;
    double q = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double w = 1.0 / var[i];
        q += w * (theta[i] - fixed) * (theta[i] - fixed);
    }
    double tau2 = 0.0;
    if (k > 1) {
        double denom = sw - sw2 / sw;
        if (denom > 0.0) tau2 = std::max(0.0, (q - double(k - 1)) / denom);
    }
    if (tau2_out) *tau2_out = tau2;
    double sws = 0.0, swst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double w = 1.0 / (var[i] + tau2);
        sws += w;
        swst += w * theta[i];
    }
    return from_log_scale(m, swst / sws, 1.0 / std::sqrt(sws));
}

}  // namespace

OrResult mantel_haenszel(const MetaDataset& data, bool cc) {
    double num = 0.0, den = 0.0;
    double s_r = 0.0, s_s = 0.0, s_pr = 0.0, s_psqr = 0.0, s_qs = 0.0;
    auto accumulate = [&](const StudyRecord& st) {
        Cells x = cells_of(st, cc);
        double t = x.a + x.b + x.c + x.d;
        double r = x.a * x.d / t;
        double s = x.b * x.c / t;
        double p = (x.a + x.d) / t;
        double q = (x.b + x.c) / t;
        num += r;
        den += s;
        s_r += r;
        s_s += s;
        s_pr += p * r;
        s_psqr += p * s + q * r;
        s_qs += q * s;
    };
    for (const auto& st : data.studies) accumulate(st);
    if (cc)
        for (const auto& st : data.dz_studies) accumulate(st);
    if (num <= 0.0 || den <= 0.0)
        throw NumericError("Mantel-Haenszel pooled odds ratio is degenerate: one arm has no "
                           "events across all studies (try the continuity-corrected variant)");
    double log_or = std::log(num / den);
    double var = s_pr / (2.0 * s_r * s_r) + s_psqr / (2.0 * s_r * s_s) + s_qs / (2.0 * s_s * s_s);
    return from_log_scale(cc ? Method::MH_CC : Method::MH, log_or, std::sqrt(var));
}

OrResult peto(const MetaDataset& data, bool random_effects) {
    std::vector<double> theta, var;
    double s_oe = 0.0, s_v = 0.0;
    for (const auto& st : data.studies) {
        double t = double(st.n1 + st.n2);
        double m1 = double(st.y1 + st.y2);
        double m0 = t - m1;
        if (m1 == 0.0 || m0 == 0.0) continue;
        double e = double(st.n1) * m1 / t;
        double v = double(st.n1) * double(st.n2) * m1 * m0 / (t * t * (t - 1.0));
        s_oe += double(st.y1) - e;
        s_v += v;
        theta.push_back((double(st.y1) - e) / v);
        var.push_back(1.0 / v);
    }
    if (s_v <= 0.0)
        throw NumericError("Peto pooling is degenerate: no study has events in either arm");
    if (!random_effects)
        return from_log_scale(Method::PETO_F, s_oe / s_v, 1.0 / std::sqrt(s_v));
    double tau2 = 0.0;
    OrResult r = dl_pool(Method::PETO_R, theta, var, &tau2);
    r.tau2 = tau2;
    return r;
}

OrResult dersimonian_laird(const MetaDataset& data) {
    std::vector<double> theta, var;
    auto accumulate = [&](const StudyRecord& st) {
        Cells x = cells_of(st, true);
        theta.push_back(std::log(x.a * x.d / (x.b * x.c)));
        var.push_back(1.0 / x.a + 1.0 / x.b + 1.0 / x.c + 1.0 / x.d);
    };
    for (const auto& st : data.studies) accumulate(st);
    for (const auto& st : data.dz_studies) accumulate(st);
    if (theta.empty()) throw NumericError("DerSimonian-Laird pooling needs at least one study");
    double tau2 = 0.0;
    OrResult r = dl_pool(Method::DL, theta, var, &tau2);
    r.tau2 = tau2;
    return r;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::MH: return "mh";
        case Method::MH_CC: return "mh-cc";
        case Method::PETO_F: return "peto-f";
        case Method::PETO_R: return "peto-r";
        case Method::DL: return "dl";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "mh") return Method::MH;
    if (name == "mh-cc") return Method::MH_CC;
    if (name == "peto-f") return Method::PETO_F;
    if (name == "peto-r") return Method::PETO_R;
    if (name == "dl") return Method::DL;
    throw ValidationError("unknown method '" + name +
                          "' (expected one of: xrrmeta, mh, mh-cc, peto-f, peto-r, dl)");
}

OrResult run_comparator(const MetaDataset& data, Method m) {
    switch (m) {
        case Method::MH: return mantel_haenszel(data, false);
        case Method::MH_CC: return mantel_haenszel(data, true);
        case Method::PETO_F: return peto(data, false);
        case Method::PETO_R: return peto(data, true);
        case Method::DL: return dersimonian_laird(data);
        default: throw NumericError("unknown comparator method");
    }
}

}  // namespace xrrmeta
