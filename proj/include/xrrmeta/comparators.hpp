#pragma once

#include <string>

#include "xrrmeta/dataset.hpp"

namespace xrrmeta {

enum class Method { MH, MH_CC, PETO_F, PETO_R, DL };

const char* method_name(Method m);
Method method_from_name(const std::string& name);  // ValidationError on unknown names

struct OrResult {
    Method method = Method::MH;
    double or_hat = 1.0;
    double ci_lo = 1.0;
    double ci_hi = 1.0;
    double p_value = 1.0;
    double tau2 = 0.0;  // between-study variance; set by the random-effects variants
};

// Mantel-Haenszel pooled odds ratio with Robins-Breslow-Greenland variance.
// cc = true adds 0.5 to all four cells of any study containing a zero cell
// (double-zero studies included); cc = false lets zero studies drop out.
OrResult mantel_haenszel(const MetaDataset& data, bool cc);

// One-step Peto log odds ratio; random_effects = true pools the per-study
// Peto estimates DerSimonian-Laird style (double-zero studies carry V = 0
// and drop out of both variants).
OrResult peto(const MetaDataset& data, bool random_effects);

// Inverse-variance pooled log odds ratio with a moment estimate of the
// between-study variance; 0.5 added to all cells of zero-cell studies,
// double-zero studies included.
OrResult dersimonian_laird(const MetaDataset& data);

OrResult run_comparator(const MetaDataset& data, Method m);

}  // namespace xrrmeta
