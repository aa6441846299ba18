#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xrrmeta/ci_search.hpp"
#include "xrrmeta/comparators.hpp"
#include "xrrmeta/estimators.hpp"
#include "xrrmeta/simgen.hpp"

namespace xrrmeta {

struct AnalysisReport {
    std::string input_path;
    int k = 0;
    int k_tot = 0;
    int dz = 0;

    bool has_exact = false;
    TestStatResult observed;  // at mu = 0.5
    ExactCI ci;

    std::vector<OrResult> comparators;

    double alpha = 0.05;
    std::uint64_t seed = 0;
    int mc_reps = 0;
    double step = 0.0;
    int threads = 0;
    double wall_ms = 0.0;  // zeroed under --stable-output
};

// Full-precision values plus 2-decimal display strings; key order fixed.
std::string report_to_json(const AnalysisReport& r);

// Plot-ready rows: method,scale,estimate,ci_lower,ci_upper,ci_length,p_value
std::string report_to_csv(const AnalysisReport& r);

// Simulation summary CSV with a '#' metadata header; one row per method.
std::string experiment_to_csv(const Scenario& sc, const ExperimentResult& res);

std::string format_double(double x);  // shortest round-trip form

}  // namespace xrrmeta
