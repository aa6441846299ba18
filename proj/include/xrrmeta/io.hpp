#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xrrmeta/dataset.hpp"
#include "xrrmeta/simgen.hpp"

namespace xrrmeta {

// CSV schema: header "study_id,n1,y1,n2,y2", one row per study. Malformed
// rows raise ValidationError naming the line; duplicate ids are reported
// through `warnings` when given.
MetaDataset load_csv(const std::string& path, std::vector<std::string>* warnings = nullptr);

void write_csv(const MetaDataset& data, std::ostream& out);
void write_csv(const MetaDataset& data, const std::string& path);

// Plain key/value scenario file (# comments, key = value). Unknown keys are
// rejected. Recognized: alpha0, beta0, r0, k, reps, seed, size_pool_file
// (CSV with n1,n2 columns; defaults to the built-in rosiglitazone pool).
Scenario load_scenario(const std::string& path);

}  // namespace xrrmeta
