#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "xrrmeta/errors.hpp"

namespace xrrmeta {

// One study: events / sizes for the treated (1) and control (2) arms.
struct StudyRecord {
    std::string id;
    int n1 = 0;
    int y1 = 0;
    int n2 = 0;
    int y2 = 0;

    int total() const { return y1 + y2; }
    bool double_zero() const { return y1 == 0 && y2 == 0; }
    double size_ratio() const { return double(n1) / double(n2); }
    double log_size_ratio() const { return std::log(size_ratio()); }

    bool operator==(const StudyRecord&) const = default;
};

// Validated collection: informative studies (y1+y2 >= 1) separated from
// double-zero studies, input order preserved within each partition.
struct MetaDataset {
    std::vector<StudyRecord> studies;
    std::vector<StudyRecord> dz_studies;

    int k() const { return static_cast<int>(studies.size()); }
    int k_tot() const { return k() + static_cast<int>(dz_studies.size()); }
    bool all_balanced() const;

    bool operator==(const MetaDataset&) const = default;
};

MetaDataset validate_dataset(const std::vector<StudyRecord>& raw);

}  // namespace xrrmeta
