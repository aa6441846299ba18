#include "xrrmeta/dataset.hpp"

#include <algorithm>

namespace xrrmeta {

bool MetaDataset::all_balanced() const {
    return std::all_of(studies.begin(), studies.end(),
                       [](const StudyRecord& s) { return s.n1 == s.n2; });
}

MetaDataset validate_dataset(const std::vector<StudyRecord>& raw) {
    if (raw.empty()) throw ValidationError("dataset is empty");
    MetaDataset out;
    for (const auto& s : raw) {
        if (s.n1 <= 0 || s.n2 <= 0)
            throw ValidationError("study '" + s.id + "': arm sizes must be positive");
        if (s.y1 < 0 || s.y1 > s.n1)
            throw ValidationError("study '" + s.id + "': y1 outside [0, n1]");
        if (s.y2 < 0 || s.y2 > s.n2)
            throw ValidationError("study '" + s.id + "': y2 outside [0, n2]");
        (s.double_zero() ? out.dz_studies : out.studies).push_back(s);
    }
    if (out.studies.empty())
        throw ValidationError("no informative studies: every study has zero events in both arms");
    return out;
}

}  // namespace xrrmeta
