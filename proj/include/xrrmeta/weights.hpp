#pragma once

#include <vector>

#include "xrrmeta/dataset.hpp"

namespace xrrmeta {

struct OutcomeWeight {
    int y1_star = 0;     // treated events in the subsampled design
    int y_dot_star = 0;  // total events in the subsampled design
    double weight = 0.0; // renormalized hypergeometric mass
};

struct BalancedWeights {
    std::vector<OutcomeWeight> outcomes;
};

// Enumerate the equal-size subsampled outcomes of one study with their
// hypergeometric weights. The larger arm is subsampled to the smaller; when
// the untouched arm has zero events the all-zero outcome is removed and the
// remaining weights renormalized (drop_dz = false keeps it, used only to
// probe the direction of the induced bias).
BalancedWeights enumerate_balanced_weights(const StudyRecord& s, bool drop_dz = true);

// Accumulated statistic terms for one study at each hypothetical treated
// count y1 = 0..y_dot, weights folded in. Rows feed the Monte Carlo statistic
// without re-enumeration:
//   mu            E*(Y1/Y.)          plain proportion
//   mu_cc         E*((Y1+.5)/(Y.+1)) corrected proportion
//   sq_cc         E*(((Y1+.5)/(Y.+1))^2)
//   inv_cc        E*(1/(Y.+1))
//   one_minus_inv E*(1 - 1/(Y.+1))
struct StudyTable {
    int y_dot = 0;
    std::vector<double> terms;  // (y_dot+1) x 5 row-major

    const double* row(int y1) const { return terms.data() + 5 * y1; }
};

StudyTable build_study_table(int n1, int n2, int y_dot);
std::vector<StudyTable> build_tables(const MetaDataset& data);

}  // namespace xrrmeta
