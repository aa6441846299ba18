#include "xrrmeta/weights.hpp"

#include <algorithm>
#include <cmath>

namespace xrrmeta {

namespace {

// Subsampled outcomes for one (y1, y2) configuration. The larger arm is cut
// down to the smaller arm's size; the retained event count l runs over the
// hypergeometric support. Weights are built from exact adjacent-mass ratios
//   p_l / p_{l-1} = (n_small - l + 1)(y_big - l + 1) / ((n_big - y_big - n_small + l) l)
// with power-of-two rescaling, which stays accurate where log-gamma
// differences of large arguments would not.
std::vector<OutcomeWeight> outcomes_for(int n1, int n2, int y1, int y2, bool drop_dz) {
    const bool treat_big = n1 >= n2;
    const int n_big = treat_big ? n1 : n2;
    const int n_small = treat_big ? n2 : n1;
    const int y_big = treat_big ? y1 : y2;
    const int y_other = treat_big ? y2 : y1;

    const int lo = std::max(0, n_small - n_big + y_big);
    const int hi = std::min(y_big, n_small);

    std::vector<double> w;
    w.reserve(hi - lo + 1);
    double cur = 1.0;
    for (int l = lo; l <= hi; ++l) {
        if (l > lo) {
            double num = double(n_small - l + 1) * double(y_big - l + 1);
            double den = double(n_big - y_big - n_small + l) * double(l);
            cur *= num / den;
            if (cur > 1e290) {
                for (double& x : w) x = std::ldexp(x, -1000);
                cur = std::ldexp(cur, -1000);
            }
        }
        w.push_back(cur);
    }

    std::vector<OutcomeWeight> out;
    out.reserve(w.size());
    double total = 0.0;
    for (int l = lo; l <= hi; ++l) {
        int t1 = treat_big ? l : y1;
        int t2 = treat_big ? y2 : l;
        if (drop_dz && y_other == 0 && l == 0) continue;
        total += w[l - lo];
        out.push_back({t1, t1 + t2, w[l - lo]});
    }
    for (auto& o : out) o.weight /= total;
    return out;
}

}  // namespace

BalancedWeights enumerate_balanced_weights(const StudyRecord& s, bool drop_dz) {
    return {outcomes_for(s.n1, s.n2, s.y1, s.y2, drop_dz)};
}

StudyTable build_study_table(int n1, int n2, int y_dot) {
    StudyTable t;
    t.y_dot = y_dot;
    t.terms.assign(5 * (y_dot + 1), 0.0);
    int last_feasible = -1;
    for (int y1 = 0; y1 <= y_dot; ++y1) {
        int y2 = y_dot - y1;
        double* r = t.terms.data() + 5 * y1;
        if (y1 > n1 || y2 > n2) {
            // outside the representable design; fall back to the nearest
            // feasible row (unreachable for rare-event totals)
            int src = y1 > n1 ? last_feasible : -1;
            if (src < 0) continue;  // left-infeasible rows filled below
            std::copy_n(t.terms.data() + 5 * src, 5, r);
            continue;
        }
        last_feasible = y1;
        for (const auto& o : outcomes_for(n1, n2, y1, y2, true)) {
            double ys = o.y_dot_star;
            double t1 = o.y1_star + 0.5;
            double td = ys + 1.0;
            r[0] += o.weight * (o.y1_star / ys);
            r[1] += o.weight * (t1 / td);
            r[2] += o.weight * ((t1 / td) * (t1 / td));
            r[3] += o.weight * (1.0 / td);
            r[4] += o.weight * (1.0 - 1.0 / td);
        }
    }
    // rows infeasible on the left (y2 > n2) copy the first feasible row
    int first_feasible = std::max(0, y_dot - n2);
    for (int y1 = 0; y1 < first_feasible; ++y1)
        std::copy_n(t.terms.data() + 5 * first_feasible, 5, t.terms.data() + 5 * y1);
    return t;
}

std::vector<StudyTable> build_tables(const MetaDataset& data) {
    std::vector<StudyTable> tabs;
    tabs.reserve(data.studies.size());
    for (const auto& s : data.studies) tabs.push_back(build_study_table(s.n1, s.n2, s.total()));
    return tabs;
}

}  // namespace xrrmeta
