#include <doctest.h>

#include <cmath>

#include "util.hpp"
#include "xrrmeta/rng.hpp"
#include "xrrmeta/weights.hpp"

using namespace xrrmeta;

TEST_CASE("subsampled outcome weights, treated arm larger") {
    // exact masses 870/6320, 3000/6320, 2450/6320
    auto w = enumerate_balanced_weights(rec("s", 80, 2, 50, 1));
    REQUIRE(w.outcomes.size() == 3);
    CHECK(w.outcomes[0].y1_star == 0);
    CHECK(w.outcomes[0].y_dot_star == 1);
    CHECK(w.outcomes[1].y1_star == 1);
    CHECK(w.outcomes[1].y_dot_star == 2);
    CHECK(w.outcomes[2].y1_star == 2);
    CHECK(w.outcomes[2].y_dot_star == 3);
    CHECK(w.outcomes[0].weight == doctest::Approx(0.1376582278480993).epsilon(1e-13));
    CHECK(w.outcomes[1].weight == doctest::Approx(0.4746835443038016).epsilon(1e-13));
    CHECK(w.outcomes[2].weight == doctest::Approx(0.3876582278480990).epsilon(1e-13));
}

TEST_CASE("mirrored study subsamples the control arm with the same masses") {
    auto w = enumerate_balanced_weights(rec("s", 50, 1, 80, 2));
    REQUIRE(w.outcomes.size() == 3);
    // treated count never touched; control events take the subsampled values
    CHECK(w.outcomes[0].y1_star == 1);
    CHECK(w.outcomes[0].y_dot_star == 1);
    CHECK(w.outcomes[1].y_dot_star == 2);
    CHECK(w.outcomes[2].y_dot_star == 3);
    CHECK(w.outcomes[0].weight == doctest::Approx(0.1376582278480993).epsilon(1e-13));
    CHECK(w.outcomes[1].weight == doctest::Approx(0.4746835443038016).epsilon(1e-13));
    CHECK(w.outcomes[2].weight == doctest::Approx(0.3876582278480990).epsilon(1e-13));
}

TEST_CASE("all-zero subsampled outcome is dropped and mass renormalized") {
    auto w = enumerate_balanced_weights(rec("s", 80, 2, 50, 0));
    REQUIRE(w.outcomes.size() == 2);
    CHECK(w.outcomes[0].y1_star == 1);
    CHECK(w.outcomes[0].y_dot_star == 1);
    CHECK(w.outcomes[1].y1_star == 2);
    CHECK(w.outcomes[1].y_dot_star == 2);
    CHECK(w.outcomes[0].weight == doctest::Approx(3000.0 / 5450.0).epsilon(1e-13));
    CHECK(w.outcomes[1].weight == doctest::Approx(2450.0 / 5450.0).epsilon(1e-13));

    auto kept = enumerate_balanced_weights(rec("s", 80, 2, 50, 0), false);
    REQUIRE(kept.outcomes.size() == 3);
    CHECK(kept.outcomes[0].y1_star == 0);
    CHECK(kept.outcomes[0].weight == doctest::Approx(0.1376582278480993).epsilon(1e-13));
}

TEST_CASE("zero count in the subsampled arm itself never empties the support") {
    // treated arm is subsampled and has zero events: only outcome is (0, y2)
    auto w = enumerate_balanced_weights(rec("s", 80, 0, 50, 3));
    REQUIRE(w.outcomes.size() == 1);
    CHECK(w.outcomes[0].y1_star == 0);
    CHECK(w.outcomes[0].y_dot_star == 3);
    CHECK(w.outcomes[0].weight == 1.0);
}

TEST_CASE("balanced studies keep their outcome with weight exactly one") {
    auto w = enumerate_balanced_weights(rec("s", 70, 2, 70, 1));
    REQUIRE(w.outcomes.size() == 1);
    CHECK(w.outcomes[0].y1_star == 2);
    CHECK(w.outcomes[0].y_dot_star == 3);
    CHECK(w.outcomes[0].weight == 1.0);  // bit-for-bit, not approximately
}

TEST_CASE("weights sum to one over random configurations") {
    Rng g(99);
    for (int it = 0; it < 500; ++it) {
        int n1 = 1 + int(g.uniform() * 120);
        int n2 = 1 + int(g.uniform() * 120);
        int y1 = int(g.uniform() * (n1 + 1));
        int y2 = int(g.uniform() * (n2 + 1));
        if (y1 + y2 == 0) y1 = 1;
        auto w = enumerate_balanced_weights(rec("s", n1, y1, n2, y2));
        REQUIRE(!w.outcomes.empty());
        double total = 0.0;
        for (const auto& o : w.outcomes) {
            total += o.weight;
            CHECK(o.weight >= 0.0);
            CHECK(o.y1_star <= o.y_dot_star);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("study table frozen rows") {
    SUBCASE("moderately unbalanced") {
        StudyTable t = build_study_table(80, 50, 3);
        const double* r = t.row(2);
        CHECK(r[0] == doctest::Approx(0.4957805907173001).epsilon(1e-13));
        CHECK(r[1] == doctest::Approx(0.5140427215189876).epsilon(1e-13));
        CHECK(r[2] == doctest::Approx(0.2787035205696203).epsilon(1e-13));
        CHECK(r[3] == doctest::Approx(0.32397151898734156).epsilon(1e-13));
        CHECK(r[4] == doctest::Approx(0.6760284810126583).epsilon(1e-13));
    }
    SUBCASE("large mirrored study") {
        StudyTable t = build_study_table(1456, 2895, 7);
        const double* r = t.row(2);
        CHECK(r[0] == doctest::Approx(0.47587528055575984).epsilon(1e-13));
        CHECK(r[1] == doctest::Approx(0.47432886357179527).epsilon(1e-13));
        CHECK(r[2] == doctest::Approx(0.23664006434138396).epsilon(1e-13));
        CHECK(r[3] == doctest::Approx(0.1897315454287181).epsilon(1e-13));
        CHECK(r[4] == doctest::Approx(0.810268454571282).epsilon(1e-13));
    }
    SUBCASE("large nearly balanced study") {
        StudyTable t = build_study_table(2635, 2634, 5);
        const double* r = t.row(2);
        CHECK(r[0] == doctest::Approx(0.3998861480075896).epsilon(1e-13));
        CHECK(r[1] == doctest::Approx(0.41657811511701415).epsilon(1e-13));
        CHECK(r[2] == doctest::Approx(0.1735476491671935).epsilon(1e-13));
        CHECK(r[3] == doctest::Approx(0.1666919671094245).epsilon(1e-13));
        CHECK(r[4] == doctest::Approx(0.8333080328905754).epsilon(1e-13));
    }
}

TEST_CASE("balanced table rows equal the closed-form terms bitwise") {
    const int n = 120, y_dot = 4;
    StudyTable t = build_study_table(n, n, y_dot);
    for (int y1 = 0; y1 <= y_dot; ++y1) {
        const double* r = t.row(y1);
        double mu = double(y1) / double(y_dot);
        double cc = (double(y1) + 0.5) / (double(y_dot) + 1.0);
        double inv = 1.0 / (double(y_dot) + 1.0);
        CHECK(r[0] == mu);
        CHECK(r[1] == cc);
        CHECK(r[2] == cc * cc);
        CHECK(r[3] == inv);
        CHECK(r[4] == 1.0 - inv);
    }
}

TEST_CASE("infeasible treated counts clamp to the nearest feasible row") {
    // y_dot exceeds the control arm: y1 = 0 would need y2 = 5 > n2
    StudyTable t = build_study_table(100, 3, 5);
    const double* r0 = t.row(0);
    const double* r2 = t.row(2);
    for (int j = 0; j < 5; ++j) CHECK(r0[j] == r2[j]);
}
