#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "xrrmeta/normal.hpp"

using namespace xrrmeta;

TEST_CASE("norm_ppf reference points") {
    CHECK(norm_ppf(0.5) == 0.0);
    CHECK(norm_ppf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
    CHECK(norm_ppf(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-13));
    CHECK(norm_ppf(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm_ppf(0.0013498980316300946) == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(std::isfinite(norm_ppf(1e-300)));
    CHECK(norm_ppf(1e-300) == doctest::Approx(-37.0471).epsilon(1e-4));
}

TEST_CASE("norm_ppf symmetry") {
    for (double p : {0.01, 0.1, 0.3, 0.45}) {
        CHECK(norm_ppf(p) == doctest::Approx(-norm_ppf(1.0 - p)).epsilon(1e-12));
    }
}

TEST_CASE("norm_sf reference points") {
    CHECK(norm_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_sf(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(norm_sf(-1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(norm_sf(37.0) < 1e-290);
}

TEST_CASE("quantile and survival are mutually inverse") {
    for (double p : {1e-10, 1e-6, 0.001, 0.025, 0.2, 0.5, 0.8, 0.999}) {
        CHECK(norm_sf(norm_ppf(1.0 - p)) == doctest::Approx(p).epsilon(1e-10));
    }
}
