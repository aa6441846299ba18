#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "util.hpp"
#include "xrrmeta/comparators.hpp"
#include "xrrmeta/errors.hpp"
#include "xrrmeta/io.hpp"

using namespace xrrmeta;

namespace {

void check_result(const OrResult& r, double or_hat, double lo, double hi, double p,
                  double p_eps = 1e-9) {
    CHECK(r.or_hat == doctest::Approx(or_hat).epsilon(1e-9));
    CHECK(r.ci_lo == doctest::Approx(lo).epsilon(1e-9));
    CHECK(r.ci_hi == doctest::Approx(hi).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(p).epsilon(p_eps));
}

}  // namespace

TEST_CASE("rosiglitazone MI frozen comparator values") {
    MetaDataset d = load_csv(data_path("rosiglitazone_mi.csv"));
    check_result(mantel_haenszel(d, false), 1.4269175301557335, 1.029369005698983,
                 1.9780016948180297, 0.03286833694062464);
    check_result(mantel_haenszel(d, true), 1.2304073192551312, 0.9192187928279086,
                 1.6469443217312716, 0.16338825899665965);
    check_result(peto(d, false), 1.4283055718621502, 1.030938154198743, 1.9788352951181827,
                 0.03210195814863794);
    // no excess heterogeneity: the random-effects variant collapses to fixed
    OrResult pr = peto(d, true);
    check_result(pr, 1.4283055718621502, 1.030938154198743, 1.9788352951181827,
                 0.03210195814863794);
    OrResult dl = dersimonian_laird(d);
    check_result(dl, 1.2321060643712896, 0.9092678038003914, 1.6695690175276112,
                 0.17817095171777853);
    CHECK(dl.tau2 == 0.0);
}

TEST_CASE("rosiglitazone CVD frozen comparator values") {
    MetaDataset d = load_csv(data_path("rosiglitazone_cvd.csv"));
    check_result(mantel_haenszel(d, false), 1.6979194682964687, 0.9839625944945382,
                 2.9299188169862544, 0.0571865, 1e-4);
    check_result(mantel_haenszel(d, true), 1.1327650349960858, 0.7596669055184133,
                 1.6891042839809236, 0.5408, 1e-3);
    check_result(peto(d, false), 1.6400137262173216, 0.9800883610376444, 2.7442883000198357,
                 0.0596, 1e-3);
    check_result(dersimonian_laird(d), 1.0964916631113373, 0.7253985656272866,
                 1.6574253441388955, 0.6621, 1e-3);
}

TEST_CASE("face mask frozen comparator values") {
    MetaDataset d = load_csv(data_path("facemask.csv"));
    OrResult mh = mantel_haenszel(d, false);
    CHECK(mh.or_hat == doctest::Approx(0.21999979593985303).epsilon(1e-9));
    CHECK(mh.ci_lo == doctest::Approx(0.17511266136164505).epsilon(1e-9));
    CHECK(mh.ci_hi == doctest::Approx(0.27639297945235847).epsilon(1e-9));
    CHECK(mh.p_value < 1e-12);
    OrResult cc = mantel_haenszel(d, true);
    CHECK(cc.or_hat == doctest::Approx(0.22751094369135788).epsilon(1e-9));
    CHECK(cc.ci_lo == doctest::Approx(0.18194564645162292).epsilon(1e-9));
    CHECK(cc.ci_hi == doctest::Approx(0.2844873208499379).epsilon(1e-9));
    OrResult pf = peto(d, false);
    CHECK(pf.or_hat == doctest::Approx(0.2735126598544427).epsilon(1e-9));
    CHECK(pf.ci_lo == doctest::Approx(0.2278077097666911).epsilon(1e-9));
    CHECK(pf.ci_hi == doctest::Approx(0.3283873718640505).epsilon(1e-9));
    OrResult pr = peto(d, true);
    CHECK(pr.or_hat == doctest::Approx(0.23934272391765948).epsilon(1e-9));
    CHECK(pr.ci_lo == doctest::Approx(0.1742746556681688).epsilon(1e-9));
    CHECK(pr.ci_hi == doctest::Approx(0.3287049357389035).epsilon(1e-9));
    CHECK(pr.tau2 > 0.0);  // heterogeneous: random effects genuinely widen
    OrResult dl = dersimonian_laird(d);
    CHECK(dl.or_hat == doctest::Approx(0.22785836257761644).epsilon(1e-9));
    CHECK(dl.ci_lo == doctest::Approx(0.16121460727738143).epsilon(1e-9));
    CHECK(dl.ci_hi == doctest::Approx(0.3220516693454543).epsilon(1e-9));
    CHECK(dl.tau2 == doctest::Approx(0.25838128647475084).epsilon(1e-9));
}

TEST_CASE("perfectly balanced single study gives the null result") {
    MetaDataset d = validate_dataset({rec("a", 10, 5, 10, 5)});
    OrResult r = mantel_haenszel(d, false);
    CHECK(r.or_hat == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.ci_lo * r.ci_hi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swapping arms inverts the odds ratio") {
    MetaDataset d = validate_dataset({rec("a", 80, 4, 60, 1), rec("b", 50, 2, 55, 3)});
    MetaDataset flipped = validate_dataset({rec("a", 60, 1, 80, 4), rec("b", 55, 3, 50, 2)});
    for (Method m :
         {Method::MH, Method::MH_CC, Method::PETO_F, Method::PETO_R, Method::DL}) {
        OrResult r = run_comparator(d, m);
        OrResult f = run_comparator(flipped, m);
        CHECK(f.or_hat == doctest::Approx(1.0 / r.or_hat).epsilon(1e-12));
        CHECK(f.ci_lo == doctest::Approx(1.0 / r.ci_hi).epsilon(1e-12));
        CHECK(f.ci_hi == doctest::Approx(1.0 / r.ci_lo).epsilon(1e-12));
        CHECK(f.p_value == doctest::Approx(r.p_value).epsilon(1e-12));
    }
}

TEST_CASE("duplicating a study leaves the pooled estimate unchanged") {
    StudyRecord s = rec("a", 80, 4, 60, 2);
    MetaDataset one = validate_dataset({s});
    StudyRecord s2 = s;
    s2.id = "b";
    MetaDataset two = validate_dataset({s, s2});
    CHECK(mantel_haenszel(two, false).or_hat ==
          doctest::Approx(mantel_haenszel(one, false).or_hat).epsilon(1e-13));
    CHECK(peto(two, false).or_hat == doctest::Approx(peto(one, false).or_hat).epsilon(1e-13));
    OrResult dl_two = dersimonian_laird(two);
    CHECK(dl_two.or_hat == doctest::Approx(dersimonian_laird(one).or_hat).epsilon(1e-13));
    CHECK(dl_two.tau2 == 0.0);  // identical studies carry no heterogeneity
    // pooling two copies tightens the interval
    CHECK(dl_two.ci_hi - dl_two.ci_lo < dersimonian_laird(one).ci_hi - dersimonian_laird(one).ci_lo);
}

TEST_CASE("degenerate layouts raise NumericError") {
    // control arm has no events anywhere: raw MH odds ratio undefined
    MetaDataset d = validate_dataset({rec("a", 50, 2, 50, 0), rec("b", 40, 1, 40, 0)});
    CHECK_THROWS_AS(mantel_haenszel(d, false), NumericError);
    CHECK_NOTHROW(mantel_haenszel(d, true));
    // every participant an event: Peto has nothing to score
    MetaDataset all = validate_dataset({rec("a", 2, 2, 3, 3)});
    CHECK_THROWS_AS(peto(all, false), NumericError);
}

TEST_CASE("Peto skips uninformative all-event studies") {
    MetaDataset with = validate_dataset({rec("a", 50, 1, 50, 0), rec("b", 2, 2, 3, 3)});
    MetaDataset without = validate_dataset({rec("a", 50, 1, 50, 0)});
    OrResult w = peto(with, false);
    OrResult wo = peto(without, false);
    CHECK(w.or_hat == wo.or_hat);
    CHECK(w.ci_lo == wo.ci_lo);
}

TEST_CASE("double-zero studies move the corrected variants only") {
    std::vector<StudyRecord> base = {rec("a", 80, 4, 60, 1), rec("b", 50, 2, 55, 3)};
    std::vector<StudyRecord> plus = base;
    plus.push_back(rec("z", 100, 0, 100, 0));
    MetaDataset d0 = validate_dataset(base);
    MetaDataset d1 = validate_dataset(plus);
    CHECK(mantel_haenszel(d1, false).or_hat == mantel_haenszel(d0, false).or_hat);
    CHECK(peto(d1, false).or_hat == peto(d0, false).or_hat);
    CHECK(peto(d1, true).or_hat == peto(d0, true).or_hat);
    CHECK(mantel_haenszel(d1, true).or_hat != mantel_haenszel(d0, true).or_hat);
    CHECK(dersimonian_laird(d1).or_hat != dersimonian_laird(d0).or_hat);
}

TEST_CASE("method names round trip") {
    for (Method m : {Method::MH, Method::MH_CC, Method::PETO_F, Method::PETO_R, Method::DL}) {
        CHECK(method_from_name(method_name(m)) == m);
    }
    CHECK_THROWS_AS(method_from_name("bogus"), ValidationError);
    CHECK_THROWS_AS(method_from_name("xrrmeta"), ValidationError);  // not an OR comparator
}
