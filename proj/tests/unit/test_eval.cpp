#include "doctest.h"

#include "newscite/eval/metrics.hpp"

using namespace newscite::eval;

TEST_CASE("perfect predictions: P = R = F1 = kappa = 1") {
  std::vector<std::string> gold = {"a", "b", "a", "c"};
  auto r = classification_metrics(gold, gold);
  CHECK(r.micro_f1 == doctest::Approx(1.0));
  CHECK(r.kappa == doctest::Approx(1.0));
  for (const auto& [name, m] : r.per_class) {
    CHECK(m.precision == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(1.0));
  }
}

TEST_CASE("constant majority predictor on a 95/5 split has kappa 0") {
  std::vector<std::string> gold, pred;
  for (int i = 0; i < 95; ++i) gold.push_back("maj");
  for (int i = 0; i < 5; ++i) gold.push_back("min");
  pred.assign(100, "maj");
  auto r = classification_metrics(pred, gold);
  CHECK(r.kappa == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("10-instance hand fixture") {
  //        gold:  a a a a b b b c c c
  //        pred:  a a b a b b a c c b
  std::vector<std::string> gold = {"a", "a", "a", "a", "b", "b", "b", "c", "c", "c"};
  std::vector<std::string> pred = {"a", "a", "b", "a", "b", "b", "a", "c", "c", "b"};
  auto r = classification_metrics(pred, gold);
  // hand: a: tp 3, fp 1, fn 1 -> P 3/4, R 3/4
  CHECK(r.per_class.at("a").precision == doctest::Approx(3.0 / 4.0));
  CHECK(r.per_class.at("a").recall == doctest::Approx(3.0 / 4.0));
  // b: tp 2, fp 2, fn 1 -> P 1/2, R 2/3
  CHECK(r.per_class.at("b").precision == doctest::Approx(0.5));
  CHECK(r.per_class.at("b").recall == doctest::Approx(2.0 / 3.0));
  // c: tp 2, fp 0, fn 1 -> P 1, R 2/3
  CHECK(r.per_class.at("c").precision == doctest::Approx(1.0));
  // accuracy 7/10
  CHECK(r.accuracy == doctest::Approx(0.7));
  // kappa: pe = (4*4 + 3*4 + 3*2)/100 = 0.34 -> (0.7-0.34)/0.66
  CHECK(r.kappa == doctest::Approx((0.7 - 0.34) / 0.66).epsilon(1e-9));
  // confusion row sums equal gold counts
  long row_a = 0;
  for (const auto& [p, n] : r.confusion.at("a")) row_a += n;
  CHECK(row_a == 4);
}

TEST_CASE("micro F1 equals harmonic mean of micro P and R") {
  std::vector<std::string> gold = {"a", "b", "a", "b", "c"};
  std::vector<std::string> pred = {"a", "a", "a", "b", "b"};
  auto r = classification_metrics(pred, gold);
  double harmonic = 2 * r.micro_precision * r.micro_recall / (r.micro_precision + r.micro_recall);
  CHECK(r.micro_f1 == doctest::Approx(harmonic).epsilon(1e-12));
}

TEST_CASE("empty input errors") {
  CHECK_THROWS(classification_metrics({}, {}));
  CHECK_THROWS(classification_metrics({"a"}, {"a", "b"}));
}

namespace {
struct YearItem {
  int year;
};
int year_of(const YearItem& y) { return y.year; }
}  // namespace

TEST_CASE("temporal split is an exhaustive partition") {
  std::vector<YearItem> items = {{2009}, {2010}, {2011}, {2012}, {2013}};
  SUBCASE("pivot below min year: empty train") {
    auto [train, test] = temporal_split(items, 2008, year_of);
    CHECK(train.empty());
    CHECK(test.size() == 5);
  }
  SUBCASE("pivot at max year: empty test") {
    auto [train, test] = temporal_split(items, 2013, year_of);
    CHECK(train.size() == 5);
    CHECK(test.empty());
  }
  SUBCASE("mixed membership is exact") {
    auto [train, test] = temporal_split(items, 2011, year_of);
    CHECK(train.size() == 3);
    CHECK(test.size() == 2);
    CHECK(train.back().year == 2011);
    CHECK(test.front().year == 2012);
    CHECK(train.size() + test.size() == items.size());
  }
}

TEST_CASE("config hash is stable and sensitive") {
  CHECK(config_hash("{\"seed\":1}") == config_hash("{\"seed\":1}"));
  CHECK(config_hash("{\"seed\":1}") != config_hash("{\"seed\":2}"));
  CHECK(config_hash("x").size() == 16);
}
