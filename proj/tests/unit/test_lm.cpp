#include <cmath>
#include <random>

#include "doctest.h"

#include "newscite/text/ngram_lm.hpp"
#include "newscite/text/textrank.hpp"
#include "newscite/text/window_lm.hpp"

using namespace newscite::text;

namespace {
std::vector<std::string> words(std::initializer_list<const char*> ws) {
  return std::vector<std::string>(ws.begin(), ws.end());
}
}  // namespace

TEST_CASE("KN LM: probabilities over vocab + unk sum to 1 for any context") {
  auto lm = NgramLm::train({words({"the", "cat", "sat", "on", "the", "mat"}),
                            words({"the", "dog", "sat"})},
                           3);
  std::vector<std::vector<std::string>> contexts = {
      {}, {"the"}, {"the", "cat"}, {"dog", "sat"}, {"unseen", "context"}, {"mat"}};
  for (const auto& ctx : contexts) {
    double total = lm.unk_prob(ctx);
    for (const auto& w : lm.vocabulary()) total += lm.prob(w, ctx);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("KN LM: unseen bigram still has positive probability") {
  auto lm = NgramLm::train({words({"a", "b", "a", "c"})}, 2);
  CHECK(lm.prob("c", {"b"}) > 0.0);       // bigram (b,c) never observed
  CHECK(lm.prob("zzz", {"a"}) > 0.0);     // unknown word
}

TEST_CASE("KN LM: empty corpus is an error") {
  CHECK_THROWS(NgramLm::train({}, 2));
  CHECK_THROWS(NgramLm::train({{}}, 2));
}

TEST_CASE("lm_kl: zero against itself, positive otherwise, disjoint largest") {
  auto a = NgramLm::train({words({"alpha", "beta", "gamma"})}, 1);
  auto b = NgramLm::train({words({"delta", "epsilon", "zeta"})}, 1);
  auto c = NgramLm::train({words({"alpha", "beta", "delta"})}, 1);
  CHECK(lm_kl(a, a) == doctest::Approx(0.0).epsilon(1e-12));
  double disjoint = lm_kl(a, b);
  double shared = lm_kl(a, c);
  CHECK(disjoint > 0.0);
  CHECK(shared > 0.0);
  CHECK(disjoint > shared);  // same lengths, same vocab sizes
}

TEST_CASE("window LM: verbatim copy scores 0, disjoint vocabulary hits the smoothing bound") {
  auto frag = words({"born", "in", "hawaii", "today"});
  SUBCASE("verbatim") {
    CHECK(window_lm_similarity(frag, {frag}) == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("no shared vocabulary: KL equals the all-unknown bound") {
    auto other = words({"x1", "x2", "x3", "x4"});
    double got = window_lm_similarity(frag, {other});
    // hand computation: M_frag uniform over its 4 words; each hits the
    // epsilon floor eps/V of the smoothed paragraph model (V = 8 union terms)
    double eps = 1e-12, v = 8;
    double expected = 0.0;
    for (int i = 0; i < 4; ++i) {
      double p = (1.0 - eps) * 0.25 + eps / v;
      double q = eps / v;
      expected += p * std::log(p / q);
    }
    CHECK(got == doctest::Approx(expected).epsilon(1e-6));
  }
  SUBCASE("min over paragraphs picks the matching one") {
    auto noise = words({"q1", "q2", "q3"});
    double sim = window_lm_similarity(frag, {noise, frag});
    CHECK(sim == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("empty citation content gives the sentinel") {
    CHECK(window_lm_similarity(frag, {}) == missing_content_score);
  }
}

TEST_CASE("textrank: identical sentences tie, earliest wins") {
  std::set<std::string> s = {"a", "b", "c"};
  auto r = textrank_central({s, s});
  CHECK(r.scores[0] == doctest::Approx(r.scores[1]));
  CHECK(r.central_index == 0);
}

TEST_CASE("textrank: isolated sentence scores 1-d") {
  std::set<std::string> a = {"x", "y"}, b = {"x", "z"}, c = {"q"};
  auto r = textrank_central({a, b, c});
  CHECK(r.scores[2] == doctest::Approx(0.15));
}

TEST_CASE("textrank matches an independent fixed-point iteration") {
  std::vector<std::set<std::string>> sents = {
      {"obama", "won", "election"}, {"obama", "election", "2008"}, {"weather", "won", "today"}};
  auto r = textrank_central(sents);

  // independent plain iteration on the hand-built Jaccard matrix
  auto jac = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    int inter = 0;
    for (const auto& x : a) inter += b.count(x);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
  };
  double w01 = jac(sents[0], sents[1]), w02 = jac(sents[0], sents[2]), w12 = jac(sents[1], sents[2]);
  double out0 = w01 + w02, out1 = w01 + w12, out2 = w02 + w12;
  double g0 = 1, g1 = 1, g2 = 1;
  for (int it = 0; it < 100; ++it) {
    double n0 = 0.15 + 0.85 * (w01 / out1 * g1 + w02 / out2 * g2);
    double n1 = 0.15 + 0.85 * (w01 / out0 * g0 + w12 / out2 * g2);
    double n2 = 0.15 + 0.85 * (w02 / out0 * g0 + w12 / out1 * g1);
    g0 = n0;
    g1 = n1;
    g2 = n2;
  }
  CHECK(r.scores[0] == doctest::Approx(g0).epsilon(1e-4));
  CHECK(r.scores[1] == doctest::Approx(g1).epsilon(1e-4));
  CHECK(r.scores[2] == doctest::Approx(g2).epsilon(1e-4));
}

TEST_CASE("textrank argmax is invariant under uniform edge-weight scaling") {
  std::vector<std::vector<double>> w = {
      {0, 0.4, 0.1, 0}, {0.4, 0, 0.3, 0.2}, {0.1, 0.3, 0, 0.5}, {0, 0.2, 0.5, 0}};
  auto r1 = textrank_weighted(w);
  auto scaled = w;
  for (auto& row : scaled) {
    for (auto& v : row) v *= 7.5;
  }
  auto r2 = textrank_weighted(scaled);
  CHECK(r1.central_index == r2.central_index);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(r1.scores[i] == doctest::Approx(r2.scores[i]).epsilon(1e-9));
  }
}

TEST_CASE("KN LM persists through json with a version gate") {
  auto lm = NgramLm::train({words({"the", "cat", "sat"}), words({"the", "dog", "sat"})}, 2);
  auto back = NgramLm::from_json(lm.to_json());
  CHECK(back.prob("sat", {"cat"}) == doctest::Approx(lm.prob("sat", {"cat"})).epsilon(1e-12));
  CHECK(back.vocabulary() == lm.vocabulary());
  auto bad = lm.to_json();
  bad.replace(bad.find("\"version\":1"), 11, "\"version\":7");
  CHECK_THROWS(NgramLm::from_json(bad));
}

TEST_CASE("textrank scores are invariant to sentence order up to relabeling") {
  std::vector<std::set<std::string>> sents = {
      {"a", "b"}, {"b", "c", "d"}, {"d", "e"}, {"a", "e", "f"}};
  auto fwd = textrank_central(sents);
  std::vector<std::set<std::string>> rev(sents.rbegin(), sents.rend());
  auto bwd = textrank_central(rev);
  for (std::size_t i = 0; i < sents.size(); ++i) {
    CHECK(fwd.scores[i] == doctest::Approx(bwd.scores[sents.size() - 1 - i]).epsilon(1e-9));
  }
}
