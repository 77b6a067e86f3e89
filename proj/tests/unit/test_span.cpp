#include <random>

#include "doctest.h"

#include "newscite/span/metrics.hpp"
#include "newscite/span/models.hpp"

using namespace newscite;
using namespace newscite::span;

namespace {

corpus::Paragraph paragraph_with_citation(const std::string& text, std::size_t offset,
                                          const std::string& url = "http://c.org/1") {
  corpus::Paragraph p;
  p.text = text;
  corpus::Citation c;
  c.marker_offset = offset;
  c.category = corpus::CitationCategory::news;
  c.url = url;
  c.domain = "c.org";
  p.citations.push_back(c);
  return p;
}

SpanFeatureContext make_ctx(const text::RuleTagger& tagger, const text::DiscourseLexicon& lex) {
  return SpanFeatureContext{&tagger, &lex};
}

}  // namespace

TEST_CASE("span features") {
  text::RuleTagger tagger;
  text::DiscourseLexicon lex;
  auto ctx = make_ctx(tagger, lex);

  SUBCASE("citing fragment has distance 0 and same-sentence flag") {
    std::string text = "First claim, second claim. Another sentence.";
    auto p = paragraph_with_citation(text, 26);
    corpus::NewsArticle content;
    content.paragraphs = {"irrelevant content"};
    auto inst = SpanInstance::build("p1", "E", p, p.citations[0], &content);
    auto rows = span_features(inst, ctx);
    CHECK(rows[inst.citing_fragment].at("f_citing_distance") == 0.0);
    CHECK(rows[inst.citing_fragment].at("f_same_sentence") == 1.0);
    CHECK(rows[2].at("f_same_sentence") == 0.0);
  }
  SUBCASE("fragment copied from the citation content has jaccard 1") {
    std::string text = "He won the final match. Other news.";
    auto p = paragraph_with_citation(text, 23);
    corpus::NewsArticle content;
    content.paragraphs = {"he won the final match"};
    auto inst = SpanInstance::build("p1", "E", p, p.citations[0], &content);
    auto rows = span_features(inst, ctx);
    CHECK(rows[0].at("f_jaccard") == doctest::Approx(1.0));
    CHECK(rows[0].at("f_lm") == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("consecutive fragments dated two days apart") {
    std::string text = "It began on 1 May 2008, and ended on 3 May 2008.";
    auto p = paragraph_with_citation(text, text.size());
    auto inst = SpanInstance::build("p1", "E", p, p.citations[0], nullptr);
    auto rows = span_features(inst, ctx);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].at("f_temporal_present") == 1.0);
    CHECK(rows[1].at("f_temporal_gap") == 2.0);
  }
  SUBCASE("no-content mode disables citation features behind the indicator") {
    auto p = paragraph_with_citation("Some text here.", 15);
    auto inst = SpanInstance::build("p1", "E", p, p.citations[0], nullptr);
    auto rows = span_features(inst, ctx);
    CHECK(rows[0].at("f_content_present") == 0.0);
    CHECK(rows[0].count("f_jaccard") == 0);
    CHECK(rows[0].count("f_lm") == 0);
  }
}

TEST_CASE("baselines") {
  text::RuleTagger tagger;
  text::DiscourseLexicon lex;
  auto ctx = make_ctx(tagger, lex);
  (void)ctx;

  SUBCASE("one-sentence paragraph: all three select the full sentence") {
    auto p = paragraph_with_citation("Single sentence, with a fragment.", 33);
    auto inst = SpanInstance::build("p1", "E", p, p.citations[0], nullptr);
    for (auto method : {BaselineMethod::ic, BaselineMethod::csw, BaselineMethod::cs}) {
      auto pred = baseline_span(inst, method);
      CHECK(pred.selected.size() == inst.fragments.size());
    }
  }
  SUBCASE("CS returns exactly the citing sentence's fragments") {
    std::string text = "S one. S two. S three, with coda. S four. S five. S six. S seven.";
    auto p = paragraph_with_citation(text, 33);  // inside sentence 3
    auto inst = SpanInstance::build("p1", "E", p, p.citations[0], nullptr);
    auto pred = baseline_span(inst, BaselineMethod::cs);
    REQUIRE(pred.selected.size() == 2);  // "S three" and "with coda"
    for (auto i : pred.selected) CHECK(inst.fragments[i].sentence_index == 2);
  }
  SUBCASE("IC starts after a previous citation") {
    std::string text = "S one. S two. S three.";
    corpus::Paragraph p;
    p.text = text;
    corpus::Citation prior;
    prior.marker_offset = 6;  // end of sentence 1
    prior.category = corpus::CitationCategory::web;
    prior.url = "http://c.org/prior";
    corpus::Citation target;
    target.marker_offset = text.size();
    target.category = corpus::CitationCategory::news;
    target.url = "http://c.org/target";
    p.citations = {prior, target};
    auto inst = SpanInstance::build("p1", "E", p, p.citations[1], nullptr);
    auto pred = baseline_span(inst, BaselineMethod::ic);
    // sentences 2 and 3 (indices 1, 2) only
    for (auto i : pred.selected) CHECK(inst.fragments[i].sentence_index >= 1);
    CHECK(pred.selected.size() == 2);
  }
  SUBCASE("CS is always a subset of CSW") {
    std::mt19937_64 rng(9);
    const char* fillers[] = {"However", "Therefore", "Meanwhile", "Results", "Officials"};
    for (int trial = 0; trial < 30; ++trial) {
      std::string text;
      int sentences = 3 + static_cast<int>(rng() % 5);
      for (int s = 0; s < sentences; ++s) {
        text += std::string(fillers[rng() % 5]) + " said unit " + std::to_string(s) + ". ";
      }
      text = trim(text);
      std::size_t offset = text.size() / 2;
      auto p = paragraph_with_citation(text, offset);
      auto inst = SpanInstance::build("p1", "E", p, p.citations[0], nullptr);
      auto cs = baseline_span(inst, BaselineMethod::cs);
      auto csw = baseline_span(inst, BaselineMethod::csw);
      std::set<std::size_t> csw_set(csw.selected.begin(), csw.selected.end());
      for (auto i : cs.selected) CHECK(csw_set.count(i) == 1);
    }
  }
}

TEST_CASE("span metrics") {
  text::RuleTagger tagger;
  text::DiscourseLexicon lex;
  auto ctx = make_ctx(tagger, lex);
  (void)ctx;

  auto make_instance = [&](const std::string& entity, std::vector<bool> gold) {
    // paragraph with gold.size() fragments of 3 words each
    std::string text;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      text += "word" + std::to_string(i) + " extra token";
      text += (i + 1 < gold.size()) ? ", " : ".";
    }
    auto p = paragraph_with_citation(text, text.size());
    SpanInstance inst = SpanInstance::build("p_" + entity, entity, p, p.citations[0], nullptr);
    REQUIRE(inst.fragments.size() == gold.size());
    inst.gold = std::move(gold);
    return inst;
  };

  SUBCASE("perfect prediction: MAP = R = F1 = 1, zero erroneous span") {
    auto inst = make_instance("E1", {true, false, true});
    SpanPrediction pred{{0, 2}, "CS"};
    auto m = span_metrics({{&inst, pred}});
    CHECK(m.map == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(1.0));
    CHECK(m.f1 == doctest::Approx(1.0));
    CHECK(m.delta_words == doctest::Approx(0.0));
    CHECK(m.delta_fragments == doctest::Approx(0.0));
  }
  SUBCASE("partial recall: S' = {d1} of gold {d1, d2} -> P 1, R 0.5") {
    auto inst = make_instance("E1", {true, true, false});
    SpanPrediction pred{{0}, "CS"};
    auto m = span_metrics({{&inst, pred}});
    CHECK(m.map == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(0.5));
  }
  SUBCASE("two-entity fixture with hand-computed extra-word ratio") {
    // E1: predicts one 3-word extra fragment over a 3-word gold -> dw 1.0
    auto i1 = make_instance("E1", {true, false});
    SpanPrediction p1{{0, 1}, "X"};
    // E2: perfect -> dw 0; per-entity average then over entities: (1.0 + 0)/2
    auto i2 = make_instance("E2", {true, false});
    SpanPrediction p2{{0}, "X"};
    auto m = span_metrics({{&i1, p1}, {&i2, p2}});
    CHECK(m.delta_words == doctest::Approx(0.5));
    CHECK(m.delta_fragments == doctest::Approx(0.5));
  }
  SUBCASE("delta can exceed 100% by construction") {
    auto inst = make_instance("E1", {true, false, false, false});
    SpanPrediction pred{{0, 1, 2, 3}, "IC"};
    auto m = span_metrics({{&inst, pred}});
    CHECK(m.delta_fragments == doctest::Approx(3.0));  // 3 extra over 1-gold
  }
}

TEST_CASE("span ratio and buckets") {
  auto p = paragraph_with_citation("A one, a two. B one, b two.", 27);
  auto inst = SpanInstance::build("p1", "E", p, p.citations[0], nullptr);
  REQUIRE(inst.fragments.size() == 4);
  SUBCASE("all fragments of one sentence covered: 1.0") {
    CHECK(span_ratio(inst, {0, 1}) == doctest::Approx(1.0));
  }
  SUBCASE("half of each of two sentences: 1.0") {
    CHECK(span_ratio(inst, {0, 2}) == doctest::Approx(1.0));
  }
  SUBCASE("everything covered: 2.0") {
    CHECK(span_ratio(inst, {0, 1, 2, 3}) == doctest::Approx(2.0));
  }
  SUBCASE("bucket boundaries") {
    CHECK(span_bucket(0.5) == 0);
    CHECK(span_bucket(0.51) == 1);
    CHECK(span_bucket(1.0) == 1);
    CHECK(span_bucket(1.5) == 2);
    CHECK(span_bucket(2.0) == 2);
    CHECK(span_bucket(3.0) == 3);
    CHECK(span_bucket(5.0) == 3);
    CHECK(span_bucket(5.01) == 4);
  }
}

namespace {

// synthetic coverage data: a fragment is covered iff it shares a content
// word with the citation; includes sub-sentence spans and sentence skips
std::vector<SpanInstance> synthetic_span_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const char* topic[] = {"merger", "election", "championship", "flood", "verdict", "treaty"};
  const char* noise[] = {"weather", "lunch", "garden", "painting", "market", "holiday"};
  std::vector<SpanInstance> out;
  for (int i = 0; i < count; ++i) {
    std::string t = topic[rng() % 6];
    int sentences = 2 + static_cast<int>(rng() % 3);
    std::string text;
    std::vector<bool> covered_plan;
    for (int s = 0; s < sentences; ++s) {
      int frags = 1 + static_cast<int>(rng() % 2);
      for (int f = 0; f < frags; ++f) {
        bool cover = rng() % 2 == 0;
        std::string word = cover ? t : noise[rng() % 6];
        text += "The " + word + " case " + std::to_string(s) + std::to_string(f);
        covered_plan.push_back(cover);
        text += (f + 1 < frags) ? ", " : ". ";
      }
    }
    text = trim(text);
    corpus::Paragraph p;
    p.text = text;
    corpus::Citation c;
    c.marker_offset = text.size();
    c.category = corpus::CitationCategory::news;
    c.url = "http://c.org/" + std::to_string(i);
    p.citations.push_back(c);
    corpus::NewsArticle content;
    content.url = c.url;
    content.paragraphs = {"Full report about the " + t + " with details about the " + t + "."};
    auto inst = SpanInstance::build("p" + std::to_string(i), "E" + std::to_string(i % 7), p,
                                    p.citations[0], &content);
    if (inst.fragments.size() != covered_plan.size()) continue;  // segmentation artifacts: skip
    // citing fragment is always covered
    covered_plan[inst.citing_fragment] = true;
    inst.gold = covered_plan;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

TEST_CASE("CSPS learns rule-generated coverage (held-out F1 >= 0.95)") {
  text::RuleTagger tagger;
  text::DiscourseLexicon lex;
  auto ctx = make_ctx(tagger, lex);
  auto train_set = synthetic_span_corpus(80, 1);
  auto test_set = synthetic_span_corpus(30, 2);

  SpanTrainConfig config;
  config.seed = 3;
  auto model = train_csps(train_set, ctx, config);

  std::vector<ScoredInstance> scored;
  for (const auto& inst : test_set) scored.push_back({&inst, predict_csps(inst, model, ctx)});
  auto m = span_metrics(scored);
  CHECK(m.f1 >= 0.95);

  SUBCASE("CSPC mirrors the per-fragment rule") {
    auto cspc = train_cspc(train_set, ctx, config);
    std::vector<ScoredInstance> cspc_scored;
    for (const auto& inst : test_set) cspc_scored.push_back({&inst, predict_cspc(inst, cspc, ctx)});
    CHECK(span_metrics(cspc_scored).f1 >= 0.95);
  }
  SUBCASE("predictions are always valid fragment subsets") {
    for (const auto& s : scored) {
      for (auto i : s.prediction.selected) CHECK(i < s.instance->fragments.size());
    }
  }
}

TEST_CASE("constructed dominant-distance weights keep the citing fragment selected") {
  text::RuleTagger tagger;
  text::DiscourseLexicon lex;
  auto ctx = make_ctx(tagger, lex);

  // weights: covered scores bias 2, minus 5 per unit of citing distance
  CspsModel model;
  model.feature_names = {"bias", "f_citing_distance"};
  model.crf = ml::CrfModel(2, 2);
  model.crf.observation(label_covered, 0) = 2.0;
  model.crf.observation(label_covered, 1) = -5.0;

  auto instances = synthetic_span_corpus(20, 7);
  for (const auto& inst : instances) {
    auto pred = predict_csps(inst, model, ctx);
    if (!pred.selected.empty()) {
      bool has_citing = false;
      for (auto i : pred.selected) has_citing = has_citing || i == inst.citing_fragment;
      CHECK(has_citing);
    }
  }
}

TEST_CASE("zero-weight span model selects nothing (deterministic tie)") {
  text::RuleTagger tagger;
  text::DiscourseLexicon lex;
  auto ctx = make_ctx(tagger, lex);
  CspsModel model;
  model.feature_names = {"bias"};
  model.crf = ml::CrfModel(2, 1);
  auto instances = synthetic_span_corpus(5, 11);
  for (const auto& inst : instances) {
    CHECK(predict_csps(inst, model, ctx).selected.empty());
  }
}

TEST_CASE("cv folds split by citing paragraph") {
  auto instances = synthetic_span_corpus(40, 21);
  auto folds = cv_folds(instances, 5, 9);
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto it = seen.find(instances[i].paragraph_id);
    if (it != seen.end()) CHECK(it->second == folds[i]);
    seen[instances[i].paragraph_id] = folds[i];
    CHECK(folds[i] >= 0);
    CHECK(folds[i] < 5);
  }
}
