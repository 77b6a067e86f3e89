#include <cmath>
#include <random>

#include "doctest.h"

#include "newscite/discover/fc.hpp"

using namespace newscite;
using namespace newscite::discover;

namespace {

struct Fixture {
  corpus::NewsCorpus news;
  corpus::TypeTaxonomy taxonomy;
  index::InvertedIndex idx;
  text::CorpusStats stats;
  text::RuleTagger tagger;
  AuthorityTables authority;

  FcContext ctx() {
    FcContext c;
    c.news = &news;
    c.index = &idx;
    c.statement_stats = &stats;
    c.tagger = &tagger;
    c.authority = &authority;
    c.taxonomy = &taxonomy;
    c.model = index::RetrievalModel::dfr;
    c.depth = 20;
    return c;
  }
};

corpus::NewsArticle doc(const std::string& url, const std::string& title,
                        const std::vector<std::string>& paragraphs) {
  corpus::NewsArticle n;
  n.url = url;
  n.domain = domain_of(url).value_or("");
  n.title = title;
  n.published_at = {2014, 5, 1};
  n.paragraphs = paragraphs;
  return n;
}

corpus::Statement statement(const std::string& id, const std::string& text) {
  corpus::Statement st;
  st.id = id;
  st.text = text;
  st.article_id = "E1";
  st.section_heading = "Career";
  return st;
}

corpus::WikiArticle entity(const std::string& id) {
  corpus::WikiArticle a;
  a.id = id;
  a.title = "Edmund Albrecht";
  a.types = {"person"};
  a.revision_year = 2013;
  return a;
}

Fixture make_fixture() {
  Fixture f;
  f.taxonomy.root = "thing";
  f.taxonomy.add_node("thing");
  f.taxonomy.add_edge("person", "thing");
  std::mt19937_64 rng(3);
  const char* vocab[] = {"red", "blue", "green", "violet", "amber", "teal"};
  for (int i = 0; i < 40; ++i) {
    std::string text;
    for (int w = 0; w < 20; ++w) text += std::string(vocab[rng() % 6]) + " ";
    f.news.articles.push_back(doc("http://noise.org/" + std::to_string(i), "noise", {text}));
  }
  f.news.articles.push_back(doc("http://hit.org/planted", "Edmund Albrecht wins the election",
                                {"Edmund Albrecht won the parliamentary election in Westbrook.",
                                 "Observers called the result a landslide for the coalition."}));
  f.idx = index::build_index(f.news);
  f.stats.add_document(index::analyze_terms("Albrecht won the parliamentary election in Westbrook", {}));
  return f;
}

}  // namespace

TEST_CASE("candidates carry retrieval score and rank; planted doc found") {
  Fixture f = make_fixture();
  auto ctx = f.ctx();
  auto st = statement("s1", "Albrecht won the parliamentary election in Westbrook.");
  auto pairs = candidates(st, ctx, 10);
  REQUIRE(!pairs.empty());
  CHECK(pairs[0].doc_url == "http://hit.org/planted");
  CHECK(pairs[0].retrieval_rank == 1);
  CHECK(pairs[0].retrieval_score > 0);
  SUBCASE("k=1 gives a single rank-1 pair") {
    auto one = candidates(st, ctx, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].retrieval_rank == 1);
  }
  SUBCASE("rerun is identical") {
    auto again = candidates(st, ctx, 10);
    REQUIRE(again.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) CHECK(again[i].doc_url == pairs[i].doc_url);
  }
  SUBCASE("empty query yields no candidates") {
    auto none = candidates(statement("s2", "the of and"), ctx, 10);
    CHECK(none.empty());
  }
}

TEST_CASE("entailment sentence rows") {
  Fixture f = make_fixture();
  auto ctx = f.ctx();
  SUBCASE("sentence identical to the statement has unigram overlap 1") {
    auto st = statement("s1", "Edmund Albrecht won the parliamentary election in Westbrook.");
    auto article = doc("http://x.org/1", "t", {"Edmund Albrecht won the parliamentary election in Westbrook."});
    auto rows = entailment_sentence_rows(st, article, ctx);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].at("j1") == doctest::Approx(1.0));
  }
  SUBCASE("no shared proper nouns: JP = 0") {
    auto st = statement("s1", "Edmund Albrecht spoke.");
    auto article = doc("http://x.org/1", "t", {"Nadia Kovacs spoke."});
    auto rows = entailment_sentence_rows(st, article, ctx);
    CHECK(rows[0].at("jp") == 0.0);
  }
  SUBCASE("hand-computed overlaps on a 2-sentence article") {
    auto st = statement("s1", "alpha beta gamma");
    auto article = doc("http://x.org/1", "t", {"Alpha beta zeta. Gamma delta epsilon zeta eta."});
    auto rows = entailment_sentence_rows(st, article, ctx);
    REQUIRE(rows.size() == 2);
    // sentence 1 tokens {alpha, beta, zeta}: intersection 2 of union 4
    CHECK(rows[0].at("j1") == doctest::Approx(2.0 / 4.0));
    // sentence 2 tokens {gamma, delta, epsilon, zeta, eta}: 1 of 7
    CHECK(rows[1].at("j1") == doctest::Approx(1.0 / 7.0));
  }
}

TEST_CASE("aggregation over sentence rows") {
  SUBCASE("single row: min = max = avg = weighted = decayed = value") {
    std::vector<ml::FeatureVector> rows = {{{"f", 0.5}}};
    auto agg = aggregate(rows);
    CHECK(agg.at("f_min") == 0.5);
    CHECK(agg.at("f_max") == 0.5);
    CHECK(agg.at("f_avg") == 0.5);
    CHECK(agg.at("f_wavg") == 0.5);
    CHECK(agg.at("f_expdecay") == 0.5);
  }
  SUBCASE("rows (0, 1)") {
    std::vector<ml::FeatureVector> rows = {{{"f", 0.0}}, {{"f", 1.0}}};
    auto agg = aggregate(rows);
    CHECK(agg.at("f_min") == 0.0);
    CHECK(agg.at("f_max") == 1.0);
    CHECK(agg.at("f_avg") == 0.5);
  }
  SUBCASE("3-row fixture matches hand arithmetic") {
    std::vector<ml::FeatureVector> rows = {{{"f", 0.4}}, {{"f", 0.9}}, {{"f", 0.1}}};
    auto agg = aggregate(rows);
    CHECK(agg.at("f_wavg") == doctest::Approx(0.4 / 1 + 0.9 / 2 + 0.1 / 3));
    CHECK(agg.at("f_expdecay") ==
          doctest::Approx(std::pow(0.4, 1.0) + std::pow(0.9, 1.0 / 2) + std::pow(0.1, 1.0 / 3)));
  }
  SUBCASE("permutation changes only the order-sensitive aggregates") {
    std::vector<ml::FeatureVector> rows = {{{"f", 0.4}}, {{"f", 0.9}}, {{"f", 0.1}}};
    std::vector<ml::FeatureVector> permuted = {{{"f", 0.1}}, {{"f", 0.4}}, {{"f", 0.9}}};
    auto a = aggregate(rows);
    auto b = aggregate(permuted);
    CHECK(a.at("f_min") == b.at("f_min"));
    CHECK(a.at("f_max") == b.at("f_max"));
    CHECK(a.at("f_avg") == doctest::Approx(b.at("f_avg")));
    CHECK(a.at("f_wavg") != b.at("f_wavg"));
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS(aggregate({}));
  }
}

TEST_CASE("centrality features") {
  Fixture f = make_fixture();
  auto ctx = f.ctx();
  auto e = entity("E1");
  SUBCASE("single-paragraph article where e is the only entity: phi = 1") {
    auto article = doc("http://x.org/1", "t", {"some text"});
    article.mentions.push_back({"Edmund", "E1", 1.0, 0, 0});
    auto fv = centrality_features(statement("s1", "text"), e, article, ctx);
    CHECK(fv.at("phi_entity") == doctest::Approx(1.0));
  }
  SUBCASE("absent entity: phi = 0") {
    auto article = doc("http://x.org/1", "t", {"some text"});
    auto fv = centrality_features(statement("s1", "text"), e, article, ctx);
    CHECK(fv.at("phi_entity") == 0.0);
  }
  SUBCASE("3-paragraph fixture matches the adopted decay form by hand") {
    auto article = doc("http://x.org/1", "t", {"p0", "p1", "p2"});
    // e in paragraphs 0 and 2: ratios 2/3 and 1/2
    article.mentions.push_back({"e", "E1", 1.0, 0, 0});
    article.mentions.push_back({"e", "E1", 1.0, 0, 1});
    article.mentions.push_back({"x", "X", 1.0, 0, 2});
    article.mentions.push_back({"y", "Y", 1.0, 1, 0});
    article.mentions.push_back({"e", "E1", 1.0, 2, 0});
    article.mentions.push_back({"x", "X", 1.0, 2, 1});
    auto fv = centrality_features(statement("s1", "text"), e, article, ctx);
    double expected = (2.0 / 3.0) * (std::pow(2.0 / 3.0, 1) + std::pow(0.5, 3));
    CHECK(fv.at("phi_entity") == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("authority tables") {
  corpus::TypeTaxonomy taxonomy;
  taxonomy.root = "thing";
  taxonomy.add_node("thing");
  taxonomy.add_edge("person", "thing");

  corpus::WikiCorpus wiki;
  auto add_article = [&](const std::string& id, const std::string& type,
                         const std::vector<std::pair<std::string, std::string>>& cites) {
    corpus::WikiArticle a;
    a.id = id;
    a.types = {type};
    a.revision_year = 2013;
    corpus::Section s;
    s.heading = "Career";
    corpus::Paragraph p;
    p.text = std::string(60, 'x');
    std::size_t off = 5;
    for (const auto& [domain, url] : cites) {
      corpus::Citation c;
      c.marker_offset = off;
      off += 5;
      c.category = corpus::CitationCategory::news;
      c.url = url;
      c.domain = domain;
      p.citations.push_back(c);
    }
    s.paragraphs = {p};
    a.sections = {s};
    wiki.articles.push_back(a);
  };
  SUBCASE("single domain for a type: p(D|t) = 1") {
    add_article("E1", "person", {{"one.org", "http://one.org/a"}, {"one.org", "http://one.org/b"}});
    auto tables = compute_authority_tables(wiki, taxonomy);
    CHECK(tables.type_domain.at({"person", "one.org"}) == doctest::Approx(1.0));
  }
  SUBCASE("toy counts and the per-type sum-to-1 invariant") {
    add_article("E1", "person", {{"a.org", "http://a.org/1"}, {"a.org", "http://a.org/2"},
                                 {"b.org", "http://b.org/1"}});
    add_article("E2", "person", {{"b.org", "http://b.org/2"}});
    auto tables = compute_authority_tables(wiki, taxonomy);
    CHECK(tables.type_domain.at({"person", "a.org"}) == doctest::Approx(0.5));
    CHECK(tables.type_domain.at({"person", "b.org"}) == doctest::Approx(0.5));
    double total = 0;
    for (const auto& [key, v] : tables.type_domain) {
      if (key.first == "person") total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tables.section_domain.at({"Career", "a.org"}) == doctest::Approx(0.5));
  }
  SUBCASE("unseen domain: 0 with presence indicator off") {
    add_article("E1", "person", {{"a.org", "http://a.org/1"}});
    auto tables = compute_authority_tables(wiki, taxonomy);
    Fixture f = make_fixture();
    f.authority = tables;
    auto ctx = f.ctx();
    auto fv = authority_features(statement("s1", "text"), entity("E1"), "unknown.org", ctx);
    CHECK(fv.at("auth_type_present") == 0.0);
    CHECK(fv.at("auth_section_present") == 0.0);
    auto fv2 = authority_features(statement("s1", "text"), entity("E1"), "a.org", ctx);
    CHECK(fv2.at("auth_type_present") == 1.0);
    CHECK(fv2.at("auth_type_max") == doctest::Approx(1.0));
  }
}

TEST_CASE("fc training, thresholds and split hygiene") {
  Fixture f = make_fixture();
  auto ctx = f.ctx();
  auto e = entity("E1");

  // labeled pairs from two statements, planted doc positive
  std::vector<CandidatePair> pairs;
  for (const std::string sid : {"s1", "s2"}) {
    auto st = statement(sid, "Albrecht won the parliamentary election in Westbrook.");
    auto cands = candidates(st, ctx, 15);
    for (auto& pair : cands) {
      compute_pair_features(pair, st, e, ctx);
      pair.label = pair.doc_url == "http://hit.org/planted";
      pairs.push_back(std::move(pair));
    }
  }
  FcTrainConfig config;
  config.seed = 5;
  config.ensemble.num_trees = 20;
  auto model = train_fc(pairs, config);

  SUBCASE("accepted candidates rank by score, planted first") {
    auto st = statement("s3", "Albrecht won the parliamentary election in Westbrook.");
    auto accepted = discover_citations(st, e, model, ctx, 15);
    REQUIRE(!accepted.empty());
    CHECK(accepted[0].url == "http://hit.org/planted");
    CHECK(accepted[0].rank == 1);
    for (std::size_t i = 1; i < accepted.size(); ++i) CHECK(accepted[i].score <= accepted[i - 1].score);
  }
  SUBCASE("threshold above 1 accepts nothing") {
    auto loose = model;
    loose.threshold = 1.01;
    auto st = statement("s3", "Albrecht won the parliamentary election in Westbrook.");
    CHECK(discover_citations(st, e, loose, ctx, 15).empty());
  }
  SUBCASE("statement-level split never leaks") {
    auto [train, test] = split_by_statement(pairs, 0.5, 9);
    std::set<std::string> train_ids, test_ids;
    for (const auto* p : train) train_ids.insert(p->statement_id);
    for (const auto* p : test) test_ids.insert(p->statement_id);
    for (const auto& id : train_ids) CHECK(test_ids.count(id) == 0);
    CHECK(train.size() + test.size() == pairs.size());
  }
  SUBCASE("no positive pairs is an error") {
    auto negatives = pairs;
    for (auto& p : negatives) p.label = false;
    CHECK_THROWS(train_fc(negatives, config));
  }
  SUBCASE("fc model round-trips") {
    auto back = FcModel::from_json(model.to_json());
    CHECK(back.threshold == model.threshold);
    CHECK(back.model.to_json() == model.model.to_json());
  }
}

TEST_CASE("E1 and E1+FP evaluation") {
  corpus::NewsCorpus news;
  // gt doc and an exact duplicate under a different url
  std::string base_text;
  for (int i = 0; i < 179; ++i) base_text += "tok" + std::to_string(i) + " ";
  news.articles.push_back(doc("http://gt.org/a", "", {base_text}));
  news.articles.push_back(doc("http://dup.org/a", "", {base_text}));  // J = 1
  // near-duplicate at J = 158/200 = 0.79: shares 158 of 179 tokens
  std::string near_text;
  for (int i = 0; i < 158; ++i) near_text += "tok" + std::to_string(i) + " ";
  for (int i = 0; i < 21; ++i) near_text += "other" + std::to_string(i) + " ";
  news.articles.push_back(doc("http://near.org/a", "", {near_text}));

  std::map<std::string, std::set<std::string>> gt = {{"s1", {"http://gt.org/a"}}};

  SUBCASE("exact match is correct under both") {
    std::map<std::string, std::vector<std::string>> pred = {{"s1", {"http://gt.org/a"}}};
    auto r = evaluate_e1(pred, gt, news);
    CHECK(r.e1.precision == doctest::Approx(1.0));
    CHECK(r.e1_fp.precision == doctest::Approx(1.0));
  }
  SUBCASE("duplicate with different id: FP under E1, correct under E1+FP") {
    std::map<std::string, std::vector<std::string>> pred = {{"s1", {"http://dup.org/a"}}};
    auto r = evaluate_e1(pred, gt, news);
    CHECK(r.e1.precision == doctest::Approx(0.0));
    CHECK(r.e1_fp.precision == doctest::Approx(1.0));
  }
  SUBCASE("near-duplicate at J = 0.79 stays FP under both") {
    std::map<std::string, std::vector<std::string>> pred = {{"s1", {"http://near.org/a"}}};
    auto r = evaluate_e1(pred, gt, news);
    CHECK(r.e1.precision == doctest::Approx(0.0));
    CHECK(r.e1_fp.precision == doctest::Approx(0.0));
  }
  SUBCASE("the E1+FP correct set contains the E1 correct set") {
    std::map<std::string, std::vector<std::string>> pred = {
        {"s1", {"http://gt.org/a", "http://dup.org/a", "http://near.org/a"}}};
    auto r = evaluate_e1(pred, gt, news);
    CHECK(r.e1_fp.precision >= r.e1.precision);
    CHECK(r.e1_fp.recall >= r.e1.recall);
  }
}

TEST_CASE("two-stage pipeline skips FC unless SC says news") {
  Fixture f = make_fixture();
  auto fc_ctx = f.ctx();
  auto e = entity("E1");

  // SC context with constant models
  text::DiscourseLexicon discourse;
  categorize::PriorTables priors;
  categorize::ScContext sc_ctx;
  sc_ctx.priors = &priors;
  sc_ctx.taxonomy = &f.taxonomy;
  sc_ctx.tagger = &f.tagger;
  sc_ctx.discourse = &discourse;

  auto constant_sc = [&](const std::string& category) {
    categorize::ScModel m;
    m.type_id = "thing";
    m.type_depth = 0;
    m.model.class_names = {"news", "web"};
    m.model.feature_names = {"f"};
    ml::Tree t;
    t.nodes.emplace_back();
    t.nodes[0].class_histogram =
        category == "news" ? std::vector<double>{1, 0} : std::vector<double>{0, 1};
    m.model.trees.assign(5, t);
    return m;
  };

  // FC model trained on the planted fixture
  std::vector<CandidatePair> pairs;
  auto st_train = statement("t1", "Albrecht won the parliamentary election in Westbrook.");
  for (auto& pair : candidates(st_train, fc_ctx, 15)) {
    compute_pair_features(pair, st_train, e, fc_ctx);
    pair.label = pair.doc_url == "http://hit.org/planted";
    pairs.push_back(std::move(pair));
  }
  FcTrainConfig fc_config;
  fc_config.ensemble.num_trees = 15;
  auto fc_model = train_fc(pairs, fc_config);

  auto st = statement("s9", "Albrecht won the parliamentary election in Westbrook.");
  SUBCASE("web vote: no FC call, reason set") {
    auto r = run_pipeline(st, e, {constant_sc("web")}, sc_ctx, fc_model, fc_ctx);
    CHECK(r.sc_category == "web");
    CHECK(r.accepted.empty());
    CHECK(!r.reason.empty());
  }
  SUBCASE("news vote: FC runs and accepts the planted doc") {
    auto r = run_pipeline(st, e, {constant_sc("news")}, sc_ctx, fc_model, fc_ctx);
    CHECK(r.sc_category == "news");
    REQUIRE(!r.accepted.empty());
    CHECK(r.accepted[0].url == "http://hit.org/planted");
  }
}
