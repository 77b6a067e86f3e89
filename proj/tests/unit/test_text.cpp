#include "doctest.h"

#include "newscite/common.hpp"
#include "newscite/text/discourse.hpp"
#include "newscite/text/lexicons.hpp"
#include "newscite/text/similarity.hpp"
#include "newscite/text/temporal.hpp"
#include "newscite/text/tokenize.hpp"

using namespace newscite;
using namespace newscite::text;

TEST_CASE("tokenizer splits words and punctuation with spans") {
  auto toks = tokenize("He ran.");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].surface == "He");
  CHECK(toks[1].surface == "ran");
  CHECK(toks[2].surface == ".");
  CHECK(toks[0].begin == 0);
  CHECK(toks[1].end == 6);
}

TEST_CASE("bundled tagger: He ran.") {
  RuleTagger tagger;
  auto t = analyze("He ran.", tagger);
  REQUIRE(t.tokens.size() == 3);
  CHECK(t.tokens[0].tag == "PRP");
  CHECK(t.tokens[1].tag == "VBD");
  CHECK(t.tokens[2].tag == ".");
  CHECK(t.sentences.size() == 1);
}

TEST_CASE("analyze of empty string is empty") {
  RuleTagger tagger;
  auto t = analyze("", tagger);
  CHECK(t.tokens.empty());
  CHECK(t.sentences.empty());
}

TEST_CASE("pre-tagged input passes through unchanged") {
  auto t = analyze_pretagged({{"He", "PRP"}, {"ran", "XX"}, {".", "."}});
  CHECK(t.tokens[1].tag == "XX");
  CHECK(t.sentences.size() == 1);
}

TEST_CASE("sentence splitting needs capital or digit after the period") {
  RuleTagger tagger;
  auto t = analyze("He won. She lost.", tagger);
  CHECK(t.sentences.size() == 2);
  auto t2 = analyze("He won. and lost.", tagger);
  CHECK(t2.sentences.size() == 1);
}

TEST_CASE("temporal rule 1: DD Month YYYY") {
  auto out = extract_temporals("on 4 November 2008 it happened");
  REQUIRE(out.size() == 1);
  CHECK(out[0].first == "4 November 2008");
  CHECK(out[0].second == 2008);
}

TEST_CASE("temporal rule 4 finds bare years") {
  auto out = extract_temporals("reelected to the Illinois Senate in 1998 and 2002");
  REQUIRE(out.size() == 2);
  CHECK(out[0].second == 1998);
  CHECK(out[1].second == 2002);
}

TEST_CASE("version strings do not match any temporal rule") {
  // hand application: rule 2 needs a 4-digit year, rule 3 needs YY or YYYY,
  // rule 4 needs a standalone 4-digit year in 1000-2999
  CHECK(extract_temporals("version 10.04.2").empty());
  CHECK(extract_temporals("item 0423").empty());
  CHECK(extract_temporals("year 312").empty());
}

TEST_CASE("temporal mentions never overlap and prefer the longest match") {
  auto ms = extract_temporal_mentions("4 November 2008 then 12.11.2008 then 1999");
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(ms[i].begin >= ms[i - 1].end);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].expression == "4 November 2008");
  CHECK(ms[1].rule == 2);  // DD MM YYYY wins at equal length by rule priority
  CHECK(ms[2].year == 1999);
}

TEST_CASE("temporal_proximity takes the minimum year distance") {
  CHECK(temporal_proximity("in 2008", 2015) == 7);
  CHECK(temporal_proximity("in 2013 and in 2015", 2015) == 0);
  CHECK(!temporal_proximity("no date here", 2015).has_value());
}

TEST_CASE("day difference with day precision and year fallback") {
  auto a = extract_temporal_mentions("1 May 2008");
  auto b = extract_temporal_mentions("3 May 2008");
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(day_difference(a[0], b[0]) == 2);
  auto y1 = extract_temporal_mentions("2008");
  auto y2 = extract_temporal_mentions("2010");
  CHECK(day_difference(y1[0], y2[0]) == 730);
}

TEST_CASE("discourse cue senses") {
  DiscourseLexicon lex;
  auto s1 = annotate_discourse("However, he lost.", lex);
  CHECK(s1 == std::set<DiscourseSense>{DiscourseSense::comparison});
  CHECK(annotate_discourse("plain text with nothing", lex).empty());
  auto s3 = annotate_discourse("after the vote, therefore the law passed", lex);
  CHECK(s3.count(DiscourseSense::temporal) == 1);
  CHECK(s3.count(DiscourseSense::contingency) == 1);
}

TEST_CASE("attribution stats") {
  RuleTagger tagger;
  SUBCASE("single attribution verb gives ratio 1") {
    auto t = analyze("He said that it works.", tagger);
    auto st = attribution_stats(t, 22, tagger);
    CHECK(st.verb_ratio == doctest::Approx(1.0));
  }
  SUBCASE("no verbs gives ratio 0") {
    auto t = analyze("The tall tree.", tagger);
    auto st = attribution_stats(t, 14, tagger);
    CHECK(st.verb_ratio == 0.0);
  }
  SUBCASE("quote ratio is count over char length") {
    auto t = analyze("\"quoted\" words here padded to length!!!!", tagger);
    auto st = attribution_stats(t, 40, tagger);
    CHECK(st.quote_ratio == doctest::Approx(2.0 / 40.0));
  }
}

TEST_CASE("the attribution list has exactly 92 lemmas") {
  CHECK(attribution_verbs().size() == 92);
}

TEST_CASE("jaccard basics") {
  std::set<std::string> a = {"x", "y"}, b = {"x", "y"}, c = {"z"};
  CHECK(jaccard(a, b) == 1.0);
  CHECK(jaccard(a, c) == 0.0);
  CHECK(jaccard(std::set<std::string>{}, std::set<std::string>{}) == 0.0);
}

TEST_CASE("tf-idf uses the ratio idf form") {
  CorpusStats stats;
  stats.add_document({"a", "b"});
  SUBCASE("single-doc corpus: idf 1 for present terms") {
    auto v = tfidf_vector({"a", "a"}, stats);
    CHECK(v["a"] == doctest::Approx(2.0));  // tf 2 * 1/1
  }
  SUBCASE("3-doc toy: tf 2, df 1 of 3 -> 6") {
    stats.add_document({"c"});
    stats.add_document({"d"});
    auto v = tfidf_vector({"a", "a"}, stats);
    CHECK(v["a"] == doctest::Approx(2.0 * 3.0 / 1.0));
  }
}

TEST_CASE("ngram overlap") {
  std::vector<std::string> a = {"the", "red", "car"};
  CHECK(ngram_overlap(a, a, 2) == 1.0);
  CHECK(ngram_overlap(a, {"a", "blue", "bus"}, 1) == 0.0);
}

TEST_CASE("domain_of strips scheme and path") {
  CHECK(domain_of("http://news.bbc.co.uk/a/b").value() == "news.bbc.co.uk");
  CHECK(domain_of("https://www.nytimes.com/x").value() == "www.nytimes.com");
  CHECK(!domain_of("not a url").has_value());
}
