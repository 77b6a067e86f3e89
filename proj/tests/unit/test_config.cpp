#include "doctest.h"

#include "newscite/pipeline/config.hpp"

using namespace newscite::pipeline;

TEST_CASE("config parsing") {
  SUBCASE("defaults apply for missing keys") {
    auto c = RunConfig::from_json_text("{}");
    CHECK(c.retrieval_depth == 100);
    CHECK(c.sc_min_type_entities == 1000);
    CHECK(c.sc_min_section_statements == 10);
    CHECK(c.fc_threshold == 0.5);
    CHECK(c.threads == 1);
  }
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS(RunConfig::from_json_text("{\"not_a_key\": 1}"));
  }
  SUBCASE("bad retrieval model is rejected") {
    CHECK_THROWS(RunConfig::from_json_text("{\"retrieval_model\": \"tfidf\"}"));
  }
  SUBCASE("hash is stable and sensitive to every field") {
    auto a = RunConfig::from_json_text("{\"seed\": 1}");
    auto b = RunConfig::from_json_text("{\"seed\": 1}");
    auto c = RunConfig::from_json_text("{\"seed\": 2}");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != c.hash());
  }
  SUBCASE("configuration switches map to the documented variants") {
    auto c = RunConfig::from_json_text(
        "{\"phi_inverse_exponent\": true, \"novelty_one_minus_jaccard\": true}");
    CHECK(c.phi_exponent() == newscite::suggest::RelFreqExponent::inverse_position);
    CHECK(c.novelty_term() == newscite::suggest::NoveltyEntityTerm::one_minus_jaccard);
  }
}
