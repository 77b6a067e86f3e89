#include "newscite/pipeline/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/corpus/jsonl.hpp"
#include "newscite/eval/metrics.hpp"

namespace newscite::pipeline {

namespace {
const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "wiki_path", "news_path", "taxonomy_path", "span_gold_path",
      "out_dir", "seed", "threads", "snapshot_year",
      "retrieval_model", "retrieval_depth", "stemming",
      "sc_tau", "sc_min_type_entities", "sc_min_section_statements", "sc_trees", "sc_max_depth",
      "fc_threshold", "fc_cost_weight", "fc_trees",
      "span_l2", "span_folds",
      "template_kmin", "template_kmax", "novelty_lambda", "novelty_one_minus_jaccard",
      "phi_inverse_exponent", "authority_epsilon", "lda_topics", "lda_iterations", "lda_top_m",
  };
  return keys;
}
}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) throw Error("unknown config key: " + key);
  }
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("wiki_path", c.wiki_path);
  get("news_path", c.news_path);
  get("taxonomy_path", c.taxonomy_path);
  get("span_gold_path", c.span_gold_path);
  get("out_dir", c.out_dir);
  get("seed", c.seed);
  get("threads", c.threads);
  get("snapshot_year", c.snapshot_year);
  get("retrieval_model", c.retrieval_model);
  get("retrieval_depth", c.retrieval_depth);
  get("stemming", c.stemming);
  get("sc_tau", c.sc_tau);
  get("sc_min_type_entities", c.sc_min_type_entities);
  get("sc_min_section_statements", c.sc_min_section_statements);
  get("sc_trees", c.sc_trees);
  get("sc_max_depth", c.sc_max_depth);
  get("fc_threshold", c.fc_threshold);
  get("fc_cost_weight", c.fc_cost_weight);
  get("fc_trees", c.fc_trees);
  get("span_l2", c.span_l2);
  get("span_folds", c.span_folds);
  get("template_kmin", c.template_kmin);
  get("template_kmax", c.template_kmax);
  get("novelty_lambda", c.novelty_lambda);
  get("novelty_one_minus_jaccard", c.novelty_one_minus_jaccard);
  get("phi_inverse_exponent", c.phi_inverse_exponent);
  get("authority_epsilon", c.authority_epsilon);
  get("lda_topics", c.lda_topics);
  get("lda_iterations", c.lda_iterations);
  get("lda_top_m", c.lda_top_m);
  index::retrieval_model_from_string(c.retrieval_model);  // validate
  if (c.threads < 1) throw Error("config: threads must be >= 1");
  if (c.retrieval_depth < 1) throw Error("config: retrieval_depth must be >= 1");
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  return from_json_text(corpus::read_file(path));
}

std::string RunConfig::canonical_json() const {
  nlohmann::ordered_json j;
  j["wiki_path"] = wiki_path;
  j["news_path"] = news_path;
  j["taxonomy_path"] = taxonomy_path;
  j["span_gold_path"] = span_gold_path;
  j["out_dir"] = out_dir;
  j["seed"] = seed;
  j["threads"] = threads;
  j["snapshot_year"] = snapshot_year;
  j["retrieval_model"] = retrieval_model;
  j["retrieval_depth"] = retrieval_depth;
  j["stemming"] = stemming;
  j["sc_tau"] = sc_tau;
  j["sc_min_type_entities"] = sc_min_type_entities;
  j["sc_min_section_statements"] = sc_min_section_statements;
  j["sc_trees"] = sc_trees;
  j["sc_max_depth"] = sc_max_depth;
  j["fc_threshold"] = fc_threshold;
  j["fc_cost_weight"] = fc_cost_weight;
  j["fc_trees"] = fc_trees;
  j["span_l2"] = span_l2;
  j["span_folds"] = span_folds;
  j["template_kmin"] = template_kmin;
  j["template_kmax"] = template_kmax;
  j["novelty_lambda"] = novelty_lambda;
  j["novelty_one_minus_jaccard"] = novelty_one_minus_jaccard;
  j["phi_inverse_exponent"] = phi_inverse_exponent;
  j["authority_epsilon"] = authority_epsilon;
  j["lda_topics"] = lda_topics;
  j["lda_iterations"] = lda_iterations;
  j["lda_top_m"] = lda_top_m;
  return j.dump();
}

std::string RunConfig::hash() const { return eval::config_hash(canonical_json()); }

index::RetrievalModel RunConfig::retrieval() const {
  return index::retrieval_model_from_string(retrieval_model);
}

suggest::RelFreqExponent RunConfig::phi_exponent() const {
  return phi_inverse_exponent ? suggest::RelFreqExponent::inverse_position
                             : suggest::RelFreqExponent::paragraph_index;
}

suggest::NoveltyEntityTerm RunConfig::novelty_term() const {
  return novelty_one_minus_jaccard ? suggest::NoveltyEntityTerm::one_minus_jaccard
                                   : suggest::NoveltyEntityTerm::jaccard_overlap;
}

}  // namespace newscite::pipeline
