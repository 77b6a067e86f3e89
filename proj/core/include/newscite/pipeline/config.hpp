// config.hpp
// Run configuration: corpus paths, seed, threads, retrieval settings and
// task hyperparameters. Unknown keys are rejected; the canonical
// serialization is hashed into every output's metadata.

#pragma once

#include <cstdint>
#include <string>

#include "newscite/index/inverted_index.hpp"
#include "newscite/suggest/salience.hpp"

namespace newscite::pipeline {

struct RunConfig {
  // inputs
  std::string wiki_path;
  std::string news_path;
  std::string taxonomy_path;
  std::string span_gold_path;

  // run control
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 1;
  int snapshot_year = 2015;

  // retrieval
  std::string retrieval_model = "dfr";  // bm25 | dfr
  int retrieval_depth = 100;
  bool stemming = false;

  // statement categorization
  double sc_tau = 0.9;
  long sc_min_type_entities = 1000;
  int sc_min_section_statements = 10;
  int sc_trees = 60;
  int sc_max_depth = 12;

  // citation discovery
  double fc_threshold = 0.5;
  double fc_cost_weight = 5.0;
  int fc_trees = 60;

  // citation span
  double span_l2 = 0.5;
  int span_folds = 5;

  // news suggestion
  int template_kmin = 2;
  int template_kmax = 30;
  double novelty_lambda = 0.5;
  bool novelty_one_minus_jaccard = false;
  bool phi_inverse_exponent = false;
  double authority_epsilon = 0.0;
  int lda_topics = 5;
  int lda_iterations = 100;
  int lda_top_m = 10;

  static RunConfig load(const std::string& path);
  static RunConfig from_json_text(const std::string& text);  // rejects unknown keys
  std::string canonical_json() const;
  std::string hash() const;

  index::RetrievalModel retrieval() const;
  suggest::RelFreqExponent phi_exponent() const;
  suggest::NoveltyEntityTerm novelty_term() const;
};

}  // namespace newscite::pipeline
