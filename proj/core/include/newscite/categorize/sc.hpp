// sc.hpp
// Statement categorization: language-style + entity-structure features, a
// per-type ensemble, and majority voting across an entity's type models.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newscite/categorize/priors.hpp"
#include "newscite/corpus/model.hpp"
#include "newscite/corpus/taxonomy.hpp"
#include "newscite/ml/ensemble.hpp"
#include "newscite/text/discourse.hpp"
#include "newscite/text/ngram_lm.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::categorize {

// Reference models and annotators shared by feature extraction.
struct ScContext {
  const PriorTables* priors = nullptr;
  const corpus::TypeTaxonomy* taxonomy = nullptr;
  int snapshot_year = 2015;
  const text::RuleTagger* tagger = nullptr;
  const text::DiscourseLexicon* discourse = nullptr;
  // type id -> KN LM / topic terms of the news cited from that type
  const std::map<std::string, text::NgramLm>* type_lms = nullptr;
  const std::map<std::string, std::vector<std::string>>* type_topics = nullptr;
  // entity id -> expanded types, for anchor-type co-occurrence features
  const std::map<std::string, std::set<std::string>>* types_by_id = nullptr;
};

// Absent signals take value 0 plus a paired presence indicator.
ml::FeatureVector sc_features(const corpus::Statement& statement, const corpus::WikiArticle& entity,
                              const ScContext& ctx);

// Training label: news when any curated citation is news; otherwise the
// plurality class of the statement's citations (first citation on ties).
std::string sc_label(const corpus::Statement& statement);

struct ScModel {
  std::string type_id;
  int type_depth = 0;
  double tau = 0.9;
  ml::EnsembleModel model;

  std::string to_json() const;
  static ScModel from_json(const std::string& text);
};

struct ScTrainConfig {
  double tau = 0.9;            // fraction of entities sampled for training (<= 0.9)
  std::uint64_t seed = 0;
  long min_entities = 1000;    // precondition on the type
  ml::EnsembleParams ensemble;

  ScTrainConfig() {
    ensemble.num_trees = 60;
    ensemble.max_depth = 12;
    ensemble.min_leaf = 2;
  }
};

struct ScTrainResult {
  ScModel model;
  // held-out entity ids and per-statement (gold, predicted) pairs
  std::vector<std::string> test_entities;
  std::vector<std::pair<std::string, std::string>> test_outcomes;
};

// Entities (never statements) are split 10% test / rest train pool,
// stratified over the type's children; tau * |entities| are sampled from the
// train pool. Throws when the type has fewer than min_entities entities.
ScTrainResult train_sc(const corpus::WikiCorpus& corpus, const corpus::TypeTaxonomy& taxonomy,
                       const std::string& type, const ScContext& ctx, const ScTrainConfig& config);

struct ScVote {
  std::string category;
  std::map<std::string, double> vote_share;  // mean share per class
};

// Plurality over the models applicable to the entity's types; ties break to
// the deepest type's model choice, then the highest mean vote share, then
// class name order. Falls back to the root-type model when nothing applies.
ScVote categorize_statement(const corpus::Statement& statement, const corpus::WikiArticle& entity,
                            const std::vector<ScModel>& models, const ScContext& ctx);

}  // namespace newscite::categorize
