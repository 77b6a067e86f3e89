// placement.hpp
// Article-entity (AEP) and article-section (ASP) placement: feature assembly,
// ensemble training and inference with profile expansion.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newscite/ml/ensemble.hpp"
#include "newscite/suggest/salience.hpp"
#include "newscite/suggest/templates.hpp"

namespace newscite::suggest {

struct PlacementContext {
  const AuthorityScores* authority = nullptr;
  const std::map<std::string, double>* domain_auth = nullptr;
  const corpus::NewsCorpus* news = nullptr;  // to resolve prior references
  const text::RuleTagger* tagger = nullptr;
  double novelty_lambda = 0.5;
  NoveltyEntityTerm novelty_term = NoveltyEntityTerm::jaccard_overlap;
  RelFreqExponent phi_exponent = RelFreqExponent::paragraph_index;
  double authority_epsilon = 0.0;
};

// Salience + authority + novelty features for a news-entity pair. Enforces
// temporal hygiene: the profile must predate the article's publication year.
ml::FeatureVector aep_features(const corpus::NewsArticle& article, const EntityProfile& profile,
                               const PlacementContext& ctx);

struct AepModel {
  ml::EnsembleModel model;
  std::string to_json() const;
  static AepModel from_json(const std::string& text);
};

struct AepPair {
  const corpus::NewsArticle* article;
  const EntityProfile* profile;
  bool relevant;
};

AepModel train_aep(const std::vector<AepPair>& pairs, const PlacementContext& ctx,
                   const ml::EnsembleParams& params);

struct AepDecision {
  bool relevant = false;
  double score = 0;  // vote share of the relevant class
  double phi = 0;
  double rel_authority = 0;
  double novelty_score = 0;
  double domain_authority = 0;
};

AepDecision predict_aep(const AepModel& model, const corpus::NewsArticle& article,
                        const EntityProfile& profile, const PlacementContext& ctx);

// Per-candidate-section features against both the class-level canonical
// section and the entity's own matching section when present.
ml::FeatureVector asp_features(const corpus::NewsArticle& article, const EntityProfile& profile,
                               const SectionTemplate& tmpl, std::size_t section_index,
                               const PlacementContext& ctx);

// One multi-class instance per triple: the per-section vectors of every
// template slot, slot-prefixed, plus article-level frequency features.
ml::FeatureVector asp_combined_features(const corpus::NewsArticle& article, const EntityProfile& profile,
                                        const SectionTemplate& tmpl, const PlacementContext& ctx);

struct AspModel {
  ml::EnsembleModel model;  // classes = template section labels
  std::string to_json() const;
  static AspModel from_json(const std::string& text);
};

struct AspTriple {
  const corpus::NewsArticle* article;
  const EntityProfile* profile;
  std::string gold_section_label;  // a template section label
};

AspModel train_asp(const std::vector<AspTriple>& triples, const SectionTemplate& tmpl,
                   const PlacementContext& ctx, const ml::EnsembleParams& params);

struct AspDecision {
  std::string section_label;
  bool expansion = false;  // chosen canonical section missing from the profile
  double score = 0;
};

AspDecision place_article(const AspModel& model, const corpus::NewsArticle& article,
                          const EntityProfile& profile, const SectionTemplate& tmpl,
                          const PlacementContext& ctx);

}  // namespace newscite::suggest
