// salience.hpp
// Entity salience, a-priori/relative authority, news-domain authority and
// novelty for article-entity placement.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"
#include "newscite/ml/dataset.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::suggest {

enum class RelFreqExponent {
  paragraph_index,   // (ratio)^p, p = 1-based paragraph index; decays with depth
  inverse_position,   // (ratio)^(1/p): grows toward 1 with position instead of decaying
};

// Relative entity frequency Phi(e, n): (#paragraphs with e / #paragraphs) *
// sum over paragraphs of (tf(e,p) / sum_e' tf(e',p))^exponent. 0 when the
// entity is unmentioned.
double relative_entity_frequency(const std::string& entity, const corpus::NewsArticle& article,
                                 RelFreqExponent exponent = RelFreqExponent::paragraph_index);

// Entities mentioned in an article (phi(n)).
std::set<std::string> article_entities(const corpus::NewsArticle& article);

// Documented 6-feature subset of the Dunietz-Gillick salience baseline:
// first-sentence flag, first-paragraph flag, earliest-mention position decile,
// mention count, capitalized-head flag, proper-noun context count.
ml::FeatureVector dg_subset_features(const std::string& entity, const corpus::NewsArticle& article,
                                     const text::RuleTagger& tagger);

// An entity page's section structure at a year.
struct ProfileSection {
  std::string heading;
  std::string text;
  std::set<std::string> linked_entities;  // gamma(s)
};

struct EntityProfile {
  std::string entity_id;
  int year = 0;
  std::vector<ProfileSection> sections;
  std::vector<std::string> news_references;  // urls cited up to `year`

  static EntityProfile from_article(const corpus::WikiArticle& article);
};

struct AuthorityScores {
  std::map<std::string, double> occurrence;  // P(e in article), in [0,1]
  std::map<std::string, double> pagerank;    // over the entity-article graph, sums to 1

  double score(const std::string& entity, bool use_pagerank) const;
};

AuthorityScores compute_authority(const corpus::NewsCorpus& news,
                                  const std::vector<EntityProfile>& profiles);

// Fraction of co-occurring entities with strictly higher a-priori authority;
// the entity's own term contributes 0, capping the value below 1. epsilon
// relaxes the constraint to Gamma(e') > Gamma(e) - epsilon.
double relative_authority(const std::string& entity, const std::set<std::string>& cooccurring,
                          const AuthorityScores& scores, bool use_pagerank, double epsilon = 0.0);

// P(D): fraction of news-category references per domain over the wiki corpus.
std::map<std::string, double> domain_authority(const corpus::WikiCorpus& corpus);

enum class NoveltyEntityTerm {
  jaccard_overlap,   // + J(phi(n'), phi(n)): an exact duplicate scores 0.5
  one_minus_jaccard, // + (1 - J), the monotone-consistent variant
};

inline constexpr double novelty_sentinel = 1.0e9;  // empty prior reference set

// min over prior references of lambda * KL(lm(n') || lm(n)) + (1-lambda) * J-term.
double novelty(const corpus::NewsArticle& article, const std::vector<const corpus::NewsArticle*>& prior_refs,
               double lambda = 0.5, NoveltyEntityTerm term = NoveltyEntityTerm::jaccard_overlap);

}  // namespace newscite::suggest
