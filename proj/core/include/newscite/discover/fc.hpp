// fc.hpp
// Citation-discovery classifier, E1/E1+FP evaluation and the two-stage
// SC -> FC pipeline.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newscite/categorize/sc.hpp"
#include "newscite/discover/features.hpp"
#include "newscite/ml/ensemble.hpp"

namespace newscite::discover {

struct FcModel {
  ml::EnsembleModel model;  // classes: incorrect, correct
  double threshold = 0.5;   // accept when the correct-class vote share > threshold

  std::string to_json() const;
  static FcModel from_json(const std::string& text);
};

struct FcTrainConfig {
  double cost_weight = 5.0;  // class weight of the correct class
  std::uint64_t seed = 0;
  double threshold = 0.5;
  ml::EnsembleParams ensemble;

  FcTrainConfig() {
    ensemble.num_trees = 60;
    ensemble.max_depth = 12;
    ensemble.min_leaf = 2;
  }
};

// Labeled pairs (pair.label set); throws when no positive pair exists.
FcModel train_fc(const std::vector<CandidatePair>& pairs, const FcTrainConfig& config);

// Statement-level split: every statement's pairs land fully on one side.
std::pair<std::vector<const CandidatePair*>, std::vector<const CandidatePair*>> split_by_statement(
    const std::vector<CandidatePair>& pairs, double train_fraction, std::uint64_t seed);

struct AcceptedCitation {
  std::string url;
  double score = 0;  // classifier vote share for `correct`
  int rank = 0;      // 1-based, by score descending
  double retrieval_score = 0;
  int retrieval_rank = 0;
};

// Candidates above the threshold, ranked by classifier score (ties by url).
std::vector<AcceptedCitation> discover_citations(const corpus::Statement& statement,
                                                 const corpus::WikiArticle& entity, const FcModel& model,
                                                 const FcContext& ctx, int k = 100);

struct E1Metrics {
  double precision = 0, recall = 0, f1 = 0;
};

struct E1Report {
  E1Metrics e1;      // exact ground-truth matches only
  E1Metrics e1_fp;   // plus near-duplicates at Jaccard >= threshold
};

// predictions / gt: statement id -> accepted / cited doc urls. Near-duplicate
// credit uses unigram token-set Jaccard of the documents' text.
E1Report evaluate_e1(const std::map<std::string, std::vector<std::string>>& predictions,
                     const std::map<std::string, std::set<std::string>>& gt,
                     const corpus::NewsCorpus& news, double fp_jaccard = 0.8);

struct PipelineResult {
  std::string statement_id;
  std::string sc_category;
  std::map<std::string, double> sc_vote_share;
  std::vector<AcceptedCitation> accepted;  // empty unless SC said news
  std::string reason;                      // set when FC was skipped
};

// FC runs only when the SC majority vote is news.
PipelineResult run_pipeline(const corpus::Statement& statement, const corpus::WikiArticle& entity,
                            const std::vector<categorize::ScModel>& sc_models,
                            const categorize::ScContext& sc_ctx, const FcModel& fc_model,
                            const FcContext& fc_ctx);

}  // namespace newscite::discover
