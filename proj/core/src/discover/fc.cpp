#include "newscite/discover/fc.hpp"

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/index/inverted_index.hpp"
#include "newscite/text/similarity.hpp"

namespace newscite::discover {

FcModel train_fc(const std::vector<CandidatePair>& pairs, const FcTrainConfig& config) {
  bool any_positive = false;
  for (const auto& p : pairs) {
    if (!p.label) throw Error("train_fc: unlabeled pair for statement " + p.statement_id);
    any_positive = any_positive || *p.label;
  }
  if (pairs.empty() || !any_positive) throw Error("train_fc: no positive pairs");

  ml::Dataset data;
  data.register_class("incorrect");
  data.register_class("correct");
  for (const auto& p : pairs) data.add(p.aggregated, *p.label ? "correct" : "incorrect");

  ml::EnsembleParams params = config.ensemble;
  params.seed = config.seed;
  params.class_weights = {1.0, config.cost_weight};
  FcModel m;
  m.model = train_ensemble(data, params);
  m.threshold = config.threshold;
  return m;
}

std::pair<std::vector<const CandidatePair*>, std::vector<const CandidatePair*>> split_by_statement(
    const std::vector<CandidatePair>& pairs, double train_fraction, std::uint64_t seed) {
  std::vector<std::string> statements;
  for (const auto& p : pairs) statements.push_back(p.statement_id);
  std::sort(statements.begin(), statements.end());
  statements.erase(std::unique(statements.begin(), statements.end()), statements.end());
  std::mt19937_64 rng(seed);
  std::shuffle(statements.begin(), statements.end(), rng);
  std::size_t n_train = static_cast<std::size_t>(
      std::lround(train_fraction * static_cast<double>(statements.size())));
  std::set<std::string> train_ids(statements.begin(), statements.begin() + static_cast<long>(n_train));

  std::pair<std::vector<const CandidatePair*>, std::vector<const CandidatePair*>> out;
  for (const auto& p : pairs) {
    if (train_ids.count(p.statement_id)) out.first.push_back(&p);
    else out.second.push_back(&p);
  }
  return out;
}

std::vector<AcceptedCitation> discover_citations(const corpus::Statement& statement,
                                                 const corpus::WikiArticle& entity, const FcModel& model,
                                                 const FcContext& ctx, int k) {
  auto pairs = candidates(statement, ctx, k);
  int correct_id = 1;
  for (std::size_t c = 0; c < model.model.class_names.size(); ++c) {
    if (model.model.class_names[c] == "correct") correct_id = static_cast<int>(c);
  }
  std::vector<AcceptedCitation> accepted;
  for (auto& pair : pairs) {
    compute_pair_features(pair, statement, entity, ctx);
    auto pred = model.model.predict(pair.aggregated);
    double score = pred.vote_share[static_cast<std::size_t>(correct_id)];
    if (score > model.threshold) {
      accepted.push_back({pair.doc_url, score, 0, pair.retrieval_score, pair.retrieval_rank});
    }
  }
  std::sort(accepted.begin(), accepted.end(), [](const AcceptedCitation& a, const AcceptedCitation& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.url < b.url;
  });
  for (std::size_t i = 0; i < accepted.size(); ++i) accepted[i].rank = static_cast<int>(i) + 1;
  return accepted;
}

namespace {

std::set<std::string> doc_token_set(const corpus::NewsArticle& n) {
  auto terms = index::analyze_terms(n.full_text(), {});
  return std::set<std::string>(terms.begin(), terms.end());
}

E1Metrics metrics_from_counts(long correct, long predicted, long gold) {
  E1Metrics m;
  m.precision = predicted > 0 ? static_cast<double>(correct) / predicted : 0.0;
  m.recall = gold > 0 ? static_cast<double>(correct) / gold : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

}  // namespace

E1Report evaluate_e1(const std::map<std::string, std::vector<std::string>>& predictions,
                     const std::map<std::string, std::set<std::string>>& gt,
                     const corpus::NewsCorpus& news, double fp_jaccard) {
  long predicted = 0, gold = 0, correct_e1 = 0, correct_fp = 0;
  for (const auto& [st, docs] : gt) gold += static_cast<long>(docs.size());
  for (const auto& [st, accepted] : predictions) {
    auto gt_it = gt.find(st);
    predicted += static_cast<long>(accepted.size());
    for (const auto& url : accepted) {
      bool exact = gt_it != gt.end() && gt_it->second.count(url) > 0;
      if (exact) {
        ++correct_e1;
        ++correct_fp;
        continue;
      }
      if (gt_it == gt.end()) continue;
      const auto* doc = news.find(url);
      if (!doc) continue;
      auto doc_tokens = doc_token_set(*doc);
      for (const auto& gt_url : gt_it->second) {
        const auto* gt_doc = news.find(gt_url);
        if (!gt_doc) continue;
        if (text::jaccard(doc_tokens, doc_token_set(*gt_doc)) >= fp_jaccard) {
          ++correct_fp;
          break;
        }
      }
    }
  }
  E1Report report;
  report.e1 = metrics_from_counts(correct_e1, predicted, gold);
  report.e1_fp = metrics_from_counts(correct_fp, predicted, gold);
  return report;
}

PipelineResult run_pipeline(const corpus::Statement& statement, const corpus::WikiArticle& entity,
                            const std::vector<categorize::ScModel>& sc_models,
                            const categorize::ScContext& sc_ctx, const FcModel& fc_model,
                            const FcContext& fc_ctx) {
  PipelineResult out;
  out.statement_id = statement.id;
  auto vote = categorize::categorize_statement(statement, entity, sc_models, sc_ctx);
  out.sc_category = vote.category;
  out.sc_vote_share = vote.vote_share;
  if (vote.category != "news") {
    out.reason = "statement categorized as " + vote.category + "; citation discovery skipped";
    return out;
  }
  out.accepted = discover_citations(statement, entity, fc_model, fc_ctx, fc_ctx.depth);
  if (out.accepted.empty()) out.reason = "no candidate passed the acceptance threshold";
  return out;
}

std::string FcModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-fc";
  j["version"] = 1;
  j["threshold"] = threshold;
  j["ensemble"] = nlohmann::ordered_json::parse(model.to_json());
  return j.dump();
}

FcModel FcModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-fc") throw Error("not an FC model file");
  if (j.value("version", 0) > 1) throw Error("FC model version is newer than supported (1)");
  FcModel m;
  m.threshold = j["threshold"];
  m.model = ml::EnsembleModel::from_json(j["ensemble"].dump());
  return m;
}

}  // namespace newscite::discover
