// models.hpp
// CSPS (linear-chain CRF over fragments), CSPC (independent per-fragment
// classification) and the heuristic baselines IC / CSW / CS.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newscite/ml/crf.hpp"
#include "newscite/ml/ensemble.hpp"
#include "newscite/span/features.hpp"
#include "newscite/span/instance.hpp"

namespace newscite::span {

// label ids; 0 decodes on ties so the empty selection is the deterministic
// zero-weight outcome
inline constexpr int label_not_covered = 0;
inline constexpr int label_covered = 1;

struct CspsModel {
  ml::CrfModel crf;
  std::vector<std::string> feature_names;

  std::string to_json() const;
  static CspsModel from_json(const std::string& text);
};

struct SpanTrainConfig {
  double l2 = 0.5;
  std::uint64_t seed = 0;
  int threads = 1;
  ml::EnsembleParams ensemble;

  SpanTrainConfig() {
    ensemble.num_trees = 40;
    ensemble.max_depth = 10;
    ensemble.min_leaf = 2;
  }
};

CspsModel train_csps(const std::vector<SpanInstance>& instances, const SpanFeatureContext& ctx,
                     const SpanTrainConfig& config);
SpanPrediction predict_csps(const SpanInstance& instance, const CspsModel& model,
                            const SpanFeatureContext& ctx);

struct CspcModel {
  ml::EnsembleModel ensemble;

  std::string to_json() const;
  static CspcModel from_json(const std::string& text);
};

CspcModel train_cspc(const std::vector<SpanInstance>& instances, const SpanFeatureContext& ctx,
                     const SpanTrainConfig& config);
SpanPrediction predict_cspc(const SpanInstance& instance, const CspcModel& model,
                            const SpanFeatureContext& ctx);

enum class BaselineMethod { ic, csw, cs };

// IC: sentences from the paragraph start (or after the previous citation)
// through the citing sentence. CSW: citing sentence +/- 2 sentences plus
// sentences opening with a cue word. CS: the citing sentence only.
SpanPrediction baseline_span(const SpanInstance& instance, BaselineMethod method);

// fold id per instance, split by citing paragraph (5-fold by default)
std::vector<int> cv_folds(const std::vector<SpanInstance>& instances, int folds, std::uint64_t seed);

}  // namespace newscite::span
