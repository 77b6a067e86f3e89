// crf.hpp
// Linear-chain conditional random field. Observation features are real-valued
// and label-conditioned; transition features pair consecutive labels. Z(X) via
// the forward algorithm in log space, decoding via Viterbi with a
// lexicographically-smallest tie rule, training via L-BFGS on the
// L2-regularized log-likelihood.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newscite/ml/lbfgs.hpp"

namespace newscite::ml {

struct CrfSequence {
  // obs[t] = sparse (feature id, value) for position t
  std::vector<std::vector<std::pair<int, double>>> obs;
  std::vector<int> labels;  // empty at inference

  std::size_t length() const { return obs.size(); }
};

struct CrfTrainParams {
  double l2 = 1.0;
  LbfgsParams lbfgs;
  int threads = 1;
};

class CrfModel {
public:
  CrfModel() = default;
  CrfModel(int num_labels, int num_features);

  int num_labels() const { return num_labels_; }
  int num_features() const { return num_features_; }

  double& transition(int prev, int cur);
  double transition(int prev, int cur) const;
  double& observation(int label, int feature);
  double observation(int label, int feature) const;

  const std::vector<double>& weights() const { return weights_; }
  void set_weights(std::vector<double> w);

  double log_z(const CrfSequence& seq) const;
  // Label sequence log-score (unnormalized).
  double score(const CrfSequence& seq, const std::vector<int>& labels) const;
  // Viterbi; among equal-scoring paths returns the lexicographically
  // smallest label sequence.
  std::vector<int> decode(const CrfSequence& seq) const;
  // Per-position label distributions, each summing to 1.
  std::vector<std::vector<double>> marginals(const CrfSequence& seq) const;

  std::string to_json(const std::vector<std::string>& label_names,
                      const std::vector<std::string>& feature_names) const;
  static CrfModel from_json(const std::string& text, std::vector<std::string>* label_names,
                            std::vector<std::string>* feature_names);

  double obs_score(const CrfSequence& seq, std::size_t t, int label) const;

private:
  int num_labels_ = 0;
  int num_features_ = 0;
  std::vector<double> weights_;  // transitions (L*L) then observations (L*F)
};

// (log-likelihood, gradient) of the label data under the model, L2 term
// included. Throws if a sequence is empty or carries an out-of-range label.
std::pair<double, std::vector<double>> crf_loglik_and_grad(const CrfModel& model,
                                                           const std::vector<CrfSequence>& sequences,
                                                           double l2, int threads = 1);

CrfModel crf_train(const std::vector<CrfSequence>& sequences, int num_labels, int num_features,
                   const CrfTrainParams& params = {});

}  // namespace newscite::ml
