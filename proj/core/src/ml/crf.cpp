#include "newscite/ml/crf.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/parallel.hpp"

namespace newscite::ml {

namespace {

double log_sum_exp(const std::vector<double>& v) {
  double mx = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace

CrfModel::CrfModel(int num_labels, int num_features)
    : num_labels_(num_labels), num_features_(num_features) {
  if (num_labels < 2) throw Error("CrfModel: need at least 2 labels");
  weights_.assign(static_cast<std::size_t>(num_labels) * static_cast<std::size_t>(num_labels) +
                      static_cast<std::size_t>(num_labels) * static_cast<std::size_t>(num_features),
                  0.0);
}

double& CrfModel::transition(int prev, int cur) {
  return weights_[static_cast<std::size_t>(prev) * static_cast<std::size_t>(num_labels_) +
                  static_cast<std::size_t>(cur)];
}
double CrfModel::transition(int prev, int cur) const {
  return weights_[static_cast<std::size_t>(prev) * static_cast<std::size_t>(num_labels_) +
                  static_cast<std::size_t>(cur)];
}
double& CrfModel::observation(int label, int feature) {
  return weights_[static_cast<std::size_t>(num_labels_) * static_cast<std::size_t>(num_labels_) +
                  static_cast<std::size_t>(label) * static_cast<std::size_t>(num_features_) +
                  static_cast<std::size_t>(feature)];
}
double CrfModel::observation(int label, int feature) const {
  return weights_[static_cast<std::size_t>(num_labels_) * static_cast<std::size_t>(num_labels_) +
                  static_cast<std::size_t>(label) * static_cast<std::size_t>(num_features_) +
                  static_cast<std::size_t>(feature)];
}

void CrfModel::set_weights(std::vector<double> w) {
  if (w.size() != weights_.size()) throw Error("CrfModel::set_weights: size mismatch");
  weights_ = std::move(w);
}

double CrfModel::obs_score(const CrfSequence& seq, std::size_t t, int label) const {
  double s = 0.0;
  for (const auto& [f, v] : seq.obs[t]) s += observation(label, f) * v;
  return s;
}

double CrfModel::log_z(const CrfSequence& seq) const {
  std::size_t T = seq.length();
  if (T == 0) throw Error("CrfModel: empty sequence");
  std::size_t L = static_cast<std::size_t>(num_labels_);
  std::vector<double> alpha(L), next(L), tmp(L);
  for (std::size_t y = 0; y < L; ++y) alpha[y] = obs_score(seq, 0, static_cast<int>(y));
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t p = 0; p < L; ++p) {
        tmp[p] = alpha[p] + transition(static_cast<int>(p), static_cast<int>(y));
      }
      next[y] = log_sum_exp(tmp) + obs_score(seq, t, static_cast<int>(y));
    }
    alpha.swap(next);
  }
  return log_sum_exp(alpha);
}

double CrfModel::score(const CrfSequence& seq, const std::vector<int>& labels) const {
  if (labels.size() != seq.length()) throw Error("CrfModel::score: label length mismatch");
  double s = 0.0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    s += obs_score(seq, t, labels[t]);
    if (t > 0) s += transition(labels[t - 1], labels[t]);
  }
  return s;
}

std::vector<int> CrfModel::decode(const CrfSequence& seq) const {
  std::size_t T = seq.length();
  if (T == 0) return {};
  std::size_t L = static_cast<std::size_t>(num_labels_);

  // beta[t][y]: best achievable score of the suffix starting at t given
  // label y at t (including obs at t). Selecting greedily from the front
  // with ties toward the smaller label yields the lexicographically
  // smallest argmax sequence.
  std::vector<std::vector<double>> beta(T, std::vector<double>(L, 0.0));
  for (std::size_t y = 0; y < L; ++y) beta[T - 1][y] = obs_score(seq, T - 1, static_cast<int>(y));
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t y = 0; y < L; ++y) {
      double best = -1e300;
      for (std::size_t nxt = 0; nxt < L; ++nxt) {
        best = std::max(best, transition(static_cast<int>(y), static_cast<int>(nxt)) + beta[t + 1][nxt]);
      }
      beta[t][y] = obs_score(seq, t, static_cast<int>(y)) + best;
    }
  }

  std::vector<int> labels(T, 0);
  int prev = -1;
  for (std::size_t t = 0; t < T; ++t) {
    int best = 0;
    double best_score = -1e300;
    for (std::size_t y = 0; y < L; ++y) {
      double s = beta[t][y];
      if (prev >= 0) s += transition(prev, static_cast<int>(y));
      if (s > best_score) {
        best_score = s;
        best = static_cast<int>(y);
      }
    }
    labels[t] = best;
    prev = best;
  }
  return labels;
}

std::vector<std::vector<double>> CrfModel::marginals(const CrfSequence& seq) const {
  std::size_t T = seq.length();
  if (T == 0) return {};
  std::size_t L = static_cast<std::size_t>(num_labels_);
  std::vector<std::vector<double>> alpha(T, std::vector<double>(L, 0.0));
  std::vector<std::vector<double>> beta(T, std::vector<double>(L, 0.0));
  std::vector<double> tmp(L);

  for (std::size_t y = 0; y < L; ++y) alpha[0][y] = obs_score(seq, 0, static_cast<int>(y));
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t p = 0; p < L; ++p)
        tmp[p] = alpha[t - 1][p] + transition(static_cast<int>(p), static_cast<int>(y));
      alpha[t][y] = log_sum_exp(tmp) + obs_score(seq, t, static_cast<int>(y));
    }
  }
  for (std::size_t y = 0; y < L; ++y) beta[T - 1][y] = 0.0;
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t nxt = 0; nxt < L; ++nxt) {
        tmp[nxt] = transition(static_cast<int>(y), static_cast<int>(nxt)) +
                   obs_score(seq, t + 1, static_cast<int>(nxt)) + beta[t + 1][nxt];
      }
      beta[t][y] = log_sum_exp(tmp);
    }
  }
  double logz = log_sum_exp(alpha[T - 1]);
  std::vector<std::vector<double>> out(T, std::vector<double>(L, 0.0));
  for (std::size_t t = 0; t < T; ++t) {
    double total = 0.0;
    for (std::size_t y = 0; y < L; ++y) {
      out[t][y] = std::exp(alpha[t][y] + beta[t][y] - logz);
      total += out[t][y];
    }
    for (std::size_t y = 0; y < L; ++y) out[t][y] /= total;  // exact renormalization
  }
  return out;
}

std::pair<double, std::vector<double>> crf_loglik_and_grad(const CrfModel& model,
                                                           const std::vector<CrfSequence>& sequences,
                                                           double l2, int threads) {
  std::size_t L = static_cast<std::size_t>(model.num_labels());
  std::size_t W = model.weights().size();

  for (const auto& seq : sequences) {
    if (seq.length() == 0) throw Error("crf_loglik_and_grad: empty sequence");
    if (seq.labels.size() != seq.length()) throw Error("crf_loglik_and_grad: sequence without labels");
    for (int y : seq.labels) {
      if (y < 0 || y >= model.num_labels()) throw Error("crf_loglik_and_grad: unseen label id " + std::to_string(y));
    }
  }

  // per-sequence contributions are accumulated into slots and reduced in
  // order, so the result is independent of thread scheduling
  std::vector<double> seq_ll(sequences.size(), 0.0);
  std::vector<std::vector<double>> seq_grad(sequences.size());

  parallel_for(sequences.size(), threads, [&](std::size_t si) {
    const CrfSequence& seq = sequences[si];
    std::size_t T = seq.length();
    std::vector<double>& grad = seq_grad[si];
    grad.assign(W, 0.0);

    // empirical counts
    auto trans_idx = [&](int p, int c) {
      return static_cast<std::size_t>(p) * L + static_cast<std::size_t>(c);
    };
    auto obs_idx = [&](int y, int f) {
      return L * L + static_cast<std::size_t>(y) * static_cast<std::size_t>(model.num_features()) +
             static_cast<std::size_t>(f);
    };
    for (std::size_t t = 0; t < T; ++t) {
      for (const auto& [f, v] : seq.obs[t]) grad[obs_idx(seq.labels[t], f)] += v;
      if (t > 0) grad[trans_idx(seq.labels[t - 1], seq.labels[t])] += 1.0;
    }

    // expected counts via forward-backward
    std::vector<std::vector<double>> alpha(T, std::vector<double>(L, 0.0));
    std::vector<std::vector<double>> beta(T, std::vector<double>(L, 0.0));
    std::vector<double> tmp(L);
    for (std::size_t y = 0; y < L; ++y) alpha[0][y] = model.obs_score(seq, 0, static_cast<int>(y));
    for (std::size_t t = 1; t < T; ++t) {
      for (std::size_t y = 0; y < L; ++y) {
        for (std::size_t p = 0; p < L; ++p)
          tmp[p] = alpha[t - 1][p] + model.transition(static_cast<int>(p), static_cast<int>(y));
        alpha[t][y] = log_sum_exp(tmp) + model.obs_score(seq, t, static_cast<int>(y));
      }
    }
    for (std::size_t t = T - 1; t-- > 0;) {
      for (std::size_t y = 0; y < L; ++y) {
        for (std::size_t nxt = 0; nxt < L; ++nxt) {
          tmp[nxt] = model.transition(static_cast<int>(y), static_cast<int>(nxt)) +
                     model.obs_score(seq, t + 1, static_cast<int>(nxt)) + beta[t + 1][nxt];
        }
        beta[t][y] = log_sum_exp(tmp);
      }
    }
    double logz = log_sum_exp(alpha[T - 1]);

    seq_ll[si] = model.score(seq, seq.labels) - logz;

    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t y = 0; y < L; ++y) {
        double p = std::exp(alpha[t][y] + beta[t][y] - logz);
        for (const auto& [f, v] : seq.obs[t]) grad[obs_idx(static_cast<int>(y), f)] -= p * v;
      }
      if (t > 0) {
        for (std::size_t p = 0; p < L; ++p) {
          for (std::size_t y = 0; y < L; ++y) {
            double pij = std::exp(alpha[t - 1][p] +
                                  model.transition(static_cast<int>(p), static_cast<int>(y)) +
                                  model.obs_score(seq, t, static_cast<int>(y)) + beta[t][y] - logz);
            grad[trans_idx(static_cast<int>(p), static_cast<int>(y))] -= pij;
          }
        }
      }
    }
  });

  double ll = 0.0;
  std::vector<double> grad(W, 0.0);
  for (std::size_t si = 0; si < sequences.size(); ++si) {
    ll += seq_ll[si];
    for (std::size_t i = 0; i < W; ++i) grad[i] += seq_grad[si][i];
  }
  // L2 penalty on the log-likelihood: ll - l2/2 * ||w||^2
  const auto& w = model.weights();
  for (std::size_t i = 0; i < W; ++i) {
    ll -= 0.5 * l2 * w[i] * w[i];
    grad[i] -= l2 * w[i];
  }
  return {ll, std::move(grad)};
}

CrfModel crf_train(const std::vector<CrfSequence>& sequences, int num_labels, int num_features,
                   const CrfTrainParams& params) {
  if (sequences.empty()) throw Error("crf_train: no sequences");
  CrfModel model(num_labels, num_features);
  for (const auto& seq : sequences) {
    for (int y : seq.labels) {
      if (y < 0 || y >= num_labels) throw Error("crf_train: unseen label id " + std::to_string(y));
    }
  }
  auto objective = [&](const std::vector<double>& x, std::vector<double>& grad_out) {
    CrfModel m(num_labels, num_features);
    m.set_weights(x);
    auto [ll, grad] = crf_loglik_and_grad(m, sequences, params.l2, params.threads);
    grad_out.resize(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) grad_out[i] = -grad[i];
    return -ll;
  };
  LbfgsResult res = lbfgs_minimize(objective, model.weights(), params.lbfgs);
  model.set_weights(res.x);
  return model;
}

std::string CrfModel::to_json(const std::vector<std::string>& label_names,
                              const std::vector<std::string>& feature_names) const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-crf";
  j["version"] = 1;
  j["num_labels"] = num_labels_;
  j["num_features"] = num_features_;
  j["label_names"] = label_names;
  j["feature_names"] = feature_names;
  j["weights"] = weights_;
  return j.dump();
}

CrfModel CrfModel::from_json(const std::string& text, std::vector<std::string>* label_names,
                             std::vector<std::string>* feature_names) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-crf") throw Error("not a CRF model file");
  int version = j.value("version", 0);
  if (version > 1) throw Error("CRF model version " + std::to_string(version) + " is newer than supported (1)");
  CrfModel m(j["num_labels"], j["num_features"]);
  m.set_weights(j["weights"].get<std::vector<double>>());
  if (label_names) *label_names = j["label_names"].get<std::vector<std::string>>();
  if (feature_names) *feature_names = j["feature_names"].get<std::vector<std::string>>();
  return m;
}

}  // namespace newscite::ml
