#include "newscite/ml/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "newscite/common.hpp"

namespace newscite::ml {

std::vector<double> LogisticModel::probabilities(const std::vector<std::pair<int, double>>& features) const {
  std::size_t k = class_names.size();
  std::vector<double> logits(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    double z = bias[c];
    for (const auto& [f, v] : features) {
      if (f >= 0 && static_cast<std::size_t>(f) < weights[c].size()) z += weights[c][static_cast<std::size_t>(f)] * v;
    }
    logits[c] = z;
  }
  double mx = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (auto& z : logits) {
    z = std::exp(z - mx);
    total += z;
  }
  for (auto& z : logits) z /= total;
  return logits;
}

int LogisticModel::predict(const std::vector<std::pair<int, double>>& features) const {
  auto p = probabilities(features);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

LogisticModel train_logistic(const Dataset& data, const LogisticParams& params) {
  if (data.instances().empty()) throw Error("train_logistic: empty dataset");
  std::size_t k = static_cast<std::size_t>(data.num_classes());
  std::size_t nf = static_cast<std::size_t>(data.num_features());
  LogisticModel model;
  model.feature_names = data.feature_names();
  model.class_names = data.class_names();
  model.weights.assign(k, std::vector<double>(nf, 0.0));
  model.bias.assign(k, 0.0);

  double n = static_cast<double>(data.instances().size());
  std::vector<std::vector<double>> grad_w(k, std::vector<double>(nf, 0.0));
  std::vector<double> grad_b(k, 0.0);

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (auto& g : grad_w) std::fill(g.begin(), g.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    double loss = 0.0;
    for (const auto& inst : data.instances()) {
      auto p = model.probabilities(inst.features);
      loss -= inst.weight * std::log(std::max(p[static_cast<std::size_t>(inst.label)], 1e-300));
      for (std::size_t c = 0; c < k; ++c) {
        double err = inst.weight * (p[c] - (static_cast<int>(c) == inst.label ? 1.0 : 0.0));
        grad_b[c] += err;
        for (const auto& [f, v] : inst.features) grad_w[c][static_cast<std::size_t>(f)] += err * v;
      }
    }
    if (!std::isfinite(loss)) {
      throw Error("train_logistic diverged at epoch " + std::to_string(epoch) +
                  " (loss not finite); lower learning_rate=" + format_double(params.learning_rate));
    }
    double lr = params.learning_rate * std::pow(params.decay, epoch);
    for (std::size_t c = 0; c < k; ++c) {
      model.bias[c] -= lr * grad_b[c] / n;
      for (std::size_t f = 0; f < nf; ++f) {
        model.weights[c][f] -= lr * (grad_w[c][f] / n + params.l2 * model.weights[c][f]);
      }
    }
  }
  return model;
}

}  // namespace newscite::ml
