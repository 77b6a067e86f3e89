// logistic.hpp
// Multinomial logistic regression, batch gradient descent with a decaying
// learning-rate schedule and L2 regularization.

#pragma once

#include <string>
#include <vector>

#include "newscite/ml/dataset.hpp"

namespace newscite::ml {

struct LogisticParams {
  double l2 = 1e-4;
  double learning_rate = 0.5;
  double decay = 0.99;  // lr_t = learning_rate * decay^t
  int epochs = 300;
};

class LogisticModel {
public:
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::vector<std::vector<double>> weights;  // [class][feature]
  std::vector<double> bias;                  // [class]

  // Softmax class probabilities; sums to 1.
  std::vector<double> probabilities(const std::vector<std::pair<int, double>>& features) const;
  int predict(const std::vector<std::pair<int, double>>& features) const;
};

// Throws on divergence (non-finite loss) with diagnostics.
LogisticModel train_logistic(const Dataset& data, const LogisticParams& params);

}  // namespace newscite::ml
