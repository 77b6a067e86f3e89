// ensemble.hpp
// Bagged CART ensemble: binary Gini splits, per-node random feature subsets,
// majority voting. Cost sensitivity enters as class weights in the split
// impurity and leaf histograms.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newscite/ml/dataset.hpp"

namespace newscite::ml {

struct EnsembleParams {
  int num_trees = 100;
  int max_depth = 12;
  int min_leaf = 1;
  std::uint64_t seed = 0;
  bool bootstrap = true;
  int mtry = 0;  // features tried per node; 0 = round(sqrt(F))
  std::vector<double> class_weights;  // empty = uniform
  int threads = 1;  // trees are independent; per-tree seeds keep this deterministic
};

struct TreeNode {
  int feature = -1;  // -1 = leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> class_histogram;  // weighted, at leaves
};

struct Tree {
  std::vector<TreeNode> nodes;
  int predict(const std::vector<std::pair<int, double>>& features) const;
};

struct Prediction {
  int label = 0;
  std::vector<double> vote_share;  // per class, sums to 1
};

class EnsembleModel {
public:
  EnsembleParams params;
  std::vector<Tree> trees;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::string warning;  // set for degenerate training data

  Prediction predict(const std::vector<std::pair<int, double>>& features) const;
  Prediction predict(const FeatureVector& fv) const;  // by feature name

  std::string to_json() const;
  static EnsembleModel from_json(const std::string& text);

private:
  int feature_id(const std::string& name) const;
};

EnsembleModel train_ensemble(const Dataset& data, const EnsembleParams& params);

// avg margin over instances: vote_share(gold) - max_{y' != gold} vote_share(y'), in [-1, 1].
double ensemble_margin(const EnsembleModel& model, const Dataset& data);

}  // namespace newscite::ml
