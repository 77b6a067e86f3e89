#include "newscite/ml/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/parallel.hpp"

namespace newscite::ml {

namespace {

using Instance = Dataset::Instance;

struct Builder {
  const Dataset& data;
  const EnsembleParams& params;
  int num_classes;
  int num_features;
  int mtry;
  std::vector<double> class_weight;

  double instance_weight(const Instance& inst) const {
    return inst.weight * class_weight[static_cast<std::size_t>(inst.label)];
  }

  double gini(const std::vector<double>& hist, double total) const {
    if (total <= 0) return 0.0;
    double g = 1.0;
    for (double c : hist) {
      double p = c / total;
      g -= p * p;
    }
    return g;
  }

  int grow(Tree& tree, std::vector<int>& idx, int begin, int end, int depth, std::mt19937_64& rng) {
    std::vector<double> hist(static_cast<std::size_t>(num_classes), 0.0);
    double total = 0.0;
    for (int i = begin; i < end; ++i) {
      const Instance& inst = data.instances()[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      double w = instance_weight(inst);
      hist[static_cast<std::size_t>(inst.label)] += w;
      total += w;
    }
    int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[static_cast<std::size_t>(node_id)].class_histogram = hist;

    bool pure = std::count_if(hist.begin(), hist.end(), [](double c) { return c > 0; }) <= 1;
    if (pure || depth >= params.max_depth || end - begin < 2 * params.min_leaf) return node_id;

    // candidate features, without replacement
    std::vector<int> feats(static_cast<std::size_t>(num_features));
    for (int f = 0; f < num_features; ++f) feats[static_cast<std::size_t>(f)] = f;
    for (int k = 0; k < mtry && k < num_features; ++k) {
      std::uniform_int_distribution<int> pick(k, num_features - 1);
      std::swap(feats[static_cast<std::size_t>(k)], feats[static_cast<std::size_t>(pick(rng))]);
    }

    double parent_impurity = gini(hist, total);
    double best_gain = 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::pair<double, int>> vals;  // (value, instance idx)
    for (int k = 0; k < mtry && k < num_features; ++k) {
      int f = feats[static_cast<std::size_t>(k)];
      vals.clear();
      for (int i = begin; i < end; ++i) {
        int id = idx[static_cast<std::size_t>(i)];
        vals.emplace_back(Dataset::value_of(data.instances()[static_cast<std::size_t>(id)], f), id);
      }
      std::sort(vals.begin(), vals.end());
      std::vector<double> left_hist(static_cast<std::size_t>(num_classes), 0.0);
      double left_total = 0.0;
      std::vector<double> right_hist = hist;
      double right_total = total;
      int n = static_cast<int>(vals.size());
      for (int i = 0; i + 1 < n; ++i) {
        const Instance& inst = data.instances()[static_cast<std::size_t>(vals[static_cast<std::size_t>(i)].second)];
        double w = instance_weight(inst);
        left_hist[static_cast<std::size_t>(inst.label)] += w;
        left_total += w;
        right_hist[static_cast<std::size_t>(inst.label)] -= w;
        right_total -= w;
        if (vals[static_cast<std::size_t>(i)].first == vals[static_cast<std::size_t>(i + 1)].first) continue;
        int left_n = i + 1, right_n = n - left_n;
        if (left_n < params.min_leaf || right_n < params.min_leaf) continue;
        double gain = parent_impurity - (left_total * gini(left_hist, left_total) +
                                         right_total * gini(right_hist, right_total)) /
                                            total;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          best_threshold = 0.5 * (vals[static_cast<std::size_t>(i)].first +
                                  vals[static_cast<std::size_t>(i + 1)].first);
        }
      }
    }
    if (best_feature < 0) return node_id;

    auto mid = std::stable_partition(idx.begin() + begin, idx.begin() + end, [&](int id) {
      return Dataset::value_of(data.instances()[static_cast<std::size_t>(id)], best_feature) <= best_threshold;
    });
    int split = static_cast<int>(mid - idx.begin());
    if (split == begin || split == end) return node_id;  // degenerate split

    int left = grow(tree, idx, begin, split, depth + 1, rng);
    int right = grow(tree, idx, split, end, depth + 1, rng);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left;
    node.right = right;
    return node_id;
  }
};

}  // namespace

int Tree::predict(const std::vector<std::pair<int, double>>& features) const {
  int node = 0;
  while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& nd = nodes[static_cast<std::size_t>(node)];
    double v = 0.0;
    for (const auto& [f, val] : features) {
      if (f == nd.feature) {
        v = val;
        break;
      }
      if (f > nd.feature) break;
    }
    node = v <= nd.threshold ? nd.left : nd.right;
  }
  const auto& hist = nodes[static_cast<std::size_t>(node)].class_histogram;
  int best = 0;
  for (std::size_t c = 1; c < hist.size(); ++c) {
    if (hist[c] > hist[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  }
  return best;
}

Prediction EnsembleModel::predict(const std::vector<std::pair<int, double>>& features) const {
  Prediction p;
  p.vote_share.assign(class_names.size(), 0.0);
  for (const auto& tree : trees) p.vote_share[static_cast<std::size_t>(tree.predict(features))] += 1.0;
  double k = static_cast<double>(trees.size());
  for (auto& v : p.vote_share) v /= k;
  p.label = 0;
  for (std::size_t c = 1; c < p.vote_share.size(); ++c) {
    if (p.vote_share[c] > p.vote_share[static_cast<std::size_t>(p.label)]) p.label = static_cast<int>(c);
  }
  return p;
}

int EnsembleModel::feature_id(const std::string& name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  return it == feature_names.end() ? -1 : static_cast<int>(it - feature_names.begin());
}

Prediction EnsembleModel::predict(const FeatureVector& fv) const {
  std::vector<std::pair<int, double>> features;
  for (const auto& [name, value] : fv) {
    int id = feature_id(name);
    if (id >= 0 && value != 0.0) features.emplace_back(id, value);
  }
  std::sort(features.begin(), features.end());
  return predict(features);
}

EnsembleModel train_ensemble(const Dataset& data, const EnsembleParams& params) {
  if (data.instances().empty()) throw Error("train_ensemble: empty dataset");
  EnsembleModel model;
  model.params = params;
  model.feature_names = data.feature_names();
  model.class_names = data.class_names();

  int classes_present = 0;
  {
    std::vector<bool> seen(static_cast<std::size_t>(data.num_classes()), false);
    for (const auto& inst : data.instances()) {
      if (!seen[static_cast<std::size_t>(inst.label)]) {
        seen[static_cast<std::size_t>(inst.label)] = true;
        ++classes_present;
      }
    }
  }
  if (classes_present < 2) {
    model.warning = "single-class training data; constant model";
    Tree t;
    t.nodes.emplace_back();
    t.nodes[0].class_histogram.assign(static_cast<std::size_t>(data.num_classes()), 0.0);
    for (const auto& inst : data.instances())
      t.nodes[0].class_histogram[static_cast<std::size_t>(inst.label)] += inst.weight;
    model.trees.assign(static_cast<std::size_t>(std::max(params.num_trees, 1)), t);
    return model;
  }

  Builder b{data, params, data.num_classes(), data.num_features(), 0, {}};
  b.mtry = params.mtry > 0
               ? params.mtry
               : std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(data.num_features())))));
  b.class_weight = params.class_weights;
  if (b.class_weight.empty()) b.class_weight.assign(static_cast<std::size_t>(data.num_classes()), 1.0);
  if (b.class_weight.size() != static_cast<std::size_t>(data.num_classes()))
    throw Error("train_ensemble: class_weights size mismatch");

  int n = static_cast<int>(data.instances().size());
  model.trees.resize(static_cast<std::size_t>(params.num_trees));
  parallel_for(static_cast<std::size_t>(params.num_trees), params.threads, [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(t)));
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(n));
    if (params.bootstrap) {
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int i = 0; i < n; ++i) idx.push_back(pick(rng));
    } else {
      for (int i = 0; i < n; ++i) idx.push_back(i);
    }
    Builder local = b;
    local.grow(model.trees[t], idx, 0, n, 0, rng);
  });
  return model;
}

double ensemble_margin(const EnsembleModel& model, const Dataset& data) {
  if (data.instances().empty()) return 0.0;
  double sum = 0.0;
  for (const auto& inst : data.instances()) {
    Prediction p = model.predict(inst.features);
    double gold = p.vote_share[static_cast<std::size_t>(inst.label)];
    double best_other = 0.0;
    for (std::size_t c = 0; c < p.vote_share.size(); ++c) {
      if (static_cast<int>(c) != inst.label) best_other = std::max(best_other, p.vote_share[c]);
    }
    sum += gold - best_other;
  }
  return sum / static_cast<double>(data.instances().size());
}

std::string EnsembleModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-ensemble";
  j["version"] = 1;
  j["num_trees"] = params.num_trees;
  j["max_depth"] = params.max_depth;
  j["min_leaf"] = params.min_leaf;
  j["seed"] = params.seed;
  j["bootstrap"] = params.bootstrap;
  j["mtry"] = params.mtry;
  j["class_weights"] = params.class_weights;
  j["feature_names"] = feature_names;
  j["class_names"] = class_names;
  j["warning"] = warning;
  nlohmann::ordered_json trees_j = nlohmann::ordered_json::array();
  for (const auto& tree : trees) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& nd : tree.nodes) {
      nodes.push_back({{"f", nd.feature},
                       {"t", nd.threshold},
                       {"l", nd.left},
                       {"r", nd.right},
                       {"h", nd.class_histogram}});
    }
    trees_j.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees_j);
  return j.dump();
}

EnsembleModel EnsembleModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-ensemble") throw Error("not an ensemble model file");
  int version = j.value("version", 0);
  if (version > 1) throw Error("ensemble model version " + std::to_string(version) + " is newer than supported (1)");
  EnsembleModel m;
  m.params.num_trees = j["num_trees"];
  m.params.max_depth = j["max_depth"];
  m.params.min_leaf = j["min_leaf"];
  m.params.seed = j["seed"];
  m.params.bootstrap = j["bootstrap"];
  m.params.mtry = j["mtry"];
  m.params.class_weights = j["class_weights"].get<std::vector<double>>();
  m.feature_names = j["feature_names"].get<std::vector<std::string>>();
  m.class_names = j["class_names"].get<std::vector<std::string>>();
  m.warning = j.value("warning", "");
  for (const auto& tree_j : j["trees"]) {
    Tree t;
    for (const auto& nd_j : tree_j) {
      TreeNode nd;
      nd.feature = nd_j["f"];
      nd.threshold = nd_j["t"];
      nd.left = nd_j["l"];
      nd.right = nd_j["r"];
      nd.class_histogram = nd_j["h"].get<std::vector<double>>();
      t.nodes.push_back(std::move(nd));
    }
    m.trees.push_back(std::move(t));
  }
  return m;
}

}  // namespace newscite::ml
