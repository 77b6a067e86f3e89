// dataset.hpp
// Named sparse feature vectors plus labels, shared by all learners.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "newscite/common.hpp"

namespace newscite::ml {

using FeatureVector = std::map<std::string, double>;

class Dataset {
public:
  struct Instance {
    std::vector<std::pair<int, double>> features;  // sorted by feature id
    int label = 0;
    double weight = 1.0;
  };

  int register_feature(const std::string& name) {
    auto it = feature_index_.find(name);
    if (it != feature_index_.end()) return it->second;
    int id = static_cast<int>(feature_names_.size());
    feature_index_[name] = id;
    feature_names_.push_back(name);
    return id;
  }

  int register_class(const std::string& name) {
    auto it = class_index_.find(name);
    if (it != class_index_.end()) return it->second;
    int id = static_cast<int>(class_names_.size());
    class_index_[name] = id;
    class_names_.push_back(name);
    return id;
  }

  void add(const FeatureVector& fv, const std::string& label, double weight = 1.0) {
    Instance inst;
    inst.label = register_class(label);
    inst.weight = weight;
    for (const auto& [name, value] : fv) {
      if (value != 0.0) inst.features.emplace_back(register_feature(name), value);
    }
    std::sort(inst.features.begin(), inst.features.end());
    instances_.push_back(std::move(inst));
  }

  void add(Instance inst) {
    if (inst.label < 0 || inst.label >= static_cast<int>(class_names_.size()))
      throw Error("Dataset::add: unregistered class id");
    instances_.push_back(std::move(inst));
  }

  static double value_of(const Instance& inst, int feature) {
    for (const auto& [f, v] : inst.features) {
      if (f == feature) return v;
      if (f > feature) break;
    }
    return 0.0;
  }

  const std::vector<Instance>& instances() const { return instances_; }
  std::vector<Instance>& instances() { return instances_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  int num_features() const { return static_cast<int>(feature_names_.size()); }
  int num_classes() const { return static_cast<int>(class_names_.size()); }
  int feature_id(const std::string& name) const {
    auto it = feature_index_.find(name);
    return it == feature_index_.end() ? -1 : it->second;
  }
  int class_id(const std::string& name) const {
    auto it = class_index_.find(name);
    return it == class_index_.end() ? -1 : it->second;
  }

  // Sparse map -> instance feature list against this dataset's registry;
  // unseen feature names are registered.
  std::vector<std::pair<int, double>> encode(const FeatureVector& fv) {
    std::vector<std::pair<int, double>> out;
    for (const auto& [name, value] : fv) {
      if (value != 0.0) out.emplace_back(register_feature(name), value);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<Instance> instances_;
  std::vector<std::string> feature_names_;
  std::map<std::string, int> feature_index_;
  std::vector<std::string> class_names_;
  std::map<std::string, int> class_index_;
};

}  // namespace newscite::ml
