// metrics.hpp
// Shared evaluation: per-class P/R/F1, micro/macro averages, Cohen's kappa,
// confusion matrix, a temporal split helper and config hashing for report
// traceability.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace newscite::eval {

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  long support = 0;  // gold count
};

struct MetricsReport {
  std::map<std::string, ClassMetrics> per_class;
  double micro_precision = 0;
  double micro_recall = 0;
  double micro_f1 = 0;
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  double kappa = 0;
  double accuracy = 0;
  // confusion[gold][predicted]
  std::map<std::string, std::map<std::string, long>> confusion;
  // experiment bookkeeping
  std::map<std::string, std::string> metadata;  // seed, split, config_hash, ...

  std::string to_json() const;
  std::string to_csv() const;            // per-class + averages
  std::string confusion_to_csv() const;
};

// Throws on empty or length-mismatched input.
MetricsReport classification_metrics(const std::vector<std::string>& predictions,
                                     const std::vector<std::string>& gold);

// Convenience: P/R/F1 of one positive class.
ClassMetrics binary_metrics(const std::vector<bool>& predictions, const std::vector<bool>& gold);

// (train: year <= pivot, test: year > pivot); a partition of the input.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> temporal_split(const std::vector<T>& items, int pivot_year,
                                                         int (*year_of)(const T&)) {
  std::pair<std::vector<T>, std::vector<T>> out;
  for (const auto& item : items) {
    if (year_of(item) <= pivot_year) out.first.push_back(item);
    else out.second.push_back(item);
  }
  return out;
}

// Stable hash of a canonical config serialization; embedded in every report.
std::string config_hash(const std::string& canonical_config);

}  // namespace newscite::eval
