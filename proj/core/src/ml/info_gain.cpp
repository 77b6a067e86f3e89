#include "newscite/ml/info_gain.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace newscite::ml {

namespace {

double entropy_bits(const std::vector<double>& counts, double total) {
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (double c : counts) {
    if (c > 0) {
      double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

// Equal-frequency bin ids; identical values always share a bin.
std::vector<int> discretize(const std::vector<double>& values, int bins) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<int> bin_of(n, 0);
  if (bins < 1) bins = 1;
  double target = static_cast<double>(n) / bins;
  int bin = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;  // value group
    // move to the next bin when the current one already met its quota
    if (static_cast<double>(i) >= target * (bin + 1) && bin + 1 < bins) ++bin;
    for (std::size_t k = i; k < j; ++k) bin_of[order[k]] = bin;
    i = j;
  }
  return bin_of;
}

}  // namespace

double information_gain(const Dataset& data, int feature, int bins) {
  const auto& inst = data.instances();
  if (inst.empty()) return 0.0;
  int classes = data.num_classes();
  std::vector<double> values(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) values[i] = Dataset::value_of(inst[i], feature);
  std::vector<int> bin_of = discretize(values, bins);
  int max_bin = *std::max_element(bin_of.begin(), bin_of.end()) + 1;

  std::vector<double> class_counts(static_cast<std::size_t>(classes), 0.0);
  std::vector<std::vector<double>> per_bin(static_cast<std::size_t>(max_bin),
                                           std::vector<double>(static_cast<std::size_t>(classes), 0.0));
  std::vector<double> bin_totals(static_cast<std::size_t>(max_bin), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    double w = inst[i].weight;
    class_counts[static_cast<std::size_t>(inst[i].label)] += w;
    per_bin[static_cast<std::size_t>(bin_of[i])][static_cast<std::size_t>(inst[i].label)] += w;
    bin_totals[static_cast<std::size_t>(bin_of[i])] += w;
    total += w;
  }
  double h_y = entropy_bits(class_counts, total);
  double h_cond = 0.0;
  for (int b = 0; b < max_bin; ++b) {
    if (bin_totals[static_cast<std::size_t>(b)] > 0) {
      h_cond += bin_totals[static_cast<std::size_t>(b)] / total *
                entropy_bits(per_bin[static_cast<std::size_t>(b)], bin_totals[static_cast<std::size_t>(b)]);
    }
  }
  return std::max(h_y - h_cond, 0.0);
}

std::vector<std::pair<std::string, double>> rank_features(const Dataset& data, int bins) {
  std::vector<std::pair<std::string, double>> out;
  for (int f = 0; f < data.num_features(); ++f) {
    out.emplace_back(data.feature_names()[static_cast<std::size_t>(f)], information_gain(data, f, bins));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace newscite::ml
