#include "newscite/eval/metrics.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"

namespace newscite::eval {

MetricsReport classification_metrics(const std::vector<std::string>& predictions,
                                     const std::vector<std::string>& gold) {
  if (predictions.empty()) throw Error("classification_metrics: empty input");
  if (predictions.size() != gold.size()) throw Error("classification_metrics: length mismatch");

  MetricsReport r;
  std::set<std::string> classes(gold.begin(), gold.end());
  classes.insert(predictions.begin(), predictions.end());

  double n = static_cast<double>(gold.size());
  long correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    r.confusion[gold[i]][predictions[i]] += 1;
    if (gold[i] == predictions[i]) ++correct;
  }
  r.accuracy = static_cast<double>(correct) / n;

  double macro_p = 0, macro_r = 0, macro_f = 0;
  for (const auto& c : classes) {
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      bool g = gold[i] == c, p = predictions[i] == c;
      tp += g && p;
      fp += !g && p;
      fn += g && !p;
    }
    ClassMetrics m;
    m.support = tp + fn;
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    macro_p += m.precision;
    macro_r += m.recall;
    macro_f += m.f1;
    r.per_class[c] = m;
  }
  double k = static_cast<double>(classes.size());
  r.macro_precision = macro_p / k;
  r.macro_recall = macro_r / k;
  r.macro_f1 = macro_f / k;

  // single-label multi-class: micro P = micro R = accuracy
  r.micro_precision = r.accuracy;
  r.micro_recall = r.accuracy;
  r.micro_f1 = r.accuracy;

  // kappa with marginal-product chance agreement
  double pe = 0;
  for (const auto& c : classes) {
    double gold_marginal = 0, pred_marginal = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      gold_marginal += gold[i] == c;
      pred_marginal += predictions[i] == c;
    }
    pe += (gold_marginal / n) * (pred_marginal / n);
  }
  r.kappa = pe < 1.0 ? (r.accuracy - pe) / (1.0 - pe) : 1.0;
  return r;
}

ClassMetrics binary_metrics(const std::vector<bool>& predictions, const std::vector<bool>& gold) {
  if (predictions.size() != gold.size()) throw Error("binary_metrics: length mismatch");
  long tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    tp += gold[i] && predictions[i];
    fp += !gold[i] && predictions[i];
    fn += gold[i] && !predictions[i];
  }
  ClassMetrics m;
  m.support = tp + fn;
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  j["micro"] = {{"precision", micro_precision}, {"recall", micro_recall}, {"f1", micro_f1}};
  j["macro"] = {{"precision", macro_precision}, {"recall", macro_recall}, {"f1", macro_f1}};
  j["kappa"] = kappa;
  nlohmann::ordered_json classes_j;
  for (const auto& [name, m] : per_class) {
    classes_j[name] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  j["per_class"] = std::move(classes_j);
  j["metadata"] = metadata;
  return j.dump(2);
}

std::string MetricsReport::to_csv() const {
  std::string out = "class,precision,recall,f1,support\n";
  for (const auto& [name, m] : per_class) {
    out += csv_escape(name) + "," + format_double(m.precision) + "," + format_double(m.recall) + "," +
           format_double(m.f1) + "," + std::to_string(m.support) + "\n";
  }
  out += "micro," + format_double(micro_precision) + "," + format_double(micro_recall) + "," +
         format_double(micro_f1) + ",\n";
  out += "macro," + format_double(macro_precision) + "," + format_double(macro_recall) + "," +
         format_double(macro_f1) + ",\n";
  out += "kappa," + format_double(kappa) + ",,,\n";
  return out;
}

std::string MetricsReport::confusion_to_csv() const {
  std::set<std::string> cols;
  for (const auto& [gold, row] : confusion) {
    cols.insert(gold);
    for (const auto& [pred, count] : row) cols.insert(pred);
  }
  std::string out = "gold\\predicted";
  for (const auto& c : cols) out += "," + csv_escape(c);
  out += "\n";
  for (const auto& g : cols) {
    out += csv_escape(g);
    auto rit = confusion.find(g);
    for (const auto& c : cols) {
      long count = 0;
      if (rit != confusion.end()) {
        auto cit = rit->second.find(c);
        if (cit != rit->second.end()) count = cit->second;
      }
      out += "," + std::to_string(count);
    }
    out += "\n";
  }
  return out;
}

std::string config_hash(const std::string& canonical_config) { return fnv1a_hex(canonical_config); }

}  // namespace newscite::eval
