#include "newscite/span/metrics.hpp"

#include <map>
#include <set>

#include "newscite/common.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::span {

namespace {
double word_count(const corpus::Fragment& f) {
  double n = 0;
  for (const auto& tok : text::tokenize(f.text)) {
    if (std::isalnum(static_cast<unsigned char>(tok.surface[0]))) n += 1;
  }
  return n;
}
}  // namespace

SpanMetrics span_metrics(const std::vector<ScoredInstance>& scored) {
  struct EntityAcc {
    double precision = 0, recall = 0, dw = 0, dd = 0;
    int count = 0;
  };
  std::map<std::string, EntityAcc> by_entity;

  for (const auto& s : scored) {
    const SpanInstance& inst = *s.instance;
    if (!inst.gold) throw Error("span_metrics: instance without gold labels: " + inst.paragraph_id);
    std::set<std::size_t> predicted(s.prediction.selected.begin(), s.prediction.selected.end());
    std::set<std::size_t> gold;
    for (std::size_t i = 0; i < inst.gold->size(); ++i) {
      if ((*inst.gold)[i]) gold.insert(i);
    }
    double inter = 0;
    for (std::size_t i : predicted) inter += gold.count(i);
    double precision = predicted.empty() ? 0.0 : inter / static_cast<double>(predicted.size());
    double recall = gold.empty() ? 0.0 : inter / static_cast<double>(gold.size());

    double extra_words = 0, gold_words = 0, extra_frags = 0;
    for (std::size_t i : predicted) {
      if (!gold.count(i)) {
        extra_words += word_count(inst.fragments[i]);
        extra_frags += 1;
      }
    }
    for (std::size_t i : gold) gold_words += word_count(inst.fragments[i]);

    EntityAcc& acc = by_entity[inst.entity_id];
    acc.precision += precision;
    acc.recall += recall;
    acc.dw += gold_words > 0 ? extra_words / gold_words : 0.0;
    acc.dd += gold.empty() ? 0.0 : extra_frags / static_cast<double>(gold.size());
    acc.count += 1;
  }
  if (by_entity.empty()) throw Error("span_metrics: no instances");

  SpanMetrics out;
  double entities = static_cast<double>(by_entity.size());
  for (const auto& [entity, acc] : by_entity) {
    out.map += acc.precision / acc.count;
    out.recall += acc.recall / acc.count;
    out.delta_words += acc.dw / acc.count;
    out.delta_fragments += acc.dd / acc.count;
  }
  out.map /= entities;
  out.recall /= entities;
  out.delta_words /= entities;
  out.delta_fragments /= entities;
  out.f1 = out.map + out.recall > 0 ? 2 * out.map * out.recall / (out.map + out.recall) : 0.0;
  return out;
}

double span_ratio(const SpanInstance& instance, const std::vector<std::size_t>& covered) {
  std::set<std::size_t> covered_set(covered.begin(), covered.end());
  std::map<int, std::pair<int, int>> per_sentence;  // covered, total
  for (std::size_t i = 0; i < instance.fragments.size(); ++i) {
    auto& [cov, total] = per_sentence[instance.fragments[i].sentence_index];
    total += 1;
    cov += covered_set.count(i) ? 1 : 0;
  }
  double ratio = 0;
  for (const auto& [sentence, counts] : per_sentence) {
    if (counts.second > 0) ratio += static_cast<double>(counts.first) / counts.second;
  }
  return ratio;
}

int span_bucket(double ratio) {
  if (ratio <= 0.5) return 0;
  if (ratio <= 1.0) return 1;
  if (ratio <= 2.0) return 2;
  if (ratio <= 5.0) return 3;
  return 4;
}

}  // namespace newscite::span
