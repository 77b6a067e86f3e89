#include "newscite/span/models.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/text/lexicons.hpp"

namespace newscite::span {

namespace {

// shared feature-id registry for CRF sequences
struct Registry {
  std::map<std::string, int> index;
  std::vector<std::string> names;

  int id(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(names.size());
    index[name] = id;
    names.push_back(name);
    return id;
  }
  int lookup(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
  }
};

ml::CrfSequence to_sequence(const std::vector<ml::FeatureVector>& rows, Registry* registry,
                            const std::vector<bool>* gold) {
  ml::CrfSequence seq;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    std::vector<std::pair<int, double>> obs;
    obs.emplace_back(registry->id("bias"), 1.0);
    for (const auto& [name, v] : rows[t]) obs.emplace_back(registry->id(name), v);
    std::sort(obs.begin(), obs.end());
    seq.obs.push_back(std::move(obs));
    if (gold) seq.labels.push_back((*gold)[t] ? label_covered : label_not_covered);
  }
  return seq;
}

ml::CrfSequence to_sequence_fixed(const std::vector<ml::FeatureVector>& rows, const Registry& registry) {
  ml::CrfSequence seq;
  for (const auto& row : rows) {
    std::vector<std::pair<int, double>> obs;
    int bias = registry.lookup("bias");
    if (bias >= 0) obs.emplace_back(bias, 1.0);
    for (const auto& [name, v] : row) {
      int id = registry.lookup(name);
      if (id >= 0) obs.emplace_back(id, v);
    }
    std::sort(obs.begin(), obs.end());
    seq.obs.push_back(std::move(obs));
  }
  return seq;
}

}  // namespace

CspsModel train_csps(const std::vector<SpanInstance>& instances, const SpanFeatureContext& ctx,
                     const SpanTrainConfig& config) {
  Registry registry;
  std::vector<ml::CrfSequence> sequences;
  for (const auto& inst : instances) {
    if (!inst.gold) throw Error("train_csps: instance without gold labels: " + inst.paragraph_id);
    auto rows = span_features(inst, ctx);
    sequences.push_back(to_sequence(rows, &registry, &*inst.gold));
  }
  ml::CrfTrainParams params;
  params.l2 = config.l2;
  params.threads = config.threads;
  CspsModel model;
  model.crf = ml::crf_train(sequences, 2, static_cast<int>(registry.names.size()), params);
  model.feature_names = registry.names;
  return model;
}

SpanPrediction predict_csps(const SpanInstance& instance, const CspsModel& model,
                            const SpanFeatureContext& ctx) {
  Registry registry;
  for (std::size_t i = 0; i < model.feature_names.size(); ++i) registry.id(model.feature_names[i]);
  auto rows = span_features(instance, ctx);
  auto seq = to_sequence_fixed(rows, registry);
  auto labels = model.crf.decode(seq);
  SpanPrediction out;
  out.method = "CSPS";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label_covered) out.selected.push_back(i);
  }
  return out;
}

CspcModel train_cspc(const std::vector<SpanInstance>& instances, const SpanFeatureContext& ctx,
                     const SpanTrainConfig& config) {
  ml::Dataset data;
  data.register_class("not-covered");
  data.register_class("covered");
  for (const auto& inst : instances) {
    if (!inst.gold) throw Error("train_cspc: instance without gold labels: " + inst.paragraph_id);
    auto rows = span_features(inst, ctx);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      data.add(rows[i], (*inst.gold)[i] ? "covered" : "not-covered");
    }
  }
  ml::EnsembleParams params = config.ensemble;
  params.seed = config.seed;
  CspcModel model;
  model.ensemble = train_ensemble(data, params);
  return model;
}

SpanPrediction predict_cspc(const SpanInstance& instance, const CspcModel& model,
                            const SpanFeatureContext& ctx) {
  SpanPrediction out;
  out.method = "CSPC";
  auto rows = span_features(instance, ctx);
  int covered_id = 1;
  for (std::size_t c = 0; c < model.ensemble.class_names.size(); ++c) {
    if (model.ensemble.class_names[c] == "covered") covered_id = static_cast<int>(c);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (model.ensemble.predict(rows[i]).label == covered_id) out.selected.push_back(i);
  }
  return out;
}

SpanPrediction baseline_span(const SpanInstance& instance, BaselineMethod method) {
  SpanPrediction out;
  const auto& fragments = instance.fragments;
  if (fragments.empty()) return out;
  int citing_sentence = fragments[instance.citing_fragment].sentence_index;

  switch (method) {
    case BaselineMethod::cs: {
      out.method = "CS";
      for (std::size_t i = 0; i < fragments.size(); ++i) {
        if (fragments[i].sentence_index == citing_sentence) out.selected.push_back(i);
      }
      break;
    }
    case BaselineMethod::ic: {
      out.method = "IC";
      // sentences after the previous citation marker through the citing sentence
      int start_sentence = 0;
      for (std::size_t i = 0; i < instance.citing_fragment; ++i) {
        for (std::size_t m : fragments[i].citation_markers) {
          if (m != instance.citation.marker_offset) {
            start_sentence = std::max(start_sentence, fragments[i].sentence_index + 1);
          }
        }
      }
      for (std::size_t i = 0; i < fragments.size(); ++i) {
        if (fragments[i].sentence_index >= start_sentence &&
            fragments[i].sentence_index <= citing_sentence) {
          out.selected.push_back(i);
        }
      }
      break;
    }
    case BaselineMethod::csw: {
      out.method = "CSW";
      std::set<int> sentences;
      int num_sentences = fragments.back().sentence_index + 1;
      for (int s = std::max(0, citing_sentence - 2);
           s <= std::min(num_sentences - 1, citing_sentence + 2); ++s) {
        sentences.insert(s);
      }
      // other sentences join when they open with a cue word
      const auto& cues = text::span_cue_words();
      for (const auto& frag : fragments) {
        if (frag.index_in_sentence != 0) continue;
        auto toks = text::tokenize(frag.text);
        if (toks.empty()) continue;
        std::string first = to_lower(toks[0].surface);
        for (const auto& cue : cues) {
          if (first == cue) sentences.insert(frag.sentence_index);
        }
      }
      for (std::size_t i = 0; i < fragments.size(); ++i) {
        if (sentences.count(fragments[i].sentence_index)) out.selected.push_back(i);
      }
      break;
    }
  }
  return out;
}

std::vector<int> cv_folds(const std::vector<SpanInstance>& instances, int folds, std::uint64_t seed) {
  std::vector<int> out(instances.size(), 0);
  std::map<std::string, int> fold_of;
  std::vector<std::string> paragraphs;
  for (const auto& inst : instances) {
    if (!fold_of.count(inst.paragraph_id)) {
      fold_of[inst.paragraph_id] = 0;
      paragraphs.push_back(inst.paragraph_id);
    }
  }
  std::sort(paragraphs.begin(), paragraphs.end());
  std::mt19937_64 rng(seed);
  std::shuffle(paragraphs.begin(), paragraphs.end(), rng);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    fold_of[paragraphs[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
  }
  for (std::size_t i = 0; i < instances.size(); ++i) out[i] = fold_of[instances[i].paragraph_id];
  return out;
}

std::string CspsModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-csps";
  j["version"] = 1;
  j["crf"] = nlohmann::ordered_json::parse(crf.to_json({"not-covered", "covered"}, feature_names));
  return j.dump();
}

CspsModel CspsModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-csps") throw Error("not a CSPS model file");
  if (j.value("version", 0) > 1) throw Error("CSPS model version is newer than supported (1)");
  CspsModel m;
  m.crf = ml::CrfModel::from_json(j["crf"].dump(), nullptr, &m.feature_names);
  return m;
}

std::string CspcModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-cspc";
  j["version"] = 1;
  j["ensemble"] = nlohmann::ordered_json::parse(ensemble.to_json());
  return j.dump();
}

CspcModel CspcModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-cspc") throw Error("not a CSPC model file");
  if (j.value("version", 0) > 1) throw Error("CSPC model version is newer than supported (1)");
  CspcModel m;
  m.ensemble = ml::EnsembleModel::from_json(j["ensemble"].dump());
  return m;
}

}  // namespace newscite::span
