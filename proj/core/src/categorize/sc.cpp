#include "newscite/categorize/sc.hpp"

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/corpus/statements.hpp"
#include "newscite/text/lexicons.hpp"
#include "newscite/text/similarity.hpp"
#include "newscite/text/temporal.hpp"

namespace newscite::categorize {

namespace {

void add_min_max_avg(ml::FeatureVector& fv, const std::string& name, const std::vector<double>& values) {
  if (values.empty()) {
    fv[name + "_present"] = 0.0;
    return;
  }
  fv[name + "_present"] = 1.0;
  double mn = values[0], mx = values[0], sum = 0;
  for (double v : values) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    sum += v;
  }
  fv[name + "_min"] = mn;
  fv[name + "_max"] = mx;
  fv[name + "_avg"] = sum / static_cast<double>(values.size());
}

}  // namespace

ml::FeatureVector sc_features(const corpus::Statement& statement, const corpus::WikiArticle& entity,
                              const ScContext& ctx) {
  ml::FeatureVector fv;
  auto analyzed = text::analyze(statement.text, *ctx.tagger);

  // POS tag density, normalized by token count
  std::map<std::string, int> tag_counts;
  for (const auto& t : analyzed.tokens) tag_counts[t.tag] += 1;
  double n_tokens = std::max<std::size_t>(analyzed.tokens.size(), 1);
  for (const auto& [tag, count] : tag_counts) fv["pos_" + tag] = count / n_tokens;

  auto attr = text::attribution_stats(analyzed, statement.text.size(), *ctx.tagger);
  fv["verbs_attr"] = attr.verb_ratio;
  fv["quotations"] = attr.quote_ratio;

  auto lambda = text::temporal_proximity(statement.text, ctx.snapshot_year);
  fv["lambda_present"] = lambda ? 1.0 : 0.0;
  if (lambda) fv["lambda"] = static_cast<double>(*lambda);

  for (auto sense : ctx.discourse->senses(analyzed.tokens)) {
    fv["disc_" + text::to_string(sense)] = 1.0;
  }

  auto types = expanded_types(entity, *ctx.taxonomy);

  // KL against type-conditioned news LMs
  if (ctx.type_lms && !ctx.type_lms->empty()) {
    std::vector<double> thetas;
    auto words = analyzed.lowered_words();
    if (!words.empty()) {
      for (const auto& t : types) {
        auto it = ctx.type_lms->find(t);
        if (it == ctx.type_lms->end()) continue;
        auto statement_lm = text::NgramLm::train({words}, 1);
        thetas.push_back(text::lm_kl(statement_lm, it->second));
      }
    }
    add_min_max_avg(fv, "theta", thetas);
  } else {
    fv["theta_present"] = 0.0;
  }

  // topic-term overlap against type-conditioned news topics
  if (ctx.type_topics && !ctx.type_topics->empty()) {
    std::vector<double> overlaps;
    auto words = analyzed.lowered_words();
    std::set<std::string> word_set(words.begin(), words.end());
    for (const auto& t : types) {
      auto it = ctx.type_topics->find(t);
      if (it == ctx.type_topics->end()) continue;
      std::set<std::string> topic(it->second.begin(), it->second.end());
      overlaps.push_back(text::jaccard(word_set, topic));
    }
    add_min_max_avg(fv, "lda", overlaps);
  } else {
    fv["lda_present"] = 0.0;
  }

  // priors
  const PriorTables& priors = *ctx.priors;
  auto sec = priors.section.find(statement.section_heading);
  fv["prior_section_present"] = sec != priors.section.end() ? 1.0 : 0.0;
  if (sec != priors.section.end()) fv["prior_section"] = sec->second.probability;

  std::vector<double> type_priors, type_section_priors, cooccur_priors;
  for (const auto& t : types) {
    auto it = priors.type.find(t);
    if (it != priors.type.end()) type_priors.push_back(it->second.probability);
    auto ts = priors.type_section.find({t, statement.section_heading});
    if (ts != priors.type_section.end()) type_section_priors.push_back(ts->second.probability);
    if (ctx.types_by_id) {
      std::set<std::string> anchor_types;
      for (const auto& anchor : statement.anchors) {
        auto at = ctx.types_by_id->find(anchor.target);
        if (at != ctx.types_by_id->end()) anchor_types.insert(at->second.begin(), at->second.end());
      }
      for (const auto& tprime : anchor_types) {
        auto co = priors.type_cooccur.find({t, tprime});
        if (co != priors.type_cooccur.end()) cooccur_priors.push_back(co->second.probability);
      }
    }
  }
  add_min_max_avg(fv, "prior_type", type_priors);
  add_min_max_avg(fv, "prior_type_section", type_section_priors);
  add_min_max_avg(fv, "prior_cooccur", cooccur_priors);
  return fv;
}

std::string sc_label(const corpus::Statement& statement) {
  if (statement.has_news_citation()) return "news";
  std::map<std::string, int> counts;
  for (const auto& c : statement.citations) counts[corpus::sc_class_of(c.category)] += 1;
  if (counts.empty()) throw Error("sc_label: statement has no citations");
  std::string best = corpus::sc_class_of(statement.citations[0].category);
  for (const auto& [cls, count] : counts) {
    if (count > counts[best]) best = cls;
  }
  return best;
}

ScTrainResult train_sc(const corpus::WikiCorpus& corpus, const corpus::TypeTaxonomy& taxonomy,
                       const std::string& type, const ScContext& ctx, const ScTrainConfig& config) {
  if (config.tau <= 0.0 || config.tau > 0.9) throw Error("train_sc: tau must be in (0, 0.9]");

  // entities of this type, stratified by the child type they descend through
  std::map<std::string, std::vector<const corpus::WikiArticle*>> strata;
  auto children = taxonomy.children_of(type);
  long entity_count = 0;
  for (const auto& article : corpus.articles) {
    auto types = expanded_types(article, taxonomy);
    if (!types.count(type)) continue;
    ++entity_count;
    std::string stratum = type;
    for (const auto& child : children) {
      if (types.count(child)) {
        stratum = child;
        break;
      }
    }
    strata[stratum].push_back(&article);
  }
  if (entity_count < config.min_entities) {
    throw Error("train_sc: type " + type + " has " + std::to_string(entity_count) +
                " entities, fewer than the required " + std::to_string(config.min_entities));
  }

  std::vector<const corpus::WikiArticle*> train_entities, test_entities;
  std::mt19937_64 rng(derive_seed(config.seed, fnv1a(type)));
  for (auto& [stratum, members] : strata) {
    std::sort(members.begin(), members.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
    std::shuffle(members.begin(), members.end(), rng);
    std::size_t n_test = std::max<std::size_t>(members.size() / 10, members.size() >= 2 ? 1 : 0);
    std::size_t n_train = static_cast<std::size_t>(
        std::min<double>(std::lround(config.tau * static_cast<double>(members.size())),
                         static_cast<double>(members.size() - n_test)));
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i < n_test) test_entities.push_back(members[i]);
      else if (i < n_test + n_train) train_entities.push_back(members[i]);
    }
  }

  ml::Dataset data;
  for (const auto& cls : corpus::sc_class_names()) data.register_class(cls);
  for (const auto* article : train_entities) {
    for (const auto& st : corpus::extract_statements(*article)) {
      if (st.citations.empty()) continue;
      data.add(sc_features(st, *article, ctx), sc_label(st));
    }
  }
  if (data.instances().empty()) throw Error("train_sc: no labeled statements for type " + type);

  ml::EnsembleParams params = config.ensemble;
  params.seed = derive_seed(config.seed, fnv1a(type) ^ 0x5eed);
  ScTrainResult result;
  result.model.type_id = type;
  result.model.type_depth = taxonomy.depth(type).value_or(0);
  result.model.tau = config.tau;
  result.model.model = train_ensemble(data, params);

  for (const auto* article : test_entities) {
    result.test_entities.push_back(article->id);
    for (const auto& st : corpus::extract_statements(*article)) {
      if (st.citations.empty()) continue;
      auto pred = result.model.model.predict(sc_features(st, *article, ctx));
      result.test_outcomes.emplace_back(sc_label(st),
                                        result.model.model.class_names[static_cast<std::size_t>(pred.label)]);
    }
  }
  std::sort(result.test_entities.begin(), result.test_entities.end());
  return result;
}

ScVote categorize_statement(const corpus::Statement& statement, const corpus::WikiArticle& entity,
                            const std::vector<ScModel>& models, const ScContext& ctx) {
  if (models.empty()) throw Error("categorize_statement: no models");
  auto types = expanded_types(entity, *ctx.taxonomy);

  std::vector<const ScModel*> applicable;
  for (const auto& m : models) {
    if (types.count(m.type_id)) applicable.push_back(&m);
  }
  if (applicable.empty()) {  // fall back to the root-type model
    for (const auto& m : models) {
      if (m.type_id == ctx.taxonomy->root) applicable.push_back(&m);
    }
  }
  if (applicable.empty()) throw Error("categorize_statement: no applicable model and no root model");

  auto fv = sc_features(statement, entity, ctx);
  struct VoteInfo {
    int votes = 0;
    int max_depth = -1;
    double share_sum = 0;
    int share_count = 0;
  };
  std::map<std::string, VoteInfo> tally;
  ScVote out;
  for (const auto* m : applicable) {
    auto pred = m->model.predict(fv);
    const std::string& cls = m->model.class_names[static_cast<std::size_t>(pred.label)];
    auto& info = tally[cls];
    info.votes += 1;
    info.max_depth = std::max(info.max_depth, m->type_depth);
    info.share_sum += pred.vote_share[static_cast<std::size_t>(pred.label)];
    info.share_count += 1;
    for (std::size_t c = 0; c < pred.vote_share.size(); ++c) {
      out.vote_share[m->model.class_names[c]] += pred.vote_share[c] / static_cast<double>(applicable.size());
    }
  }
  std::string best;
  for (const auto& [cls, info] : tally) {
    if (best.empty()) {
      best = cls;
      continue;
    }
    const VoteInfo& cur = tally[best];
    double mean_new = info.share_sum / info.share_count;
    double mean_cur = cur.share_sum / cur.share_count;
    if (info.votes > cur.votes ||
        (info.votes == cur.votes && (info.max_depth > cur.max_depth ||
                                     (info.max_depth == cur.max_depth && mean_new > mean_cur)))) {
      best = cls;
    }
  }
  out.category = best;
  return out;
}

std::string ScModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-sc";
  j["version"] = 1;
  j["type_id"] = type_id;
  j["type_depth"] = type_depth;
  j["tau"] = tau;
  j["ensemble"] = nlohmann::ordered_json::parse(model.to_json());
  return j.dump();
}

ScModel ScModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-sc") throw Error("not an SC model file");
  if (j.value("version", 0) > 1) throw Error("SC model version is newer than supported (1)");
  ScModel m;
  m.type_id = j["type_id"];
  m.type_depth = j["type_depth"];
  m.tau = j["tau"];
  m.model = ml::EnsembleModel::from_json(j["ensemble"].dump());
  return m;
}

}  // namespace newscite::categorize
