#include "newscite/suggest/placement.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/index/inverted_index.hpp"
#include "newscite/text/ngram_lm.hpp"

namespace newscite::suggest {

namespace {

std::vector<std::string> content_terms(const std::string& text) {
  return index::analyze_terms(text, {});
}

void check_hygiene(const corpus::NewsArticle& article, const EntityProfile& profile) {
  if (profile.year > article.published_at.year - 1) {
    throw Error("temporal hygiene violation: profile year " + std::to_string(profile.year) +
                " is not before article year " + std::to_string(article.published_at.year));
  }
}

std::vector<const corpus::NewsArticle*> resolve_references(const EntityProfile& profile,
                                                           const corpus::NewsCorpus& news) {
  std::vector<const corpus::NewsArticle*> out;
  for (const auto& url : profile.news_references) {
    const auto* n = news.find(url);
    if (n) out.push_back(n);
  }
  return out;
}

}  // namespace

ml::FeatureVector aep_features(const corpus::NewsArticle& article, const EntityProfile& profile,
                               const PlacementContext& ctx) {
  check_hygiene(article, profile);
  ml::FeatureVector fv;
  fv["phi"] = relative_entity_frequency(profile.entity_id, article, ctx.phi_exponent);
  auto dg = dg_subset_features(profile.entity_id, article, *ctx.tagger);
  fv.insert(dg.begin(), dg.end());

  // one of the entity's mention surfaces appears in the title; a one-feature
  // model over this is the title-containment baseline
  double in_title = 0;
  for (const auto& m : article.mentions) {
    if (m.entity == profile.entity_id && !m.surface.empty() &&
        article.title.find(m.surface) != std::string::npos) {
      in_title = 1;
    }
  }
  fv["title_contains_entity"] = in_title;

  auto cooccurring = article_entities(article);
  fv["rel_authority_occ"] =
      relative_authority(profile.entity_id, cooccurring, *ctx.authority, false, ctx.authority_epsilon);
  fv["rel_authority_pr"] =
      relative_authority(profile.entity_id, cooccurring, *ctx.authority, true, ctx.authority_epsilon);
  auto dom = ctx.domain_auth->find(article.domain);
  fv["domain_authority"] = dom == ctx.domain_auth->end() ? 0.0 : dom->second;

  auto refs = resolve_references(profile, *ctx.news);
  double nov = novelty(article, refs, ctx.novelty_lambda, ctx.novelty_term);
  if (nov >= novelty_sentinel) {
    fv["novelty_present"] = 0.0;
  } else {
    fv["novelty_present"] = 1.0;
    fv["novelty"] = nov;
  }
  return fv;
}

AepModel train_aep(const std::vector<AepPair>& pairs, const PlacementContext& ctx,
                   const ml::EnsembleParams& params) {
  if (pairs.empty()) throw Error("train_aep: no pairs");
  ml::Dataset data;
  data.register_class("non-relevant");
  data.register_class("relevant");
  for (const auto& p : pairs) {
    data.add(aep_features(*p.article, *p.profile, ctx), p.relevant ? "relevant" : "non-relevant");
  }
  AepModel m;
  m.model = train_ensemble(data, params);
  return m;
}

AepDecision predict_aep(const AepModel& model, const corpus::NewsArticle& article,
                        const EntityProfile& profile, const PlacementContext& ctx) {
  auto fv = aep_features(article, profile, ctx);
  auto pred = model.model.predict(fv);
  AepDecision d;
  int relevant_id = 1;
  for (std::size_t c = 0; c < model.model.class_names.size(); ++c) {
    if (model.model.class_names[c] == "relevant") relevant_id = static_cast<int>(c);
  }
  d.score = pred.vote_share[static_cast<std::size_t>(relevant_id)];
  d.relevant = pred.label == relevant_id;
  d.phi = fv.count("phi") ? fv["phi"] : 0.0;
  d.rel_authority = fv.count("rel_authority_occ") ? fv["rel_authority_occ"] : 0.0;
  d.novelty_score = fv.count("novelty") ? fv["novelty"] : novelty_sentinel;
  d.domain_authority = fv.count("domain_authority") ? fv["domain_authority"] : 0.0;
  return d;
}

ml::FeatureVector asp_features(const corpus::NewsArticle& article, const EntityProfile& profile,
                               const SectionTemplate& tmpl, std::size_t section_index,
                               const PlacementContext& ctx) {
  check_hygiene(article, profile);
  const CanonicalSection& canon = tmpl.sections.at(section_index);
  ml::FeatureVector fv;

  auto article_terms = content_terms(article.full_text());
  std::set<std::string> article_term_set(article_terms.begin(), article_terms.end());
  auto phi_n = article_entities(article);

  // class-level canonical section text
  std::string canon_text;
  for (const auto& t : canon.member_texts) {
    canon_text += t;
    canon_text += "\n";
  }
  auto canon_terms = content_terms(canon_text);
  std::set<std::string> canon_term_set(canon_terms.begin(), canon_terms.end());

  // entity's own section mapped into this template slot, when present
  const ProfileSection* own = nullptr;
  for (const auto& s : profile.sections) {
    if (tmpl.assign(s.heading, s.text) == section_index) {
      own = &s;
      break;
    }
  }

  auto fill = [&](const std::string& prefix, const std::string& section_text,
                  const std::set<std::string>& gamma) {
    auto sec_terms = content_terms(section_text);
    std::set<std::string> sec_term_set(sec_terms.begin(), sec_terms.end());

    // topic proxy: top-term overlap (single dominant topic per text)
    fv[prefix + "_topic_overlap"] = text::jaccard(article_term_set, sec_term_set);

    // POS n-gram overlap
    auto a_tags = [&](const std::string& t) {
      std::vector<std::string> tags;
      auto analyzed = text::analyze(t, *ctx.tagger);
      for (const auto& tok : analyzed.tokens) tags.push_back(tok.tag);
      return tags;
    };
    auto tags_article = a_tags(article.full_text());
    auto tags_section = a_tags(section_text);
    for (int n = 1; n <= 3; ++n) {
      fv[prefix + "_pos" + std::to_string(n)] = text::ngram_overlap(tags_article, tags_section, n);
    }

    // lexical: title similarity, per-paragraph KL for k = 1..5, cosine
    auto title_terms = content_terms(article.title);
    std::set<std::string> title_set(title_terms.begin(), title_terms.end());
    fv[prefix + "_title_jaccard"] = text::jaccard(title_set, sec_term_set);
    if (!sec_terms.empty()) {
      auto sec_lm = text::NgramLm::train({sec_terms}, 1);
      for (std::size_t k = 0; k < 5 && k < article.paragraphs.size(); ++k) {
        auto par_terms = content_terms(article.paragraphs[k]);
        if (par_terms.empty()) continue;
        auto par_lm = text::NgramLm::train({par_terms}, 1);
        fv[prefix + "_kl_p" + std::to_string(k + 1)] = text::lm_kl(par_lm, sec_lm);
      }
    }
    text::CorpusStats pair_stats;
    pair_stats.add_document(article_terms);
    pair_stats.add_document(sec_terms);
    auto va = text::tfidf_vector(article_terms, pair_stats);
    auto vs = text::tfidf_vector(sec_terms, pair_stats);
    fv[prefix + "_cosine"] = text::cosine(va, vs);

    // entity and type overlap
    fv[prefix + "_entity_overlap"] = text::jaccard(phi_n, gamma);
  };

  fill("class", canon_text, canon.aggregated_gamma);
  if (own) {
    fv["own_present"] = 1.0;
    fill("own", own->text, own->linked_entities);
  } else {
    fv["own_present"] = 0.0;
  }

  // frequency features of the article itself
  auto analyzed = text::analyze(article.full_text(), *ctx.tagger);
  std::map<std::string, int> tag_counts;
  for (const auto& t : analyzed.tokens) tag_counts[t.tag] += 1;
  fv["freq_nnp"] = tag_counts["NNP"];
  fv["freq_cd"] = tag_counts["CD"];
  fv["freq_paragraphs"] = static_cast<double>(article.paragraphs.size());
  fv["freq_chars"] = static_cast<double>(article.full_text().size());
  fv["freq_entities"] = static_cast<double>(phi_n.size());
  // top-k entity overlap with the canonical gamma (k = 5 by mention count)
  std::map<std::string, int> mention_counts;
  for (const auto& m : article.mentions) mention_counts[m.entity] += 1;
  std::vector<std::pair<int, std::string>> ranked;
  for (const auto& [e, c] : mention_counts) ranked.emplace_back(-c, e);
  std::sort(ranked.begin(), ranked.end());
  std::set<std::string> top_entities;
  for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) top_entities.insert(ranked[i].second);
  fv["freq_topk_overlap"] = text::jaccard(top_entities, canon.aggregated_gamma);
  return fv;
}

ml::FeatureVector asp_combined_features(const corpus::NewsArticle& article, const EntityProfile& profile,
                                        const SectionTemplate& tmpl, const PlacementContext& ctx) {
  ml::FeatureVector out;
  for (std::size_t c = 0; c < tmpl.sections.size(); ++c) {
    auto fv = asp_features(article, profile, tmpl, c, ctx);
    std::string prefix = "s" + std::to_string(c) + "_";
    for (const auto& [name, value] : fv) {
      // article-level frequency features are slot-independent; keep one copy
      if (name.rfind("freq_", 0) == 0) out[name] = value;
      else out[prefix + name] = value;
    }
  }
  return out;
}

AspModel train_asp(const std::vector<AspTriple>& triples, const SectionTemplate& tmpl,
                   const PlacementContext& ctx, const ml::EnsembleParams& params) {
  if (triples.empty()) throw Error("train_asp: no triples");
  ml::Dataset data;
  for (const auto& s : tmpl.sections) data.register_class(s.label);
  for (const auto& t : triples) {
    bool known = false;
    for (const auto& s : tmpl.sections) known = known || s.label == t.gold_section_label;
    if (!known) throw Error("train_asp: gold label not in template: " + t.gold_section_label);
    data.add(asp_combined_features(*t.article, *t.profile, tmpl, ctx), t.gold_section_label);
  }
  AspModel m;
  m.model = train_ensemble(data, params);
  return m;
}

AspDecision place_article(const AspModel& model, const corpus::NewsArticle& article,
                          const EntityProfile& profile, const SectionTemplate& tmpl,
                          const PlacementContext& ctx) {
  AspDecision d;
  if (tmpl.sections.size() == 1) {
    d.section_label = tmpl.sections[0].label;
    d.score = 1.0;
  } else {
    auto pred = model.model.predict(asp_combined_features(article, profile, tmpl, ctx));
    d.section_label = model.model.class_names[static_cast<std::size_t>(pred.label)];
    d.score = pred.vote_share[static_cast<std::size_t>(pred.label)];
  }
  // expansion: no profile section maps to the chosen canonical slot
  std::size_t chosen = 0;
  for (std::size_t c = 0; c < tmpl.sections.size(); ++c) {
    if (tmpl.sections[c].label == d.section_label) chosen = c;
  }
  d.expansion = true;
  for (const auto& s : profile.sections) {
    if (tmpl.assign(s.heading, s.text) == chosen) d.expansion = false;
  }
  return d;
}

std::string AepModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-aep";
  j["version"] = 1;
  j["ensemble"] = nlohmann::ordered_json::parse(model.to_json());
  return j.dump();
}

AepModel AepModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-aep") throw Error("not an AEP model file");
  if (j.value("version", 0) > 1) throw Error("AEP model version is newer than supported (1)");
  AepModel m;
  m.model = ml::EnsembleModel::from_json(j["ensemble"].dump());
  return m;
}

std::string AspModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-asp";
  j["version"] = 1;
  j["ensemble"] = nlohmann::ordered_json::parse(model.to_json());
  return j.dump();
}

AspModel AspModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-asp") throw Error("not an ASP model file");
  if (j.value("version", 0) > 1) throw Error("ASP model version is newer than supported (1)");
  AspModel m;
  m.model = ml::EnsembleModel::from_json(j["ensemble"].dump());
  return m;
}

}  // namespace newscite::suggest
