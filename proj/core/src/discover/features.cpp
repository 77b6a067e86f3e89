#include "newscite/discover/features.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/corpus/statements.hpp"
#include "newscite/text/similarity.hpp"
#include "newscite/text/textrank.hpp"

namespace newscite::discover {

namespace {

std::vector<std::string> lowered_words(const text::TokenizedText& t) { return t.lowered_words(); }

// maximal runs of NNP-tagged tokens, joined
std::set<std::string> nnp_phrases(const text::TokenizedText& t) {
  std::set<std::string> out;
  std::string run;
  for (const auto& tok : t.tokens) {
    if (tok.tag == "NNP") {
      if (!run.empty()) run += " ";
      run += to_lower(tok.surface);
    } else if (!run.empty()) {
      out.insert(run);
      run.clear();
    }
  }
  if (!run.empty()) out.insert(run);
  return out;
}

std::vector<std::string> tag_sequence(const text::TokenizedText& t) {
  std::vector<std::string> tags;
  tags.reserve(t.tokens.size());
  for (const auto& tok : t.tokens) tags.push_back(tok.tag);
  return tags;
}

std::vector<text::TokenizedText> article_sentences(const corpus::NewsArticle& article,
                                                   const text::RuleTagger& tagger) {
  std::vector<text::TokenizedText> out;
  for (const auto& para : article.paragraphs) {
    auto analyzed = text::analyze(para, tagger);
    for (const auto& range : analyzed.sentences) {
      text::TokenizedText sent;
      sent.tokens.assign(analyzed.tokens.begin() + static_cast<long>(range.first_token),
                         analyzed.tokens.begin() + static_cast<long>(range.end_token));
      sent.sentences = {{0, sent.tokens.size()}};
      out.push_back(std::move(sent));
    }
  }
  return out;
}

ml::FeatureVector sentence_row(const text::TokenizedText& statement_t,
                               const text::TokenizedText& sentence_t,
                               const std::set<std::string>& statement_nnp,
                               const std::vector<std::string>& statement_words,
                               const std::vector<std::string>& statement_tags,
                               double headline_similarity) {
  ml::FeatureVector row;
  auto words = lowered_words(sentence_t);
  for (int n = 1; n <= 3; ++n) {
    row["j" + std::to_string(n)] = text::ngram_overlap(statement_words, words, n);
  }
  row["jp"] = text::jaccard(statement_nnp, nnp_phrases(sentence_t));
  row["kpos"] = text::ngram_overlap(statement_tags, tag_sequence(sentence_t), 3);
  row["headline"] = headline_similarity;
  (void)statement_t;
  return row;
}

}  // namespace

std::vector<CandidatePair> candidates(const corpus::Statement& statement, const FcContext& ctx, int k) {
  auto query = index::build_query(statement.text, *ctx.statement_stats, ctx.index->options);
  query.source_statement_id = statement.id;
  std::vector<CandidatePair> out;
  if (query.terms.empty()) return out;
  auto ranked = index::retrieve(*ctx.index, query, ctx.model, k);
  out.reserve(ranked.size());
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    CandidatePair pair;
    pair.statement_id = statement.id;
    pair.doc_url = ranked[r].doc_id;
    pair.doc_index = ranked[r].doc;
    pair.retrieval_score = ranked[r].score;
    pair.retrieval_rank = static_cast<int>(r) + 1;
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<ml::FeatureVector> entailment_sentence_rows(const corpus::Statement& statement,
                                                        const corpus::NewsArticle& article,
                                                        const FcContext& ctx) {
  auto statement_t = text::analyze(statement.text, *ctx.tagger);
  auto statement_words = lowered_words(statement_t);
  auto statement_nnp = nnp_phrases(statement_t);
  auto statement_tags = tag_sequence(statement_t);
  auto title_t = text::analyze(article.title, *ctx.tagger);
  double headline = text::ngram_overlap(statement_words, lowered_words(title_t), 1);

  std::vector<ml::FeatureVector> rows;
  for (const auto& sent : article_sentences(article, *ctx.tagger)) {
    rows.push_back(sentence_row(statement_t, sent, statement_nnp, statement_words, statement_tags, headline));
  }
  return rows;
}

ml::FeatureVector entailment_statement_features(const corpus::Statement& statement,
                                                const corpus::WikiArticle& entity,
                                                const corpus::NewsArticle& article, const FcContext& ctx) {
  ml::FeatureVector fv;
  auto statement_t = text::analyze(statement.text, *ctx.tagger);
  auto statement_words = lowered_words(statement_t);

  // theta^1(s, n_i): statement likelihood under the article's unigram LM
  auto article_t = text::analyze(article.full_text(), *ctx.tagger);
  auto article_words = lowered_words(article_t);
  if (!article_words.empty() && !statement_words.empty()) {
    auto lm = text::NgramLm::train({article_words}, 1);
    fv["theta1"] = lm.avg_log_prob(statement_words);
    fv["theta1_present"] = 1.0;
  } else {
    fv["theta1_present"] = 0.0;
  }

  // theta^n(s, N_t) and topic overlap against type-conditioned references
  std::vector<double> kls, topics;
  if (ctx.taxonomy && (ctx.type_lms || ctx.type_topics)) {
    auto types = categorize::expanded_types(entity, *ctx.taxonomy);
    std::set<std::string> word_set(statement_words.begin(), statement_words.end());
    for (const auto& t : types) {
      if (ctx.type_lms && !statement_words.empty()) {
        auto it = ctx.type_lms->find(t);
        if (it != ctx.type_lms->end()) {
          auto st_lm = text::NgramLm::train({statement_words}, 1);
          kls.push_back(text::lm_kl(st_lm, it->second));
        }
      }
      if (ctx.type_topics) {
        auto it = ctx.type_topics->find(t);
        if (it != ctx.type_topics->end()) {
          std::set<std::string> topic(it->second.begin(), it->second.end());
          topics.push_back(text::jaccard(word_set, topic));
        }
      }
    }
  }
  auto add_agg = [&](const std::string& name, const std::vector<double>& values) {
    if (values.empty()) {
      fv[name + "_present"] = 0.0;
      return;
    }
    fv[name + "_present"] = 1.0;
    fv[name + "_min"] = *std::min_element(values.begin(), values.end());
    fv[name + "_max"] = *std::max_element(values.begin(), values.end());
    double sum = 0;
    for (double v : values) sum += v;
    fv[name + "_avg"] = sum / static_cast<double>(values.size());
  };
  add_agg("theta_type", kls);
  add_agg("lda", topics);

  // freq(e) in title and body
  double title_hits = 0, body_hits = 0;
  for (const auto& m : article.mentions) {
    if (m.entity != entity.id) continue;
    body_hits += 1;
  }
  if (!entity.title.empty() && article.title.find(entity.title) != std::string::npos) title_hits = 1;
  fv["freq_entity_title"] = title_hits;
  fv["freq_entity_body"] = body_hits;
  return fv;
}

ml::FeatureVector centrality_features(const corpus::Statement& statement,
                                      const corpus::WikiArticle& entity,
                                      const corpus::NewsArticle& article, const FcContext& ctx) {
  ml::FeatureVector fv;
  auto sentences = article_sentences(article, *ctx.tagger);
  if (!sentences.empty()) {
    std::vector<std::set<std::string>> token_sets;
    token_sets.reserve(sentences.size());
    for (const auto& s : sentences) {
      auto words = lowered_words(s);
      token_sets.emplace_back(words.begin(), words.end());
    }
    auto rank = text::textrank_central(token_sets);
    const auto& central = sentences[rank.central_index];

    auto statement_t = text::analyze(statement.text, *ctx.tagger);
    auto statement_words = lowered_words(statement_t);
    std::set<std::string> statement_set(statement_words.begin(), statement_words.end());
    fv["central_j"] = text::jaccard(statement_set, token_sets[rank.central_index]);
    fv["central_jp"] = text::jaccard(nnp_phrases(statement_t), nnp_phrases(central));
    for (int n = 1; n <= 3; ++n) {
      fv["central_j" + std::to_string(n)] =
          text::ngram_overlap(statement_words, lowered_words(central), n);
    }
    fv["central_kpos"] = text::ngram_overlap(tag_sequence(statement_t), tag_sequence(central), 3);
  }

  fv["phi_entity"] = suggest::relative_entity_frequency(entity.id, article, ctx.phi_exponent);
  std::vector<double> anchor_phis;
  std::set<std::string> anchor_targets;
  for (const auto& a : statement.anchors) anchor_targets.insert(a.target);
  for (const auto& target : anchor_targets) {
    anchor_phis.push_back(suggest::relative_entity_frequency(target, article, ctx.phi_exponent));
  }
  if (!anchor_phis.empty()) {
    fv["phi_anchors_present"] = 1.0;
    fv["phi_anchors_min"] = *std::min_element(anchor_phis.begin(), anchor_phis.end());
    fv["phi_anchors_max"] = *std::max_element(anchor_phis.begin(), anchor_phis.end());
    double sum = 0;
    for (double v : anchor_phis) sum += v;
    fv["phi_anchors_avg"] = sum / static_cast<double>(anchor_phis.size());
  } else {
    fv["phi_anchors_present"] = 0.0;
  }
  return fv;
}

AuthorityTables compute_authority_tables(const corpus::WikiCorpus& corpus,
                                         const corpus::TypeTaxonomy& taxonomy) {
  std::map<std::pair<std::string, std::string>, double> type_counts, section_counts;
  std::map<std::string, double> type_totals, section_totals;
  for (const auto& article : corpus.articles) {
    auto types = categorize::expanded_types(article, taxonomy);
    for (const auto& st : corpus::extract_statements(article)) {
      for (const auto& c : st.citations) {
        if (c.category != corpus::CitationCategory::news || c.domain.empty()) continue;
        for (const auto& t : types) {
          type_counts[{t, c.domain}] += 1;
          type_totals[t] += 1;
        }
        section_counts[{st.section_heading, c.domain}] += 1;
        section_totals[st.section_heading] += 1;
      }
    }
  }
  AuthorityTables out;
  for (const auto& [key, count] : type_counts) out.type_domain[key] = count / type_totals[key.first];
  for (const auto& [key, count] : section_counts)
    out.section_domain[key] = count / section_totals[key.first];
  return out;
}

ml::FeatureVector authority_features(const corpus::Statement& statement,
                                     const corpus::WikiArticle& entity, const std::string& domain,
                                     const FcContext& ctx) {
  ml::FeatureVector fv;
  std::vector<double> type_values;
  if (ctx.taxonomy) {
    for (const auto& t : categorize::expanded_types(entity, *ctx.taxonomy)) {
      auto it = ctx.authority->type_domain.find({t, domain});
      if (it != ctx.authority->type_domain.end()) type_values.push_back(it->second);
    }
  }
  if (!type_values.empty()) {
    fv["auth_type_present"] = 1.0;
    fv["auth_type_min"] = *std::min_element(type_values.begin(), type_values.end());
    fv["auth_type_max"] = *std::max_element(type_values.begin(), type_values.end());
    double sum = 0;
    for (double v : type_values) sum += v;
    fv["auth_type_avg"] = sum / static_cast<double>(type_values.size());
  } else {
    fv["auth_type_present"] = 0.0;
  }
  auto sec = ctx.authority->section_domain.find({statement.section_heading, domain});
  if (sec != ctx.authority->section_domain.end()) {
    fv["auth_section_present"] = 1.0;
    fv["auth_section"] = sec->second;
  } else {
    fv["auth_section_present"] = 0.0;
  }
  return fv;
}

ml::FeatureVector aggregate(const std::vector<ml::FeatureVector>& rows) {
  if (rows.empty()) throw Error("aggregate: need at least one sentence row");
  std::set<std::string> names;
  for (const auto& row : rows) {
    for (const auto& [name, v] : row) names.insert(name);
  }
  ml::FeatureVector out;
  for (const auto& name : names) {
    double mn = 0, mx = 0, sum = 0, weighted = 0, decayed = 0;
    bool first = true;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      auto it = rows[j].find(name);
      double v = it == rows[j].end() ? 0.0 : it->second;
      if (first) {
        mn = mx = v;
        first = false;
      } else {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      sum += v;
      double pos = static_cast<double>(j) + 1.0;
      weighted += v / pos;
      decayed += std::pow(std::max(v, 0.0), 1.0 / pos);
    }
    out[name + "_min"] = mn;
    out[name + "_max"] = mx;
    out[name + "_avg"] = sum / static_cast<double>(rows.size());
    out[name + "_wavg"] = weighted;
    out[name + "_expdecay"] = decayed;
  }
  return out;
}

void compute_pair_features(CandidatePair& pair, const corpus::Statement& statement,
                           const corpus::WikiArticle& entity, const FcContext& ctx) {
  const corpus::NewsArticle* article = ctx.news->find(pair.doc_url);
  if (!article) throw Error("compute_pair_features: candidate not in news corpus: " + pair.doc_url);
  pair.sentence_rows = entailment_sentence_rows(statement, *article, ctx);
  if (pair.sentence_rows.empty()) pair.sentence_rows.push_back({});
  pair.aggregated = aggregate(pair.sentence_rows);
  auto merge = [&](const ml::FeatureVector& fv) {
    for (const auto& [name, v] : fv) pair.aggregated[name] = v;
  };
  merge(entailment_statement_features(statement, entity, *article, ctx));
  merge(centrality_features(statement, entity, *article, ctx));
  merge(authority_features(statement, entity, article->domain, ctx));
  pair.aggregated["ir_score"] = pair.retrieval_score;
  pair.aggregated["ir_rank"] = static_cast<double>(pair.retrieval_rank);
}

std::string AuthorityTables::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-authority";
  j["version"] = 1;
  nlohmann::ordered_json td = nlohmann::ordered_json::array();
  for (const auto& [key, v] : type_domain) td.push_back({key.first, key.second, v});
  nlohmann::ordered_json sd = nlohmann::ordered_json::array();
  for (const auto& [key, v] : section_domain) sd.push_back({key.first, key.second, v});
  j["type_domain"] = std::move(td);
  j["section_domain"] = std::move(sd);
  return j.dump();
}

AuthorityTables AuthorityTables::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-authority") throw Error("not an authority-tables file");
  if (j.value("version", 0) > 1) throw Error("authority file version is newer than supported (1)");
  AuthorityTables t;
  for (const auto& row : j["type_domain"]) {
    t.type_domain[{row[0].get<std::string>(), row[1].get<std::string>()}] = row[2].get<double>();
  }
  for (const auto& row : j["section_domain"]) {
    t.section_domain[{row[0].get<std::string>(), row[1].get<std::string>()}] = row[2].get<double>();
  }
  return t;
}

}  // namespace newscite::discover
