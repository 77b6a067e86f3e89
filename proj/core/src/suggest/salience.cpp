#include "newscite/suggest/salience.hpp"

#include <algorithm>
#include <cmath>

#include "newscite/common.hpp"
#include "newscite/corpus/statements.hpp"
#include "newscite/ml/pagerank.hpp"
#include "newscite/text/ngram_lm.hpp"
#include "newscite/text/similarity.hpp"

namespace newscite::suggest {

double relative_entity_frequency(const std::string& entity, const corpus::NewsArticle& article,
                                 RelFreqExponent exponent) {
  if (article.paragraphs.empty()) return 0.0;
  std::size_t num_paragraphs = article.paragraphs.size();
  std::vector<double> entity_tf(num_paragraphs, 0.0), total_tf(num_paragraphs, 0.0);
  for (const auto& m : article.mentions) {
    auto p = static_cast<std::size_t>(m.paragraph);
    if (p >= num_paragraphs) continue;
    total_tf[p] += 1;
    if (m.entity == entity) entity_tf[p] += 1;
  }
  double with_entity = 0, acc = 0;
  for (std::size_t p = 0; p < num_paragraphs; ++p) {
    if (entity_tf[p] <= 0) continue;
    with_entity += 1;
    double ratio = entity_tf[p] / total_tf[p];
    double power = exponent == RelFreqExponent::paragraph_index
                       ? static_cast<double>(p + 1)
                       : 1.0 / static_cast<double>(p + 1);
    acc += std::pow(ratio, power);
  }
  if (with_entity == 0) return 0.0;
  return with_entity / static_cast<double>(num_paragraphs) * acc;
}

std::set<std::string> article_entities(const corpus::NewsArticle& article) {
  std::set<std::string> out;
  for (const auto& m : article.mentions) out.insert(m.entity);
  return out;
}

ml::FeatureVector dg_subset_features(const std::string& entity, const corpus::NewsArticle& article,
                                     const text::RuleTagger& tagger) {
  ml::FeatureVector fv;
  const corpus::Mention* first = nullptr;
  int count = 0;
  for (const auto& m : article.mentions) {
    if (m.entity != entity) continue;
    ++count;
    if (!first || m.paragraph < first->paragraph ||
        (m.paragraph == first->paragraph && m.offset < first->offset)) {
      first = &m;
    }
  }
  fv["dg_mention_count"] = count;
  if (!first) return fv;  // all positional features stay 0

  fv["dg_first_paragraph"] = first->paragraph == 0 ? 1.0 : 0.0;
  const std::string& para = article.paragraphs[static_cast<std::size_t>(first->paragraph)];
  auto analyzed = text::analyze(para, tagger);
  std::size_t sentence = 0;
  for (std::size_t i = 0; i < analyzed.tokens.size(); ++i) {
    if (analyzed.tokens[i].begin <= first->offset && first->offset < analyzed.tokens[i].end) {
      sentence = analyzed.sentence_of_token(i);
      break;
    }
  }
  fv["dg_first_sentence"] = (first->paragraph == 0 && sentence == 0) ? 1.0 : 0.0;
  double position = (static_cast<double>(first->paragraph) + 1.0) /
                    static_cast<double>(article.paragraphs.size());
  fv["dg_position_decile"] = std::ceil(position * 10.0);
  fv["dg_capitalized"] =
      !first->surface.empty() && std::isupper(static_cast<unsigned char>(first->surface[0])) ? 1.0 : 0.0;
  int nnp = 0;
  for (const auto& t : analyzed.tokens) nnp += t.tag == "NNP";
  fv["dg_nnp_context"] = nnp;
  return fv;
}

EntityProfile EntityProfile::from_article(const corpus::WikiArticle& article) {
  EntityProfile p;
  p.entity_id = article.id;
  p.year = article.revision_year;
  for (const auto& s : article.sections) {
    ProfileSection ps;
    ps.heading = s.heading;
    for (const auto& par : s.paragraphs) {
      if (!ps.text.empty()) ps.text += "\n";
      ps.text += par.text;
      for (const auto& a : par.anchors) ps.linked_entities.insert(a.target);
      for (const auto& c : par.citations) {
        if (c.category == corpus::CitationCategory::news) p.news_references.push_back(c.url);
      }
    }
    p.sections.push_back(std::move(ps));
  }
  return p;
}

AuthorityScores compute_authority(const corpus::NewsCorpus& news,
                                  const std::vector<EntityProfile>& profiles) {
  AuthorityScores scores;

  // occurrence probability over the news corpus
  std::map<std::string, int> doc_count;
  for (const auto& n : news.articles) {
    for (const auto& e : article_entities(n)) doc_count[e] += 1;
  }
  double num_docs = std::max<std::size_t>(news.articles.size(), 1);
  for (const auto& [e, c] : doc_count) scores.occurrence[e] = c / num_docs;

  // pagerank over the entity-article graph: n -> phi(n), e -> gamma(sections)
  std::map<std::string, int> node_of;
  std::vector<std::string> node_names;
  auto node = [&](const std::string& name) {
    auto it = node_of.find(name);
    if (it != node_of.end()) return it->second;
    int id = static_cast<int>(node_names.size());
    node_of[name] = id;
    node_names.push_back(name);
    return id;
  };
  std::vector<std::vector<int>> edges;
  auto ensure = [&](int id) {
    if (static_cast<std::size_t>(id) >= edges.size()) edges.resize(static_cast<std::size_t>(id) + 1);
  };
  for (const auto& n : news.articles) {
    int a = node("doc:" + n.url);
    ensure(a);
    for (const auto& e : article_entities(n)) {
      int b = node("ent:" + e);
      ensure(b);
      edges[static_cast<std::size_t>(a)].push_back(b);
    }
  }
  for (const auto& p : profiles) {
    int a = node("ent:" + p.entity_id);
    ensure(a);
    for (const auto& s : p.sections) {
      for (const auto& linked : s.linked_entities) {
        int b = node("ent:" + linked);
        ensure(b);
        edges[static_cast<std::size_t>(a)].push_back(b);
      }
    }
  }
  if (!edges.empty()) {
    auto pr = ml::pagerank(edges);
    for (std::size_t i = 0; i < node_names.size(); ++i) {
      if (node_names[i].rfind("ent:", 0) == 0) scores.pagerank[node_names[i].substr(4)] = pr[i];
    }
    // renormalize over entity nodes so the published invariant holds
    double total = 0;
    for (const auto& [e, v] : scores.pagerank) total += v;
    if (total > 0) {
      for (auto& [e, v] : scores.pagerank) v /= total;
    }
  }
  return scores;
}

double AuthorityScores::score(const std::string& entity, bool use_pagerank) const {
  const auto& table = use_pagerank ? pagerank : occurrence;
  auto it = table.find(entity);
  return it == table.end() ? 0.0 : it->second;
}

double relative_authority(const std::string& entity, const std::set<std::string>& cooccurring,
                          const AuthorityScores& scores, bool use_pagerank, double epsilon) {
  if (cooccurring.empty()) return 0.0;
  double own = scores.score(entity, use_pagerank);
  double higher = 0;
  for (const auto& e : cooccurring) {
    if (scores.score(e, use_pagerank) > own - epsilon && e != entity) higher += 1;
  }
  return higher / static_cast<double>(cooccurring.size());
}

std::map<std::string, double> domain_authority(const corpus::WikiCorpus& corpus) {
  std::map<std::string, double> counts;
  double total = 0;
  for (const auto& a : corpus.articles) {
    for (const auto& s : a.sections) {
      for (const auto& p : s.paragraphs) {
        for (const auto& c : p.citations) {
          if (c.category != corpus::CitationCategory::news || c.domain.empty()) continue;
          counts[c.domain] += 1;
          total += 1;
        }
      }
    }
  }
  if (total > 0) {
    for (auto& [d, c] : counts) c /= total;
  }
  return counts;
}

double novelty(const corpus::NewsArticle& article, const std::vector<const corpus::NewsArticle*>& prior_refs,
               double lambda, NoveltyEntityTerm term) {
  if (prior_refs.empty()) return novelty_sentinel;
  auto tokens_of = [](const corpus::NewsArticle& n) {
    std::vector<std::string> out;
    for (const auto& tok : text::tokenize(n.full_text())) {
      if (std::isalnum(static_cast<unsigned char>(tok.surface[0]))) out.push_back(to_lower(tok.surface));
    }
    return out;
  };
  auto lm_n = text::NgramLm::train({tokens_of(article)}, 1);
  auto phi_n = article_entities(article);
  double best = novelty_sentinel;
  for (const auto* prior : prior_refs) {
    auto lm_prior = text::NgramLm::train({tokens_of(*prior)}, 1);
    double kl = text::lm_kl(lm_prior, lm_n);
    double j = text::jaccard(article_entities(*prior), phi_n);
    double j_term = term == NoveltyEntityTerm::jaccard_overlap ? j : 1.0 - j;
    best = std::min(best, lambda * kl + (1.0 - lambda) * j_term);
  }
  return best;
}

}  // namespace newscite::suggest
