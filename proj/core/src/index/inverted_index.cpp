#include "newscite/index/inverted_index.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/text/lexicons.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::index {

std::string to_string(RetrievalModel m) { return m == RetrievalModel::bm25 ? "bm25" : "dfr"; }

RetrievalModel retrieval_model_from_string(const std::string& s) {
  if (s == "bm25") return RetrievalModel::bm25;
  if (s == "dfr") return RetrievalModel::dfr;
  throw Error("unknown retrieval model: " + s + " (expected bm25 or dfr)");
}

namespace {
std::string stem_term(const std::string& w) {
  auto ends = [&](const char* suf) {
    std::string_view sv(suf);
    return w.size() > sv.size() + 2 && std::string_view(w).substr(w.size() - sv.size()) == sv;
  };
  if (ends("ing")) return w.substr(0, w.size() - 3);
  if (ends("ed")) return w.substr(0, w.size() - 2);
  if (ends("es")) return w.substr(0, w.size() - 2);
  if (ends("ly")) return w.substr(0, w.size() - 2);
  if (ends("s")) return w.substr(0, w.size() - 1);
  return w;
}
}  // namespace

std::vector<std::string> analyze_terms(const std::string& text, const IndexOptions& options) {
  static const std::set<std::string>& bundled = text::default_stopwords();
  std::set<std::string> custom(options.stopwords.begin(), options.stopwords.end());
  const auto& stop = options.stopwords.empty() ? bundled : custom;
  std::vector<std::string> out;
  for (const auto& tok : text::tokenize(text)) {
    if (!std::isalnum(static_cast<unsigned char>(tok.surface[0]))) continue;
    std::string w = to_lower(tok.surface);
    if (stop.count(w)) continue;
    if (options.stem) w = stem_term(w);
    out.push_back(std::move(w));
  }
  return out;
}

int InvertedIndex::df(const std::string& term) const {
  auto it = postings.find(term);
  return it == postings.end() ? 0 : static_cast<int>(it->second.size());
}

double InvertedIndex::tf(const std::string& term, int doc) const {
  auto it = postings.find(term);
  if (it == postings.end()) return 0;
  for (const auto& p : it->second) {
    if (p.doc == doc) return p.tf;
  }
  return 0;
}

int InvertedIndex::doc_index(const std::string& doc_id) const {
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    if (doc_ids[i] == doc_id) return static_cast<int>(i);
  }
  return -1;
}

InvertedIndex build_index(const corpus::NewsCorpus& corpus, const IndexOptions& options) {
  InvertedIndex idx;
  idx.options = options;
  double total_len = 0;
  for (const auto& article : corpus.articles) {
    int doc = static_cast<int>(idx.doc_ids.size());
    idx.doc_ids.push_back(article.url);
    auto terms = analyze_terms(article.full_text(), options);
    idx.doc_lengths.push_back(static_cast<double>(terms.size()));
    total_len += static_cast<double>(terms.size());
    std::map<std::string, double> tf;
    for (const auto& t : terms) tf[t] += 1;
    for (const auto& [term, count] : tf) {
      idx.postings[term].push_back({doc, count});
      idx.collection_tf[term] += count;
    }
  }
  idx.avg_doc_length = idx.doc_ids.empty() ? 0 : total_len / static_cast<double>(idx.doc_ids.size());
  return idx;
}

Query build_query(const std::string& statement_text, const text::CorpusStats& statement_stats,
                  const IndexOptions& options, int top_m) {
  auto terms = analyze_terms(statement_text, options);
  auto weights = text::tfidf_vector(terms, statement_stats);
  std::vector<Query::Term> all;
  all.reserve(weights.size());
  for (const auto& [term, weight] : weights) all.push_back({term, weight});
  std::sort(all.begin(), all.end(), [](const Query::Term& a, const Query::Term& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.term < b.term;
  });
  if (static_cast<int>(all.size()) > top_m) all.resize(static_cast<std::size_t>(top_m));
  Query q;
  q.terms = std::move(all);
  return q;
}

double score_bm25(const InvertedIndex& index, const Query& query, int doc, const Bm25Params& params) {
  double n = static_cast<double>(index.num_docs());
  double len = index.doc_lengths[static_cast<std::size_t>(doc)];
  double score = 0;
  for (const auto& qt : query.terms) {
    double tf = index.tf(qt.term, doc);
    if (tf <= 0) continue;
    double df = static_cast<double>(index.df(qt.term));
    double w_tf = ((params.k1 + 1.0) * tf) /
                  (params.k1 * ((1.0 - params.b) + params.b * len / index.avg_doc_length) + tf);
    double w_idf = std::log((n - df + 0.5) / (df + 0.5));  // deliberately unclamped: very common terms go negative
    score += qt.weight * w_tf * w_idf;
  }
  return score;
}

namespace {
// -log2 of the Poisson pmf at tfn with mean lambda, continuous via lgamma.
double neg_log2_poisson(double tfn, double lambda) {
  double ln_p = -lambda + tfn * std::log(lambda) - std::lgamma(tfn + 1.0);
  return -ln_p / std::log(2.0);
}
}  // namespace

double score_dfr(const InvertedIndex& index, const Query& query, int doc) {
  double n = static_cast<double>(index.num_docs());
  double len = index.doc_lengths[static_cast<std::size_t>(doc)];
  double score = 0;
  for (const auto& qt : query.terms) {
    double tf = index.tf(qt.term, doc);
    if (tf <= 0) continue;
    auto cf_it = index.collection_tf.find(qt.term);
    double lambda = cf_it->second / n;
    double tfn = tf * std::log2(1.0 + index.avg_doc_length / len);
    double gain = 1.0 / (tfn + 1.0);  // 1 - P2 with Laplace after-effect tfn/(tfn+1)
    score += qt.weight * gain * neg_log2_poisson(tfn, lambda);
  }
  return score;
}

std::vector<ScoredDoc> retrieve(const InvertedIndex& index, const Query& query, RetrievalModel model,
                                int k, const Bm25Params& bm25) {
  if (k < 1) throw Error("retrieve: k must be >= 1");
  std::set<int> candidates;
  for (const auto& qt : query.terms) {
    auto it = index.postings.find(qt.term);
    if (it == index.postings.end()) continue;
    for (const auto& p : it->second) candidates.insert(p.doc);
  }
  std::vector<ScoredDoc> scored;
  scored.reserve(candidates.size());
  for (int doc : candidates) {
    double s = model == RetrievalModel::bm25 ? score_bm25(index, query, doc, bm25)
                                             : score_dfr(index, query, doc);
    scored.push_back({index.doc_ids[static_cast<std::size_t>(doc)], doc, s});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  if (static_cast<int>(scored.size()) > k) scored.resize(static_cast<std::size_t>(k));
  return scored;
}

std::vector<double> hit_rate(const InvertedIndex& index,
                             const std::vector<std::pair<Query, std::string>>& truths,
                             const std::vector<int>& ks, RetrievalModel model) {
  if (truths.empty() || ks.empty()) return std::vector<double>(ks.size(), 0.0);
  int max_k = *std::max_element(ks.begin(), ks.end());
  std::vector<int> rank_of(truths.size(), INT32_MAX);
  for (std::size_t i = 0; i < truths.size(); ++i) {
    auto ranking = retrieve(index, truths[i].first, model, max_k);
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      if (ranking[r].doc_id == truths[i].second) {
        rank_of[i] = static_cast<int>(r) + 1;
        break;
      }
    }
  }
  std::vector<double> curve;
  curve.reserve(ks.size());
  for (int k : ks) {
    int hits = 0;
    for (int r : rank_of) {
      if (r <= k) ++hits;
    }
    curve.push_back(static_cast<double>(hits) / static_cast<double>(truths.size()));
  }
  return curve;
}

std::string InvertedIndex::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-index";
  j["version"] = 1;
  j["stem"] = options.stem;
  j["stopwords"] = options.stopwords;
  j["doc_ids"] = doc_ids;
  j["doc_lengths"] = doc_lengths;
  j["avg_doc_length"] = avg_doc_length;
  nlohmann::ordered_json postings_j;
  for (const auto& [term, plist] : postings) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : plist) arr.push_back({p.doc, p.tf});
    postings_j[term] = std::move(arr);
  }
  j["postings"] = std::move(postings_j);
  return j.dump();
}

InvertedIndex InvertedIndex::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-index") throw Error("not an index file");
  if (j.value("version", 0) > 1) throw Error("index file version is newer than supported (1)");
  InvertedIndex idx;
  idx.options.stem = j["stem"];
  idx.options.stopwords = j["stopwords"].get<std::vector<std::string>>();
  idx.doc_ids = j["doc_ids"].get<std::vector<std::string>>();
  idx.doc_lengths = j["doc_lengths"].get<std::vector<double>>();
  idx.avg_doc_length = j["avg_doc_length"];
  for (const auto& [term, arr] : j["postings"].items()) {
    for (const auto& p : arr) {
      idx.postings[term].push_back({p[0].get<int>(), p[1].get<double>()});
      idx.collection_tf[term] += p[1].get<double>();
    }
  }
  return idx;
}

}  // namespace newscite::index
