// inverted_index.hpp
// Inverted index over the news corpus with BM25 and divergence-from-
// randomness scoring (Poisson randomness, Laplace after-effect, logarithmic
// length normalization), tf-idf query construction and top-k retrieval.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"
#include "newscite/text/similarity.hpp"

namespace newscite::index {

enum class RetrievalModel { bm25, dfr };
std::string to_string(RetrievalModel m);
RetrievalModel retrieval_model_from_string(const std::string& s);

struct IndexOptions {
  bool stem = false;  // minimal suffix stemmer, off by default
  // empty = bundled default stopword list
  std::vector<std::string> stopwords;
};

// Shared analysis chain: lowercase, drop punctuation/stopwords, optional stem.
std::vector<std::string> analyze_terms(const std::string& text, const IndexOptions& options);

struct Posting {
  int doc = 0;
  double tf = 0;
};

class InvertedIndex {
public:
  IndexOptions options;
  std::vector<std::string> doc_ids;
  std::vector<double> doc_lengths;        // token counts after filtering
  double avg_doc_length = 0;
  std::map<std::string, std::vector<Posting>> postings;
  std::map<std::string, double> collection_tf;  // total tf per term

  int num_docs() const { return static_cast<int>(doc_ids.size()); }
  int df(const std::string& term) const;
  double tf(const std::string& term, int doc) const;
  int doc_index(const std::string& doc_id) const;

  std::string to_json() const;
  static InvertedIndex from_json(const std::string& text);
};

InvertedIndex build_index(const corpus::NewsCorpus& corpus, const IndexOptions& options = {});

struct Query {
  struct Term {
    std::string term;
    double weight = 1.0;
  };
  std::vector<Term> terms;  // weight descending, ties by term
  std::string source_statement_id;
};

// QCA1Base: statement terms weighted tf(in statement) * ratio idf over the
// statement collection; top_m kept.
Query build_query(const std::string& statement_text, const text::CorpusStats& statement_stats,
                  const IndexOptions& options = {}, int top_m = 50);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

double score_bm25(const InvertedIndex& index, const Query& query, int doc, const Bm25Params& params = {});
double score_dfr(const InvertedIndex& index, const Query& query, int doc);

struct ScoredDoc {
  std::string doc_id;
  int doc = 0;
  double score = 0;
};

// Top-k by score, ties by doc id ascending; deterministic.
std::vector<ScoredDoc> retrieve(const InvertedIndex& index, const Query& query, RetrievalModel model,
                                int k, const Bm25Params& bm25 = {});

// hit_rate[k] = fraction of statements whose ground-truth doc appears in the
// top-k ranking, for each k in ks (ascending).
std::vector<double> hit_rate(const InvertedIndex& index,
                             const std::vector<std::pair<Query, std::string>>& truths,
                             const std::vector<int>& ks, RetrievalModel model);

}  // namespace newscite::index
