// Microbenchmarks for the hot paths: CRF forward-backward, retrieval
// scoring, MinHash signatures, k-means and KN LM lookups.

#include <random>

#include <benchmark/benchmark.h>

#include "newscite/index/inverted_index.hpp"
#include "newscite/ml/cluster.hpp"
#include "newscite/ml/crf.hpp"
#include "newscite/ml/minhash.hpp"
#include "newscite/text/ngram_lm.hpp"

using namespace newscite;

namespace {

ml::CrfSequence make_sequence(std::mt19937_64& rng, int length, int num_features) {
  ml::CrfSequence seq;
  std::uniform_int_distribution<int> pick(0, num_features - 1);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  for (int t = 0; t < length; ++t) {
    std::vector<std::pair<int, double>> obs;
    for (int j = 0; j < 8; ++j) obs.emplace_back(pick(rng), value(rng));
    std::sort(obs.begin(), obs.end());
    obs.erase(std::unique(obs.begin(), obs.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              obs.end());
    seq.obs.push_back(std::move(obs));
    seq.labels.push_back(static_cast<int>(rng() % 2));
  }
  return seq;
}

void bench_crf_loglik_grad(benchmark::State& state) {
  std::mt19937_64 rng(1);
  int features = 64;
  ml::CrfModel model(2, features);
  std::uniform_real_distribution<double> w(-0.5, 0.5);
  std::vector<double> weights(model.weights().size());
  for (auto& x : weights) x = w(rng);
  model.set_weights(std::move(weights));
  std::vector<ml::CrfSequence> data;
  for (int i = 0; i < 32; ++i) data.push_back(make_sequence(rng, 8, features));
  for (auto _ : state) {
    auto [ll, grad] = ml::crf_loglik_and_grad(model, data, 0.5);
    benchmark::DoNotOptimize(ll);
    benchmark::DoNotOptimize(grad);
  }
}
BENCHMARK(bench_crf_loglik_grad);

void bench_crf_decode(benchmark::State& state) {
  std::mt19937_64 rng(2);
  int features = 64;
  ml::CrfModel model(2, features);
  auto seq = make_sequence(rng, 12, features);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.decode(seq));
  }
}
BENCHMARK(bench_crf_decode);

index::InvertedIndex make_index(int docs) {
  std::mt19937_64 rng(3);
  const char* vocab[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
                         "iota", "kappa", "lam", "mu", "nu", "xi", "omicron", "pi"};
  corpus::NewsCorpus corpus;
  for (int i = 0; i < docs; ++i) {
    corpus::NewsArticle n;
    n.url = "http://b.org/" + std::to_string(i);
    n.published_at = {2014, 1, 1};
    std::string text;
    for (int w = 0; w < 120; ++w) text += std::string(vocab[rng() % 16]) + " ";
    n.paragraphs = {text};
    corpus.articles.push_back(std::move(n));
  }
  return index::build_index(corpus);
}

void bench_retrieve(benchmark::State& state) {
  auto idx = make_index(2000);
  index::Query q;
  q.terms = {{"alpha", 2.0}, {"gamma", 1.5}, {"pi", 1.0}, {"zeta", 0.5}};
  auto model = state.range(0) == 0 ? index::RetrievalModel::bm25 : index::RetrievalModel::dfr;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index::retrieve(idx, q, model, 100));
  }
}
BENCHMARK(bench_retrieve)->Arg(0)->Arg(1);

void bench_minhash(benchmark::State& state) {
  std::mt19937_64 rng(4);
  ml::CharMatrix docs(16);
  std::uniform_int_distribution<std::uint64_t> row(0, 4095);
  for (auto& d : docs) {
    while (d.size() < 200) d.insert(row(rng));
  }
  auto hashes = ml::make_hash_family(128, 4096, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml::minhash_signatures(docs, hashes));
  }
}
BENCHMARK(bench_minhash);

void bench_kmeans(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.2);
  std::vector<ml::Point> points;
  for (const auto& c : std::vector<ml::Point>{{0, 0}, {4, 0}, {0, 4}, {4, 4}}) {
    for (int i = 0; i < 250; ++i) points.push_back({c[0] + noise(rng), c[1] + noise(rng)});
  }
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml::kmeans(points, 4, seed++));
  }
}
BENCHMARK(bench_kmeans);

void bench_kn_lm_prob(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const char* vocab[] = {"the", "cat", "sat", "mat", "dog", "ran", "house", "tree"};
  std::vector<std::vector<std::string>> docs;
  for (int d = 0; d < 50; ++d) {
    std::vector<std::string> doc;
    for (int w = 0; w < 200; ++w) doc.push_back(vocab[rng() % 8]);
    docs.push_back(std::move(doc));
  }
  auto lm = text::NgramLm::train(docs, 3);
  std::vector<std::string> ctx = {"the", "cat"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lm.prob("sat", ctx));
  }
}
BENCHMARK(bench_kn_lm_prob);

}  // namespace

BENCHMARK_MAIN();
