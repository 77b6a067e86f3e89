#include "newscite/ml/minhash.hpp"

#include <cmath>
#include <random>
#include <string_view>

#include "newscite/common.hpp"

namespace newscite::ml {

std::vector<LinearHash> make_hash_family(std::size_t count, std::uint64_t num_rows, std::uint64_t seed) {
  // Two deliberate departures from the textbook toy setting, where rows are
  // bucketed mod R ~ num_rows: a small prime makes (a*x+b) badly min-wise
  // dependent on contiguous row ranges, and a lossy mod-R step makes minima
  // of different sets collide spuriously. The generated family therefore
  // hashes injectively under a large prime (r = 0 disables the second
  // reduction); the classic mod-R form stays available for worked fixtures.
  (void)num_rows;
  std::uint64_t p = (1ull << 61) - 1;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_a(1, p - 1);
  std::uniform_int_distribution<std::uint64_t> pick_b(0, p - 1);
  std::vector<LinearHash> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({pick_a(rng), pick_b(rng), p, 0});
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> minhash_signatures(const CharMatrix& docs,
                                                           const std::vector<LinearHash>& hashes) {
  std::vector<std::vector<std::uint64_t>> sig(hashes.size(),
                                              std::vector<std::uint64_t>(docs.size(), minhash_empty));
  for (std::size_t h = 0; h < hashes.size(); ++h) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::uint64_t row : docs[d]) {
        std::uint64_t v = hashes[h](row);
        if (v < sig[h][d]) sig[h][d] = v;
      }
    }
  }
  return sig;
}

LshBuckets lsh(const std::vector<std::vector<std::uint64_t>>& signatures, int bands, int rows_per_band) {
  if (bands < 1 || rows_per_band < 1) throw Error("lsh: bands and rows_per_band must be >= 1");
  if (static_cast<std::size_t>(bands) * static_cast<std::size_t>(rows_per_band) != signatures.size()) {
    throw Error("lsh: bands * rows_per_band must equal the signature length");
  }
  LshBuckets out;
  out.bands = bands;
  out.rows_per_band = rows_per_band;
  out.buckets.resize(static_cast<std::size_t>(bands));
  std::size_t num_docs = signatures.empty() ? 0 : signatures[0].size();
  for (int band = 0; band < bands; ++band) {
    for (std::size_t d = 0; d < num_docs; ++d) {
      std::uint64_t key = fnv1a(std::string_view(reinterpret_cast<const char*>(&band), sizeof(band)));
      for (int r = 0; r < rows_per_band; ++r) {
        std::uint64_t v = signatures[static_cast<std::size_t>(band * rows_per_band + r)][d];
        key = fnv1a(std::string_view(reinterpret_cast<const char*>(&v), sizeof(v)), key);
      }
      out.buckets[static_cast<std::size_t>(band)][key].push_back(d);
    }
  }
  return out;
}

std::set<std::pair<std::size_t, std::size_t>> LshBuckets::candidate_pairs() const {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& band : buckets) {
    for (const auto& [key, docs] : band) {
      for (std::size_t i = 0; i < docs.size(); ++i) {
        for (std::size_t j = i + 1; j < docs.size(); ++j) {
          pairs.emplace(std::min(docs[i], docs[j]), std::max(docs[i], docs[j]));
        }
      }
    }
  }
  return pairs;
}

bool LshBuckets::same_bucket_any_band(std::size_t doc_a, std::size_t doc_b) const {
  for (const auto& band : buckets) {
    for (const auto& [key, docs] : band) {
      bool a = false, b = false;
      for (std::size_t d : docs) {
        a = a || d == doc_a;
        b = b || d == doc_b;
      }
      if (a && b) return true;
    }
  }
  return false;
}

double lsh_candidate_probability(double s, int rows_per_band, int bands) {
  return 1.0 - std::pow(1.0 - std::pow(s, rows_per_band), bands);
}

}  // namespace newscite::ml
