// minhash.hpp
// MinHash signatures over a characteristic matrix and LSH banding.
// Hash family: h(x) = ((a*x + b) mod p) mod R with prime p > R; explicit
// linear hashes are supported for small worked fixtures.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace newscite::ml {

struct LinearHash {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t p = 2;  // modulus applied first
  std::uint64_t r = 0;  // 0 = no second reduction

  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t v = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * x + b) % p);
    return r > 0 ? v % r : v;
  }
};

// `count` universal hash functions for `num_rows` rows.
std::vector<LinearHash> make_hash_family(std::size_t count, std::uint64_t num_rows, std::uint64_t seed);

// Characteristic matrix as one row-index set per document (column).
using CharMatrix = std::vector<std::set<std::uint64_t>>;

inline constexpr std::uint64_t minhash_empty = ~0ull;

// signatures[h][d] = min over rows of document d of hash_h(row).
std::vector<std::vector<std::uint64_t>> minhash_signatures(const CharMatrix& docs,
                                                           const std::vector<LinearHash>& hashes);

struct LshBuckets {
  int bands = 0;
  int rows_per_band = 0;
  // per band: bucket hash -> documents in that bucket
  std::vector<std::map<std::uint64_t, std::vector<std::size_t>>> buckets;

  std::set<std::pair<std::size_t, std::size_t>> candidate_pairs() const;
  bool same_bucket_any_band(std::size_t doc_a, std::size_t doc_b) const;
};

// Requires bands * rows_per_band == signature length.
LshBuckets lsh(const std::vector<std::vector<std::uint64_t>>& signatures, int bands, int rows_per_band);

// 1 - (1 - s^r)^b, the probability a pair with Jaccard s becomes a candidate.
double lsh_candidate_probability(double s, int rows_per_band, int bands);

}  // namespace newscite::ml
