// temporal.hpp
// Hand-crafted temporal expression rules:
//   (1) DD Month YYYY   (2) DD MM YYYY   (3) MM DD YY(YY)   (4) YYYY
// with whitespace / '-' / '.' delimiters and a 1000-2999 year guard on (4).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newscite::text {

struct TemporalMention {
  std::string expression;
  std::size_t begin = 0;
  std::size_t end = 0;
  int year = 0;
  std::optional<int> month;  // 1-12 when the rule carries day precision
  std::optional<int> day;    // 1-31
  int rule = 0;              // 1..4
};

// All non-overlapping mentions, longest-match-first.
std::vector<TemporalMention> extract_temporal_mentions(std::string_view text);

// (expression, year) view of the above.
std::vector<std::pair<std::string, int>> extract_temporals(std::string_view text);

// min over extracted years of |snapshot_year - year|; nullopt when the text
// has no temporal expression.
std::optional<int> temporal_proximity(std::string_view text, int snapshot_year);

// Days since civil epoch 1970-01-01 (may be negative).
std::int64_t days_from_civil(int year, int month, int day);

// Difference in days between two mentions; year-only mentions fall back to
// 365 * year gap.
std::int64_t day_difference(const TemporalMention& a, const TemporalMention& b);

}  // namespace newscite::text
