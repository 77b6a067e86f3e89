#include "newscite/text/temporal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "newscite/common.hpp"

namespace newscite::text {

namespace {

const std::array<std::string, 12> kMonths = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_delim(char c) { return c == ' ' || c == '-' || c == '.'; }

bool boundary_left(std::string_view text, std::size_t pos) {
  return pos == 0 || !(std::isalnum(static_cast<unsigned char>(text[pos - 1])));
}
bool boundary_right(std::string_view text, std::size_t pos) {
  return pos >= text.size() || !(std::isalnum(static_cast<unsigned char>(text[pos])));
}

// Reads 'count' in {1,2} or exactly-n digits starting at pos; returns value or -1.
int read_digits(std::string_view text, std::size_t pos, int n, std::size_t* end) {
  std::size_t i = pos;
  while (i < text.size() && is_digit(text[i]) && static_cast<int>(i - pos) < n) ++i;
  if (static_cast<int>(i - pos) != n) return -1;
  *end = i;
  return std::atoi(std::string(text.substr(pos, n)).c_str());
}

int read_flex_digits(std::string_view text, std::size_t pos, int min_n, int max_n, std::size_t* end) {
  std::size_t i = pos;
  while (i < text.size() && is_digit(text[i])) ++i;
  int n = static_cast<int>(i - pos);
  if (n < min_n || n > max_n) return -1;
  *end = i;
  return std::atoi(std::string(text.substr(pos, static_cast<std::size_t>(n))).c_str());
}

int month_at(std::string_view text, std::size_t pos, std::size_t* end) {
  for (std::size_t m = 0; m < kMonths.size(); ++m) {
    const std::string& name = kMonths[m];
    // full name or 3-letter abbreviation
    for (std::size_t len : {name.size(), std::size_t{3}}) {
      if (pos + len > text.size()) continue;
      if (to_lower(text.substr(pos, len)) != name.substr(0, len)) continue;
      if (!boundary_right(text, pos + len)) continue;
      *end = pos + len;
      return static_cast<int>(m) + 1;
    }
  }
  return -1;
}

bool valid_day(int d) { return d >= 1 && d <= 31; }
bool valid_month(int m) { return m >= 1 && m <= 12; }
bool valid_year4(int y) { return y >= 1000 && y <= 2999; }

int expand_two_digit_year(int yy) { return yy < 30 ? 2000 + yy : 1900 + yy; }

void try_rules_at(std::string_view text, std::size_t pos, std::vector<TemporalMention>* out) {
  if (!boundary_left(text, pos)) return;

  // rule 1: DD Month YYYY
  {
    std::size_t p = pos, e = 0;
    int d = read_flex_digits(text, p, 1, 2, &e);
    if (d >= 0 && valid_day(d) && e < text.size() && is_delim(text[e])) {
      std::size_t p2 = e + 1, e2 = 0;
      int m = month_at(text, p2, &e2);
      if (m > 0 && e2 < text.size() && is_delim(text[e2])) {
        std::size_t p3 = e2 + 1, e3 = 0;
        int y = read_digits(text, p3, 4, &e3);
        if (y >= 0 && valid_year4(y) && boundary_right(text, e3)) {
          out->push_back({std::string(text.substr(pos, e3 - pos)), pos, e3, y, m, d, 1});
        }
      }
    }
  }
  // rule 2: DD MM YYYY
  {
    std::size_t e = 0;
    int d = read_flex_digits(text, pos, 1, 2, &e);
    if (d >= 0 && valid_day(d) && e < text.size() && is_delim(text[e])) {
      std::size_t e2 = 0;
      int m = read_flex_digits(text, e + 1, 1, 2, &e2);
      if (m >= 0 && valid_month(m) && e2 < text.size() && is_delim(text[e2])) {
        std::size_t e3 = 0;
        int y = read_digits(text, e2 + 1, 4, &e3);
        if (y >= 0 && valid_year4(y) && boundary_right(text, e3)) {
          out->push_back({std::string(text.substr(pos, e3 - pos)), pos, e3, y, m, d, 2});
        }
      }
    }
  }
  // rule 3: MM DD YY(YY)
  {
    std::size_t e = 0;
    int m = read_flex_digits(text, pos, 1, 2, &e);
    if (m >= 0 && valid_month(m) && e < text.size() && is_delim(text[e])) {
      std::size_t e2 = 0;
      int d = read_flex_digits(text, e + 1, 1, 2, &e2);
      if (d >= 0 && valid_day(d) && e2 < text.size() && is_delim(text[e2])) {
        std::size_t e3 = 0;
        int y = read_flex_digits(text, e2 + 1, 2, 4, &e3);
        if (e3 - (e2 + 1) == 3) y = -1;  // 2 or 4 digits only
        if (y >= 0 && boundary_right(text, e3)) {
          int year = (e3 - (e2 + 1) == 2) ? expand_two_digit_year(y) : y;
          if (e3 - (e2 + 1) == 2 || valid_year4(y)) {
            out->push_back({std::string(text.substr(pos, e3 - pos)), pos, e3, year, m, d, 3});
          }
        }
      }
    }
  }
  // rule 4: bare YYYY, guarded to 1000-2999
  {
    std::size_t e = 0;
    int y = read_digits(text, pos, 4, &e);
    if (y >= 0 && valid_year4(y) && boundary_right(text, e)) {
      out->push_back({std::string(text.substr(pos, e - pos)), pos, e, y, std::nullopt, std::nullopt, 4});
    }
  }
}

}  // namespace

std::vector<TemporalMention> extract_temporal_mentions(std::string_view text) {
  std::vector<TemporalMention> candidates;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_digit(text[i])) try_rules_at(text, i, &candidates);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;  // longest first
    return a.rule < b.rule;
  });
  std::vector<TemporalMention> out;
  std::size_t covered = 0;
  for (auto& c : candidates) {
    if (!out.empty() && c.begin < covered) continue;
    covered = c.end;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::pair<std::string, int>> extract_temporals(std::string_view text) {
  std::vector<std::pair<std::string, int>> out;
  for (auto& m : extract_temporal_mentions(text)) out.emplace_back(m.expression, m.year);
  return out;
}

std::optional<int> temporal_proximity(std::string_view text, int snapshot_year) {
  auto mentions = extract_temporal_mentions(text);
  if (mentions.empty()) return std::nullopt;
  int best = std::abs(snapshot_year - mentions[0].year);
  for (const auto& m : mentions) best = std::min(best, std::abs(snapshot_year - m.year));
  return best;
}

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t day_difference(const TemporalMention& a, const TemporalMention& b) {
  if (a.month && a.day && b.month && b.day) {
    return days_from_civil(b.year, *b.month, *b.day) - days_from_civil(a.year, *a.month, *a.day);
  }
  return static_cast<std::int64_t>(b.year - a.year) * 365;
}

}  // namespace newscite::text
