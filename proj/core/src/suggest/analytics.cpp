#include "newscite/suggest/analytics.hpp"

#include "newscite/text/temporal.hpp"

namespace newscite::suggest {

std::map<std::string, double> reference_density(const corpus::WikiArticle& article) {
  std::map<std::string, double> counts;
  double total = 0;
  for (const auto& s : article.sections) {
    for (const auto& p : s.paragraphs) {
      for (const auto& c : p.citations) {
        if (c.category == corpus::CitationCategory::needed) continue;
        counts[corpus::to_string(c.category)] += 1;
        total += 1;
      }
    }
  }
  if (total > 0) {
    for (auto& [cat, n] : counts) n /= total;
  }
  return counts;
}

std::vector<std::pair<std::string, std::int64_t>> entity_lag_days(const std::vector<LagPair>& pairs) {
  std::vector<std::pair<std::string, std::int64_t>> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    std::int64_t wiki = text::days_from_civil(p.wiki_created.year, p.wiki_created.month, p.wiki_created.day);
    std::int64_t news = text::days_from_civil(p.first_news_mention.year, p.first_news_mention.month,
                                              p.first_news_mention.day);
    out.emplace_back(p.entity, wiki - news);
  }
  return out;
}

double emerging_entity_density(const corpus::Date& event_created,
                               const std::vector<corpus::Date>& linked_entity_created) {
  if (linked_entity_created.empty()) return 0.0;
  double after = 0;
  for (const auto& d : linked_entity_created) {
    if (d > event_created) after += 1;
  }
  return after / static_cast<double>(linked_entity_created.size());
}

}  // namespace newscite::suggest
