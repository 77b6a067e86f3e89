#include "newscite/corpus/curation.hpp"

#include <functional>

#include "newscite/common.hpp"

namespace newscite::corpus {

namespace {

void for_each_citation(WikiCorpus& corpus, const std::function<void(Citation&)>& fn) {
  for (auto& a : corpus.articles) {
    for (auto& s : a.sections) {
      for (auto& p : s.paragraphs) {
        for (auto& c : p.citations) fn(c);
      }
    }
  }
}

bool matches_news_url(const std::string& url) {
  return url.find("/news/") != std::string::npos || url.rfind("http://news.", 0) == 0;
}

}  // namespace

int CurationReport::total_changes() const {
  int total = 0;
  for (const auto& [key, count] : changes) total += count;
  return total;
}

std::string CurationReport::to_csv() const {
  std::string out = "from_category,to_category,count\n";
  for (const auto& [key, count] : changes) {
    out += to_string(key.first) + "," + to_string(key.second) + "," + std::to_string(count) + "\n";
  }
  return out;
}

CurationReport curate_citation_categories(WikiCorpus& corpus) {
  CurationReport report;

  // rule 1: per-domain majority vote, applied only toward news
  std::map<std::string, std::map<CitationCategory, int>> domain_counts;
  for_each_citation(corpus, [&](Citation& c) {
    if (c.category == CitationCategory::needed || c.domain.empty()) return;
    domain_counts[c.domain][c.category] += 1;
  });
  std::map<std::string, bool> news_majority;
  for (const auto& [domain, counts] : domain_counts) {
    auto it = counts.find(CitationCategory::news);
    if (it == counts.end()) continue;
    bool majority = true;
    for (const auto& [cat, count] : counts) {
      if (cat != CitationCategory::news && count >= it->second) majority = false;  // ties keep original
    }
    news_majority[domain] = majority;
  }
  for_each_citation(corpus, [&](Citation& c) {
    if (c.category == CitationCategory::needed || c.category == CitationCategory::news) return;
    auto it = news_majority.find(c.domain);
    if (it != news_majority.end() && it->second) {
      report.changes[{c.category, CitationCategory::news}] += 1;
      c.category = CitationCategory::news;
    }
  });

  // rule 2: URL patterns, web -> news only
  for_each_citation(corpus, [&](Citation& c) {
    if (c.category != CitationCategory::web) return;
    if (matches_news_url(c.url)) {
      report.changes[{CitationCategory::web, CitationCategory::news}] += 1;
      c.category = CitationCategory::news;
    }
  });
  return report;
}

}  // namespace newscite::corpus
