#include "newscite/corpus/model.hpp"

#include <array>
#include <cstdio>

namespace newscite::corpus {

namespace {
const std::array<const char*, 17> kCategoryNames = {
    "web",   "news",    "book",  "journal", "map",    "comic",        "court",
    "press_release", "report", "interview", "video", "episode", "sign", "speech",
    "thesis", "encyclopedia", "needed"};
}

std::string to_string(CitationCategory c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<CitationCategory> citation_category_from_string(const std::string& s) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (s == kCategoryNames[i]) return static_cast<CitationCategory>(i);
  }
  return std::nullopt;
}

std::string sc_class_of(CitationCategory c) {
  switch (c) {
    case CitationCategory::web:
    case CitationCategory::news:
    case CitationCategory::book:
    case CitationCategory::journal:
    case CitationCategory::map:
    case CitationCategory::court:
    case CitationCategory::press_release:
    case CitationCategory::report:
    case CitationCategory::interview:
    case CitationCategory::video:
    case CitationCategory::speech:
    case CitationCategory::thesis:
      return to_string(c);
    default:
      return "other";
  }
}

const std::vector<std::string>& sc_class_names() {
  static const std::vector<std::string> names = {
      "web",   "news",    "book",  "journal",   "map",   "court", "press_release",
      "report", "interview", "video", "speech", "thesis", "other"};
  return names;
}

const WikiArticle* WikiCorpus::find(const std::string& id) const {
  for (const auto& a : articles) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

const NewsArticle* NewsCorpus::find(const std::string& url) const {
  for (const auto& a : articles) {
    if (a.url == url) return &a;
  }
  return nullptr;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<Date> Date::parse(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  }
  Date d;
  d.year = std::stoi(s.substr(0, 4));
  d.month = std::stoi(s.substr(5, 2));
  d.day = std::stoi(s.substr(8, 2));
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
  return d;
}

std::string NewsArticle::full_text() const {
  std::string out = title;
  for (const auto& p : paragraphs) {
    if (!out.empty()) out += "\n";
    out += p;
  }
  return out;
}

bool Statement::has_news_citation() const {
  for (const auto& c : citations) {
    if (c.category == CitationCategory::news) return true;
  }
  return false;
}

}  // namespace newscite::corpus
