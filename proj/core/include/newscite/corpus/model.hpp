// model.hpp
// Domain types for the wiki-like corpus and the news collection.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace newscite::corpus {

// The fixed 16 citation categories plus the reserved `needed` marker for
// citation-needed placeholders.
enum class CitationCategory {
  web, news, book, journal, map, comic, court, press_release, report, interview,
  video, episode, sign, speech, thesis, encyclopedia,
  needed,
};

inline constexpr int num_citation_categories = 16;  // excluding `needed`

std::string to_string(CitationCategory c);
std::optional<CitationCategory> citation_category_from_string(const std::string& s);

// The 12 classes the categorization task keeps distinct; the remaining four
// collapse into "other".
std::string sc_class_of(CitationCategory c);
const std::vector<std::string>& sc_class_names();

struct Citation {
  std::size_t marker_offset = 0;  // char position in the paragraph text
  CitationCategory category = CitationCategory::web;
  std::string url;
  std::string domain;  // derived from url

  bool operator==(const Citation&) const = default;
};

struct Anchor {
  std::string surface;
  std::string target;  // article id
  std::size_t offset = 0;

  bool operator==(const Anchor&) const = default;
};

struct Paragraph {
  std::string text;
  std::vector<Anchor> anchors;
  std::vector<Citation> citations;

  bool operator==(const Paragraph&) const = default;
};

struct Section {
  std::string heading;
  std::vector<Paragraph> paragraphs;

  bool operator==(const Section&) const = default;
};

struct WikiArticle {
  std::string id;
  std::string title;
  std::set<std::string> types;
  int revision_year = 2001;
  std::vector<Section> sections;

  bool operator==(const WikiArticle&) const = default;
};

struct WikiCorpus {
  std::vector<WikiArticle> articles;

  const WikiArticle* find(const std::string& id) const;
  bool operator==(const WikiCorpus&) const = default;
};

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
  std::string to_string() const;                       // YYYY-MM-DD
  static std::optional<Date> parse(const std::string& s);
};

struct Mention {
  std::string surface;
  std::string entity;
  double score = 1.0;
  int paragraph = 0;
  std::size_t offset = 0;

  bool operator==(const Mention&) const = default;
};

struct NewsArticle {
  std::string url;
  std::string domain;  // derived
  std::string title;
  Date published_at;
  std::string language = "en";
  std::vector<std::string> paragraphs;
  std::vector<Mention> mentions;

  std::string full_text() const;
  bool operator==(const NewsArticle&) const = default;
};

struct NewsCorpus {
  std::vector<NewsArticle> articles;

  const NewsArticle* find(const std::string& url) const;
  bool operator==(const NewsCorpus&) const = default;
};

struct Statement {
  std::string id;  // article/section_index/paragraph_index/ordinal
  std::string text;
  std::string article_id;
  std::string section_heading;
  int section_index = 0;
  int paragraph_index = 0;
  std::vector<Citation> citations;  // empty = citation-needed statement
  std::vector<Anchor> anchors;
  std::size_t span_begin = 0;  // char offsets in the source paragraph
  std::size_t span_end = 0;

  bool has_news_citation() const;
  bool operator==(const Statement&) const = default;
};

}  // namespace newscite::corpus
