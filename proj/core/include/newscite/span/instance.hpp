// instance.hpp
// A citation-span instance: the citing paragraph's fragment sequence, one
// target citation, optional citation content and optional gold coverage.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"
#include "newscite/corpus/statements.hpp"

namespace newscite::span {

struct SpanInstance {
  std::string paragraph_id;   // grouping key for cross-validation
  std::string entity_id;      // grouping key for metrics
  std::string paragraph_text;
  std::vector<corpus::Fragment> fragments;
  corpus::Citation citation;
  std::size_t citing_fragment = 0;
  // citation content as token lists per content paragraph; empty = no-content mode
  std::vector<std::vector<std::string>> citation_paragraphs;
  int citation_sentence_count = 0;
  std::optional<std::vector<bool>> gold;  // per fragment: covered

  static SpanInstance build(const std::string& paragraph_id, const std::string& entity_id,
                            const corpus::Paragraph& paragraph, const corpus::Citation& citation,
                            const corpus::NewsArticle* content);
};

struct SpanPrediction {
  std::vector<std::size_t> selected;  // fragment indices, ascending
  std::string method;                 // CSPS, CSPC, IC, CSW, CS
};

}  // namespace newscite::span
