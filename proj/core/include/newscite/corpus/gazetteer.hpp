// gazetteer.hpp
// Exact anchor-dictionary entity linker against article titles. Only used to
// generate fixtures; real corpora carry pre-computed mentions.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"

namespace newscite::corpus {

class GazetteerLinker {
public:
  // title -> article id
  explicit GazetteerLinker(std::map<std::string, std::string> titles);
  explicit GazetteerLinker(const WikiCorpus& corpus);

  // Longest-match-first exact title mentions at word boundaries, score 1.0.
  std::vector<Mention> link(const std::string& text, int paragraph_index) const;
  void annotate(NewsArticle& article) const;

private:
  std::vector<std::pair<std::string, std::string>> by_length_;  // (title, id), longest first
};

}  // namespace newscite::corpus
