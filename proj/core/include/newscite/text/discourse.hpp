// discourse.hpp
// Explicit discourse connective annotation against a cue lexicon with four
// senses: temporal, contingency, comparison, expansion.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "newscite/text/tokenize.hpp"

namespace newscite::text {

enum class DiscourseSense { temporal, contingency, comparison, expansion };

std::string to_string(DiscourseSense s);

struct DiscourseCueMatch {
  std::string cue;
  DiscourseSense sense;
  std::size_t first_token = 0;  // token index of the cue start
  std::size_t token_count = 1;
};

class DiscourseLexicon {
public:
  DiscourseLexicon();  // bundled defaults
  explicit DiscourseLexicon(const std::string& path);  // cue<TAB>sense per line

  // Matches over a token sequence (longest cue first at each position).
  std::vector<DiscourseCueMatch> match(const std::vector<Token>& tokens) const;

  std::set<DiscourseSense> senses(const std::vector<Token>& tokens) const;

  std::size_t size() const { return cues_.size(); }

private:
  void add(const std::string& cue, DiscourseSense sense);
  void load_defaults();
  std::map<std::vector<std::string>, DiscourseSense> cues_;  // lowered token seq
  std::size_t max_len_ = 1;
};

// Convenience: senses present in a sentence of plain text.
std::set<DiscourseSense> annotate_discourse(std::string_view sentence, const DiscourseLexicon& lex);

}  // namespace newscite::text
