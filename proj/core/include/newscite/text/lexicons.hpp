// lexicons.hpp
// Bundled word lists: attribution verbs (92 lemmas), stopwords, and the
// citation-sentence-window cue words. All three can be replaced by data
// files (one token per line).

#pragma once

#include <set>
#include <string>
#include <vector>

#include "newscite/text/tokenize.hpp"

namespace newscite::text {

std::set<std::string> load_word_list(const std::string& path);

const std::set<std::string>& attribution_verbs();  // 92 lemmas
const std::set<std::string>& default_stopwords();
const std::vector<std::string>& span_cue_words();  // 12 entries

struct AttributionStats {
  double verb_ratio = 0.0;   // attribution VB* / total VB*, 0 when no verbs
  double quote_ratio = 0.0;  // quotation marks / char length
};

AttributionStats attribution_stats(const TokenizedText& text, std::size_t char_length,
                                   const RuleTagger& tagger,
                                   const std::set<std::string>& verbs = attribution_verbs());

}  // namespace newscite::text
