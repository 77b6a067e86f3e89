// The shipped lexicon files must stay in sync with the built-in defaults.

#include "doctest.h"

#include "newscite/text/discourse.hpp"
#include "newscite/text/lexicons.hpp"

#ifndef NEWSCITE_DATA_DIR
#define NEWSCITE_DATA_DIR "core/data"
#endif

using namespace newscite::text;

namespace {
const std::string data_dir = NEWSCITE_DATA_DIR;
}

TEST_CASE("attribution verb file matches the built-in 92 lemmas") {
  auto from_file = load_word_list(data_dir + "/attribution_verbs.txt");
  CHECK(from_file == attribution_verbs());
  CHECK(from_file.size() == 92);
}

TEST_CASE("stopword file matches the built-in list") {
  CHECK(load_word_list(data_dir + "/stopwords.txt") == default_stopwords());
}

TEST_CASE("span cue file matches the built-in 12 entries") {
  auto from_file = load_word_list(data_dir + "/span_cues.txt");
  CHECK(from_file.size() == 12);
  for (const auto& cue : span_cue_words()) CHECK(from_file.count(cue) == 1);
}

TEST_CASE("discourse cue file loads and agrees with the built-ins on key cues") {
  DiscourseLexicon from_file(data_dir + "/discourse_cues.tsv");
  DiscourseLexicon builtin;
  CHECK(from_file.size() == builtin.size());
  for (const char* sentence : {"However, he lost.", "after the vote", "for example this",
                               "because of that", "on the other hand it failed"}) {
    CHECK(annotate_discourse(sentence, from_file) == annotate_discourse(sentence, builtin));
  }
}
