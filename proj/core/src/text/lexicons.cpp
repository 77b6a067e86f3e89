#include "newscite/text/lexicons.hpp"

#include <fstream>

#include "newscite/common.hpp"

namespace newscite::text {

std::set<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string w = trim(line);
    if (!w.empty() && w[0] != '#') out.insert(to_lower(w));
  }
  return out;
}

const std::set<std::string>& attribution_verbs() {
  static const std::set<std::string> verbs = {
      "accuse",    "acknowledge", "add",       "admit",     "advise",    "affirm",
      "agree",     "allege",      "announce",  "answer",    "argue",     "ask",
      "assert",    "assure",      "attest",    "believe",   "blame",     "boast",
      "caution",   "charge",      "cite",      "claim",     "clarify",   "comment",
      "complain",  "concede",     "conclude",  "concur",    "confide",   "confirm",
      "contend",   "counter",     "declare",   "demand",    "deny",      "describe",
      "disagree",  "disclose",    "dispute",   "elaborate", "emphasize", "estimate",
      "explain",   "express",     "fear",      "feel",      "forecast",  "highlight",
      "hint",      "hope",        "imply",     "indicate",  "inform",    "insist",
      "maintain",  "mention",     "note",      "object",    "observe",   "opine",
      "pledge",    "posit",       "predict",   "proclaim",  "promise",   "pronounce",
      "propose",   "protest",     "quote",     "recall",    "recommend", "reiterate",
      "remark",    "repeat",      "reply",     "report",    "respond",   "reveal",
      "say",       "signal",      "speculate", "state",     "stress",    "suggest",
      "surmise",   "swear",       "tell",      "testify",   "think",     "urge",
      "vow",       "warn",
  };
  return verbs;
}

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",     "an",    "and",   "are",   "as",    "at",    "be",    "been",  "but",
      "by",    "for",   "from",  "had",   "has",   "have",  "he",    "her",   "his",
      "i",     "in",    "into",  "is",    "it",    "its",   "itself","of",    "on",
      "or",    "she",   "that",  "the",   "their", "them",  "then",  "there", "these",
      "they",  "this",  "those", "to",    "was",   "we",    "were",  "which", "while",
      "who",   "whom",  "will",  "with",  "would", "you",   "not",   "no",    "so",
      "such",  "than",  "too",   "very",  "can",   "could", "do",    "does",  "did",
      "him",   "her",   "our",   "your",  "my",    "me",    "us",    "what",  "when",
      "where", "how",   "why",   "all",   "any",   "both",  "each",  "more",  "most",
      "other", "some",  "only",  "own",   "same",  "s",     "t",     "just",  "also",
  };
  return words;
}

const std::vector<std::string>& span_cue_words() {
  // Seeded from the window-baseline cue examples; the original list from the
  // 1982 source is unrecoverable.
  static const std::vector<std::string> cues = {
      "above-mentioned", "these",   "this",      "therefore", "however",      "thus",
      "such",            "former",  "latter",    "hence",     "accordingly",  "aforementioned",
  };
  return cues;
}

AttributionStats attribution_stats(const TokenizedText& text, std::size_t char_length,
                                   const RuleTagger& tagger, const std::set<std::string>& verbs) {
  AttributionStats st;
  int total_verbs = 0, attr_verbs = 0, quotes = 0;
  for (const auto& t : text.tokens) {
    if (t.tag.rfind("VB", 0) == 0) {
      ++total_verbs;
      if (verbs.count(tagger.lemma(t.surface, verbs))) ++attr_verbs;
    }
    if (t.surface == "\"" || t.surface == "``" || t.surface == "''") ++quotes;
  }
  st.verb_ratio = total_verbs > 0 ? static_cast<double>(attr_verbs) / total_verbs : 0.0;
  st.quote_ratio = char_length > 0 ? static_cast<double>(quotes) / static_cast<double>(char_length) : 0.0;
  return st;
}

}  // namespace newscite::text
