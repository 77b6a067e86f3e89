#include "newscite/text/tokenize.hpp"

#include <cctype>
#include <fstream>

#include "newscite/common.hpp"

namespace newscite::text {

namespace {

bool is_word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '\'' || u >= 0x80;
}

bool is_upper_or_digit_or_quote(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isupper(u) || std::isdigit(u) || c == '"' || c == '\'';
}

}  // namespace

std::vector<std::string> TokenizedText::lowered_words() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (std::isalnum(static_cast<unsigned char>(t.surface[0]))) out.push_back(to_lower(t.surface));
  }
  return out;
}

std::size_t TokenizedText::sentence_of_token(std::size_t token_index) const {
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (token_index >= sentences[s].first_token && token_index < sentences[s].end_token) return s;
  }
  return sentences.empty() ? 0 : sentences.size() - 1;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    if (is_word_char(c)) {
      while (i < text.size() && is_word_char(text[i])) ++i;
      // trailing apostrophe belongs to quoting, not the word
      while (i > begin + 1 && text[i - 1] == '\'') --i;
    } else {
      ++i;  // each punctuation char is its own token
    }
    Token t;
    t.surface = std::string(text.substr(begin, i - begin));
    t.begin = begin;
    t.end = i;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<SentenceRange> split_sentences(const std::vector<Token>& tokens) {
  std::vector<SentenceRange> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& s = tokens[i].surface;
    bool ender = (s == "." || s == "!" || s == "?");
    if (!ender) continue;
    bool at_end = (i + 1 == tokens.size());
    bool next_caps = !at_end && is_upper_or_digit_or_quote(tokens[i + 1].surface[0]);
    if (at_end || next_caps) {
      out.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (start < tokens.size()) out.push_back({start, tokens.size()});
  return out;
}

RuleTagger::RuleTagger() { load_defaults(); }

RuleTagger::RuleTagger(const std::string& lexicon_path) {
  load_defaults();
  std::ifstream in(lexicon_path);
  if (!in) throw Error("cannot open tagger lexicon: " + lexicon_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() < 2) continue;
    LexEntry e;
    e.tag = parts[1];
    if (parts.size() > 2) e.lemma = parts[2];
    lexicon_[to_lower(parts[0])] = std::move(e);
  }
}

void RuleTagger::load_defaults() {
  auto add = [&](std::initializer_list<const char*> words, const char* tag) {
    for (const char* w : words) lexicon_[w] = {tag, ""};
  };
  add({"i", "you", "he", "she", "it", "we", "they", "them", "him", "her", "me", "us"}, "PRP");
  add({"my", "your", "his", "its", "our", "their"}, "PRP$");
  add({"the", "a", "an", "this", "that", "these", "those", "each", "every", "no", "some", "any"}, "DT");
  add({"in", "on", "at", "of", "for", "with", "by", "from", "into", "over", "under", "after",
       "before", "between", "during", "through", "against", "about", "near", "since", "until",
       "within", "without", "upon", "among"}, "IN");
  add({"and", "or", "but", "nor", "yet"}, "CC");
  add({"will", "would", "can", "could", "may", "might", "shall", "should", "must"}, "MD");
  add({"to"}, "TO");
  add({"not", "n't", "very", "also", "however", "therefore", "then", "later", "soon", "here",
       "there", "now", "thus", "meanwhile", "instead"}, "RB");
  add({"who", "whom"}, "WP");
  add({"which"}, "WDT");
  add({"when", "where", "why", "how"}, "WRB");
  add({"new", "first", "last", "early", "late", "former", "several", "many", "few", "other",
       "such", "own", "same", "high", "low"}, "JJ");
  add({"is", "are", "was", "were", "be", "been", "being", "am"}, "VB");
  // frequent irregular verbs with lemmas
  auto addv = [&](const char* w, const char* tag, const char* lem) { lexicon_[w] = {tag, lem}; };
  addv("said", "VBD", "say");
  addv("says", "VBZ", "say");
  addv("say", "VBP", "say");
  addv("told", "VBD", "tell");
  addv("tells", "VBZ", "tell");
  addv("ran", "VBD", "run");
  addv("won", "VBD", "win");
  addv("lost", "VBD", "lose");
  addv("went", "VBD", "go");
  addv("made", "VBD", "make");
  addv("took", "VBD", "take");
  addv("came", "VBD", "come");
  addv("gave", "VBD", "give");
  addv("got", "VBD", "get");
  addv("held", "VBD", "hold");
  addv("led", "VBD", "lead");
  addv("met", "VBD", "meet");
  addv("found", "VBD", "find");
  addv("left", "VBD", "leave");
  addv("wrote", "VBD", "write");
  addv("spoke", "VBD", "speak");
  addv("began", "VBD", "begin");
  addv("became", "VBD", "become");
  addv("thought", "VBD", "think");
  addv("felt", "VBD", "feel");
  addv("saw", "VBD", "see");
  addv("knew", "VBD", "know");
  addv("grew", "VBD", "grow");
  addv("drew", "VBD", "draw");
  addv("moved", "VBD", "move");
  addv("announced", "VBD", "announce");
  addv("reported", "VBD", "report");
  addv("claimed", "VBD", "claim");
  addv("stated", "VBD", "state");
  addv("declared", "VBD", "declare");
  addv("denied", "VBD", "deny");
  addv("confirmed", "VBD", "confirm");
  addv("insisted", "VBD", "insist");
  addv("argued", "VBD", "argue");
  addv("added", "VBD", "add");
  addv("noted", "VBD", "note");
  addv("explained", "VBD", "explain");
  addv("warned", "VBD", "warn");
  addv("elected", "VBD", "elect");
  addv("reelected", "VBD", "reelect");
  addv("born", "VBN", "bear");
  addv("died", "VBD", "die");
}

void RuleTagger::tag(std::vector<Token>& tokens) const {
  for (auto& t : tokens) {
    const std::string& s = t.surface;
    unsigned char c0 = static_cast<unsigned char>(s[0]);
    if (!std::isalnum(c0) && c0 < 0x80) {
      if (s == "." || s == "!" || s == "?") t.tag = ".";
      else if (s == ",") t.tag = ",";
      else if (s == ":" || s == ";") t.tag = ":";
      else if (s == "\"" || s == "'" || s == "`") t.tag = "''";
      else if (s == "(" || s == "[") t.tag = "-LRB-";
      else if (s == ")" || s == "]") t.tag = "-RRB-";
      else t.tag = "SYM";
      continue;
    }
    bool all_num = true;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',') all_num = false;
    }
    if (all_num) {
      t.tag = "CD";
      continue;
    }
    auto it = lexicon_.find(to_lower(s));
    if (it != lexicon_.end()) {
      t.tag = it->second.tag;
      continue;
    }
    if (std::isupper(c0)) {
      t.tag = "NNP";
      continue;
    }
    auto ends = [&](const char* suf) {
      std::string_view sv(suf);
      return s.size() > sv.size() && std::string_view(s).substr(s.size() - sv.size()) == sv;
    };
    if (ends("ing")) t.tag = "VBG";
    else if (ends("ed")) t.tag = "VBD";
    else if (ends("ly")) t.tag = "RB";
    else if (ends("ous") || ends("ful") || ends("ive") || ends("able") || ends("al")) t.tag = "JJ";
    else if (ends("s") && !ends("ss") && s.size() > 3) t.tag = "NNS";
    else t.tag = "NN";
  }
}

std::string RuleTagger::lemma(const std::string& surface, const std::set<std::string>& accept) const {
  std::string w = to_lower(surface);
  auto it = lexicon_.find(w);
  if (it != lexicon_.end() && !it->second.lemma.empty()) return it->second.lemma;
  if (accept.count(w)) return w;
  auto try_cand = [&](const std::string& cand) { return accept.count(cand) ? cand : std::string(); };
  auto ends = [&](const char* suf) {
    std::string_view sv(suf);
    return w.size() > sv.size() && std::string_view(w).substr(w.size() - sv.size()) == sv;
  };
  std::string cand;
  if (ends("ies")) {
    if (!(cand = try_cand(w.substr(0, w.size() - 3) + "y")).empty()) return cand;
  }
  if (ends("es")) {
    if (!(cand = try_cand(w.substr(0, w.size() - 2))).empty()) return cand;
  }
  if (ends("s")) {
    if (!(cand = try_cand(w.substr(0, w.size() - 1))).empty()) return cand;
  }
  if (ends("ied")) {
    if (!(cand = try_cand(w.substr(0, w.size() - 3) + "y")).empty()) return cand;
  }
  if (ends("ed")) {
    std::string base = w.substr(0, w.size() - 2);
    if (!(cand = try_cand(base)).empty()) return cand;
    if (!(cand = try_cand(base + "e")).empty()) return cand;
    if (base.size() > 1 && base[base.size() - 1] == base[base.size() - 2]) {
      if (!(cand = try_cand(base.substr(0, base.size() - 1))).empty()) return cand;
    }
  }
  if (ends("ing")) {
    std::string base = w.substr(0, w.size() - 3);
    if (!(cand = try_cand(base)).empty()) return cand;
    if (!(cand = try_cand(base + "e")).empty()) return cand;
    if (base.size() > 1 && base[base.size() - 1] == base[base.size() - 2]) {
      if (!(cand = try_cand(base.substr(0, base.size() - 1))).empty()) return cand;
    }
  }
  return w;
}

TokenizedText analyze(std::string_view text, const PosTagger& tagger) {
  TokenizedText out;
  out.tokens = tokenize(text);
  tagger.tag(out.tokens);
  out.sentences = split_sentences(out.tokens);
  return out;
}

TokenizedText analyze_pretagged(const std::vector<std::pair<std::string, std::string>>& tagged) {
  TokenizedText out;
  std::size_t pos = 0;
  for (const auto& [surface, tag] : tagged) {
    Token t;
    t.surface = surface;
    t.tag = tag;
    t.begin = pos;
    t.end = pos + surface.size();
    pos = t.end + 1;
    out.tokens.push_back(std::move(t));
  }
  out.sentences = split_sentences(out.tokens);
  return out;
}

}  // namespace newscite::text
