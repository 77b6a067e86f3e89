#include "newscite/text/discourse.hpp"

#include <fstream>

#include "newscite/common.hpp"

namespace newscite::text {

std::string to_string(DiscourseSense s) {
  switch (s) {
    case DiscourseSense::temporal: return "temporal";
    case DiscourseSense::contingency: return "contingency";
    case DiscourseSense::comparison: return "comparison";
    case DiscourseSense::expansion: return "expansion";
  }
  return "?";
}

namespace {
DiscourseSense parse_sense(const std::string& s) {
  if (s == "temporal") return DiscourseSense::temporal;
  if (s == "contingency") return DiscourseSense::contingency;
  if (s == "comparison") return DiscourseSense::comparison;
  if (s == "expansion") return DiscourseSense::expansion;
  throw Error("unknown discourse sense: " + s);
}
}  // namespace

DiscourseLexicon::DiscourseLexicon() { load_defaults(); }

DiscourseLexicon::DiscourseLexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open discourse lexicon: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != 2) throw Error("bad discourse lexicon line: " + line);
    add(parts[0], parse_sense(trim(parts[1])));
  }
}

void DiscourseLexicon::add(const std::string& cue, DiscourseSense sense) {
  std::vector<std::string> key;
  for (auto& w : split(to_lower(cue), ' ')) {
    if (!w.empty()) key.push_back(w);
  }
  if (key.empty()) return;
  max_len_ = std::max(max_len_, key.size());
  cues_[key] = sense;
}

void DiscourseLexicon::load_defaults() {
  auto T = DiscourseSense::temporal;
  auto G = DiscourseSense::contingency;
  auto C = DiscourseSense::comparison;
  auto E = DiscourseSense::expansion;
  const std::pair<const char*, DiscourseSense> defaults[] = {
      {"after", T},        {"before", T},       {"when", T},          {"then", T},
      {"until", T},        {"meanwhile", T},    {"afterwards", T},    {"previously", T},
      {"later", T},        {"since", T},        {"subsequently", T},  {"earlier", T},
      {"because", G},      {"therefore", G},    {"thus", G},          {"consequently", G},
      {"hence", G},        {"so that", G},      {"as a result", G},   {"accordingly", G},
      {"if", G},           {"unless", G},
      {"however", C},      {"but", C},          {"although", C},      {"though", C},
      {"whereas", C},      {"in contrast", C},  {"nevertheless", C},  {"on the other hand", C},
      {"nonetheless", C},  {"instead", C},      {"rather", C},        {"conversely", C},
      {"also", E},         {"furthermore", E},  {"moreover", E},      {"in addition", E},
      {"for example", E},  {"for instance", E}, {"additionally", E},  {"besides", E},
      {"in fact", E},      {"indeed", E},
  };
  for (auto& [cue, sense] : defaults) add(cue, sense);
}

std::vector<DiscourseCueMatch> DiscourseLexicon::match(const std::vector<Token>& tokens) const {
  std::vector<DiscourseCueMatch> out;
  std::vector<std::string> low;
  low.reserve(tokens.size());
  for (const auto& t : tokens) low.push_back(to_lower(t.surface));
  for (std::size_t i = 0; i < low.size(); ++i) {
    for (std::size_t len = std::min(max_len_, low.size() - i); len >= 1; --len) {
      std::vector<std::string> key(low.begin() + static_cast<long>(i),
                                   low.begin() + static_cast<long>(i + len));
      auto it = cues_.find(key);
      if (it != cues_.end()) {
        std::string cue = key[0];
        for (std::size_t k = 1; k < key.size(); ++k) cue += " " + key[k];
        out.push_back({cue, it->second, i, len});
        i += len - 1;
        break;
      }
    }
  }
  return out;
}

std::set<DiscourseSense> DiscourseLexicon::senses(const std::vector<Token>& tokens) const {
  std::set<DiscourseSense> out;
  for (const auto& m : match(tokens)) out.insert(m.sense);
  return out;
}

std::set<DiscourseSense> annotate_discourse(std::string_view sentence, const DiscourseLexicon& lex) {
  return lex.senses(tokenize(sentence));
}

}  // namespace newscite::text
