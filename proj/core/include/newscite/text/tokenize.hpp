// tokenize.hpp
// Tokenization, sentence splitting and the pluggable POS tagger.
// The bundled tagger is a closed-class lexicon plus suffix rules; corpora may
// instead carry gold tags through the pre-tagged path.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace newscite::text {

struct Token {
  std::string surface;
  std::string tag;
  std::size_t begin = 0;  // char span in the source text
  std::size_t end = 0;
};

struct SentenceRange {
  std::size_t first_token = 0;  // [first_token, end_token)
  std::size_t end_token = 0;
};

struct TokenizedText {
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;

  std::vector<std::string> surfaces() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.surface);
    return out;
  }
  std::vector<std::string> lowered_words() const;
  std::size_t sentence_of_token(std::size_t token_index) const;
};

// Raw tokens with char spans, no tags, no sentence split.
std::vector<Token> tokenize(std::string_view text);

// Sentence boundaries over a token stream: a sentence ends at . ! ? when the
// next token starts upper-case / digit / quote, or at end of input.
std::vector<SentenceRange> split_sentences(const std::vector<Token>& tokens);

class PosTagger {
public:
  virtual ~PosTagger() = default;
  virtual void tag(std::vector<Token>& tokens) const = 0;
};

// Lexicon entries: surface (lower-cased) -> tag, optional lemma.
class RuleTagger final : public PosTagger {
public:
  struct LexEntry {
    std::string tag;
    std::string lemma;  // empty = surface is its own lemma
  };

  RuleTagger();  // built-in closed-class defaults
  explicit RuleTagger(const std::string& lexicon_path);

  void tag(std::vector<Token>& tokens) const override;

  // Crude verb lemma: irregular map first, then -s/-es/-ed/-ing stripping
  // with undoubling and +e restoration tried against `accept`.
  std::string lemma(const std::string& surface,
                    const std::set<std::string>& accept) const;

  const std::map<std::string, LexEntry>& lexicon() const { return lexicon_; }

private:
  void load_defaults();
  std::map<std::string, LexEntry> lexicon_;
};

// Tokenize + sentence-split + tag in one pass.
TokenizedText analyze(std::string_view text, const PosTagger& tagger);

// Identity path for corpora that carry gold tags.
TokenizedText analyze_pretagged(const std::vector<std::pair<std::string, std::string>>& tagged);

}  // namespace newscite::text
