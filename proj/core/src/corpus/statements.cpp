#include "newscite/corpus/statements.hpp"

#include <algorithm>
#include <cctype>

#include "newscite/common.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::corpus {

namespace {

bool is_fragment_delimiter(char c) {
  return c == ',' || c == '!' || c == ';' || c == ':' || c == '?';
}

std::pair<std::size_t, std::size_t> trimmed_range(const std::string& text, std::size_t begin,
                                                  std::size_t end) {
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return {begin, end};
}

}  // namespace

std::vector<Statement> extract_statements(const WikiArticle& article) {
  std::vector<Statement> out;
  for (std::size_t si = 0; si < article.sections.size(); ++si) {
    const Section& section = article.sections[si];
    for (std::size_t pi = 0; pi < section.paragraphs.size(); ++pi) {
      const Paragraph& p = section.paragraphs[pi];
      if (p.citations.empty()) continue;

      // group markers by offset: adjacent markers share a segment
      std::vector<Citation> sorted = p.citations;
      std::stable_sort(sorted.begin(), sorted.end(),
                       [](const Citation& a, const Citation& b) { return a.marker_offset < b.marker_offset; });

      std::size_t prev_end = 0;
      int ordinal = 0;
      std::size_t i = 0;
      while (i < sorted.size()) {
        std::size_t offset = sorted[i].marker_offset;
        std::vector<Citation> group;
        while (i < sorted.size() && sorted[i].marker_offset == offset) {
          if (sorted[i].category != CitationCategory::needed) group.push_back(sorted[i]);
          ++i;
        }
        auto [begin, end] = trimmed_range(p.text, prev_end, std::min(offset, p.text.size()));
        prev_end = offset;
        if (begin >= end) {
          // whitespace-only segment: the markers extend the previous statement
          if (!out.empty() && out.back().article_id == article.id &&
              out.back().section_index == static_cast<int>(si) &&
              out.back().paragraph_index == static_cast<int>(pi)) {
            for (auto& c : group) out.back().citations.push_back(std::move(c));
          }
          continue;
        }
        Statement st;
        st.article_id = article.id;
        st.section_heading = section.heading;
        st.section_index = static_cast<int>(si);
        st.paragraph_index = static_cast<int>(pi);
        st.span_begin = begin;
        st.span_end = end;
        st.text = p.text.substr(begin, end - begin);
        st.citations = std::move(group);
        for (const auto& a : p.anchors) {
          if (a.offset >= begin && a.offset < end) st.anchors.push_back(a);
        }
        st.id = article.id + "/" + std::to_string(si) + "/" + std::to_string(pi) + "/" +
                std::to_string(ordinal++);
        out.push_back(std::move(st));
      }
      // text after the last marker has no trailing citation and is skipped
    }
  }
  return out;
}

std::vector<Statement> extract_statements(const WikiCorpus& corpus) {
  std::vector<Statement> out;
  for (const auto& a : corpus.articles) {
    auto st = extract_statements(a);
    out.insert(out.end(), std::make_move_iterator(st.begin()), std::make_move_iterator(st.end()));
  }
  return out;
}

std::vector<Fragment> segment_fragments(const std::string& text,
                                        const std::vector<std::size_t>& marker_offsets) {
  std::vector<Fragment> out;
  if (trim(text).empty()) return out;

  auto tokens = text::tokenize(text);
  auto sentences = text::split_sentences(tokens);

  std::size_t cursor = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    std::size_t sent_end_char =
        (s + 1 == sentences.size()) ? text.size() : tokens[sentences[s].end_token - 1].end;
    // fragment boundaries: after each delimiter char inside the sentence
    std::vector<std::size_t> bounds;
    for (std::size_t c = cursor; c < sent_end_char; ++c) {
      if (!is_fragment_delimiter(text[c])) continue;
      // commas inside numbers do not split
      if (text[c] == ',' && c > 0 && c + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[c - 1])) &&
          std::isdigit(static_cast<unsigned char>(text[c + 1]))) {
        continue;
      }
      if (c + 1 < sent_end_char) bounds.push_back(c + 1);
    }
    bounds.push_back(sent_end_char);

    int in_sentence = 0;
    std::size_t frag_begin = cursor;
    for (std::size_t b : bounds) {
      if (b <= frag_begin) continue;
      auto [tb, te] = trimmed_range(text, frag_begin, b);
      if (tb >= te) {  // whitespace-only piece: merge into the previous fragment
        if (!out.empty()) out.back().span_end = b;
        frag_begin = b;
        continue;
      }
      Fragment f;
      f.sentence_index = static_cast<int>(s);
      f.index_in_sentence = in_sentence++;
      f.span_begin = frag_begin;
      f.span_end = b;
      std::size_t text_end = te;
      while (text_end > tb && is_fragment_delimiter(text[text_end - 1])) --text_end;
      while (text_end > tb && std::isspace(static_cast<unsigned char>(text[text_end - 1]))) --text_end;
      f.text = text.substr(tb, text_end - tb);
      out.push_back(std::move(f));
      frag_begin = b;
    }
    cursor = sent_end_char;
  }
  if (!out.empty()) {
    out.front().span_begin = 0;
    out.back().span_end = text.size();
  }
  for (std::size_t m : marker_offsets) {
    out[citing_fragment(out, m)].citation_markers.push_back(m);
  }
  return out;
}

std::vector<Fragment> segment_fragments(const Paragraph& paragraph) {
  std::vector<std::size_t> markers;
  for (const auto& c : paragraph.citations) markers.push_back(c.marker_offset);
  return segment_fragments(paragraph.text, markers);
}

std::size_t citing_fragment(const std::vector<Fragment>& fragments, std::size_t marker_offset) {
  if (fragments.empty()) throw Error("citing_fragment: no fragments");
  if (marker_offset == 0) return 0;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    if (marker_offset > fragments[i].span_begin && marker_offset <= fragments[i].span_end) return i;
  }
  return fragments.size() - 1;
}

}  // namespace newscite::corpus
