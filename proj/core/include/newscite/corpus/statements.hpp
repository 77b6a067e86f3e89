// statements.hpp
// Statement extraction (inter-citation-marker segments) and sub-sentence
// fragment segmentation at the {, ! ; : ?} delimiters.

#pragma once

#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"

namespace newscite::corpus {

std::vector<Statement> extract_statements(const WikiArticle& article);
std::vector<Statement> extract_statements(const WikiCorpus& corpus);

struct Fragment {
  int sentence_index = 0;
  int index_in_sentence = 0;
  std::size_t span_begin = 0;  // covering spans partition the paragraph text
  std::size_t span_end = 0;
  std::string text;            // trimmed, trailing delimiter stripped
  std::vector<std::size_t> citation_markers;  // offsets of markers inside this fragment
};

// A marker at offset m belongs to the fragment with span_begin < m <= span_end
// (markers sit after the text they close); offset 0 goes to the first fragment.
std::vector<Fragment> segment_fragments(const Paragraph& paragraph);
std::vector<Fragment> segment_fragments(const std::string& text,
                                        const std::vector<std::size_t>& marker_offsets = {});

// Index of the fragment containing a marker offset.
std::size_t citing_fragment(const std::vector<Fragment>& fragments, std::size_t marker_offset);

}  // namespace newscite::corpus
