#include "newscite/span/features.hpp"

#include <cmath>

#include "newscite/text/similarity.hpp"
#include "newscite/text/temporal.hpp"
#include "newscite/text/window_lm.hpp"

namespace newscite::span {

namespace {
std::vector<std::string> fragment_words(const corpus::Fragment& f) {
  std::vector<std::string> out;
  for (const auto& tok : text::tokenize(f.text)) {
    if (std::isalnum(static_cast<unsigned char>(tok.surface[0]))) out.push_back(newscite::to_lower(tok.surface));
  }
  return out;
}
}  // namespace

SpanInstance SpanInstance::build(const std::string& paragraph_id, const std::string& entity_id,
                                 const corpus::Paragraph& paragraph, const corpus::Citation& citation,
                                 const corpus::NewsArticle* content) {
  SpanInstance inst;
  inst.paragraph_id = paragraph_id;
  inst.entity_id = entity_id;
  inst.paragraph_text = paragraph.text;
  inst.fragments = corpus::segment_fragments(paragraph);
  inst.citation = citation;
  inst.citing_fragment = corpus::citing_fragment(inst.fragments, citation.marker_offset);
  if (content) {
    for (const auto& p : content->paragraphs) {
      std::vector<std::string> words;
      for (const auto& tok : text::tokenize(p)) {
        if (std::isalnum(static_cast<unsigned char>(tok.surface[0]))) words.push_back(newscite::to_lower(tok.surface));
      }
      inst.citation_paragraphs.push_back(std::move(words));
      auto toks = text::tokenize(p);
      inst.citation_sentence_count += static_cast<int>(text::split_sentences(toks).size());
    }
  }
  return inst;
}

std::vector<ml::FeatureVector> span_features(const SpanInstance& instance,
                                             const SpanFeatureContext& ctx) {
  const auto& fragments = instance.fragments;
  std::vector<ml::FeatureVector> out(fragments.size());

  int num_sentences = fragments.empty() ? 0 : fragments.back().sentence_index + 1;
  bool has_content = !instance.citation_paragraphs.empty();
  int citing_sentence = fragments.empty() ? 0 : fragments[instance.citing_fragment].sentence_index;

  std::vector<std::vector<text::TemporalMention>> temporals(fragments.size());
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    temporals[i] = text::extract_temporal_mentions(fragments[i].text);
  }

  for (std::size_t i = 0; i < fragments.size(); ++i) {
    ml::FeatureVector& fv = out[i];
    const corpus::Fragment& frag = fragments[i];

    // structural
    int other_citations = 0;
    for (std::size_t m : frag.citation_markers) {
      if (m != instance.citation.marker_offset) ++other_citations;
    }
    fv["f_other_citations"] = other_citations;
    fv["f_num_sentences"] = num_sentences;
    fv["f_length"] = static_cast<double>(frag.text.size());
    fv["f_same_sentence"] = frag.sentence_index == citing_sentence ? 1.0 : 0.0;
    if (i > 0) {
      fv["f_same_sentence_as_prev"] =
          frag.sentence_index == fragments[i - 1].sentence_index ? 1.0 : 0.0;
    }
    fv["f_citing_distance"] = std::fabs(static_cast<double>(i) -
                                        static_cast<double>(instance.citing_fragment));

    // citation content
    fv["f_content_present"] = has_content ? 1.0 : 0.0;
    if (has_content) {
      auto words = fragment_words(frag);
      fv["f_lm"] = text::window_lm_similarity(words, instance.citation_paragraphs);
      std::set<std::string> word_set(words.begin(), words.end());
      double best_j = 0;
      for (const auto& para : instance.citation_paragraphs) {
        std::set<std::string> para_set(para.begin(), para.end());
        best_j = std::max(best_j, text::jaccard(word_set, para_set));
      }
      fv["f_jaccard"] = best_j;
      fv["f_cite_sentences"] = instance.citation_sentence_count;
    }

    // discourse: cue position decides the owning fragment, which is exactly
    // what matching inside the fragment text gives
    auto toks = text::tokenize(frag.text);
    for (auto sense : ctx.discourse->senses(toks)) {
      fv["f_disc_" + text::to_string(sense)] = 1.0;
    }

    // temporal difference to the previous fragment
    if (i > 0 && !temporals[i].empty() && !temporals[i - 1].empty()) {
      fv["f_temporal_present"] = 1.0;
      fv["f_temporal_gap"] = static_cast<double>(
          std::llabs(text::day_difference(temporals[i - 1].front(), temporals[i].front())));
    } else {
      fv["f_temporal_present"] = 0.0;
    }
  }
  return out;
}

}  // namespace newscite::span
