// features.hpp
// Per-fragment factor features: structural, citation-content, discourse and
// temporal. No-content mode disables the citation features behind a presence
// indicator so the model shape stays fixed.

#pragma once

#include <vector>

#include "newscite/ml/dataset.hpp"
#include "newscite/span/instance.hpp"
#include "newscite/text/discourse.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::span {

struct SpanFeatureContext {
  const text::RuleTagger* tagger = nullptr;
  const text::DiscourseLexicon* discourse = nullptr;
};

std::vector<ml::FeatureVector> span_features(const SpanInstance& instance,
                                             const SpanFeatureContext& ctx);

}  // namespace newscite::span
