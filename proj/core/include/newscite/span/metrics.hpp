// metrics.hpp
// Span evaluation: MAP / R / F1 with per-entity averaging and the erroneous
// span ratios (extra words / extra fragments relative to the gold span, raw
// and unclamped, so values above 100% are possible).

#pragma once

#include <string>
#include <vector>

#include "newscite/span/instance.hpp"

namespace newscite::span {

struct SpanMetrics {
  double map = 0;
  double recall = 0;
  double f1 = 0;        // harmonic mean of the entity-averaged MAP and R
  double delta_words = 0;
  double delta_fragments = 0;
};

struct ScoredInstance {
  const SpanInstance* instance;
  SpanPrediction prediction;
};

// Gold labels must be present on every instance; instances group by entity.
SpanMetrics span_metrics(const std::vector<ScoredInstance>& scored);

// span(c, p): sum over sentences of the covered-fragment fraction.
double span_ratio(const SpanInstance& instance, const std::vector<std::size_t>& covered);

// Buckets: <= 0.5, (0.5, 1], (1, 2], (2, 5], > 5 -> indices 0..4.
int span_bucket(double ratio);

}  // namespace newscite::span
