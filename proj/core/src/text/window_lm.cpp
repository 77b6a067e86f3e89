#include "newscite/text/window_lm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace newscite::text {

WindowModel window_model(const std::vector<std::string>& tokens, int window) {
  WindowModel m;
  double total = 0;
  long n = static_cast<long>(tokens.size());
  for (long i = 0; i < n; ++i) {
    long lo = std::max(0l, i - window);
    long hi = std::min(n - 1, i + window);
    for (long j = lo; j <= hi; ++j) {
      m.prob[tokens[static_cast<std::size_t>(j)]] += 1.0;
      total += 1.0;
    }
  }
  if (total > 0) {
    for (auto& [w, p] : m.prob) p /= total;
  }
  return m;
}

double window_kl(const WindowModel& fragment, const WindowModel& paragraph) {
  std::set<std::string> uni;
  for (const auto& [w, p] : fragment.prob) uni.insert(w);
  for (const auto& [w, p] : paragraph.prob) uni.insert(w);
  if (uni.empty()) return 0.0;
  const double eps = 1e-12;
  double v = static_cast<double>(uni.size());
  auto smoothed = [&](const WindowModel& m, const std::string& w) {
    auto it = m.prob.find(w);
    double p = it == m.prob.end() ? 0.0 : it->second;
    return (1.0 - eps) * p + eps / v;
  };
  double kl = 0.0;
  for (const auto& w : uni) {
    double p = smoothed(fragment, w);
    double q = smoothed(paragraph, w);
    if (p > 0) kl += p * std::log(p / q);
  }
  return std::max(kl, 0.0);
}

double window_lm_similarity(const std::vector<std::string>& fragment_tokens,
                            const std::vector<std::vector<std::string>>& citation_paragraphs,
                            int window) {
  if (citation_paragraphs.empty()) return missing_content_score;
  WindowModel frag = window_model(fragment_tokens, window);
  double best = missing_content_score;
  for (const auto& p : citation_paragraphs) {
    best = std::min(best, window_kl(frag, window_model(p, window)));
  }
  return best;
}

}  // namespace newscite::text
