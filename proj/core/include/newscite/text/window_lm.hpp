// window_lm.hpp
// Moving-window language models: each token contributes its +/-3-word context
// window; a text's model is the normalized frequency over all its windows.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace newscite::text {

struct WindowModel {
  std::map<std::string, double> prob;  // normalized relative frequencies
};

WindowModel window_model(const std::vector<std::string>& tokens, int window = 3);

// KL(fragment_model || paragraph_model) with symmetric epsilon smoothing over
// the union vocabulary; 0 for identical token streams.
double window_kl(const WindowModel& fragment, const WindowModel& paragraph);

// min over candidate paragraphs of window_kl(fragment, paragraph).
// Returns `missing_content_score` when there are no paragraphs.
inline constexpr double missing_content_score = 1.0e9;
double window_lm_similarity(const std::vector<std::string>& fragment_tokens,
                            const std::vector<std::vector<std::string>>& citation_paragraphs,
                            int window = 3);

}  // namespace newscite::text
