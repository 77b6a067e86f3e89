// info_gain.hpp
// Information gain IG(f) = H(Y) - H(Y|f) in bits, over equal-frequency
// discretized feature values.

#pragma once

#include <string>
#include <vector>

#include "newscite/ml/dataset.hpp"

namespace newscite::ml {

double information_gain(const Dataset& data, int feature, int bins = 10);

// All features ranked by IG descending, ties by feature name.
std::vector<std::pair<std::string, double>> rank_features(const Dataset& data, int bins = 10);

}  // namespace newscite::ml
