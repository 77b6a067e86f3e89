// pagerank.hpp
// Power-iteration PageRank over a directed graph; dangling mass is
// redistributed uniformly; scores sum to 1.

#pragma once

#include <vector>

namespace newscite::ml {

// out_edges[i] = targets of node i.
std::vector<double> pagerank(const std::vector<std::vector<int>>& out_edges, double damping = 0.85,
                             double tol = 1e-9, int max_iters = 1000);

}  // namespace newscite::ml
