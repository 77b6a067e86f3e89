#include "newscite/ml/pagerank.hpp"

#include <cmath>

namespace newscite::ml {

std::vector<double> pagerank(const std::vector<std::vector<int>>& out_edges, double damping,
                             double tol, int max_iters) {
  std::size_t n = out_edges.size();
  if (n == 0) return {};
  std::vector<double> pr(n, 1.0 / static_cast<double>(n)), next(n, 0.0);
  for (int iter = 0; iter < max_iters; ++iter) {
    double dangling = 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (out_edges[i].empty()) {
        dangling += pr[i];
      } else {
        double share = pr[i] / static_cast<double>(out_edges[i].size());
        for (int t : out_edges[i]) next[static_cast<std::size_t>(t)] += share;
      }
    }
    double base = (1.0 - damping) / static_cast<double>(n) +
                  damping * dangling / static_cast<double>(n);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = base + damping * next[i];
      delta += std::fabs(next[i] - pr[i]);
    }
    pr.swap(next);
    if (delta < tol) break;
  }
  // exact renormalization against drift
  double total = 0.0;
  for (double v : pr) total += v;
  for (double& v : pr) v /= total;
  return pr;
}

}  // namespace newscite::ml
