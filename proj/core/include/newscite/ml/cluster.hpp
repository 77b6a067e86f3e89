// cluster.hpp
// Lloyd k-means and x-means with BIC-scored 2-way splits under a
// spherical-Gaussian likelihood (pooled ML variance, n - k dof).

#pragma once

#include <cstdint>
#include <vector>

namespace newscite::ml {

using Point = std::vector<double>;

struct Clustering {
  std::vector<Point> centroids;
  std::vector<int> assignment;        // per point
  std::vector<double> rss_per_cluster;
  double rss_total = 0.0;
  std::vector<double> rss_history;    // RSS after each Lloyd iteration
};

Clustering kmeans(const std::vector<Point>& points, int k, std::uint64_t seed, int max_iters = 100);

// BIC of a clustering over its own points.
double clustering_bic(const std::vector<Point>& points, const Clustering& clustering);

Clustering xmeans(const std::vector<Point>& points, int kmin, int kmax, std::uint64_t seed);

double squared_distance(const Point& a, const Point& b);

}  // namespace newscite::ml
