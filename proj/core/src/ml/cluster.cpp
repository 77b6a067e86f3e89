#include "newscite/ml/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "newscite/common.hpp"

namespace newscite::ml {

double squared_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

void assign_points(const std::vector<Point>& points, Clustering& c) {
  std::size_t k = c.centroids.size();
  c.assignment.assign(points.size(), 0);
  c.rss_per_cluster.assign(k, 0.0);
  c.rss_total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    int best = 0;
    double best_d = squared_distance(points[i], c.centroids[0]);
    for (std::size_t j = 1; j < k; ++j) {
      double d = squared_distance(points[i], c.centroids[j]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    c.assignment[i] = best;
    c.rss_per_cluster[static_cast<std::size_t>(best)] += best_d;
    c.rss_total += best_d;
  }
}

void update_centroids(const std::vector<Point>& points, Clustering& c) {
  std::size_t k = c.centroids.size();
  std::size_t dim = points[0].size();
  std::vector<Point> sums(k, Point(dim, 0.0));
  std::vector<int> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto ci = static_cast<std::size_t>(c.assignment[i]);
    counts[ci] += 1;
    for (std::size_t d = 0; d < dim; ++d) sums[ci][d] += points[i][d];
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] > 0) {
      for (std::size_t d = 0; d < dim; ++d) c.centroids[j][d] = sums[j][d] / counts[j];
    } else {
      // empty cluster: reseed to the point farthest from its centroid
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        double d = squared_distance(points[i], c.centroids[static_cast<std::size_t>(c.assignment[i])]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      c.centroids[j] = points[far];
    }
  }
}

Clustering lloyd(const std::vector<Point>& points, std::vector<Point> init_centroids, int max_iters) {
  Clustering c;
  c.centroids = std::move(init_centroids);
  assign_points(points, c);
  c.rss_history.push_back(c.rss_total);
  std::vector<int> prev;
  for (int iter = 0; iter < max_iters; ++iter) {
    prev = c.assignment;
    update_centroids(points, c);
    assign_points(points, c);
    c.rss_history.push_back(c.rss_total);
    if (c.assignment == prev) break;
  }
  return c;
}

}  // namespace

Clustering kmeans(const std::vector<Point>& points, int k, std::uint64_t seed, int max_iters) {
  if (k < 1) throw Error("kmeans: k must be >= 1");
  if (points.size() < static_cast<std::size_t>(k)) throw Error("kmeans: fewer points than k");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Point> init;
  init.reserve(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < order.size() && init.size() < static_cast<std::size_t>(k); ++i) {
    init.push_back(points[order[i]]);
  }
  return lloyd(points, std::move(init), max_iters);
}

double clustering_bic(const std::vector<Point>& points, const Clustering& clustering) {
  double n = static_cast<double>(points.size());
  double k = static_cast<double>(clustering.centroids.size());
  double dim = static_cast<double>(points[0].size());
  std::vector<double> cluster_sizes(clustering.centroids.size(), 0.0);
  for (int a : clustering.assignment) cluster_sizes[static_cast<std::size_t>(a)] += 1.0;

  double variance = n > k ? clustering.rss_total / (n - k) : 0.0;
  variance = std::max(variance, 1e-12);

  double ll = 0.0;
  ll += -0.5 * n * dim * std::log(2.0 * M_PI * variance);
  ll += -clustering.rss_total / (2.0 * variance);
  for (double sz : cluster_sizes) {
    if (sz > 0) ll += sz * std::log(sz / n);
  }
  double params = (k - 1.0) + dim * k + 1.0;
  return ll - 0.5 * params * std::log(n);
}

Clustering xmeans(const std::vector<Point>& points, int kmin, int kmax, std::uint64_t seed) {
  if (kmin < 1 || kmin > kmax) throw Error("xmeans: need 1 <= kmin <= kmax");
  if (points.size() < static_cast<std::size_t>(kmin)) throw Error("xmeans: fewer points than kmin");
  kmax = std::min<int>(kmax, static_cast<int>(points.size()));

  Clustering current = kmeans(points, kmin, derive_seed(seed, 0));
  std::uint64_t round = 1;
  for (;;) {
    int k = static_cast<int>(current.centroids.size());
    if (k >= kmax) break;

    std::vector<Point> next_centroids;
    bool split_any = false;
    for (std::size_t j = 0; j < current.centroids.size(); ++j) {
      std::vector<Point> members;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (current.assignment[i] == static_cast<int>(j)) members.push_back(points[i]);
      }
      bool can_split = members.size() >= 4 &&
                       static_cast<int>(next_centroids.size()) + 2 +
                               static_cast<int>(current.centroids.size() - j - 1) <= kmax;
      if (!can_split) {
        next_centroids.push_back(current.centroids[j]);
        continue;
      }
      Clustering parent;
      parent.centroids = {current.centroids[j]};
      assign_points(members, parent);
      Clustering children = kmeans(members, 2, derive_seed(seed, round * 1000 + j));
      if (clustering_bic(members, children) > clustering_bic(members, parent)) {
        next_centroids.push_back(children.centroids[0]);
        next_centroids.push_back(children.centroids[1]);
        split_any = true;
      } else {
        next_centroids.push_back(current.centroids[j]);
      }
    }
    if (!split_any) break;
    current = lloyd(points, std::move(next_centroids), 100);
    ++round;
  }
  return current;
}

}  // namespace newscite::ml
