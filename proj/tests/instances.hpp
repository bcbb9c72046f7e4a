#ifndef TESTS_INSTANCES_HPP
#define TESTS_INSTANCES_HPP

// Seeded instance generators shared by the unit and acceptance tests.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

#include "coreset/metric.hpp"
#include "coreset/point_set.hpp"
#include "coreset/rng.hpp"

namespace instances {

inline double gauss(coreset::Rng& rng) {
  const double u = 1.0 - rng.uniform();  // (0, 1]
  const double v = rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// n points around k cluster centers spread over [0, 100]^dim.
inline coreset::PointSet gaussian_mixture(std::size_t n, std::size_t k, int dim, double spread,
                                          std::uint64_t seed, bool random_weights = false) {
  coreset::Rng rng(seed);
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), dim);
  for (Eigen::Index i = 0; i < centers.rows(); ++i) {
    for (int d = 0; d < dim; ++d) centers(i, d) = 100.0 * rng.uniform();
  }
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), dim);
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  for (Eigen::Index p = 0; p < pts.rows(); ++p) {
    const Eigen::Index c = static_cast<Eigen::Index>(rng.uniform_index(k));
    for (int d = 0; d < dim; ++d) pts(p, d) = centers(c, d) + spread * gauss(rng);
    w(p) = random_weights ? 0.25 + 2.0 * rng.uniform() : 1.0;
  }
  return coreset::PointSet(std::make_shared<coreset::EuclideanBackend>(std::move(pts)),
                           std::move(w));
}

// One heavy cluster at the origin plus k-1 tiny distant ones; the shape that
// defeats plain uniform sampling.
inline coreset::PointSet skew_instance(std::size_t n, std::size_t k, std::uint64_t seed) {
  coreset::Rng rng(seed);
  const std::size_t tiny = 3;
  const std::size_t heavy = n - (k - 1) * tiny;
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), 2);
  Eigen::Index row = 0;
  for (std::size_t p = 0; p < heavy; ++p, ++row) {
    pts(row, 0) = gauss(rng);
    pts(row, 1) = gauss(rng);
  }
  for (std::size_t c = 1; c < k; ++c) {
    for (std::size_t p = 0; p < tiny; ++p, ++row) {
      pts(row, 0) = 1000.0 * static_cast<double>(c) + 0.1 * gauss(rng);
      pts(row, 1) = 500.0 * static_cast<double>(c % 3) + 0.1 * gauss(rng);
    }
  }
  return coreset::PointSet(std::make_shared<coreset::EuclideanBackend>(std::move(pts)));
}

struct GraphInstance {
  std::shared_ptr<coreset::GraphShortestPathBackend> backend;
  std::vector<coreset::GraphShortestPathBackend::Edge> edges;
};

// Connected graph with small integer weights: a random spanning tree plus
// `extra` random edges. Integer weights keep path sums exact in doubles.
inline GraphInstance random_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  coreset::Rng rng(seed);
  std::vector<coreset::GraphShortestPathBackend::Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({rng.uniform_index(v), v, static_cast<double>(1 + rng.uniform_index(9))});
  }
  for (std::size_t e = 0; e < extra; ++e) {
    const std::size_t u = rng.uniform_index(n);
    std::size_t v = rng.uniform_index(n);
    if (u == v) v = (v + 1) % n;
    edges.push_back({u, v, static_cast<double>(1 + rng.uniform_index(9))});
  }
  return {std::make_shared<coreset::GraphShortestPathBackend>(n, edges), std::move(edges)};
}

inline coreset::PointSet graph_instance(std::size_t n, std::size_t extra, std::uint64_t seed) {
  return coreset::PointSet(random_graph(n, extra, seed).backend);
}

// Metric matrix with integer entries: shortest-path closure of a random
// complete graph with integer weights, so triangle checks are exact.
inline coreset::PointSet matrix_instance(std::size_t n, std::uint64_t seed) {
  coreset::Rng rng(seed);
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = static_cast<double>(2 + rng.uniform_index(30));
      d(i, j) = w;
      d(j, i) = w;
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d(i, j) = std::min(d(i, j), d(i, m) + d(m, j));
      }
    }
  }
  return coreset::PointSet(std::make_shared<coreset::ExplicitMatrixBackend>(std::move(d)));
}

inline std::vector<Eigen::MatrixXd> random_vertex_lists(std::size_t count,
                                                        std::size_t max_vertices, int dim,
                                                        std::uint64_t seed) {
  coreset::Rng rng(seed);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t verts = 1 + rng.uniform_index(max_vertices);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(verts), dim);
    for (Eigen::Index v = 0; v < m.rows(); ++v) {
      for (int d = 0; d < dim; ++d) m(v, d) = 10.0 * rng.uniform();
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline coreset::PointSet curves_instance(std::size_t count, std::size_t max_vertices,
                                         std::uint64_t seed) {
  return coreset::PointSet(std::make_shared<coreset::DiscreteFrechetBackend>(
      random_vertex_lists(count, max_vertices, 2, seed)));
}

inline coreset::PointSet sets_instance(std::size_t count, std::size_t max_vertices,
                                       std::uint64_t seed) {
  return coreset::PointSet(std::make_shared<coreset::HausdorffBackend>(
      random_vertex_lists(count, max_vertices, 2, seed)));
}

// One modest instance per backend kind, for cross-backend property sweeps.
inline std::vector<coreset::PointSet> all_backends(std::uint64_t seed) {
  return {gaussian_mixture(60, 3, 2, 2.0, seed),
          matrix_instance(40, seed + 1),
          graph_instance(50, 60, seed + 2),
          curves_instance(30, 5, seed + 3),
          sets_instance(30, 4, seed + 4)};
}

}  // namespace instances

#endif  // TESTS_INSTANCES_HPP
