#ifndef CORESET_METRIC_HPP
#define CORESET_METRIC_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

namespace coreset {

// Distance between two polygonal curves (rows = vertices) under the discrete
// Frechet metric: min over monotone traversals of the max vertex distance.
double discrete_frechet(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Symmetric Hausdorff distance between two finite point sets (rows = points).
double hausdorff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Abstract metric over a fixed index set {0, ..., size()-1}. Implementations
// must be symmetric with zero diagonal; the triangle inequality is assumed
// and can be spot checked via check_power_triangle in eval.hpp.
class MetricBackend {
 public:
  virtual ~MetricBackend() = default;
  virtual double dist(std::size_t i, std::size_t j) const = 0;
  virtual std::size_t size() const = 0;
  virtual std::string name() const = 0;
};

// Points are rows of a dense matrix, distance is the Euclidean norm.
class EuclideanBackend final : public MetricBackend {
 public:
  explicit EuclideanBackend(Eigen::MatrixXd points);
  double dist(std::size_t i, std::size_t j) const override;
  std::size_t size() const override { return static_cast<std::size_t>(points_.rows()); }
  std::string name() const override { return "euclidean"; }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::Index dim() const { return points_.cols(); }

 private:
  Eigen::MatrixXd points_;
};

// Distances given verbatim as a symmetric matrix with zero diagonal.
class ExplicitMatrixBackend final : public MetricBackend {
 public:
  // Throws std::invalid_argument on asymmetry, nonzero diagonal, or
  // negative entries.
  explicit ExplicitMatrixBackend(Eigen::MatrixXd d);
  double dist(std::size_t i, std::size_t j) const override;
  std::size_t size() const override { return static_cast<std::size_t>(d_.rows()); }
  std::string name() const override { return "matrix"; }

 private:
  Eigen::MatrixXd d_;
};

// Shortest path metric of an undirected weighted graph. Rows of the distance
// matrix are computed on demand with Dijkstra and cached; safe to query from
// multiple threads.
class GraphShortestPathBackend final : public MetricBackend {
 public:
  struct Edge {
    std::size_t u, v;
    double w;
  };

  GraphShortestPathBackend(std::size_t n, const std::vector<Edge>& edges);
  double dist(std::size_t i, std::size_t j) const override;
  std::size_t size() const override { return n_; }
  std::string name() const override { return "graph"; }

  // True when every vertex is reachable from vertex 0.
  bool connected() const;
  // Fill the whole cache up front (one Dijkstra per vertex).
  void precompute_all() const;

 private:
  const std::vector<double>& row(std::size_t src) const;

  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
  mutable std::vector<std::vector<double>> rows_;
  mutable std::vector<char> row_ready_;
  mutable std::shared_mutex mutex_;
};

// Each element is a polygonal curve, compared under discrete Frechet.
class DiscreteFrechetBackend final : public MetricBackend {
 public:
  explicit DiscreteFrechetBackend(std::vector<Eigen::MatrixXd> curves);
  double dist(std::size_t i, std::size_t j) const override;
  std::size_t size() const override { return curves_.size(); }
  std::string name() const override { return "frechet"; }
  const std::vector<Eigen::MatrixXd>& curves() const { return curves_; }

 private:
  std::vector<Eigen::MatrixXd> curves_;
};

// Each element is a finite point set, compared under Hausdorff distance.
class HausdorffBackend final : public MetricBackend {
 public:
  explicit HausdorffBackend(std::vector<Eigen::MatrixXd> sets);
  double dist(std::size_t i, std::size_t j) const override;
  std::size_t size() const override { return sets_.size(); }
  std::string name() const override { return "hausdorff"; }
  const std::vector<Eigen::MatrixXd>& sets() const { return sets_; }

 private:
  std::vector<Eigen::MatrixXd> sets_;
};

}  // namespace coreset

#endif  // CORESET_METRIC_HPP
