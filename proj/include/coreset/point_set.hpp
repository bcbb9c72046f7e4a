#ifndef CORESET_POINT_SET_HPP
#define CORESET_POINT_SET_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "coreset/metric.hpp"
#include "coreset/summation.hpp"

namespace coreset {

inline double pow_z(double d, int z) {
  switch (z) {
    case 1:
      return d;
    case 2:
      return d * d;
    case 3:
      return d * d * d;
    default: {
      double r = 1.0;
      for (int i = 0; i < z; ++i) r *= d;
      return r;
    }
  }
}

// A weighted point set over a metric backend. Points are the backend's
// indices 0..n-1; weights default to 1.
struct PointSet {
  std::shared_ptr<const MetricBackend> metric;
  Eigen::VectorXd weights;

  PointSet() = default;
  explicit PointSet(std::shared_ptr<const MetricBackend> m)
      : metric(std::move(m)), weights(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(metric->size()))) {}
  PointSet(std::shared_ptr<const MetricBackend> m, Eigen::VectorXd w)
      : metric(std::move(m)), weights(std::move(w)) {}

  std::size_t size() const { return metric ? metric->size() : 0; }
  double weight(std::size_t i) const { return weights(static_cast<Eigen::Index>(i)); }
  double total_weight() const {
    KahanSum s;
    for (Eigen::Index i = 0; i < weights.size(); ++i) s.add(weights(i));
    return s.value();
  }

  double dist(std::size_t i, std::size_t j) const { return metric->dist(i, j); }
};

// min_{c in centers} dist(p, c)^z; does not include the point's weight.
inline double point_cost(const PointSet& ps, std::size_t p, std::span<const std::size_t> centers,
                         int z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c : centers) {
    const double d = ps.metric->dist(p, c);
    if (d < best) best = d;
  }
  return pow_z(best, z);
}

// sum_{p in subset} w(p) * point_cost(p); deterministic left-to-right order.
inline double subset_cost(const PointSet& ps, std::span<const std::size_t> subset,
                          std::span<const std::size_t> centers, int z) {
  KahanSum s;
  for (std::size_t p : subset) {
    s.add(ps.weight(p) * point_cost(ps, p, centers, z));
  }
  return s.value();
}

inline double set_cost(const PointSet& ps, std::span<const std::size_t> centers, int z) {
  KahanSum s;
  const std::size_t n = ps.size();
  for (std::size_t p = 0; p < n; ++p) {
    s.add(ps.weight(p) * point_cost(ps, p, centers, z));
  }
  return s.value();
}

// Cost of an externally weighted index list, e.g. a coreset.
inline double weighted_cost(const PointSet& ps, std::span<const std::size_t> indices,
                            std::span<const double> weights, std::span<const std::size_t> centers,
                            int z) {
  KahanSum s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    s.add(weights[i] * point_cost(ps, indices[i], centers, z));
  }
  return s.value();
}

}  // namespace coreset

#endif  // CORESET_POINT_SET_HPP
