#include "coreset/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace coreset {

double discrete_frechet(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  if (n == 0 || m == 0) {
    throw std::invalid_argument("discrete_frechet: empty curve");
  }
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("discrete_frechet: dimension mismatch");
  }
  // Rolling one-row DP: dp[j] holds the coupling cost for prefix pair (i, j).
  std::vector<double> dp(static_cast<std::size_t>(m));
  std::vector<double> prev(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::swap(dp, prev);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = (a.row(i) - b.row(j)).norm();
      double reach;
      if (i == 0 && j == 0) {
        reach = d;
      } else if (i == 0) {
        reach = std::max(dp[j - 1], d);
      } else if (j == 0) {
        reach = std::max(prev[0], d);
      } else {
        reach = std::max(std::min({prev[j - 1], prev[j], dp[j - 1]}), d);
      }
      dp[static_cast<std::size_t>(j)] = reach;
    }
  }
  return dp[static_cast<std::size_t>(m - 1)];
}

namespace {

double directed_hausdorff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      best = std::min(best, (a.row(i) - b.row(j)).norm());
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() == 0 || b.rows() == 0) {
    throw std::invalid_argument("hausdorff: empty set");
  }
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("hausdorff: dimension mismatch");
  }
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

EuclideanBackend::EuclideanBackend(Eigen::MatrixXd points) : points_(std::move(points)) {}

double EuclideanBackend::dist(std::size_t i, std::size_t j) const {
  return (points_.row(static_cast<Eigen::Index>(i)) - points_.row(static_cast<Eigen::Index>(j)))
      .norm();
}

ExplicitMatrixBackend::ExplicitMatrixBackend(Eigen::MatrixXd d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) {
    throw std::invalid_argument("matrix backend: matrix is not square");
  }
  for (Eigen::Index i = 0; i < d_.rows(); ++i) {
    if (d_(i, i) != 0.0) {
      throw std::invalid_argument("matrix backend: nonzero diagonal");
    }
    for (Eigen::Index j = i + 1; j < d_.cols(); ++j) {
      if (d_(i, j) != d_(j, i)) {
        throw std::invalid_argument("matrix backend: asymmetric entries");
      }
      if (d_(i, j) < 0.0 || !std::isfinite(d_(i, j))) {
        throw std::invalid_argument("matrix backend: invalid distance");
      }
    }
  }
}

double ExplicitMatrixBackend::dist(std::size_t i, std::size_t j) const {
  return d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

GraphShortestPathBackend::GraphShortestPathBackend(std::size_t n, const std::vector<Edge>& edges)
    : n_(n), adj_(n), rows_(n), row_ready_(n, 0) {
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("graph backend: vertex index out of range");
    }
    if (e.w < 0.0 || !std::isfinite(e.w)) {
      throw std::invalid_argument("graph backend: invalid edge weight");
    }
    adj_[e.u].emplace_back(e.v, e.w);
    adj_[e.v].emplace_back(e.u, e.w);
  }
}

const std::vector<double>& GraphShortestPathBackend::row(std::size_t src) const {
  {
    std::shared_lock lock(mutex_);
    if (row_ready_[src]) return rows_[src];
  }
  // Dijkstra with a binary heap; recomputing on a lost race is harmless.
  std::vector<double> d(n_, std::numeric_limits<double>::infinity());
  d[src] = 0.0;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > d[u]) continue;
    for (auto [v, w] : adj_[u]) {
      const double dv = du + w;
      if (dv < d[v]) {
        d[v] = dv;
        heap.emplace(dv, v);
      }
    }
  }
  std::unique_lock lock(mutex_);
  if (!row_ready_[src]) {
    rows_[src] = std::move(d);
    row_ready_[src] = 1;
  }
  return rows_[src];
}

double GraphShortestPathBackend::dist(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return row(i)[j];
}

bool GraphShortestPathBackend::connected() const {
  if (n_ == 0) return true;
  const std::vector<double>& d = row(0);
  return std::all_of(d.begin(), d.end(), [](double x) { return std::isfinite(x); });
}

void GraphShortestPathBackend::precompute_all() const {
  for (std::size_t i = 0; i < n_; ++i) row(i);
}

DiscreteFrechetBackend::DiscreteFrechetBackend(std::vector<Eigen::MatrixXd> curves)
    : curves_(std::move(curves)) {
  for (const auto& c : curves_) {
    if (c.rows() == 0) throw std::invalid_argument("frechet backend: empty curve");
  }
}

double DiscreteFrechetBackend::dist(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return discrete_frechet(curves_[i], curves_[j]);
}

HausdorffBackend::HausdorffBackend(std::vector<Eigen::MatrixXd> sets) : sets_(std::move(sets)) {
  for (const auto& s : sets_) {
    if (s.rows() == 0) throw std::invalid_argument("hausdorff backend: empty set");
  }
}

double HausdorffBackend::dist(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return hausdorff(sets_[i], sets_[j]);
}

}  // namespace coreset
