#include "coreset/vcdim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coreset/rng.hpp"

namespace coreset {

namespace {

double binomial(std::size_t n, std::size_t d) {
  double c = 1.0;
  for (std::size_t i = 0; i < d; ++i) c = c * double(n - i) / double(i + 1);
  return c;
}

// Distances from every candidate center (points first, then synthetic) to
// every element of Y.
Eigen::MatrixXd center_point_distances(const BallRangeSpace& rs,
                                       std::span<const std::size_t> Y) {
  const std::size_t n = rs.ps.size();
  const std::size_t u = n + rs.synthetic_centers.size();
  Eigen::MatrixXd D(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(Y.size()));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < Y.size(); ++t) {
      D(c, t) = rs.ps.metric->dist(Y[t], c);
    }
  }
  if (!rs.synthetic_centers.empty()) {
    const auto* eu = dynamic_cast<const EuclideanBackend*>(rs.ps.metric.get());
    if (eu == nullptr) {
      throw std::invalid_argument("synthetic centers require a Euclidean backend");
    }
    for (std::size_t s = 0; s < rs.synthetic_centers.size(); ++s) {
      for (std::size_t t = 0; t < Y.size(); ++t) {
        D(n + s, t) =
            (eu->points().row(static_cast<Eigen::Index>(Y[t])) - rs.synthetic_centers[s]).norm();
      }
    }
  }
  return D;
}

// Traces of {p in Y : dist(p,S) >= r} as r sweeps the realized values of one
// fixed center set (min distances given in vals).
void add_traces(const std::vector<double>& vals, std::set<std::uint32_t>& traces) {
  std::vector<std::pair<double, unsigned>> order;
  order.reserve(vals.size());
  for (unsigned t = 0; t < vals.size(); ++t) order.emplace_back(vals[t], t);
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::uint32_t mask = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double v = order[i].first;
    while (i < order.size() && order[i].first == v) {
      mask |= 1u << order[i].second;
      ++i;
    }
    traces.insert(mask);
  }
}

struct Enumerator {
  const Eigen::MatrixXd& D;
  std::size_t k_fold;
  std::size_t cap;
  std::set<std::uint32_t> traces;

  bool saturated() const { return traces.size() >= cap; }

  void recurse(std::size_t start, std::size_t depth, const std::vector<double>& cur) {
    const std::size_t u = static_cast<std::size_t>(D.rows());
    const std::size_t t = static_cast<std::size_t>(D.cols());
    for (std::size_t c = start; c < u && !saturated(); ++c) {
      std::vector<double> next(t);
      for (std::size_t i = 0; i < t; ++i) {
        const double d = D(c, i);
        next[i] = depth == 0 ? d : std::min(cur[i], d);
      }
      add_traces(next, traces);
      if (depth + 1 < k_fold && !saturated()) recurse(c + 1, depth + 1, next);
    }
  }
};

std::set<std::uint32_t> traces_capped(const BallRangeSpace& rs, std::span<const std::size_t> Y,
                                      std::size_t cap) {
  if (Y.size() > 20) throw std::invalid_argument("enumerate_ranges: |Y| must be <= 20");
  if (rs.k_fold < 1) throw std::invalid_argument("enumerate_ranges: k_fold must be >= 1");
  Enumerator e{center_point_distances(rs, Y), rs.k_fold, cap, {}};
  e.traces.insert(0);  // r beyond every realized distance
  if (!Y.empty() && !e.saturated()) e.recurse(0, 0, {});
  return std::move(e.traces);
}

}  // namespace

std::set<std::uint32_t> enumerate_ranges(const BallRangeSpace& rs,
                                         std::span<const std::size_t> Y) {
  const std::size_t cap =
      Y.size() >= 20 ? (1u << 20) : (static_cast<std::size_t>(1) << Y.size());
  return traces_capped(rs, Y, cap);
}

bool is_shattered(const BallRangeSpace& rs, std::span<const std::size_t> Y) {
  const std::size_t full = static_cast<std::size_t>(1) << Y.size();
  return traces_capped(rs, Y, full).size() == full;
}

VcEstimate estimate_vc(const BallRangeSpace& rs, std::size_t max_d, std::size_t budget) {
  const std::size_t n = rs.ps.size();
  VcEstimate est;
  if (n == 0) return est;
  if (n > 64) throw std::invalid_argument("estimate_vc: n must be <= 64");
  max_d = std::min({max_d, n, static_cast<std::size_t>(20)});
  const Rng base(0x5eedb011u);

  for (std::size_t d = 1; d <= max_d; ++d) {
    const bool level_exhaustive = binomial(n, d) <= static_cast<double>(budget);
    const std::size_t full = static_cast<std::size_t>(1) << d;
    std::vector<std::size_t> found;
    std::size_t level_max = 0;

    const auto try_subset = [&](const std::vector<std::size_t>& Y) {
      const std::size_t count = traces_capped(rs, Y, full).size();
      level_max = std::max(level_max, count);
      if (count == full) found = Y;
      return count == full;
    };

    if (level_exhaustive) {
      std::vector<std::size_t> Y(d);
      for (std::size_t i = 0; i < d; ++i) Y[i] = i;
      while (true) {
        if (try_subset(Y)) break;
        std::size_t i = d;
        while (i > 0 && Y[i - 1] == n - d + (i - 1)) --i;
        if (i == 0) break;
        ++Y[i - 1];
        for (std::size_t j = i; j < d; ++j) Y[j] = Y[j - 1] + 1;
      }
    } else {
      Rng level_rng = base.fork("level", d);
      std::vector<std::size_t> pool(n);
      for (std::size_t i = 0; i < n; ++i) pool[i] = i;
      for (std::size_t trial = 0; trial < budget; ++trial) {
        for (std::size_t i = 0; i < d; ++i) {
          const std::size_t j = i + level_rng.uniform_index(n - i);
          std::swap(pool[i], pool[j]);
        }
        std::vector<std::size_t> Y(pool.begin(), pool.begin() + static_cast<long>(d));
        std::sort(Y.begin(), Y.end());
        if (try_subset(Y)) break;
      }
    }

    est.trace_counts_by_size.push_back(level_max);
    est.exhaustive = est.exhaustive && level_exhaustive;
    if (found.empty()) break;
    est.d_hat = d;
    est.witness = std::move(found);
  }
  return est;
}

std::vector<Eigen::RowVectorXd> euclidean_center_grid(const PointSet& ps, std::size_t per_axis,
                                                      double margin) {
  const auto* eu = dynamic_cast<const EuclideanBackend*>(ps.metric.get());
  if (eu == nullptr) throw std::invalid_argument("center grid requires a Euclidean backend");
  if (per_axis < 2) throw std::invalid_argument("center grid: per_axis must be >= 2");
  const Eigen::MatrixXd& pts = eu->points();
  const Eigen::Index dim = pts.cols();
  double total = 1.0;
  for (Eigen::Index a = 0; a < dim; ++a) total *= static_cast<double>(per_axis);
  if (total > 1e5) throw std::invalid_argument("center grid: too many grid points");

  const Eigen::RowVectorXd lo = pts.colwise().minCoeff();
  const Eigen::RowVectorXd hi = pts.colwise().maxCoeff();
  const double diag = (hi - lo).norm();
  const double pad = margin * (diag > 0.0 ? diag : 1.0);

  std::vector<Eigen::RowVectorXd> grid;
  grid.reserve(static_cast<std::size_t>(total));
  Eigen::RowVectorXd cur(dim);
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      const double start = lo(a) - pad;
      const double stop = hi(a) + pad;
      cur(a) = start + (stop - start) * static_cast<double>(idx[static_cast<std::size_t>(a)]) /
                           static_cast<double>(per_axis - 1);
    }
    grid.push_back(cur);
    Eigen::Index a = 0;
    for (; a < dim; ++a) {
      if (++idx[static_cast<std::size_t>(a)] < per_axis) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    if (a == dim) break;
  }
  return grid;
}

}  // namespace coreset
