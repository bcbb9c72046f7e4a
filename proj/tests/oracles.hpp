#ifndef TESTS_ORACLES_HPP
#define TESTS_ORACLES_HPP

// Brute-force reference implementations for tests. Deliberately naive and
// structured differently from the library code paths they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "coreset/point_set.hpp"

namespace oracle {

inline double frechet_walk(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::Index i,
                           Eigen::Index j) {
  const double here = (a.row(i) - b.row(j)).norm();
  if (i + 1 == a.rows() && j + 1 == b.rows()) return here;
  double best = std::numeric_limits<double>::infinity();
  if (i + 1 < a.rows()) best = std::min(best, frechet_walk(a, b, i + 1, j));
  if (j + 1 < b.rows()) best = std::min(best, frechet_walk(a, b, i, j + 1));
  if (i + 1 < a.rows() && j + 1 < b.rows()) best = std::min(best, frechet_walk(a, b, i + 1, j + 1));
  return std::max(here, best);
}

// Min over all monotone warping paths of the max vertex distance, by walking
// every path. Exponential; fine for curves with <= 5 vertices.
inline double brute_frechet(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return frechet_walk(a, b, 0, 0);
}

inline double brute_directed_hausdorff(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < y.rows(); ++j) {
      nearest = std::min(nearest, (x.row(i) - y.row(j)).norm());
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

// Plain left-to-right sum, no compensation; for closeness checks only.
inline double naive_cost(const coreset::PointSet& ps, const std::vector<std::size_t>& centers,
                         int z) {
  double total = 0.0;
  for (std::size_t p = 0; p < ps.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (const std::size_t c : centers) best = std::min(best, ps.dist(p, c));
    total += ps.weight(p) * coreset::pow_z(best, z);
  }
  return total;
}

// Every trace R(S, r) ∩ Y over center sets of size 1..k_fold drawn from the
// whole point set and thresholds at each realized min-distance (plus one
// beyond the max for the empty trace). Traces are sorted position lists.
inline std::set<std::vector<std::size_t>> brute_traces(const coreset::PointSet& ps,
                                                       const std::vector<std::size_t>& Y,
                                                       std::size_t k_fold) {
  std::set<std::vector<std::size_t>> traces;
  if (Y.empty()) {
    traces.insert({});
    return traces;
  }
  const std::size_t n = ps.size();
  std::vector<std::size_t> combo;
  const auto consider = [&](const std::vector<std::size_t>& S) {
    std::vector<double> md(Y.size());
    for (std::size_t yi = 0; yi < Y.size(); ++yi) {
      double best = std::numeric_limits<double>::infinity();
      for (const std::size_t c : S) best = std::min(best, ps.dist(Y[yi], c));
      md[yi] = best;
    }
    std::vector<double> thresholds = md;
    thresholds.push_back(*std::max_element(md.begin(), md.end()) + 1.0);
    for (const double r : thresholds) {
      std::vector<std::size_t> trace;
      for (std::size_t yi = 0; yi < Y.size(); ++yi) {
        if (md[yi] >= r) trace.push_back(yi);
      }
      traces.insert(std::move(trace));
    }
  };
  const std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                                std::size_t left) {
    if (!combo.empty()) consider(combo);
    if (left == 0) return;
    for (std::size_t c = start; c < n; ++c) {
      combo.push_back(c);
      rec(c + 1, left - 1);
      combo.pop_back();
    }
  };
  rec(0, k_fold);
  return traces;
}

inline bool brute_shattered(const coreset::PointSet& ps, const std::vector<std::size_t>& Y,
                            std::size_t k_fold) {
  return brute_traces(ps, Y, k_fold).size() == (std::size_t{1} << Y.size());
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

}  // namespace oracle

#endif  // TESTS_ORACLES_HPP
