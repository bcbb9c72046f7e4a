#include "coreset/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coreset {

ApproxSolution assign_to_centers(const PointSet& ps, std::vector<std::size_t> centers, int z) {
  const std::size_t n = ps.size();
  const std::size_t k = centers.size();
  if (k == 0) throw std::invalid_argument("assign_to_centers: no centers");
  ApproxSolution sol;
  sol.z = z;
  sol.centers = std::move(centers);
  sol.assignment.resize(n);
  sol.point_cost.resize(n);
  std::vector<KahanSum> wsum(k), csum(k);
  KahanSum total;
  for (std::size_t p = 0; p < n; ++p) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = ps.metric->dist(p, sol.centers[c]);
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    const double cost = pow_z(best, z);
    sol.assignment[p] = arg;
    sol.point_cost[p] = cost;
    const double w = ps.weight(p);
    wsum[arg].add(w);
    csum[arg].add(w * cost);
    total.add(w * cost);
  }
  sol.cluster_size.resize(k);
  sol.cluster_cost.resize(k);
  sol.delta.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    sol.cluster_size[c] = wsum[c].value();
    sol.cluster_cost[c] = csum[c].value();
    sol.delta[c] = sol.cluster_size[c] > 0.0 ? sol.cluster_cost[c] / sol.cluster_size[c] : 0.0;
  }
  sol.total_cost = total.value();
  return sol;
}

namespace {

// Draw an index with probability mass[i] / sum(mass); returns n when the
// total mass is zero. Cumulative sums keep the draw deterministic.
std::size_t draw_weighted(const std::vector<double>& mass, Rng& rng) {
  std::vector<double> cum(mass.size());
  double run = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    run += mass[i];
    cum[i] = run;
  }
  if (!(run > 0.0)) return mass.size();
  const double x = rng.uniform() * run;
  auto it = std::upper_bound(cum.begin(), cum.end(), x);
  if (it == cum.end()) --it;
  std::size_t idx = static_cast<std::size_t>(it - cum.begin());
  // Skip zero-mass entries the binary search may have landed on.
  while (idx < mass.size() && mass[idx] <= 0.0) ++idx;
  if (idx == mass.size()) idx = mass.size() - 1;
  return idx;
}

}  // namespace

std::vector<std::size_t> dz_seed(const PointSet& ps, std::size_t k, int z, Rng& rng) {
  const std::size_t n = ps.size();
  if (k == 0 || k > n) throw std::invalid_argument("dz_seed: need 1 <= k <= n");
  std::vector<std::size_t> centers;
  centers.reserve(k);
  std::vector<char> is_center(n, 0);
  std::vector<double> cur_cost(n, 0.0);
  std::vector<double> mass(n);

  for (std::size_t round = 0; round < k; ++round) {
    if (round == 0) {
      for (std::size_t p = 0; p < n; ++p) mass[p] = ps.weight(p);
    } else {
      for (std::size_t p = 0; p < n; ++p) mass[p] = ps.weight(p) * cur_cost[p];
    }
    std::size_t pick = draw_weighted(mass, rng);
    if (round == 0 && pick >= n) throw std::invalid_argument("dz_seed: all weights are zero");
    if (pick >= n || is_center[pick]) {
      // Residual mass is concentrated on chosen centers: uniform fill-in.
      std::vector<std::size_t> avail;
      for (std::size_t p = 0; p < n; ++p)
        if (!is_center[p]) avail.push_back(p);
      pick = avail[rng.uniform_index(avail.size())];
    }
    centers.push_back(pick);
    is_center[pick] = 1;
    for (std::size_t p = 0; p < n; ++p) {
      const double c = pow_z(ps.metric->dist(p, pick), z);
      if (round == 0 || c < cur_cost[p]) cur_cost[p] = c;
    }
  }
  return centers;
}

ApproxSolution local_search_refine(const PointSet& ps, std::vector<std::size_t> centers, int z,
                                   std::size_t max_swaps, double min_improve) {
  const std::size_t n = ps.size();
  const std::size_t k = centers.size();
  ApproxSolution sol = assign_to_centers(ps, std::move(centers), z);
  if (k >= n) return sol;

  std::vector<double> d1(n), d2(n);
  std::vector<std::size_t> a1(n);
  std::vector<char> is_center(n);

  for (std::size_t swaps = 0; swaps < max_swaps; ++swaps) {
    // Nearest and second nearest center cost per point.
    std::fill(is_center.begin(), is_center.end(), 0);
    for (std::size_t c : sol.centers) is_center[c] = 1;
    for (std::size_t p = 0; p < n; ++p) {
      double b1 = std::numeric_limits<double>::infinity();
      double b2 = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double cost = pow_z(ps.metric->dist(p, sol.centers[c]), z);
        if (cost < b1) {
          b2 = b1;
          b1 = cost;
          arg = c;
        } else if (cost < b2) {
          b2 = cost;
        }
      }
      d1[p] = b1;
      d2[p] = b2;
      a1[p] = arg;
    }

    // Best swap: for candidate q, delta(c, q) = -gain(q) + corr[c] where
    // gain counts points that would move to q and corr re-adds the exact
    // effect on points currently served by the removed center c.
    double best_delta = 0.0;
    std::size_t best_q = n, best_c = k;
    std::vector<double> corr(k);
    for (std::size_t q = 0; q < n; ++q) {
      if (is_center[q]) continue;
      double gain = 0.0;
      std::fill(corr.begin(), corr.end(), 0.0);
      for (std::size_t p = 0; p < n; ++p) {
        const double dq = pow_z(ps.metric->dist(p, q), z);
        const double w = ps.weight(p);
        if (dq < d1[p]) gain += w * (d1[p] - dq);
        const double re = std::min(d2[p], dq) - d1[p] + (dq < d1[p] ? d1[p] - dq : 0.0);
        corr[a1[p]] += w * re;
      }
      for (std::size_t c = 0; c < k; ++c) {
        const double delta = -gain + corr[c];
        if (delta < best_delta) {
          best_delta = delta;
          best_q = q;
          best_c = c;
        }
      }
    }

    if (best_q == n || -best_delta < min_improve * sol.total_cost) break;
    std::vector<std::size_t> next = sol.centers;
    next[best_c] = best_q;
    ApproxSolution cand = assign_to_centers(ps, std::move(next), z);
    if (cand.total_cost >= sol.total_cost) break;  // accumulator drift guard
    sol = std::move(cand);
  }
  return sol;
}

ApproxSolution compute_approximation(const PointSet& ps, std::size_t k, int z, Rng& rng,
                                     std::size_t max_swaps) {
  std::vector<std::size_t> seed = dz_seed(ps, k, z, rng);
  return local_search_refine(ps, std::move(seed), z, max_swaps);
}

ApproxSolution exact_kmedian(const PointSet& ps, std::size_t k, int z) {
  const std::size_t n = ps.size();
  if (k == 0 || k > n) throw std::invalid_argument("exact_kmedian: need 1 <= k <= n");
  double combos = 1.0;
  for (std::size_t i = 0; i < k; ++i) combos = combos * double(n - i) / double(i + 1);
  if (combos > 1e6) throw std::invalid_argument("exact_kmedian: instance too large");

  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::vector<std::size_t> best_centers;
  double best_cost = std::numeric_limits<double>::infinity();
  while (true) {
    const double cost = set_cost(ps, pick, z);
    if (cost < best_cost) {
      best_cost = cost;
      best_centers = pick;
    }
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return assign_to_centers(ps, std::move(best_centers), z);
}

}  // namespace coreset
