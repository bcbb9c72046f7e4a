#include "coreset/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace coreset {

namespace {

// Run fn(i) for i in [0, count), striped across `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> family_costs(const PointSet& ps, const SolutionList& solutions, int z,
                                 std::size_t threads) {
  std::vector<double> out(solutions.size());
  parallel_for(solutions.size(), threads,
               [&](std::size_t i) { out[i] = set_cost(ps, solutions[i], z); });
  return out;
}

DistortionReport distortion(const PointSet& ps, const Coreset& cs, const SolutionList& solutions,
                            int z, std::size_t threads) {
  const std::vector<double> full = family_costs(ps, solutions, z, threads);
  std::vector<double> small(solutions.size());
  parallel_for(solutions.size(), threads,
               [&](std::size_t i) { small[i] = coreset_cost(ps, cs, solutions[i], z); });

  DistortionReport rep;
  rep.coreset_size = cs.size();
  rep.coreset_weight = cs.total_weight();
  KahanSum mean;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (!(full[i] > 0.0)) {
      ++rep.skipped;
      std::cerr << "warning: solution " << i << " has zero full-set cost, skipped\n";
      continue;
    }
    const double err = std::abs(small[i] - full[i]) / full[i];
    rep.solution_ids.push_back(i);
    rep.errors.push_back(err);
    mean.add(err);
    rep.max_error = std::max(rep.max_error, err);
  }
  if (!rep.errors.empty()) {
    rep.mean_error = mean.value() / static_cast<double>(rep.errors.size());
    std::vector<double> sorted = rep.errors;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(0.99 * static_cast<double>(sorted.size())));
    rep.p99_error = sorted[std::max<std::size_t>(rank, 1) - 1];
  }
  return rep;
}

double max_distortion(const PointSet& ps, const Coreset& cs, const SolutionList& solutions,
                      std::span<const double> full_costs, int z, std::size_t threads) {
  std::vector<double> small(solutions.size());
  parallel_for(solutions.size(), threads,
               [&](std::size_t i) { small[i] = coreset_cost(ps, cs, solutions[i], z); });
  double worst = 0.0;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (!(full_costs[i] > 0.0)) continue;
    worst = std::max(worst, std::abs(small[i] - full_costs[i]) / full_costs[i]);
  }
  return worst;
}

SolutionList solution_family(const PointSet& ps, std::size_t k, const FamilySpec& spec) {
  const std::size_t n = ps.size();
  if (k == 0 || k > n) throw std::invalid_argument("solution_family: need 1 <= k <= n");
  SolutionList out;

  switch (spec.mode) {
    case FamilyMode::Exhaustive: {
      double combos = 1.0;
      for (std::size_t i = 0; i < k; ++i) combos = combos * double(n - i) / double(i + 1);
      if (combos > 1e6) throw std::invalid_argument("solution_family: exhaustive too large");
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        out.push_back(pick);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
      break;
    }
    case FamilyMode::RandomSubsets: {
      const Rng base(spec.seed);
      std::vector<std::size_t> pool(n);
      for (std::size_t s = 0; s < spec.count; ++s) {
        Rng rng = base.fork("family", s);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) {
          const std::size_t j = i + rng.uniform_index(n - i);
          std::swap(pool[i], pool[j]);
          pick[i] = pool[i];
        }
        std::sort(pick.begin(), pick.end());
        out.push_back(std::move(pick));
      }
      break;
    }
    case FamilyMode::PerturbedA: {
      if (spec.A == nullptr) throw std::invalid_argument("solution_family: missing A");
      if (spec.count == 0) break;
      std::vector<std::size_t> base_centers = spec.A->centers;
      std::sort(base_centers.begin(), base_centers.end());
      out.push_back(base_centers);
      const Rng base(spec.seed);
      for (std::size_t s = 1; s < spec.count; ++s) {
        Rng rng = base.fork("perturb", s);
        std::vector<std::size_t> pick = base_centers;
        const std::size_t swaps = std::min<std::size_t>(1 + rng.uniform_index(2), k);
        for (std::size_t sw = 0; sw < swaps; ++sw) {
          const std::size_t out_pos = rng.uniform_index(k);
          for (int attempt = 0; attempt < 64; ++attempt) {
            const std::size_t cand = rng.uniform_index(n);
            if (std::find(pick.begin(), pick.end(), cand) == pick.end()) {
              pick[out_pos] = cand;
              break;
            }
          }
        }
        std::sort(pick.begin(), pick.end());
        out.push_back(std::move(pick));
      }
      break;
    }
  }
  return out;
}

Coreset baseline_uniform(const PointSet& ps, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("baseline_uniform: m must be >= 1");
  const std::size_t n = ps.size();
  std::vector<double> cum(n);
  double run = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    run += ps.weight(p);
    cum[p] = run;
  }
  if (!(run > 0.0)) throw std::invalid_argument("baseline_uniform: zero total weight");

  Rng rng = Rng(seed).fork("uniform");
  std::vector<std::size_t> draws(n, 0);
  for (std::size_t d = 0; d < m; ++d) {
    const double x = rng.uniform() * run;
    auto it = std::upper_bound(cum.begin(), cum.end(), x);
    if (it == cum.end()) --it;
    std::size_t pos = static_cast<std::size_t>(it - cum.begin());
    while (pos < n && ps.weight(pos) <= 0.0) ++pos;
    if (pos == n) pos = n - 1;
    ++draws[pos];
  }

  Coreset cs;
  cs.n = n;
  cs.plan.m = m;
  cs.plan.seed = seed;
  const double per_draw = ps.total_weight() / static_cast<double>(m);
  for (std::size_t p = 0; p < n; ++p) {
    if (draws[p] == 0) continue;
    cs.entries.push_back(CoresetEntry{p, static_cast<double>(draws[p]) * per_draw,
                                      GroupKey::inner()});
  }
  return cs;
}

Coreset baseline_sensitivity(const PointSet& ps, const ApproxSolution& A, std::size_t m,
                             std::uint64_t seed, int z) {
  if (m == 0) throw std::invalid_argument("baseline_sensitivity: m must be >= 1");
  if (A.z != z) throw std::invalid_argument("baseline_sensitivity: z mismatch with A");
  const std::size_t n = ps.size();
  const double total_cost = A.total_cost;
  const double kd = static_cast<double>(A.k());

  std::vector<double> score(n);
  std::vector<double> cum(n);
  double run = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t c = A.assignment[p];
    double s = 0.0;
    if (total_cost > 0.0) s += A.point_cost[p] / total_cost;
    if (A.cluster_size[c] > 0.0) s += 1.0 / (kd * A.cluster_size[c]);
    score[p] = s;
    run += ps.weight(p) * s;
    cum[p] = run;
  }
  if (!(run > 0.0)) throw std::invalid_argument("baseline_sensitivity: zero total mass");

  Rng rng = Rng(seed).fork("sensitivity");
  std::vector<std::size_t> draws(n, 0);
  for (std::size_t d = 0; d < m; ++d) {
    const double x = rng.uniform() * run;
    auto it = std::upper_bound(cum.begin(), cum.end(), x);
    if (it == cum.end()) --it;
    std::size_t pos = static_cast<std::size_t>(it - cum.begin());
    while (pos < n && ps.weight(pos) * score[pos] <= 0.0) ++pos;
    if (pos == n) pos = n - 1;
    ++draws[pos];
  }

  Coreset cs;
  cs.n = n;
  cs.plan.m = m;
  cs.plan.seed = seed;
  cs.plan.z = z;
  const double md = static_cast<double>(m);
  for (std::size_t p = 0; p < n; ++p) {
    if (draws[p] == 0) continue;
    // P[p] = w_p * score[p] / run; entry weight w_p / (m * P[p]).
    const double weight = static_cast<double>(draws[p]) * run / (md * score[p]);
    cs.entries.push_back(CoresetEntry{p, weight, GroupKey::inner()});
  }
  return cs;
}

bool check_power_triangle(const MetricBackend& metric, std::size_t a, std::size_t b, std::size_t c,
                          int z, double beta) {
  if (z < 1) throw std::invalid_argument("check_power_triangle: z must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("check_power_triangle: beta must be positive");
  const double dab = pow_z(metric.dist(a, b), z);
  const double dac = pow_z(metric.dist(a, c), z);
  const double dbc = pow_z(metric.dist(b, c), z);
  const double zi = static_cast<double>(z);
  const bool first =
      dab <= std::pow(1.0 + beta, zi - 1.0) * dac + std::pow(1.0 + 1.0 / beta, zi - 1.0) * dbc;
  const bool second = std::abs(dac - dbc) <=
                      beta * dac + std::pow(1.0 + 2.0 * zi / beta, zi - 1.0) * dab;
  return first && second;
}

std::vector<ScalingRow> scaling_experiment(const PointSet& ps, std::size_t k, int z,
                                           std::span<const double> epsilon_list,
                                           std::span<const std::uint64_t> seeds,
                                           const SolutionList& family, std::size_t d_vc,
                                           double c0, std::size_t threads) {
  const std::vector<double> full = family_costs(ps, family, z, threads);
  std::vector<ScalingRow> rows;
  rows.reserve(epsilon_list.size() * seeds.size());
  for (std::uint64_t seed : seeds) {
    // The approximation depends only on the seed; reuse it across epsilons.
    Rng approx_rng = Rng(seed).fork("approx");
    const ApproxSolution A = compute_approximation(ps, k, z, approx_rng, 50 * k);
    for (double eps : epsilon_list) {
      const PartitionParams params = derive_params(k, z, eps);
      const GroupPartition part = build_partition(ps, A, params);
      SamplingPlan plan;
      plan.m = recommended_sample_size(k, eps, z, d_vc, c0);
      plan.seed = seed;
      plan.k = k;
      plan.z = z;
      plan.epsilon = eps;
      plan.d_vc = d_vc;
      plan.c0 = c0;
      const Coreset cs = sample_from_partition(ps, A, part, plan);
      ScalingRow row;
      row.epsilon = eps;
      row.seed = seed;
      row.coreset_size = cs.size();
      row.max_distortion = max_distortion(ps, cs, family, full, z, threads);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace coreset
