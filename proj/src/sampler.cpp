#include "coreset/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace coreset {

double Coreset::total_weight() const {
  KahanSum s;
  for (const CoresetEntry& e : entries) s.add(e.weight);
  return s.value();
}

std::vector<std::size_t> Coreset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(entries.size());
  for (const CoresetEntry& e : entries) out.push_back(e.index);
  return out;
}

std::vector<double> Coreset::weights() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const CoresetEntry& e : entries) out.push_back(e.weight);
  return out;
}

double coreset_cost(const PointSet& ps, const Coreset& cs, std::span<const std::size_t> centers,
                    int z) {
  KahanSum s;
  for (const CoresetEntry& e : cs.entries) {
    s.add(e.weight * point_cost(ps, e.index, centers, z));
  }
  return s.value();
}

double main_group_probability(const PointSet& ps, const ApproxSolution& A, const Group& g,
                              std::size_t p) {
  if (!(g.cost > 0.0)) throw std::logic_error("main_group_probability: zero-cost group");
  const auto it = g.clusters.find(A.assignment[p]);
  if (it == g.clusters.end() ||
      !std::binary_search(it->second.members.begin(), it->second.members.end(), p)) {
    throw std::invalid_argument("group probability: p not in group");
  }
  const double w = ps.weight(p);
  if (!(w > 0.0)) return 0.0;
  const ClusterSlice& slice = it->second;
  return (slice.cost / g.cost) * (w / slice.weight);
}

double outer_group_probability(const PointSet& ps, const ApproxSolution& A, const Group& g,
                               std::size_t p) {
  if (!(g.cost > 0.0)) throw std::logic_error("outer_group_probability: zero-cost group");
  if (!std::binary_search(g.members.begin(), g.members.end(), p)) {
    throw std::invalid_argument("group probability: p not in group");
  }
  const double w = ps.weight(p);
  if (!(w > 0.0)) return 0.0;
  return w * A.point_cost[p] / g.cost;
}

std::vector<double> group_probabilities(const PointSet& ps, const ApproxSolution& A,
                                        const Group& g) {
  std::vector<double> prob;
  prob.reserve(g.members.size());
  const bool main = g.key.tag == GroupTag::Main;
  if (!main && g.key.tag != GroupTag::Outer) {
    throw std::invalid_argument("group_probabilities: group is not sampled");
  }
  for (std::size_t p : g.members) {
    prob.push_back(main ? main_group_probability(ps, A, g, p)
                        : outer_group_probability(ps, A, g, p));
  }
  return prob;
}

std::vector<CoresetEntry> sample_group(const PointSet& ps, const ApproxSolution& A, const Group& g,
                                       std::size_t m, Rng& rng) {
  if (m == 0) throw std::invalid_argument("sample_group: m must be >= 1");
  const std::vector<double> prob = group_probabilities(ps, A, g);
  std::vector<double> cum(prob.size());
  double run = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    run += prob[i];
    cum[i] = run;
  }
  if (!(run > 0.0)) throw std::logic_error("sample_group: zero total probability");

  std::vector<std::size_t> draws(prob.size(), 0);
  for (std::size_t d = 0; d < m; ++d) {
    const double x = rng.uniform() * run;
    auto it = std::upper_bound(cum.begin(), cum.end(), x);
    if (it == cum.end()) --it;
    std::size_t pos = static_cast<std::size_t>(it - cum.begin());
    while (pos < prob.size() && prob[pos] <= 0.0) ++pos;
    if (pos == prob.size()) pos = prob.size() - 1;
    ++draws[pos];
  }

  std::vector<CoresetEntry> out;
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (draws[i] == 0) continue;
    const std::size_t p = g.members[i];
    const double weight =
        static_cast<double>(draws[i]) * ps.weight(p) / (md * prob[i]);
    out.push_back(CoresetEntry{p, weight, g.key});
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> inner_and_cheap_weights(const GroupPartition& part,
                                                                    const ApproxSolution& A,
                                                                    const PointSet& ps) {
  (void)ps;
  std::vector<KahanSum> acc(A.k());
  for (const auto& [key, g] : part.groups) {
    if (!key.is_cheap()) continue;
    for (const auto& [cluster, slice] : g.clusters) acc[cluster].add(slice.weight);
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t i = 0; i < A.k(); ++i) {
    const double w = acc[i].value();
    if (w > 0.0) out.emplace_back(A.centers[i], w);
  }
  return out;
}

std::size_t recommended_sample_size(std::size_t k, double epsilon, int z, std::size_t d_vc,
                                    double c0) {
  if (k < 1 || d_vc < 1) throw std::invalid_argument("recommended_sample_size: k, d_vc >= 1");
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
    throw std::invalid_argument("recommended_sample_size: epsilon in (0, 0.5)");
  }
  if (z < 1 || z > 2) throw std::invalid_argument("recommended_sample_size: z in {1, 2}");
  if (!(c0 > 0.0)) throw std::invalid_argument("recommended_sample_size: c0 must be positive");
  const double kd = static_cast<double>(k);
  const double min_factor = std::min(pow_z(1.0 / epsilon, z - 1), kd);
  const double raw = c0 * kd * static_cast<double>(d_vc) / (epsilon * epsilon) * min_factor *
                     std::log2(kd / epsilon);
  const double m = std::ceil(raw);
  if (!(m >= 1.0)) return 1;
  return static_cast<std::size_t>(m);
}

namespace {

std::uint64_t pack_key(const GroupKey& key) {
  const auto enc = [](int v) {
    return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v + 32768) & 0xFFFFu);
  };
  return (static_cast<std::uint64_t>(key.tag) << 48) | (enc(key.j) << 32) | (enc(key.b) << 16) |
         enc(key.ell);
}

}  // namespace

Coreset sample_from_partition(const PointSet& ps, const ApproxSolution& A,
                              const GroupPartition& part, const SamplingPlan& plan) {
  if (plan.m < 1) throw std::invalid_argument("sample_from_partition: m must be >= 1");
  const Rng root(plan.seed);

  std::map<std::size_t, CoresetEntry> acc;
  const auto add = [&acc](std::size_t idx, double w, GroupKey key) {
    if (!(w > 0.0)) return;
    auto [it, fresh] = acc.try_emplace(idx, CoresetEntry{idx, w, key});
    if (!fresh) {
      it->second.weight += w;
      if (key < it->second.provenance) it->second.provenance = key;
    }
  };

  for (const auto& [center, w] : inner_and_cheap_weights(part, A, ps)) {
    add(center, w, GroupKey::inner());
  }

  Coreset cs;
  cs.plan = plan;
  cs.n = ps.size();
  cs.groups = part.groups.size();
  for (const auto& [key, g] : part.groups) {
    if (key.is_cheap()) continue;
    ++cs.sampled_groups;
    if (plan.m >= 4 * g.count()) {
      // Exactness shortcut: the whole group verbatim beats sampling it.
      for (std::size_t p : g.members) add(p, ps.weight(p), key);
    } else {
      Rng sub = root.fork("group", pack_key(key));
      const std::size_t draws = std::min(plan.m, g.count());
      for (const CoresetEntry& e : sample_group(ps, A, g, draws, sub)) {
        add(e.index, e.weight, key);
      }
    }
  }

  cs.entries.reserve(acc.size());
  for (auto& [idx, e] : acc) cs.entries.push_back(e);
  return cs;
}

std::size_t predicted_size(const GroupPartition& part, const ApproxSolution& A,
                           const PointSet& ps, std::size_t m) {
  std::size_t total = inner_and_cheap_weights(part, A, ps).size();
  for (const auto& [key, g] : part.groups) {
    if (key.is_cheap()) continue;
    total += (m >= 4 * g.count()) ? g.count() : std::min(m, g.count());
  }
  return total;
}

std::size_t m_for_target_size(const GroupPartition& part, const ApproxSolution& A,
                              const PointSet& ps, std::size_t target) {
  std::size_t max_count = 1;
  for (const auto& [key, g] : part.groups) {
    if (!key.is_cheap()) max_count = std::max(max_count, g.count());
  }
  std::size_t lo = 1, hi = 4 * max_count;
  if (predicted_size(part, A, ps, hi) <= target) return hi;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (predicted_size(part, A, ps, mid) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

BuildResult build_coreset_full(const PointSet& ps, const BuildOptions& opt) {
  BuildResult res;
  Rng root(opt.seed);
  Rng approx_rng = root.fork("approx");
  const std::size_t max_swaps = opt.max_swaps > 0 ? opt.max_swaps : 50 * opt.k;
  res.approx = compute_approximation(ps, opt.k, opt.z, approx_rng, max_swaps);
  const PartitionParams params = derive_params(opt.k, opt.z, opt.epsilon, opt.gamma_inner,
                                               opt.gamma_outer, opt.gamma_b);
  res.partition = build_partition(ps, res.approx, params);

  SamplingPlan plan;
  plan.m = opt.m_override > 0
               ? opt.m_override
               : recommended_sample_size(opt.k, opt.epsilon, opt.z, opt.d_vc, opt.c0);
  plan.seed = opt.seed;
  plan.k = opt.k;
  plan.z = opt.z;
  plan.epsilon = opt.epsilon;
  plan.d_vc = opt.d_vc;
  plan.c0 = opt.c0;
  res.coreset = sample_from_partition(ps, res.approx, res.partition, plan);
  return res;
}

Coreset build_coreset(const PointSet& ps, std::size_t k, int z, double epsilon, std::size_t d_vc,
                      std::uint64_t seed, double c0) {
  BuildOptions opt;
  opt.k = k;
  opt.z = z;
  opt.epsilon = epsilon;
  opt.d_vc = d_vc;
  opt.seed = seed;
  opt.c0 = c0;
  return build_coreset_full(ps, opt).coreset;
}

}  // namespace coreset
