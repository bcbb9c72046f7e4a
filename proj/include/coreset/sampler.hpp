#ifndef CORESET_SAMPLER_HPP
#define CORESET_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "coreset/partition.hpp"

namespace coreset {

// Per-group sample count plus everything that parameterized it; written out
// as run metadata so results can be replayed.
struct SamplingPlan {
  std::size_t m = 1;  // draws per sampled group
  std::uint64_t seed = 0;
  std::size_t k = 1;
  int z = 1;
  double epsilon = 0.1;
  std::size_t d_vc = 1;
  double c0 = 0.05;
};

struct CoresetEntry {
  std::size_t index = 0;
  double weight = 0.0;
  GroupKey provenance;
};

// Weighted subset whose cost approximates the full set's for every candidate
// solution. Entries are unique indices in ascending order.
struct Coreset {
  std::vector<CoresetEntry> entries;
  SamplingPlan plan;
  std::size_t n = 0;              // source point count
  std::size_t groups = 0;         // groups in the partition
  std::size_t sampled_groups = 0; // non-cheap groups

  std::size_t size() const { return entries.size(); }
  double total_weight() const;
  std::vector<std::size_t> indices() const;
  std::vector<double> weights() const;
};

double coreset_cost(const PointSet& ps, const Coreset& cs, std::span<const std::size_t> centers,
                    int z);

// Selection probability of member p within its group: for main groups the
// cluster's cost share times a weight-proportional pick inside the cluster,
// for outer groups proportional to w_p * cost(p,A). Sums to 1 over the group.
double main_group_probability(const PointSet& ps, const ApproxSolution& A, const Group& g,
                              std::size_t p);
double outer_group_probability(const PointSet& ps, const ApproxSolution& A, const Group& g,
                               std::size_t p);

// Probabilities for all members of g in member order, by the rule matching
// the group's tag.
std::vector<double> group_probabilities(const PointSet& ps, const ApproxSolution& A,
                                        const Group& g);

// m draws with replacement from the group's distribution; each draw
// contributes weight w_p / (m * P[p]) and duplicates are merged.
std::vector<CoresetEntry> sample_group(const PointSet& ps, const ApproxSolution& A, const Group& g,
                                       std::size_t m, Rng& rng);

// Center substitution for inner and cheap groups: every cluster's center
// carries the total weight of its (Inner | MainMin | OuterMin) points.
// Centers with zero such weight are omitted.
std::vector<std::pair<std::size_t, double>> inner_and_cheap_weights(const GroupPartition& part,
                                                                    const ApproxSolution& A,
                                                                    const PointSet& ps);

// m = ceil(c0 * k * d_vc * eps^-2 * min(eps^{-z+1}, k) * log2(k/eps)).
std::size_t recommended_sample_size(std::size_t k, double epsilon, int z, std::size_t d_vc,
                                    double c0);

// Sampling stage alone, for experiments that reuse one partition across many
// seeds. Groups with m >= 4x their cardinality are taken verbatim with true
// weights; otherwise min(m, cardinality) draws.
Coreset sample_from_partition(const PointSet& ps, const ApproxSolution& A,
                              const GroupPartition& part, const SamplingPlan& plan);

// Coreset size sample_from_partition would produce before merging, and the
// smallest m whose predicted size reaches a target (for size-controlled
// benchmarks).
std::size_t predicted_size(const GroupPartition& part, const ApproxSolution& A,
                           const PointSet& ps, std::size_t m);
std::size_t m_for_target_size(const GroupPartition& part, const ApproxSolution& A,
                              const PointSet& ps, std::size_t target);

struct BuildOptions {
  std::size_t k = 1;
  int z = 1;
  double epsilon = 0.1;
  std::size_t d_vc = 1;
  std::uint64_t seed = 0;
  double c0 = 0.05;
  std::size_t m_override = 0;  // 0: use recommended_sample_size
  std::size_t max_swaps = 0;   // 0: default 50*k
  double gamma_inner = 1.0;
  double gamma_outer = 1.0;
  double gamma_b = 1.0;
};

struct BuildResult {
  ApproxSolution approx;
  GroupPartition partition;
  Coreset coreset;
};

// Full pipeline: approximation, partition, center substitution, group
// sampling.
BuildResult build_coreset_full(const PointSet& ps, const BuildOptions& opt);

Coreset build_coreset(const PointSet& ps, std::size_t k, int z, double epsilon, std::size_t d_vc,
                      std::uint64_t seed, double c0 = 0.05);

}  // namespace coreset

#endif  // CORESET_SAMPLER_HPP
