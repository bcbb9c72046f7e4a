#ifndef CORESET_EVAL_HPP
#define CORESET_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coreset/sampler.hpp"

namespace coreset {

// Relative cost errors of a coreset over a family of candidate solutions.
// Solutions with cost(P,S) = 0 are skipped (the relative error is undefined)
// and counted in `skipped`.
struct DistortionReport {
  std::string family;
  std::vector<std::size_t> solution_ids;
  std::vector<double> errors;  // aligned with solution_ids
  std::size_t skipped = 0;
  double max_error = 0.0;
  double p99_error = 0.0;
  double mean_error = 0.0;
  std::size_t coreset_size = 0;
  double coreset_weight = 0.0;
};

using SolutionList = std::vector<std::vector<std::size_t>>;

// cost(P,S) for each solution; parallel over solutions when threads > 1.
std::vector<double> family_costs(const PointSet& ps, const SolutionList& solutions, int z,
                                 std::size_t threads = 1);

DistortionReport distortion(const PointSet& ps, const Coreset& cs, const SolutionList& solutions,
                            int z, std::size_t threads = 1);

// Max relative error against precomputed full-set costs; zero-cost solutions
// are skipped.
double max_distortion(const PointSet& ps, const Coreset& cs, const SolutionList& solutions,
                      std::span<const double> full_costs, int z, std::size_t threads = 1);

enum class FamilyMode { Exhaustive, RandomSubsets, PerturbedA };

struct FamilySpec {
  FamilyMode mode = FamilyMode::RandomSubsets;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  const ApproxSolution* A = nullptr;  // PerturbedA only
};

// Candidate solutions: all k-subsets (C(n,k) <= 1e6), random k-subsets, or
// the approximation A plus variants with 1-2 centers swapped for random
// points (A itself is the first element).
SolutionList solution_family(const PointSet& ps, std::size_t k, const FamilySpec& spec);

// m weight-proportional draws with replacement, every entry weighted
// (total weight)/m; reduces to plain uniform sampling on unit weights.
Coreset baseline_uniform(const PointSet& ps, std::size_t m, std::uint64_t seed);

// Classic sensitivity sampling against A: P[p] proportional to
// w_p * (cost(p,A)/cost(P,A) + 1/(k * |cluster(p)|)), entries weighted by
// inverse probability.
Coreset baseline_sensitivity(const PointSet& ps, const ApproxSolution& A, std::size_t m,
                             std::uint64_t seed, int z);

// Both power-mean triangle inequalities for the triple (a,b,c):
//   dist^z(a,b) <= (1+beta)^{z-1} dist^z(a,c) + (1+1/beta)^{z-1} dist^z(b,c)
//   |dist^z(a,c) - dist^z(b,c)| <= beta*dist^z(a,c) + (1+2z/beta)^{z-1} dist^z(a,b)
bool check_power_triangle(const MetricBackend& metric, std::size_t a, std::size_t b, std::size_t c,
                          int z, double beta);

struct ScalingRow {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t coreset_size = 0;
  double max_distortion = 0.0;
};

// One coreset build per (epsilon, seed); records size and worst-case error
// over the family for offline slope fitting.
std::vector<ScalingRow> scaling_experiment(const PointSet& ps, std::size_t k, int z,
                                           std::span<const double> epsilon_list,
                                           std::span<const std::uint64_t> seeds,
                                           const SolutionList& family, std::size_t d_vc,
                                           double c0, std::size_t threads = 1);

}  // namespace coreset

#endif  // CORESET_EVAL_HPP
