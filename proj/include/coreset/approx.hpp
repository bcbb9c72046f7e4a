#ifndef CORESET_APPROX_HPP
#define CORESET_APPROX_HPP

#include <cstddef>
#include <vector>

#include "coreset/point_set.hpp"
#include "coreset/rng.hpp"

namespace coreset {

// A clustering of a point set: k centers (point indices) plus the induced
// nearest-center assignment and per-cluster aggregates. delta[i] is the
// weighted average cost of cluster i, the radius scale the ring partition
// is built around. All cardinalities are weighted.
struct ApproxSolution {
  int z = 1;
  std::vector<std::size_t> centers;
  std::vector<std::size_t> assignment;  // per point: position in `centers`
  std::vector<double> point_cost;       // per point: dist(p, center)^z, unweighted
  std::vector<double> cluster_cost;     // per cluster: sum w_p * point_cost
  std::vector<double> cluster_size;     // per cluster: sum w_p
  std::vector<double> delta;            // cluster_cost / cluster_size, 0 for empty clusters
  double total_cost = 0.0;

  std::size_t k() const { return centers.size(); }
};

// Nearest-center assignment; ties go to the lower center position so the
// result is independent of evaluation order.
ApproxSolution assign_to_centers(const PointSet& ps, std::vector<std::size_t> centers, int z);

// Weighted D^z seeding: first center drawn proportional to weight, each
// subsequent one proportional to w_p * cost(p, chosen so far). If all
// remaining mass sits on already-chosen centers the fill-in is uniform
// over non-centers.
std::vector<std::size_t> dz_seed(const PointSet& ps, std::size_t k, int z, Rng& rng);

// Best-single-swap local search. Stops when no swap improves the cost by at
// least min_improve (relative) or after max_swaps accepted swaps.
ApproxSolution local_search_refine(const PointSet& ps, std::vector<std::size_t> centers, int z,
                                   std::size_t max_swaps, double min_improve = 1e-3);

// D^z seeding followed by local search; the standard way to obtain the
// constant factor solution the sampler partitions around.
ApproxSolution compute_approximation(const PointSet& ps, std::size_t k, int z, Rng& rng,
                                     std::size_t max_swaps);

inline ApproxSolution compute_approximation(const PointSet& ps, std::size_t k, int z, Rng& rng) {
  return compute_approximation(ps, k, z, rng, 50 * k);
}

// Exhaustive optimum over all center subsets of size k. Throws when
// C(n, k) exceeds 1e6 combinations.
ApproxSolution exact_kmedian(const PointSet& ps, std::size_t k, int z);

}  // namespace coreset

#endif  // CORESET_APPROX_HPP
