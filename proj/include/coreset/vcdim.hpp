#ifndef CORESET_VCDIM_HPP
#define CORESET_VCDIM_HPP

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "coreset/point_set.hpp"

namespace coreset {

// Range space of complements of metric balls: ranges are
// R(S, r) = {p : dist(p, S) >= r} over center sets S of size <= k_fold.
// Centers come from the point set itself; for Euclidean backends an optional
// list of synthetic centers can be supplied to enrich the family.
struct BallRangeSpace {
  PointSet ps;
  std::size_t k_fold = 1;
  std::vector<Eigen::RowVectorXd> synthetic_centers;
};

// All distinct traces R(S, r) ∩ Y as bitmasks over positions of Y.
// Thresholds sweep the realized distances plus +infinity, which is where
// traces can change. |Y| <= 20.
std::set<std::uint32_t> enumerate_ranges(const BallRangeSpace& rs,
                                         std::span<const std::size_t> Y);

// True iff every one of the 2^|Y| subsets of Y is realized as a trace.
bool is_shattered(const BallRangeSpace& rs, std::span<const std::size_t> Y);

struct VcEstimate {
  std::size_t d_hat = 0;
  bool exhaustive = true;  // every tested level searched all subsets
  std::vector<std::size_t> witness;  // a shattered subset of size d_hat
  std::vector<std::size_t> trace_counts_by_size;  // max traces per tested size, index 0 = size 1
};

// Largest d <= max_d with a shattered d-subset. Levels with C(n,d) <= budget
// are searched exhaustively (lexicographically smallest witness); larger
// levels fall back to `budget` random subsets. Exhaustive failure at level d
// is conclusive by monotonicity.
VcEstimate estimate_vc(const BallRangeSpace& rs, std::size_t max_d, std::size_t budget);

// Axis-aligned grid of synthetic centers covering the bounding box of a
// Euclidean point set, inflated by margin * (box diagonal) on every side.
std::vector<Eigen::RowVectorXd> euclidean_center_grid(const PointSet& ps,
                                                      std::size_t per_axis, double margin);

}  // namespace coreset

#endif  // CORESET_VCDIM_HPP
