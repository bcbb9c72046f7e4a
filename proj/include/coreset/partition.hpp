#ifndef CORESET_PARTITION_HPP
#define CORESET_PARTITION_HPP

#include <climits>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "coreset/approx.hpp"
#include "coreset/point_set.hpp"

namespace coreset {

// Exact floor(log2(num/den)) for num, den > 0: the result j satisfies
// 2^j * den <= num < 2^{j+1} * den with ldexp (exact power-of-two scaling)
// semantics. A float log2 would misplace points sitting on ring boundaries.
int floor_log2_ratio(double num, double den);

// Thresholds derived from (k, z, epsilon): rings below j_inner collapse into
// the inner group, rings above j_outer form the outer region, phi = 2^phi_exponent
// is the layer modulus, and b_max caps the nominal cost-band index.
struct PartitionParams {
  std::size_t k = 1;
  int z = 1;
  double epsilon = 0.1;
  double gamma_inner = 1.0;
  double gamma_outer = 1.0;
  double gamma_b = 1.0;
  int phi_exponent = 1;  // phi = 2^phi_exponent, phi >= 2
  int j_inner = -1;
  int j_outer = 1;
  int b_max = 1;
};

PartitionParams derive_params(std::size_t k, int z, double epsilon, double gamma_inner = 1.0,
                              double gamma_outer = 1.0, double gamma_b = 1.0);

enum class GroupTag : int { Inner = 0, MainMin = 1, Main = 2, OuterMin = 3, Outer = 4 };

const char* tag_name(GroupTag tag);

// Tagged key of one sampling group. Unused coordinates stay zero so the
// default lexicographic ordering on (tag, j, b, ell) is total.
struct GroupKey {
  GroupTag tag = GroupTag::Inner;
  int j = 0;
  int b = 0;
  int ell = 0;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;

  static GroupKey inner() { return {GroupTag::Inner, 0, 0, 0}; }
  static GroupKey main_min(int j) { return {GroupTag::MainMin, j, 0, 0}; }
  static GroupKey main(int j, int b, int ell) { return {GroupTag::Main, j, b, ell}; }
  static GroupKey outer_min(int ell) { return {GroupTag::OuterMin, 0, 0, ell}; }
  static GroupKey outer(int b, int ell) { return {GroupTag::Outer, 0, b, ell}; }

  bool is_cheap() const {
    return tag == GroupTag::Inner || tag == GroupTag::MainMin || tag == GroupTag::OuterMin;
  }
};

// Compact one-token form, e.g. "main:j=0:b=4:l=43"; comma-free for CSV cells.
std::string to_string(const GroupKey& key);

// Ring classification of a single point. j is the realized ring index,
// meaningful for Main and Outer (and for Inner when the point merely fell
// below j_inner rather than having zero cost).
struct RingClass {
  enum Kind { Inner, Main, Outer } kind = Inner;
  int j = INT_MIN;
  bool degenerate = false;  // cost(p,A) = 0 or cluster delta = 0
};

RingClass ring_index(const ApproxSolution& A, std::size_t p, const PartitionParams& params);

// Layer of a ring with lower boundary 2^j * delta: the ell in [0, phi_exponent)
// with 2^ell * phi^a <= 2^j * delta < 2^{ell+1} * phi^a for some integer a.
// Computed in integer arithmetic from ilogb so boundaries are exact.
int layer_of(int j, double delta, int phi_exponent);

struct ClusterSlice {
  std::vector<std::size_t> members;  // ascending point indices
  double cost = 0.0;                 // sum w_p * cost(p,A) over the slice
  double weight = 0.0;               // sum w_p
};

struct Group {
  GroupKey key;
  std::vector<std::size_t> members;             // ascending point indices
  std::map<std::size_t, ClusterSlice> clusters;  // cluster id -> slice
  double cost = 0.0;
  double weight = 0.0;

  std::size_t count() const { return members.size(); }
};

struct GroupPartition {
  PartitionParams params;
  std::vector<GroupKey> key_of;  // per point
  std::vector<int> ring_of;      // per point: realized ring index, INT_MIN if degenerate
  std::map<GroupKey, Group> groups;

  std::size_t group_count(bool sampled_only = false) const;
};

// Assign every point to Inner / MainMin / Main / OuterMin / Outer per the
// layered grouping rules and populate per-group aggregates.
GroupPartition build_partition(const PointSet& ps, const ApproxSolution& A,
                               const PartitionParams& params);

}  // namespace coreset

#endif  // CORESET_PARTITION_HPP
