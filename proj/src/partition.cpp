#include "coreset/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace coreset {

int floor_log2_ratio(double num, double den) {
  if (!(num > 0.0) || !(den > 0.0)) {
    throw std::invalid_argument("floor_log2_ratio: arguments must be positive");
  }
  int j = std::ilogb(num) - std::ilogb(den);
  while (num < std::ldexp(den, j)) --j;
  while (num >= std::ldexp(den, j + 1)) ++j;
  return j;
}

PartitionParams derive_params(std::size_t k, int z, double epsilon, double gamma_inner,
                              double gamma_outer, double gamma_b) {
  if (k < 1) throw std::invalid_argument("derive_params: k must be >= 1");
  if (z < 1) throw std::invalid_argument("derive_params: z must be >= 1");
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
    throw std::invalid_argument("derive_params: epsilon must lie in (0, 0.5)");
  }
  if (!(gamma_inner > 0.0) || !(gamma_outer > 0.0) || !(gamma_b > 0.0)) {
    throw std::invalid_argument("derive_params: gamma constants must be positive");
  }
  PartitionParams p;
  p.k = k;
  p.z = z;
  p.epsilon = epsilon;
  p.gamma_inner = gamma_inner;
  p.gamma_outer = gamma_outer;
  p.gamma_b = gamma_b;
  const double kd = static_cast<double>(k);
  p.phi_exponent =
      std::max(1, static_cast<int>(std::ceil(10.0 * z * std::log2(kd / epsilon))));
  p.j_inner = static_cast<int>(std::floor(z * std::log2(epsilon) + std::log2(gamma_inner)));
  p.j_outer = static_cast<int>(
      std::ceil(std::log2(gamma_outer * kd * kd * kd / pow_z(epsilon, 2 * z))));
  p.b_max = static_cast<int>(std::ceil(std::log2(gamma_b * kd / pow_z(epsilon, z))));
  if (!(p.j_inner < 0 && p.j_outer > 0)) {
    throw std::invalid_argument("derive_params: thresholds must satisfy j_inner < 0 < j_outer");
  }
  if (p.b_max < 1) throw std::invalid_argument("derive_params: b_max must be >= 1");
  return p;
}

const char* tag_name(GroupTag tag) {
  switch (tag) {
    case GroupTag::Inner:
      return "inner";
    case GroupTag::MainMin:
      return "main_min";
    case GroupTag::Main:
      return "main";
    case GroupTag::OuterMin:
      return "outer_min";
    case GroupTag::Outer:
      return "outer";
  }
  return "?";
}

std::string to_string(const GroupKey& key) {
  std::ostringstream os;
  os << tag_name(key.tag);
  switch (key.tag) {
    case GroupTag::Inner:
      break;
    case GroupTag::MainMin:
      os << ":j=" << key.j;
      break;
    case GroupTag::Main:
      os << ":j=" << key.j << ":b=" << key.b << ":l=" << key.ell;
      break;
    case GroupTag::OuterMin:
      os << ":l=" << key.ell;
      break;
    case GroupTag::Outer:
      os << ":b=" << key.b << ":l=" << key.ell;
      break;
  }
  return os.str();
}

RingClass ring_index(const ApproxSolution& A, std::size_t p, const PartitionParams& params) {
  const double cost = A.point_cost[p];
  const double delta = A.delta[A.assignment[p]];
  RingClass rc;
  if (!(cost > 0.0) || !(delta > 0.0)) {
    rc.kind = RingClass::Inner;
    rc.degenerate = true;
    return rc;
  }
  rc.j = floor_log2_ratio(cost, delta);
  if (rc.j <= params.j_inner) {
    rc.kind = RingClass::Inner;
  } else if (rc.j > params.j_outer) {
    rc.kind = RingClass::Outer;
  } else {
    rc.kind = RingClass::Main;
  }
  return rc;
}

int layer_of(int j, double delta, int phi_exponent) {
  if (!(delta > 0.0)) throw std::invalid_argument("layer_of: delta must be positive");
  if (phi_exponent < 1) throw std::invalid_argument("layer_of: phi_exponent must be >= 1");
  // 2^j * delta in [2^t, 2^{t+1}) with t = j + ilogb(delta), then split t
  // into a * phi_exponent + ell by floor division.
  const long long t = static_cast<long long>(j) + std::ilogb(delta);
  long long a = t / phi_exponent;
  if (t < 0 && t % phi_exponent != 0) --a;
  return static_cast<int>(t - a * phi_exponent);
}

std::size_t GroupPartition::group_count(bool sampled_only) const {
  if (!sampled_only) return groups.size();
  std::size_t c = 0;
  for (const auto& [key, g] : groups)
    if (!key.is_cheap()) ++c;
  return c;
}

namespace {

struct Block {
  std::vector<std::size_t> members;
  KahanSum cost;
};

}  // namespace

GroupPartition build_partition(const PointSet& ps, const ApproxSolution& A,
                               const PartitionParams& params) {
  const std::size_t n = ps.size();
  if (A.assignment.size() != n || A.point_cost.size() != n) {
    throw std::invalid_argument("build_partition: solution does not match point set");
  }
  if (A.k() != params.k) {
    throw std::invalid_argument("build_partition: params.k does not match solution");
  }
  if (A.z != params.z) {
    throw std::invalid_argument("build_partition: params.z does not match solution");
  }

  GroupPartition part;
  part.params = params;
  part.key_of.assign(n, GroupKey::inner());
  part.ring_of.assign(n, INT_MIN);

  // Main rings bucketed per (j, cluster); outer points per (layer, cluster).
  std::map<std::pair<int, std::size_t>, Block> main_rings;
  std::map<std::pair<int, std::size_t>, Block> outer_blocks;

  for (std::size_t p = 0; p < n; ++p) {
    const RingClass rc = ring_index(A, p, params);
    if (!rc.degenerate) part.ring_of[p] = rc.j;
    if (rc.kind == RingClass::Inner) continue;
    const std::size_t i = A.assignment[p];
    const double wcost = ps.weight(p) * A.point_cost[p];
    if (rc.kind == RingClass::Main) {
      Block& blk = main_rings[{rc.j, i}];
      blk.members.push_back(p);
      blk.cost.add(wcost);
    } else {
      const int ell = layer_of(rc.j, A.delta[i], params.phi_exponent);
      Block& blk = outer_blocks[{ell, i}];
      blk.members.push_back(p);
      blk.cost.add(wcost);
    }
  }

  const double band_unit = pow_z(params.epsilon / (4.0 * params.z), params.z);
  const double kd = static_cast<double>(params.k);

  // cost(R_j, A) summed over clusters, in ascending cluster order per j.
  std::map<int, double> ring_total;
  {
    std::map<int, KahanSum> acc;
    for (const auto& [jk, blk] : main_rings) acc[jk.first].add(blk.cost.value());
    for (const auto& [j, s] : acc) ring_total[j] = s.value();
  }
  for (const auto& [jk, blk] : main_rings) {
    const auto [j, i] = jk;
    const double threshold = band_unit * ring_total[j] / kd;
    const double block_cost = blk.cost.value();
    GroupKey key = GroupKey::main_min(j);
    if (threshold > 0.0 && block_cost > 0.0) {
      const int b = floor_log2_ratio(block_cost, threshold);
      if (b >= 1) key = GroupKey::main(j, b, layer_of(j, A.delta[i], params.phi_exponent));
    }
    for (std::size_t p : blk.members) part.key_of[p] = key;
  }

  // Outer bands compare each cluster's layer block against the layer total.
  std::map<int, double> layer_total;
  {
    std::map<int, KahanSum> acc;
    for (const auto& [lk, blk] : outer_blocks) acc[lk.first].add(blk.cost.value());
    for (const auto& [ell, s] : acc) layer_total[ell] = s.value();
  }
  for (const auto& [lk, blk] : outer_blocks) {
    const auto [ell, i] = lk;
    const double threshold = band_unit * layer_total[ell] / kd;
    const double block_cost = blk.cost.value();
    GroupKey key = GroupKey::outer_min(ell);
    if (threshold > 0.0 && block_cost > 0.0) {
      const int b = floor_log2_ratio(block_cost, threshold);
      if (b >= 1) key = GroupKey::outer(b, ell);
    }
    for (std::size_t p : blk.members) part.key_of[p] = key;
  }

  // Materialize groups with per-cluster slices, points in ascending order.
  std::map<GroupKey, std::map<std::size_t, Block>> slices;
  for (std::size_t p = 0; p < n; ++p) {
    Block& blk = slices[part.key_of[p]][A.assignment[p]];
    blk.members.push_back(p);
    blk.cost.add(ps.weight(p) * A.point_cost[p]);
  }
  for (auto& [key, by_cluster] : slices) {
    Group g;
    g.key = key;
    KahanSum gcost, gweight;
    for (auto& [i, blk] : by_cluster) {
      ClusterSlice slice;
      slice.members = std::move(blk.members);
      slice.cost = blk.cost.value();
      KahanSum wsum;
      for (std::size_t p : slice.members) wsum.add(ps.weight(p));
      slice.weight = wsum.value();
      gcost.add(slice.cost);
      gweight.add(slice.weight);
      for (std::size_t p : slice.members) g.members.push_back(p);
      g.clusters.emplace(i, std::move(slice));
    }
    std::sort(g.members.begin(), g.members.end());
    g.cost = gcost.value();
    g.weight = gweight.value();
    part.groups.emplace(key, std::move(g));
  }
  return part;
}

}  // namespace coreset
