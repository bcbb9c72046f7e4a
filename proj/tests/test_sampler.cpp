#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "coreset/sampler.hpp"
#include "instances.hpp"

using coreset::ApproxSolution;
using coreset::Coreset;
using coreset::Group;
using coreset::GroupKey;
using coreset::PointSet;

namespace {

PointSet points1d(const std::vector<double>& xs, const std::vector<double>& ws = {}) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = xs[i];
  auto backend = std::make_shared<coreset::EuclideanBackend>(std::move(m));
  if (ws.empty()) return PointSet(std::move(backend));
  Eigen::VectorXd w(static_cast<Eigen::Index>(ws.size()));
  for (std::size_t i = 0; i < ws.size(); ++i) w(static_cast<Eigen::Index>(i)) = ws[i];
  return PointSet(std::move(backend), std::move(w));
}

// A group fabricated directly from slices; cluster ids must agree with A.
Group make_group(GroupKey key,
                 const std::vector<std::pair<std::size_t, std::vector<std::size_t>>>& slices,
                 const PointSet& ps, const ApproxSolution& A) {
  Group g;
  g.key = key;
  for (const auto& [cluster, members] : slices) {
    coreset::ClusterSlice slice;
    slice.members = members;
    for (const std::size_t p : members) {
      slice.cost += ps.weight(p) * A.point_cost[p];
      slice.weight += ps.weight(p);
      g.members.push_back(p);
    }
    g.cost += slice.cost;
    g.weight += slice.weight;
    g.clusters[cluster] = std::move(slice);
  }
  std::sort(g.members.begin(), g.members.end());
  return g;
}

ApproxSolution two_cluster_solution(const PointSet& ps, std::vector<std::size_t> centers,
                                    std::vector<std::size_t> assignment,
                                    std::vector<double> costs) {
  ApproxSolution A;
  A.z = 1;
  A.centers = std::move(centers);
  A.assignment = std::move(assignment);
  A.point_cost = std::move(costs);
  A.cluster_cost.assign(A.k(), 0.0);
  A.cluster_size.assign(A.k(), 0.0);
  for (std::size_t p = 0; p < ps.size(); ++p) {
    A.cluster_cost[A.assignment[p]] += ps.weight(p) * A.point_cost[p];
    A.cluster_size[A.assignment[p]] += ps.weight(p);
  }
  A.delta.assign(A.k(), 0.0);
  for (std::size_t i = 0; i < A.k(); ++i) {
    A.delta[i] = A.cluster_size[i] > 0 ? A.cluster_cost[i] / A.cluster_size[i] : 0.0;
    A.total_cost += A.cluster_cost[i];
  }
  return A;
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("main group probabilities split cost across clusters") {
  // cost split 3:1 between clusters of weighted size 3 and 1: every point 1/4
  const PointSet ps = points1d({0, 1, 2, 3, 10, 11});
  const ApproxSolution A =
      two_cluster_solution(ps, {0, 4}, {0, 0, 0, 0, 1, 1}, {0.0, 1.0, 1.0, 1.0, 0.0, 1.0});
  const Group g = make_group(GroupKey::main(0, 1, 0), {{0, {1, 2, 3}}, {1, {5}}}, ps, A);
  for (const std::size_t p : {1, 2, 3, 5}) {
    CHECK(coreset::main_group_probability(ps, A, g, p) == 0.25);
  }
  const auto probs = coreset::group_probabilities(ps, A, g);
  CHECK(std::accumulate(probs.begin(), probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single cluster groups reduce to weight proportional draws") {
  const PointSet ps = points1d({0, 1, 2, 5}, {1, 2, 1, 1});
  const ApproxSolution A =
      two_cluster_solution(ps, {0}, {0, 0, 0, 0}, {0.0, 1.0, 2.0, 5.0});
  const Group g = make_group(GroupKey::main(0, 1, 0), {{0, {1, 2}}}, ps, A);
  CHECK(coreset::main_group_probability(ps, A, g, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(coreset::main_group_probability(ps, A, g, 2) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(coreset::main_group_probability(ps, A, g, 3), std::invalid_argument);
}

TEST_CASE("outer group probabilities are cost proportional") {
  const PointSet ps = points1d({0, 1, 3});
  const ApproxSolution A = two_cluster_solution(ps, {0}, {0, 0, 0}, {0.0, 1.0, 3.0});
  const Group g = make_group(GroupKey::outer(1, 0), {{0, {1, 2}}}, ps, A);
  CHECK(coreset::outer_group_probability(ps, A, g, 1) == 0.25);
  CHECK(coreset::outer_group_probability(ps, A, g, 2) == 0.75);
  CHECK_THROWS_AS(coreset::outer_group_probability(ps, A, g, 0), std::invalid_argument);
  const auto probs = coreset::group_probabilities(ps, A, g);
  CHECK(std::accumulate(probs.begin(), probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero cost groups are rejected") {
  const PointSet ps = points1d({0, 1});
  const ApproxSolution A = two_cluster_solution(ps, {0}, {0, 0}, {0.0, 0.0});
  const Group g = make_group(GroupKey::main(0, 1, 0), {{0, {1}}}, ps, A);
  CHECK_THROWS_AS(coreset::main_group_probability(ps, A, g, 1), std::logic_error);
  CHECK_THROWS_AS(coreset::outer_group_probability(ps, A, g, 1), std::logic_error);
}

TEST_CASE("sampled entries carry inverse probability weights") {
  // four unit weight points, uniform probabilities 1/4, m = 2: every drawn
  // point carries weight draws * 1 / (2 * 1/4) = draws * 2
  const PointSet ps = points1d({0, 1, 2, 3, 100});
  const ApproxSolution A =
      two_cluster_solution(ps, {4}, {0, 0, 0, 0, 0}, {1.0, 1.0, 1.0, 1.0, 0.0});
  const Group g = make_group(GroupKey::main(0, 1, 0), {{0, {0, 1, 2, 3}}}, ps, A);
  coreset::Rng rng(3);
  const auto entries = coreset::sample_group(ps, A, g, 2, rng);
  double draws = 0.0;
  for (const auto& e : entries) {
    CHECK(e.weight > 0.0);
    CHECK(std::fmod(e.weight, 2.0) == 0.0);
    draws += e.weight / 2.0;
  }
  CHECK(draws == 2.0);
}

TEST_CASE("a singleton group keeps its full weight") {
  const PointSet ps = points1d({0, 7}, {1, 3.5});
  const ApproxSolution A = two_cluster_solution(ps, {0}, {0, 0}, {0.0, 7.0});
  const Group g = make_group(GroupKey::outer(1, 0), {{0, {1}}}, ps, A);
  for (const std::size_t m : {1, 2, 9}) {
    coreset::Rng rng(m);
    const auto entries = coreset::sample_group(ps, A, g, m, rng);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].index == 1);
    CHECK(entries[0].weight == 3.5);
  }
}

TEST_CASE("group sampling is unbiased for a fixed solution") {
  const PointSet ps = instances::gaussian_mixture(200, 3, 2, 4.0, 21, true);
  coreset::Rng arng(5);
  const ApproxSolution A = coreset::compute_approximation(ps, 3, 1, arng);
  const auto part = coreset::build_partition(ps, A, coreset::derive_params(3, 1, 0.1));

  // largest non-cheap group
  const Group* g = nullptr;
  for (const auto& [key, group] : part.groups) {
    if (!key.is_cheap() && (g == nullptr || group.count() > g->count())) g = &group;
  }
  REQUIRE(g != nullptr);
  REQUIRE(g->count() >= 8);

  const std::vector<std::size_t> S{0, 17, 101};
  const double truth = coreset::subset_cost(ps, g->members, S, 1);
  const std::size_t m = 12;
  const int runs = 10000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int t = 0; t < runs; ++t) {
    coreset::Rng rng(5000 + static_cast<std::uint64_t>(t));
    double est = 0.0;
    for (const auto& e : coreset::sample_group(ps, A, *g, m, rng)) {
      est += e.weight * coreset::point_cost(ps, e.index, S, 1);
    }
    sum += est;
    sumsq += est * est;
  }
  const double mean = sum / runs;
  const double var = (sumsq - sum * sum / runs) / (runs - 1);
  const double se = std::sqrt(var / runs);
  CHECK(std::abs(mean - truth) <= 4.0 * se + 1e-9);
}

TEST_CASE("cheap points collapse onto their cluster centers") {
  const PointSet ps = points1d({0, 1, 2, 3, 50, 60}, {1, 2, 3, 2, 1, 1.5});
  const ApproxSolution A =
      two_cluster_solution(ps, {0, 4}, {0, 0, 0, 0, 1, 1}, {0, 1, 2, 3, 0, 10});
  coreset::GroupPartition part;
  part.key_of.assign(ps.size(), GroupKey::inner());
  Group inner = make_group(GroupKey::inner(), {{0, {1, 2}}}, ps, A);
  Group main_min = make_group(GroupKey::main_min(0), {{0, {3}}}, ps, A);
  Group outer_min = make_group(GroupKey::outer_min(1), {{1, {5}}}, ps, A);
  part.groups[inner.key] = inner;
  part.groups[main_min.key] = main_min;
  part.groups[outer_min.key] = outer_min;

  const auto weights = coreset::inner_and_cheap_weights(part, A, ps);
  REQUIRE(weights.size() == 2);
  CHECK(weights[0].first == 0);
  CHECK(weights[0].second == 7.0);  // 2 + 3 inner, 2 main-min
  CHECK(weights[1].first == 4);
  CHECK(weights[1].second == 1.5);

  coreset::GroupPartition empty;
  empty.key_of.assign(ps.size(), GroupKey::main(0, 1, 0));
  CHECK(coreset::inner_and_cheap_weights(empty, A, ps).empty());
}

TEST_CASE("recommended sample size matches the closed form") {
  CHECK(coreset::recommended_sample_size(5, 0.2, 1, 2, 1.0) == 1161);
  CHECK(coreset::recommended_sample_size(100, 0.1, 1, 1, 1.0) == 99658);
  CHECK(coreset::recommended_sample_size(100, 0.1, 2, 1, 1.0) == 996579);  // z=2 multiplier 10

  // z = 2 with eps^-1 > k: the min picks k
  const std::size_t capped = coreset::recommended_sample_size(3, 0.2, 2, 1, 1.0);
  const std::size_t base = coreset::recommended_sample_size(3, 0.2, 1, 1, 1.0);
  CHECK(capped <= 3 * base + 3);

  CHECK_THROWS_AS(coreset::recommended_sample_size(0, 0.1, 1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(coreset::recommended_sample_size(2, 0.6, 1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(coreset::recommended_sample_size(2, 0.1, 3, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(coreset::recommended_sample_size(2, 0.1, 1, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(coreset::recommended_sample_size(2, 0.1, 1, 1, 0.0), std::invalid_argument);
}

TEST_CASE("a single point becomes its own coreset") {
  const PointSet ps = points1d({42.0}, {2.5});
  const Coreset cs = coreset::build_coreset(ps, 1, 1, 0.2, 1, 9);
  REQUIRE(cs.size() == 1);
  CHECK(cs.entries[0].index == 0);
  CHECK(cs.entries[0].weight == 2.5);
  CHECK(cs.n == 1);
}

TEST_CASE("huge per group budgets reproduce groups verbatim") {
  // the equidistant instance: 4 centers (cheap) + 16 satellites in one group
  const double c = 1024.0;
  Eigen::MatrixXd pts(20, 2);
  Eigen::Index row = 0;
  std::vector<std::size_t> center_idx;
  for (const auto& [cx, cy] : std::vector<std::pair<double, double>>{{0, 0}, {c, 0}, {0, c}, {c, c}}) {
    center_idx.push_back(static_cast<std::size_t>(row));
    pts.row(row++) << cx, cy;
    pts.row(row++) << cx + 1, cy;
    pts.row(row++) << cx - 1, cy;
    pts.row(row++) << cx, cy + 1;
    pts.row(row++) << cx, cy - 1;
  }
  const PointSet ps(std::make_shared<coreset::EuclideanBackend>(std::move(pts)));
  const ApproxSolution A = coreset::assign_to_centers(ps, center_idx, 1);
  const auto part = coreset::build_partition(ps, A, coreset::derive_params(4, 1, 0.2));

  coreset::SamplingPlan plan;
  plan.m = 100000;  // over 4x the group size: verbatim shortcut
  plan.seed = 3;
  plan.k = 4;
  plan.z = 1;
  plan.epsilon = 0.2;
  const Coreset cs = coreset::sample_from_partition(ps, A, part, plan);
  REQUIRE(cs.size() == 20);
  for (const auto& e : cs.entries) CHECK(e.weight == 1.0);
  CHECK(cs.total_weight() == 20.0);
  CHECK(cs.groups == 2);
  CHECK(cs.sampled_groups == 1);
}

TEST_CASE("coreset entries are sorted, positive, and within bounds") {
  const PointSet ps = instances::gaussian_mixture(500, 4, 2, 3.0, 87, true);
  const Coreset cs = coreset::build_coreset(ps, 4, 2, 0.15, 3, 11);
  REQUIRE(!cs.entries.empty());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(cs.entries[i].index < ps.size());
    CHECK(cs.entries[i].weight > 0.0);
    if (i > 0) CHECK(cs.entries[i - 1].index < cs.entries[i].index);
  }
  CHECK(cs.size() <= cs.sampled_groups * cs.plan.m + 4);
  CHECK(cs.n == 500);
}

TEST_CASE("entry provenance points back into the partition") {
  const PointSet ps = instances::gaussian_mixture(300, 3, 2, 5.0, 55);
  coreset::BuildOptions opt;
  opt.k = 3;
  opt.z = 1;
  opt.epsilon = 0.1;
  opt.d_vc = 3;
  opt.seed = 4;
  const auto res = coreset::build_coreset_full(ps, opt);
  for (const auto& e : res.coreset.entries) {
    if (e.provenance.is_cheap()) continue;  // center substitutes carry inner provenance
    const auto it = res.partition.groups.find(e.provenance);
    REQUIRE(it != res.partition.groups.end());
    CHECK(std::binary_search(it->second.members.begin(), it->second.members.end(), e.index));
  }
}

TEST_CASE("total weight concentrates around the input weight") {
  const PointSet ps = instances::gaussian_mixture(400, 4, 2, 4.0, 66);
  const double total = ps.total_weight();
  const double eps = 0.2;
  int within = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const Coreset cs = coreset::build_coreset(ps, 4, 1, eps, 3, 900 + static_cast<std::uint64_t>(t));
    if (std::abs(cs.total_weight() - total) <= eps * total) ++within;
  }
  CHECK(within >= trials * 9 / 10);
}

TEST_CASE("target size search brackets the predicted size") {
  const PointSet ps = instances::gaussian_mixture(800, 5, 2, 4.0, 91);
  coreset::Rng rng(2);
  const ApproxSolution A = coreset::compute_approximation(ps, 5, 1, rng);
  const auto part = coreset::build_partition(ps, A, coreset::derive_params(5, 1, 0.1));

  std::size_t prev = 0;
  for (const std::size_t m : {1, 2, 4, 8, 16, 32, 64}) {
    const std::size_t predicted = coreset::predicted_size(part, A, ps, m);
    CHECK(predicted >= prev);
    prev = predicted;
  }
  for (const std::size_t target : {50, 150, 400}) {
    const std::size_t m = coreset::m_for_target_size(part, A, ps, target);
    CHECK(m >= 1);
    const std::size_t achieved = coreset::predicted_size(part, A, ps, m);
    if (achieved >= target && m > 1) {
      CHECK(coreset::predicted_size(part, A, ps, m - 1) < target);
    }
  }
}

TEST_CASE("identical plans give identical coresets") {
  const PointSet ps = instances::gaussian_mixture(350, 4, 2, 3.0, 14, true);
  const Coreset a = coreset::build_coreset(ps, 4, 1, 0.12, 3, 77);
  const Coreset b = coreset::build_coreset(ps, 4, 1, 0.12, 3, 77);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.entries[i].index == b.entries[i].index);
    CHECK(a.entries[i].weight == b.entries[i].weight);  // bitwise
    CHECK(a.entries[i].provenance == b.entries[i].provenance);
  }
  const Coreset c = coreset::build_coreset(ps, 4, 1, 0.12, 3, 78);
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) {
    differs = a.entries[i].index != c.entries[i].index || a.entries[i].weight != c.entries[i].weight;
  }
  CHECK(differs);
}

}  // TEST_SUITE
