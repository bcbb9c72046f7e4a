// Command line front end: build coresets, evaluate distortion, benchmark
// against baseline samplers, and estimate the ball range space VC dimension.
// Exit codes: 0 ok, 2 usage or input error, 3 internal error.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coreset/approx.hpp"
#include "coreset/eval.hpp"
#include "coreset/io.hpp"
#include "coreset/sampler.hpp"
#include "coreset/vcdim.hpp"

namespace {

using coreset::ParseError;

std::size_t default_threads() {
  if (const char* env = std::getenv("CORESET_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

struct InputArgs {
  std::string input;
  std::string points;
  std::string format = "points";
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("--input", in.input, "input file path");
  cmd->add_option("--points", in.points, "points CSV path (same as --input X --format points)");
  cmd->add_option("--format", in.format,
                  "input format: points|matrix|graph|curves|sets (never sniffed)")
      ->capture_default_str();
}

coreset::PointSet load_input(InputArgs& in) {
  if (!in.points.empty()) {
    if (!in.input.empty()) throw ParseError("--points and --input are mutually exclusive");
    in.input = in.points;
    in.format = "points";
  }
  if (in.input.empty()) throw ParseError("missing --input (or --points)");
  return coreset::read_input(in.input, in.format);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(',', start);
    if (pos == std::string::npos) {
      if (start < s.size()) out.push_back(s.substr(start));
      break;
    }
    if (pos > start) out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  InputArgs in;
  std::size_t k = 1;
  int z = 1;
  double epsilon = 0.1;
  std::size_t d_vc = 1;
  std::uint64_t seed = 0;
  double c0 = 0.05;
  std::size_t m = 0;
  std::size_t max_swaps = 0;
  double gamma_inner = 1.0;
  double gamma_outer = 1.0;
  double gamma_b = 1.0;
  std::string out_coreset = "coreset.csv";
  std::string out_meta = "meta.json";
  std::string dump_partition;
  std::size_t threads = default_threads();
};

nlohmann::ordered_json build_config(const BuildArgs& a, std::size_t resolved_m,
                                    std::size_t resolved_swaps) {
  nlohmann::ordered_json c;
  c["command"] = "build";
  c["input"] = a.in.input;
  c["format"] = a.in.format;
  c["k"] = a.k;
  c["z"] = a.z;
  c["epsilon"] = a.epsilon;
  c["d_vc"] = a.d_vc;
  c["seed"] = a.seed;
  c["c0"] = a.c0;
  c["m"] = resolved_m;
  c["max_swaps"] = resolved_swaps;
  c["gamma_inner"] = a.gamma_inner;
  c["gamma_outer"] = a.gamma_outer;
  c["gamma_b"] = a.gamma_b;
  c["threads"] = a.threads;
  c["out_coreset"] = a.out_coreset;
  c["out_meta"] = a.out_meta;
  if (!a.dump_partition.empty()) c["dump_partition"] = a.dump_partition;
  return c;
}

int run_build(BuildArgs& a) {
  const coreset::PointSet ps = load_input(a.in);
  coreset::BuildOptions opt;
  opt.k = a.k;
  opt.z = a.z;
  opt.epsilon = a.epsilon;
  opt.d_vc = a.d_vc;
  opt.seed = a.seed;
  opt.c0 = a.c0;
  opt.m_override = a.m;
  opt.max_swaps = a.max_swaps;
  opt.gamma_inner = a.gamma_inner;
  opt.gamma_outer = a.gamma_outer;
  opt.gamma_b = a.gamma_b;
  const coreset::BuildResult res = coreset::build_coreset_full(ps, opt);

  coreset::write_coreset_csv(a.out_coreset, res.coreset);
  nlohmann::ordered_json meta = coreset::coreset_meta(res.coreset);
  meta["sampled_groups"] = res.coreset.sampled_groups;
  meta["config"] = build_config(a, res.coreset.plan.m, a.max_swaps ? a.max_swaps : 50 * a.k);
  coreset::write_json(a.out_meta, meta);
  if (!a.dump_partition.empty()) {
    coreset::write_partition_csv(a.dump_partition, res.partition, res.approx);
  }
  std::cout << "coreset: " << res.coreset.size() << " entries, " << res.coreset.groups
            << " groups -> " << a.out_coreset << ", " << a.out_meta << "\n";
  return 0;
}

// ------------------------------------------------------------- evaluate

struct EvalArgs {
  InputArgs in;
  std::string coreset_path;
  std::string meta_path;
  std::string family = "random";
  std::size_t count = 100;
  std::string out_report = "report.json";
  std::string out_errors;
  std::size_t threads = default_threads();
};

template <typename T>
T meta_get(const nlohmann::ordered_json& meta, const char* key, const std::string& path) {
  if (!meta.contains(key)) throw ParseError(path + ": metadata missing field '" + key + "'");
  try {
    return meta.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(path + ": metadata field '" + std::string(key) + "' has the wrong type");
  }
}

int run_evaluate(EvalArgs& a) {
  const coreset::PointSet ps = load_input(a.in);
  const nlohmann::ordered_json meta = coreset::read_json(a.meta_path);
  coreset::Coreset cs = coreset::read_coreset_csv(a.coreset_path);

  cs.plan.k = meta_get<std::size_t>(meta, "k", a.meta_path);
  cs.plan.z = meta_get<int>(meta, "z", a.meta_path);
  cs.plan.epsilon = meta_get<double>(meta, "epsilon", a.meta_path);
  cs.plan.d_vc = meta_get<std::size_t>(meta, "d_vc", a.meta_path);
  cs.plan.seed = meta_get<std::uint64_t>(meta, "seed", a.meta_path);
  cs.plan.c0 = meta_get<double>(meta, "c0", a.meta_path);
  cs.plan.m = meta_get<std::size_t>(meta, "m", a.meta_path);
  cs.n = meta_get<std::size_t>(meta, "n", a.meta_path);
  cs.groups = meta_get<std::size_t>(meta, "groups", a.meta_path);

  // The metadata must describe both the coreset file and the input.
  const auto meta_size = meta_get<std::size_t>(meta, "coreset_size", a.meta_path);
  if (meta_size != cs.size()) {
    throw ParseError(a.coreset_path + ": has " + std::to_string(cs.size()) +
                     " entries but metadata says " + std::to_string(meta_size));
  }
  if (cs.n != ps.size()) {
    throw ParseError(a.in.input + ": has " + std::to_string(ps.size()) +
                     " points but metadata says " + std::to_string(cs.n));
  }
  for (const coreset::CoresetEntry& e : cs.entries) {
    if (e.index >= ps.size()) {
      throw ParseError(a.coreset_path + ": point index " + std::to_string(e.index) +
                       " out of range (n=" + std::to_string(ps.size()) + ")");
    }
  }

  const std::size_t k = cs.plan.k;
  const int z = cs.plan.z;
  coreset::FamilySpec spec;
  spec.count = a.count;
  spec.seed = cs.plan.seed;
  coreset::ApproxSolution A;
  if (a.family == "exhaustive") {
    spec.mode = coreset::FamilyMode::Exhaustive;
  } else if (a.family == "random") {
    spec.mode = coreset::FamilyMode::RandomSubsets;
  } else if (a.family == "perturbed") {
    spec.mode = coreset::FamilyMode::PerturbedA;
    std::size_t max_swaps = 0;
    if (meta.contains("config") && meta["config"].contains("max_swaps")) {
      max_swaps = meta["config"]["max_swaps"].get<std::size_t>();
    }
    coreset::Rng root(cs.plan.seed);
    coreset::Rng ar = root.fork("approx");
    A = max_swaps ? coreset::compute_approximation(ps, k, z, ar, max_swaps)
                  : coreset::compute_approximation(ps, k, z, ar);
    spec.A = &A;
  } else {
    throw ParseError("unknown family '" + a.family + "' (expected exhaustive|random|perturbed)");
  }

  const coreset::SolutionList solutions = coreset::solution_family(ps, k, spec);
  coreset::DistortionReport rep = coreset::distortion(ps, cs, solutions, z, a.threads);
  rep.family = a.family;

  nlohmann::ordered_json out = coreset::report_json(rep);
  nlohmann::ordered_json c;
  c["command"] = "evaluate";
  c["input"] = a.in.input;
  c["format"] = a.in.format;
  c["coreset"] = a.coreset_path;
  c["meta"] = a.meta_path;
  c["family"] = a.family;
  c["count"] = a.count;
  c["k"] = k;
  c["z"] = z;
  c["epsilon"] = cs.plan.epsilon;
  c["seed"] = cs.plan.seed;
  c["threads"] = a.threads;
  c["out_report"] = a.out_report;
  if (!a.out_errors.empty()) c["out_errors"] = a.out_errors;
  out["config"] = c;
  coreset::write_json(a.out_report, out);
  if (!a.out_errors.empty()) coreset::write_errors_csv(a.out_errors, rep);
  std::cout << "evaluated " << rep.solution_ids.size() << " solutions, max error "
            << coreset::format_double(rep.max_error) << " -> " << a.out_report << "\n";
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  InputArgs in;
  std::size_t k = 1;
  int z = 1;
  double epsilon = 0.1;
  std::size_t d_vc = 1;
  std::uint64_t seed = 0;
  double c0 = 0.05;
  std::string methods = "lgs,uniform,sensitivity";
  std::string sizes = "100,200,400";
  std::size_t seeds = 5;
  std::size_t count = 100;
  std::size_t max_swaps = 0;
  std::string out = "bench.csv";
  std::size_t threads = default_threads();
};

struct BenchRow {
  std::string method;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::size_t coreset_size = 0;
  double max_error = 0.0;
  double p99_error = 0.0;
  double mean_error = 0.0;
};

int run_bench(BenchArgs& a) {
  const coreset::PointSet ps = load_input(a.in);
  const std::vector<std::string> methods = split_list(a.methods);
  if (methods.empty()) throw ParseError("--methods must name at least one method");
  for (const std::string& m : methods) {
    if (m != "lgs" && m != "uniform" && m != "sensitivity") {
      throw ParseError("unknown method '" + m + "' (expected lgs|uniform|sensitivity)");
    }
  }
  std::vector<std::size_t> sizes;
  for (const std::string& s : split_list(a.sizes)) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
      throw ParseError("bad size '" + s + "' in --sizes");
    }
    sizes.push_back(v);
  }
  if (sizes.empty()) throw ParseError("--sizes must name at least one size");
  if (a.seeds == 0) throw ParseError("--seeds must be at least 1");

  const coreset::PartitionParams params =
      coreset::derive_params(a.k, a.z, a.epsilon, 1.0, 1.0, 1.0);

  // One fixed solution family for every row, so stats are comparable.
  coreset::FamilySpec spec;
  spec.mode = coreset::FamilyMode::RandomSubsets;
  spec.count = a.count;
  spec.seed = a.seed;
  const coreset::SolutionList solutions = coreset::solution_family(ps, a.k, spec);

  const bool want_lgs = std::find(methods.begin(), methods.end(), "lgs") != methods.end();
  std::vector<BenchRow> rows;
  for (std::size_t si = 0; si < a.seeds; ++si) {
    const std::uint64_t run_seed = a.seed + si;
    coreset::Rng root(run_seed);
    coreset::Rng ar = root.fork("approx");
    const coreset::ApproxSolution A =
        a.max_swaps ? coreset::compute_approximation(ps, a.k, a.z, ar, a.max_swaps)
                    : coreset::compute_approximation(ps, a.k, a.z, ar);
    const coreset::GroupPartition part = coreset::build_partition(ps, A, params);
    for (const std::size_t size : sizes) {
      // Baselines draw exactly as many entries as the layered sampler
      // realized, so the comparison is at equal coreset size.
      std::size_t realized = size;
      std::map<std::string, coreset::Coreset> built;
      if (want_lgs) {
        coreset::SamplingPlan plan;
        plan.m = coreset::m_for_target_size(part, A, ps, size);
        plan.seed = run_seed;
        plan.k = a.k;
        plan.z = a.z;
        plan.epsilon = a.epsilon;
        plan.d_vc = a.d_vc;
        plan.c0 = a.c0;
        built["lgs"] = coreset::sample_from_partition(ps, A, part, plan);
        realized = built["lgs"].size();
      }
      for (const std::string& m : methods) {
        if (m == "uniform") {
          built["uniform"] = coreset::baseline_uniform(ps, realized, run_seed);
        } else if (m == "sensitivity") {
          built["sensitivity"] = coreset::baseline_sensitivity(ps, A, realized, run_seed, a.z);
        }
      }
      for (const std::string& m : methods) {
        const coreset::DistortionReport rep =
            coreset::distortion(ps, built.at(m), solutions, a.z, a.threads);
        BenchRow row;
        row.method = m;
        row.size = size;
        row.seed = run_seed;
        row.coreset_size = rep.coreset_size;
        row.max_error = rep.max_error;
        row.p99_error = rep.p99_error;
        row.mean_error = rep.mean_error;
        rows.push_back(std::move(row));
      }
    }
  }

  // One block per method, in the order given on the command line.
  std::stable_sort(rows.begin(), rows.end(), [&](const BenchRow& x, const BenchRow& y) {
    const auto rank = [&](const std::string& m) {
      return std::find(methods.begin(), methods.end(), m) - methods.begin();
    };
    return rank(x.method) < rank(y.method);
  });

  nlohmann::ordered_json c;
  c["command"] = "bench";
  c["input"] = a.in.input;
  c["format"] = a.in.format;
  c["k"] = a.k;
  c["z"] = a.z;
  c["epsilon"] = a.epsilon;
  c["d_vc"] = a.d_vc;
  c["seed"] = a.seed;
  c["c0"] = a.c0;
  c["methods"] = methods;
  c["sizes"] = sizes;
  c["seeds"] = a.seeds;
  c["count"] = a.count;
  c["max_swaps"] = a.max_swaps;
  c["threads"] = a.threads;
  c["out"] = a.out;

  std::ofstream outf(a.out);
  if (!outf) throw ParseError(a.out + ": cannot open for writing");
  outf << "# config: " << c.dump() << "\n";
  outf << "method,size,seed,coreset_size,max_error,p99_error,mean_error\n";
  for (const BenchRow& r : rows) {
    outf << r.method << ',' << r.size << ',' << r.seed << ',' << r.coreset_size << ','
         << coreset::format_double(r.max_error) << ',' << coreset::format_double(r.p99_error)
         << ',' << coreset::format_double(r.mean_error) << '\n';
  }
  if (!outf) throw ParseError(a.out + ": write failed");
  std::cout << "bench: " << rows.size() << " rows -> " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------- vc-estimate

struct VcArgs {
  InputArgs in;
  std::size_t k_fold = 1;
  std::size_t max_d = 10;
  std::size_t budget = 20000;
  long long grid = -1;  // -1: 17 per axis for the points format, off otherwise
  double grid_margin = 1.5;
  std::string out = "vc.json";
};

int run_vc(VcArgs& a) {
  coreset::BallRangeSpace rs{load_input(a.in), a.k_fold, {}};
  std::size_t grid = 0;
  if (a.grid < 0) {
    grid = (a.in.format == "points") ? 17 : 0;
  } else {
    grid = static_cast<std::size_t>(a.grid);
  }
  if (grid > 0) {
    rs.synthetic_centers = coreset::euclidean_center_grid(rs.ps, grid, a.grid_margin);
  }
  const coreset::VcEstimate est = coreset::estimate_vc(rs, a.max_d, a.budget);

  nlohmann::ordered_json out = coreset::vc_json(est);
  nlohmann::ordered_json c;
  c["command"] = "vc-estimate";
  c["input"] = a.in.input;
  c["format"] = a.in.format;
  c["k_fold"] = a.k_fold;
  c["max_d"] = a.max_d;
  c["budget"] = a.budget;
  c["grid"] = grid;
  c["grid_margin"] = a.grid_margin;
  c["out"] = a.out;
  out["config"] = c;
  coreset::write_json(a.out, out);
  std::cout << "d_hat=" << est.d_hat << (est.exhaustive ? " (exhaustive)" : " (sampled)")
            << " -> " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coreset: layered group sampling coresets for (k,z)-clustering"};
  app.require_subcommand(1);

  BuildArgs b;
  CLI::App* cmd_build = app.add_subcommand("build", "construct a coreset");
  add_input_options(cmd_build, b.in);
  cmd_build->add_option("--k", b.k, "number of centers")->required();
  cmd_build->add_option("--z", b.z, "cost exponent (1 median, 2 means)")->capture_default_str();
  cmd_build->add_option("--epsilon", b.epsilon, "target relative error, in (0, 0.5)")->required();
  cmd_build->add_option("--d-vc", b.d_vc, "VC dimension of the metric's ball ranges")->required();
  cmd_build->add_option("--seed", b.seed, "root random seed")->capture_default_str();
  cmd_build->add_option("--c0", b.c0, "sample size constant")->capture_default_str();
  cmd_build->add_option("--m", b.m, "per-group sample count override (0 = auto)");
  cmd_build->add_option("--max-swaps", b.max_swaps, "local search swap budget (0 = 50k)");
  cmd_build->add_option("--gamma-inner", b.gamma_inner, "inner ring threshold scale");
  cmd_build->add_option("--gamma-outer", b.gamma_outer, "outer ring threshold scale");
  cmd_build->add_option("--gamma-b", b.gamma_b, "band count threshold scale");
  cmd_build->add_option("--out-coreset", b.out_coreset, "coreset CSV path")->capture_default_str();
  cmd_build->add_option("--out-meta", b.out_meta, "metadata JSON path")->capture_default_str();
  cmd_build->add_option("--dump-partition", b.dump_partition, "also write the partition CSV");
  cmd_build->add_option("--threads", b.threads, "worker threads (env CORESET_THREADS)");

  EvalArgs e;
  CLI::App* cmd_eval = app.add_subcommand("evaluate", "measure coreset distortion");
  add_input_options(cmd_eval, e.in);
  cmd_eval->add_option("--coreset", e.coreset_path, "coreset CSV path")->required();
  cmd_eval->add_option("--meta", e.meta_path, "metadata JSON path")->required();
  cmd_eval->add_option("--family", e.family, "solution family: exhaustive|random|perturbed")
      ->capture_default_str();
  cmd_eval->add_option("--count", e.count, "solutions in sampled families")->capture_default_str();
  cmd_eval->add_option("--out-report", e.out_report, "report JSON path")->capture_default_str();
  cmd_eval->add_option("--out-errors", e.out_errors, "per-solution error CSV path");
  cmd_eval->add_option("--threads", e.threads, "worker threads (env CORESET_THREADS)");

  BenchArgs n;
  CLI::App* cmd_bench = app.add_subcommand("bench", "compare samplers at equal coreset size");
  add_input_options(cmd_bench, n.in);
  cmd_bench->add_option("--k", n.k, "number of centers")->required();
  cmd_bench->add_option("--z", n.z, "cost exponent")->capture_default_str();
  cmd_bench->add_option("--epsilon", n.epsilon, "target relative error")->capture_default_str();
  cmd_bench->add_option("--d-vc", n.d_vc, "VC dimension")->capture_default_str();
  cmd_bench->add_option("--seed", n.seed, "base seed; run i uses seed+i")->capture_default_str();
  cmd_bench->add_option("--c0", n.c0, "sample size constant")->capture_default_str();
  cmd_bench->add_option("--methods", n.methods, "comma list: lgs,uniform,sensitivity")
      ->capture_default_str();
  cmd_bench->add_option("--sizes", n.sizes, "comma list of target coreset sizes")
      ->capture_default_str();
  cmd_bench->add_option("--seeds", n.seeds, "number of seeded runs")->capture_default_str();
  cmd_bench->add_option("--count", n.count, "solutions in the evaluation family")
      ->capture_default_str();
  cmd_bench->add_option("--max-swaps", n.max_swaps, "local search swap budget (0 = 50k)");
  cmd_bench->add_option("--out", n.out, "output CSV path")->capture_default_str();
  cmd_bench->add_option("--threads", n.threads, "worker threads (env CORESET_THREADS)");

  VcArgs v;
  CLI::App* cmd_vc = app.add_subcommand("vc-estimate", "estimate the ball range VC dimension");
  add_input_options(cmd_vc, v.in);
  cmd_vc->add_option("--k-fold", v.k_fold, "centers per range")->capture_default_str();
  cmd_vc->add_option("--max-d", v.max_d, "largest level to test")->capture_default_str();
  cmd_vc->add_option("--budget", v.budget, "subsets per level before sampling")
      ->capture_default_str();
  cmd_vc->add_option("--grid", v.grid,
                     "synthetic Euclidean centers per axis (0 off, -1 auto: 17 for points)");
  cmd_vc->add_option("--grid-margin", v.grid_margin, "grid padding, box diagonal units")
      ->capture_default_str();
  cmd_vc->add_option("--out", v.out, "output JSON path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_build->parsed()) return run_build(b);
    if (cmd_eval->parsed()) return run_evaluate(e);
    if (cmd_bench->parsed()) return run_bench(n);
    if (cmd_vc->parsed()) return run_vc(v);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 3;
  }
}
