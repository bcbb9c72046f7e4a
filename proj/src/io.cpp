#include "coreset/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coreset {

namespace {

std::string location(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view token, const std::string& path, std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(location(path, line) + ": expected number, got '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_index(std::string_view token, const std::string& path, std::size_t line) {
  token = trim(token);
  std::size_t value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(location(path, line) + ": expected index, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool skippable(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

// Shared by the curves and sets formats: `x,y;x,y;...` per line.
std::vector<Eigen::MatrixXd> read_vertex_lists(const std::string& path, const char* what) {
  std::vector<Eigen::MatrixXd> items;
  Eigen::Index dim = -1;
  const std::vector<std::string> lines = read_lines(path);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (skippable(lines[li])) continue;
    const std::vector<std::string_view> verts = split(trim(lines[li]), ';');
    std::vector<std::vector<double>> rows;
    for (std::string_view v : verts) {
      v = trim(v);
      if (v.empty()) continue;  // tolerate a trailing ';'
      const std::vector<std::string_view> coords = split(v, ',');
      std::vector<double> row;
      row.reserve(coords.size());
      for (std::string_view c : coords) row.push_back(parse_double(c, path, li + 1));
      if (dim < 0) dim = static_cast<Eigen::Index>(row.size());
      if (static_cast<Eigen::Index>(row.size()) != dim) {
        throw ParseError(location(path, li + 1) + ": inconsistent vertex dimension");
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) {
      throw ParseError(location(path, li + 1) + ": empty " + what);
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    }
    items.push_back(std::move(m));
  }
  if (items.empty()) throw ParseError(path + ": no " + std::string(what) + "s found");
  return items;
}

void check_weights(const PointSet& ps, const std::string& path) {
  for (Eigen::Index i = 0; i < ps.weights.size(); ++i) {
    if (!(ps.weights(i) >= 0.0)) {
      throw ParseError(path + ": negative weight at point " + std::to_string(i));
    }
  }
  if (!(ps.total_weight() > 0.0)) throw ParseError(path + ": total weight must be positive");
}

}  // namespace

PointSet read_points_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  std::vector<double> weights;
  Eigen::Index dim = -1;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (skippable(lines[li])) continue;
    const std::vector<std::string_view> fields = split(trim(lines[li]), ',');
    std::vector<double> row;
    double w = 1.0;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const std::string_view tok = trim(fields[f]);
      if (tok.rfind("weight=", 0) == 0) {
        if (f + 1 != fields.size()) {
          throw ParseError(location(path, li + 1) + ": weight= must be the last column");
        }
        w = parse_double(tok.substr(7), path, li + 1);
      } else {
        row.push_back(parse_double(tok, path, li + 1));
      }
    }
    if (row.empty()) throw ParseError(location(path, li + 1) + ": no coordinates");
    if (dim < 0) dim = static_cast<Eigen::Index>(row.size());
    if (static_cast<Eigen::Index>(row.size()) != dim) {
      throw ParseError(location(path, li + 1) + ": expected " + std::to_string(dim) +
                       " coordinates, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
    weights.push_back(w);
  }
  if (rows.empty()) throw ParseError(path + ": no points found");
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), dim);
  Eigen::VectorXd wv(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) pts(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    wv(static_cast<Eigen::Index>(r)) = weights[r];
  }
  PointSet ps(std::make_shared<EuclideanBackend>(std::move(pts)), std::move(wv));
  check_weights(ps, path);
  return ps;
}

PointSet read_matrix_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (skippable(lines[li])) continue;
    const std::vector<std::string_view> fields = split(trim(lines[li]), ',');
    std::vector<double> row;
    for (std::string_view f : fields) row.push_back(parse_double(f, path, li + 1));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no rows found");
  const std::size_t n = rows.size();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
                       std::to_string(rows[r].size()) + " columns, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  try {
    return PointSet(std::make_shared<ExplicitMatrixBackend>(std::move(d)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PointSet read_graph_edges(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<GraphShortestPathBackend::Edge> edges;
  std::size_t n = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (skippable(lines[li])) continue;
    std::istringstream is{std::string(trim(lines[li]))};
    std::string ut, vt, wt, extra;
    if (!(is >> ut >> vt >> wt) || (is >> extra)) {
      throw ParseError(location(path, li + 1) + ": expected 'u v w'");
    }
    GraphShortestPathBackend::Edge e;
    e.u = parse_index(ut, path, li + 1);
    e.v = parse_index(vt, path, li + 1);
    e.w = parse_double(wt, path, li + 1);
    if (!(e.w > 0.0)) {
      throw ParseError(location(path, li + 1) + ": edge weight must be positive");
    }
    n = std::max({n, e.u + 1, e.v + 1});
    edges.push_back(e);
  }
  if (n == 0) throw ParseError(path + ": no edges found");
  auto backend = std::make_shared<GraphShortestPathBackend>(n, edges);
  if (!backend->connected()) throw ParseError(path + ": graph is not connected");
  return PointSet(std::move(backend));
}

PointSet read_curves_file(const std::string& path) {
  return PointSet(std::make_shared<DiscreteFrechetBackend>(read_vertex_lists(path, "curve")));
}

PointSet read_sets_file(const std::string& path) {
  return PointSet(std::make_shared<HausdorffBackend>(read_vertex_lists(path, "set")));
}

PointSet read_input(const std::string& path, const std::string& format) {
  if (format == "points") return read_points_csv(path);
  if (format == "matrix") return read_matrix_csv(path);
  if (format == "graph") return read_graph_edges(path);
  if (format == "curves") return read_curves_file(path);
  if (format == "sets") return read_sets_file(path);
  throw ParseError("unknown format '" + format + "' (expected points|matrix|graph|curves|sets)");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

GroupKey parse_group_key(const std::string& text) {
  const std::vector<std::string_view> parts = split(text, ':');
  const auto coord = [&](std::size_t i, std::string_view name) {
    if (i >= parts.size() || parts[i].substr(0, name.size() + 1) != std::string(name) + "=") {
      throw ParseError("bad group tag '" + text + "'");
    }
    const std::string_view v = parts[i].substr(name.size() + 1);
    int value = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), value);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
      throw ParseError("bad group tag '" + text + "'");
    }
    return value;
  };
  if (parts.empty()) throw ParseError("empty group tag");
  const std::string_view tag = parts[0];
  if (tag == "inner" && parts.size() == 1) return GroupKey::inner();
  if (tag == "main_min" && parts.size() == 2) return GroupKey::main_min(coord(1, "j"));
  if (tag == "main" && parts.size() == 4) {
    return GroupKey::main(coord(1, "j"), coord(2, "b"), coord(3, "l"));
  }
  if (tag == "outer_min" && parts.size() == 2) return GroupKey::outer_min(coord(1, "l"));
  if (tag == "outer" && parts.size() == 3) return GroupKey::outer(coord(1, "b"), coord(2, "l"));
  throw ParseError("bad group tag '" + text + "'");
}

void write_coreset_csv(const std::string& path, const Coreset& cs) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "point_index,weight,group_tag\n";
  for (const CoresetEntry& e : cs.entries) {
    out << e.index << ',' << format_double(e.weight) << ',' << to_string(e.provenance) << '\n';
  }
  if (!out) throw ParseError(path + ": write failed");
}

Coreset read_coreset_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  Coreset cs;
  bool first_content = true;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (skippable(lines[li])) continue;
    const std::string_view line = trim(lines[li]);
    if (first_content) {
      first_content = false;
      if (line == "point_index,weight,group_tag") continue;
    }
    const std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 3) {
      throw ParseError(location(path, li + 1) + ": expected 3 columns");
    }
    CoresetEntry e;
    e.index = parse_index(fields[0], path, li + 1);
    e.weight = parse_double(fields[1], path, li + 1);
    if (!(e.weight > 0.0)) {
      throw ParseError(location(path, li + 1) + ": weight must be positive");
    }
    try {
      e.provenance = parse_group_key(std::string(trim(fields[2])));
    } catch (const ParseError& err) {
      throw ParseError(location(path, li + 1) + ": " + err.what());
    }
    if (!cs.entries.empty() && cs.entries.back().index >= e.index) {
      throw ParseError(location(path, li + 1) + ": indices must be strictly increasing");
    }
    cs.entries.push_back(e);
  }
  return cs;
}

nlohmann::ordered_json coreset_meta(const Coreset& cs) {
  nlohmann::ordered_json j;
  j["k"] = cs.plan.k;
  j["z"] = cs.plan.z;
  j["epsilon"] = cs.plan.epsilon;
  j["d_vc"] = cs.plan.d_vc;
  j["seed"] = cs.plan.seed;
  j["c0"] = cs.plan.c0;
  j["m"] = cs.plan.m;
  j["n"] = cs.n;
  j["groups"] = cs.groups;
  j["coreset_size"] = cs.size();
  return j;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw ParseError(path + ": write failed");
}

nlohmann::ordered_json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_partition_csv(const std::string& path, const GroupPartition& part,
                         const ApproxSolution& A) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "point_index,cluster,group_tag,j,b,ell\n";
  for (std::size_t p = 0; p < part.key_of.size(); ++p) {
    const GroupKey& key = part.key_of[p];
    out << p << ',' << A.assignment[p] << ',' << tag_name(key.tag) << ',';
    if (part.ring_of[p] != INT_MIN) out << part.ring_of[p];
    out << ',';
    if (key.tag == GroupTag::Main || key.tag == GroupTag::Outer) out << key.b;
    out << ',';
    if (key.tag == GroupTag::Main || key.tag == GroupTag::Outer || key.tag == GroupTag::OuterMin) {
      out << key.ell;
    }
    out << '\n';
  }
  if (!out) throw ParseError(path + ": write failed");
}

nlohmann::ordered_json report_json(const DistortionReport& rep) {
  nlohmann::ordered_json j;
  j["family"] = rep.family;
  j["solutions"] = rep.solution_ids.size();
  j["skipped"] = rep.skipped;
  j["summary"] = {{"max", rep.max_error}, {"p99", rep.p99_error}, {"mean", rep.mean_error}};
  j["coreset_size"] = rep.coreset_size;
  j["coreset_weight"] = rep.coreset_weight;
  return j;
}

void write_errors_csv(const std::string& path, const DistortionReport& rep) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "solution_id,error\n";
  for (std::size_t i = 0; i < rep.errors.size(); ++i) {
    out << rep.solution_ids[i] << ',' << format_double(rep.errors[i]) << '\n';
  }
  if (!out) throw ParseError(path + ": write failed");
}

nlohmann::ordered_json vc_json(const VcEstimate& est) {
  nlohmann::ordered_json j;
  j["d_hat"] = est.d_hat;
  j["exhaustive"] = est.exhaustive;
  j["witness_subset"] = est.witness;
  j["trace_counts_by_size"] = est.trace_counts_by_size;
  return j;
}

}  // namespace coreset
