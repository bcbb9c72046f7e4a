#ifndef CORESET_IO_HPP
#define CORESET_IO_HPP

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "coreset/eval.hpp"
#include "coreset/sampler.hpp"
#include "coreset/vcdim.hpp"

namespace coreset {

// Malformed input; the message names the file and, where known, the line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Points CSV: one row per point, d float columns, optional trailing
// `weight=<w>` column.
PointSet read_points_csv(const std::string& path);
// Full symmetric distance matrix, n rows of n comma-separated values.
PointSet read_matrix_csv(const std::string& path);
// Edge list `u v w` per line, 0-based ids, positive weights; the graph must
// be connected.
PointSet read_graph_edges(const std::string& path);
// One curve per line, vertices `x,y;x,y;...`.
PointSet read_curves_file(const std::string& path);
// One point set per line, same vertex syntax as curves.
PointSet read_sets_file(const std::string& path);

// Dispatch on a declared format name: points|matrix|graph|curves|sets.
PointSet read_input(const std::string& path, const std::string& format);

// Fixed "%.17g" rendering: round-trips exactly and is byte-stable.
std::string format_double(double x);

GroupKey parse_group_key(const std::string& text);

// Coreset CSV: header plus `point_index,weight,group_tag` rows in ascending
// index order.
void write_coreset_csv(const std::string& path, const Coreset& cs);
Coreset read_coreset_csv(const std::string& path);

// {k, z, epsilon, d_vc, seed, c0, m, n, groups, coreset_size}; callers may
// attach a "config" object with the fully resolved run configuration.
nlohmann::ordered_json coreset_meta(const Coreset& cs);

void write_json(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::ordered_json read_json(const std::string& path);

// `point_index,cluster,group_tag,j,b,ell`; empty cells where a coordinate
// does not apply to the group kind.
void write_partition_csv(const std::string& path, const GroupPartition& part,
                         const ApproxSolution& A);

nlohmann::ordered_json report_json(const DistortionReport& rep);
void write_errors_csv(const std::string& path, const DistortionReport& rep);

nlohmann::ordered_json vc_json(const VcEstimate& est);

}  // namespace coreset

#endif  // CORESET_IO_HPP
