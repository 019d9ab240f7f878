#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pstar/ascent.hpp"
#include "pstar/graph.hpp"
#include "pstar/sampler.hpp"

namespace pstar::io {

enum class GraphFileFormat { kAdjacencyMatrix, kEdgeList };

/// n lines of n whitespace-separated 0/1 tokens. Blank lines and lines whose
/// first non-blank character is '#' are skipped; CRLF is accepted. Errors
/// carry the 1-based line number.
Graph parse_adjacency(std::string_view text);

/// "i j" per line, 0-based; duplicate edges are idempotent.
Graph parse_edge_list(std::string_view text, int n);

std::string write_adjacency(const Graph& g);
std::string write_edge_list(const Graph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

Graph load_graph(const std::string& path, GraphFileFormat format, int n = 0);

/// JSON-lines: a header record with provenance, then one record per sample
/// {index, edges, two_stars, triangles, edge_list}.
void write_samples(std::ostream& out, const SampleSet& data);
SampleSet read_samples(std::istream& in);

/// Columns iter,theta1,theta2,theta3,grad1,grad2,grad3,iter_time_ms.
void write_trace_csv(std::ostream& out, const EstimateResult& result);

nlohmann::ordered_json phase_to_json(const PhaseDiagnostic& d);

/// {method, theta_star, converged, iterations, total_time_ms, phase}.
nlohmann::ordered_json result_to_json(const EstimateResult& result);

struct RunRecord {
  std::string command;
  nlohmann::ordered_json config;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

nlohmann::ordered_json to_json(const RunRecord& r);
/// Appends one JSON line to the log at `path`.
void append_run_record(const std::string& path, const RunRecord& r);

/// UTC timestamp, ISO 8601.
std::string now_iso8601();

}  // namespace pstar::io
