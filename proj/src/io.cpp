#include "pstar/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "pstar/error.hpp"

namespace pstar::io {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

// Splits into non-comment, non-blank lines of whitespace-separated tokens.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

long long parse_int(std::string_view tok, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::kParseError, at_line(line) + "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Graph parse_adjacency(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::kParseError, "adjacency matrix is empty");
  const int n = static_cast<int>(lines.size());
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    const Line& l = lines[i];
    if (static_cast<int>(l.tokens.size()) != n) {
      throw Error(ErrorCode::kNonSquare, at_line(l.number) + "row has " + std::to_string(l.tokens.size()) +
                                             " entries, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      const std::string_view tok = l.tokens[j];
      if (tok != "0" && tok != "1") {
        throw Error(ErrorCode::kParseError, at_line(l.number) + "entry " + std::to_string(j) + " is '" +
                                                std::string(tok) + "', expected 0 or 1");
      }
      m[i][j] = tok == "1" ? 1 : 0;
    }
    if (m[i][i] != 0) {
      throw Error(ErrorCode::kNonzeroDiagonal, at_line(l.number) + "diagonal entry " + std::to_string(i));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i]) {
        throw Error(ErrorCode::kAsymmetricEntry, at_line(lines[i].number) + "entry (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ") differs from (" + std::to_string(j) +
                                                     "," + std::to_string(i) + ") on line " +
                                                     std::to_string(lines[j].number));
      }
    }
  }
  return validate_graph(m);
}

Graph parse_edge_list(std::string_view text, int n) {
  Graph g(n);
  for (const Line& l : tokenize(text)) {
    if (l.tokens.size() != 2) {
      throw Error(ErrorCode::kParseError, at_line(l.number) + "expected 'i j', got " +
                                              std::to_string(l.tokens.size()) + " tokens");
    }
    const long long i = parse_int(l.tokens[0], l.number);
    const long long j = parse_int(l.tokens[1], l.number);
    if (i < 0 || i >= n || j < 0 || j >= n) {
      throw Error(ErrorCode::kVertexOutOfRange, at_line(l.number) + "vertex out of [0," + std::to_string(n) + ")");
    }
    if (i == j) throw Error(ErrorCode::kSelfLoop, at_line(l.number) + "self-loop on " + std::to_string(i));
    g.set_edge(static_cast<Vertex>(i), static_cast<Vertex>(j), true);
  }
  return g;
}

std::string write_adjacency(const Graph& g) {
  std::string out;
  out.reserve(static_cast<std::size_t>(g.size()) * (2 * g.size() + 1));
  for (Vertex i = 0; i < g.size(); ++i) {
    for (Vertex j = 0; j < g.size(); ++j) {
      if (j > 0) out += ' ';
      out += g.has_edge(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string write_edge_list(const Graph& g) {
  std::string out = "# n=" + std::to_string(g.size()) + "\n";
  for (auto [i, j] : g.edge_list()) out += std::to_string(i) + " " + std::to_string(j) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

Graph load_graph(const std::string& path, GraphFileFormat format, int n) {
  const std::string text = read_file(path);
  if (format == GraphFileFormat::kAdjacencyMatrix) return parse_adjacency(text);
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "edge-list input needs a vertex count");
  return parse_edge_list(text, n);
}

void write_samples(std::ostream& out, const SampleSet& data) {
  nlohmann::ordered_json header = {
      {"type", "header"},
      {"n", data.n},
      {"params", {{"theta1", data.params.theta1}, {"theta2", data.params.theta2}, {"theta3", data.params.theta3}}},
      {"burn_in", data.burn_in},
      {"thinning", data.thinning},
      {"seed", data.seed},
      {"chains", data.chains},
      {"num_samples", data.size()},
  };
  out << header.dump() << '\n';
  for (std::size_t k = 0; k < data.size(); ++k) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (auto [i, j] : data.graphs[k].edge_list()) edges.push_back({i, j});
    nlohmann::ordered_json rec = {
        {"index", k},
        {"edges", data.stats[k].edges},
        {"two_stars", data.stats[k].two_stars},
        {"triangles", data.stats[k].triangles},
        {"edge_list", std::move(edges)},
    };
    out << rec.dump() << '\n';
  }
}

SampleSet read_samples(std::istream& in) {
  SampleSet data;
  std::string line;
  int number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::ordered_json rec;
    try {
      rec = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::ordered_json::exception& e) {
      throw Error(ErrorCode::kParseError, at_line(number) + e.what());
    }
    try {
      if (!have_header) {
        if (rec.value("type", "") != "header") throw Error(ErrorCode::kParseError, at_line(number) + "missing header");
        data.n = rec.at("n").get<int>();
        const auto& p = rec.at("params");
        data.params = {p.at("theta1").get<double>(), p.at("theta2").get<double>(), p.at("theta3").get<double>()};
        data.burn_in = rec.value("burn_in", std::int64_t{0});
        data.thinning = rec.value("thinning", std::int64_t{0});
        data.seed = rec.value("seed", std::uint64_t{0});
        data.chains = rec.value("chains", 1);
        have_header = true;
        continue;
      }
      Graph g(data.n);
      for (const auto& e : rec.at("edge_list")) {
        const int i = e.at(0).get<int>();
        const int j = e.at(1).get<int>();
        check_pair(g, i, j);
        g.set_edge(i, j, true);
      }
      const SufficientStats s = suff_stats(g);
      const SufficientStats claimed{rec.at("edges").get<Count>(), rec.at("two_stars").get<Count>(),
                                    rec.at("triangles").get<Count>()};
      if (!(s == claimed)) {
        throw Error(ErrorCode::kParseError, at_line(number) + "recorded statistics do not match the edge list");
      }
      data.graphs.push_back(std::move(g));
      data.stats.push_back(s);
    } catch (const nlohmann::ordered_json::exception& e) {
      throw Error(ErrorCode::kParseError, at_line(number) + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::kParseError, "sample file has no header record");
  return data;
}

void write_trace_csv(std::ostream& out, const EstimateResult& result) {
  out << "iter,theta1,theta2,theta3,grad1,grad2,grad3,iter_time_ms\n";
  char buf[512];
  for (const TraceEntry& e : result.trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.6f\n", e.iteration, e.theta.theta1,
                  e.theta.theta2, e.theta.theta3, e.gradient[0], e.gradient[1], e.gradient[2], e.iter_time_ms);
    out << buf;
  }
}

nlohmann::ordered_json phase_to_json(const PhaseDiagnostic& d) {
  return {{"phase", std::string(to_string(d.phase))}, {"fixed_points", d.fixed_points}, {"derivatives", d.derivatives}};
}

nlohmann::ordered_json result_to_json(const EstimateResult& result) {
  return {
      {"method", std::string(to_string(result.method))},
      {"theta_star", {result.theta_star.theta1, result.theta_star.theta2, result.theta_star.theta3}},
      {"converged", result.converged},
      {"iterations", result.iterations},
      {"total_time_ms", result.total_time_ms},
      {"phase", result.phase_at_solution ? phase_to_json(*result.phase_at_solution) : nlohmann::ordered_json(nullptr)},
  };
}

nlohmann::ordered_json to_json(const RunRecord& r) {
  return {{"command", r.command}, {"config", r.config},          {"seed", r.seed},
          {"started_at", r.started_at}, {"finished_at", r.finished_at}, {"outputs", r.outputs}};
}

void append_run_record(const std::string& path, const RunRecord& r) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot append to log '" + path + "'");
  out << to_json(r).dump() << '\n';
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace pstar::io
