#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "pstar/error.hpp"
#include "pstar/estimators.hpp"
#include "pstar/exact.hpp"
#include "pstar/fixtures.hpp"
#include "pstar/io.hpp"
#include "pstar/mean_field.hpp"
#include "pstar/sampler.hpp"

namespace pstar::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct ThetaArgs {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  bool hamiltonian = false;

  NaturalParams natural() const {
    return hamiltonian ? to_natural(HamiltonianParams{t1, t2, t3}) : NaturalParams{t1, t2, t3};
  }
};

void add_theta(CLI::App* app, ThetaArgs& t) {
  app->add_option("--theta,--theta1", t.t1, "Edge parameter theta1 (theta with --hamiltonian)");
  app->add_option("--theta2", t.t2, "2-star parameter theta2 (sigma with --hamiltonian)");
  app->add_option("--theta3", t.t3, "Triangle parameter theta3 (alpha with --hamiltonian)");
  app->add_flag("--hamiltonian", t.hamiltonian, "Read the three values as (theta, sigma, alpha)");
}

Json theta_json(const NaturalParams& p) { return Json::array({p.theta1, p.theta2, p.theta3}); }

std::string phase_line(const PhaseDiagnostic& d) {
  std::string s(to_string(d.phase));
  if (d.fixed_points.size() == 1) {
    s += ", p*≈" + fmt6(d.fixed_points.front());
  } else if (!d.fixed_points.empty()) {
    s += ", p*≈{";
    for (std::size_t k = 0; k < d.fixed_points.size(); ++k) {
      if (k > 0) s += ", ";
      s += fmt6(d.fixed_points[k]);
    }
    s += "}";
  }
  return s;
}

// Iteration counts and step sizes of `reproduce table1`, per vertex count.
const std::map<int, std::pair<int, double>>& table1_schedule() {
  static const std::map<int, std::pair<int, double>> kSchedule = {
      {10, {1000, 1e-2}},   {20, {2500, 1e-3}},   {30, {50000, 1e-4}},  {40, {50000, 1e-4}},
      {50, {150000, 1e-5}}, {60, {150000, 1e-5}}, {70, {150000, 1e-5}}, {80, {900000, 1e-6}},
  };
  return kSchedule;
}

NaturalParams table1_truth(int n) { return {2.0 * -0.8, -0.2 / n, 2.0 / n}; }

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::uint64_t seed = 0;
  bool strict = false;
  Json config = Json::object();
  std::vector<std::pair<std::string, std::string>> pending_files;

  void emit_file(const std::string& path, std::string contents) {
    pending_files.emplace_back(path, std::move(contents));
  }
};

struct GraphInput {
  std::string path;
  std::string format = "adj";
  int n = 0;

  Graph load() const {
    if (path == "florentine") return fixtures::florentine();
    return io::load_graph(path, format == "edges" ? io::GraphFileFormat::kEdgeList : io::GraphFileFormat::kAdjacencyMatrix,
                          n);
  }
};

void add_graph_input(CLI::App* app, GraphInput& g, bool positional) {
  if (positional) {
    app->add_option("graph", g.path, "Graph file, or 'florentine' for the bundled fixture")->required();
  } else {
    app->add_option("--graph", g.path, "Graph file, or 'florentine' for the bundled fixture");
  }
  app->add_option("--format", g.format, "Graph file format")->check(CLI::IsMember({"adj", "edges"}));
  app->add_option("--n", g.n, "Vertex count (edge-list input)");
}

// ---- stats ----------------------------------------------------------------

int run_stats(Context& ctx, const GraphInput& in) {
  const SufficientStats s = suff_stats(in.load());
  Json j = {{"edges", s.edges}, {"two_stars", s.two_stars}, {"triangles", s.triangles}};
  ctx.out << j.dump() << '\n';
  return kExitOk;
}

// ---- phase ----------------------------------------------------------------

int run_phase(Context& ctx, const ThetaArgs& theta, int n, bool json) {
  const PhaseDiagnostic d = find_fixed_points(to_hamiltonian(theta.natural()), n);
  if (json) {
    ctx.out << io::phase_to_json(d).dump() << '\n';
  } else {
    ctx.out << phase_line(d) << '\n';
  }
  if (ctx.strict && d.phase != Phase::kHigh) return kExitLowTemperature;
  return kExitOk;
}

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
  ThetaArgs theta;
  int n = 10;
  std::int64_t num = 100;
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> thin;
  int chains = 1;
  std::string init = "random";
  double p0 = 0.5;
  GraphInput given;
  std::string out_path;
};

void warn_phase(Context& ctx, const NaturalParams& p, int n) {
  if (n < 3) return;
  const PhaseDiagnostic d = find_fixed_points(to_hamiltonian(p), n);
  if (d.phase != Phase::kHigh) {
    ctx.err << "warning: parameters are not in the high-temperature phase (" << phase_line(d)
            << "); mixing may be very slow\n";
  }
}

int run_sample(Context& ctx, const SampleArgs& a) {
  const NaturalParams p = a.theta.natural();
  warn_phase(ctx, p, a.n);
  SamplerConfig cfg;
  cfg.n = a.n;
  cfg.burn_in = a.burn_in;
  cfg.thinning = a.thin;
  cfg.num_samples = a.num;
  cfg.seed = ctx.seed;
  if (a.init == "empty") {
    cfg.initial = InitEmpty{};
  } else if (a.init == "random") {
    cfg.initial = InitRandom{a.p0};
  } else {
    if (a.given.path.empty()) throw Error(ErrorCode::kInvalidArgument, "--init given needs --graph");
    cfg.initial = InitGiven{a.given.load()};
  }
  ctx.config = {{"theta", theta_json(p)}, {"n", a.n},           {"num_samples", a.num},
                {"burn_in", cfg.burn_in.value_or(default_burn_in(a.n))},
                {"thinning", cfg.thinning.value_or(default_thinning(a.n))},
                {"chains", a.chains},     {"init", a.init}};
  const SampleSet data = run_chains(p, cfg, a.chains);
  std::ostringstream ss;
  io::write_samples(ss, data);
  if (a.out_path.empty()) {
    ctx.out << ss.str();
  } else {
    ctx.emit_file(a.out_path, ss.str());
    const MomentsVector m = empirical_moments(data);
    ctx.out << "wrote " << data.size() << " samples to " << a.out_path << "; mean stats (" << fmt6(m.mu1) << ", "
            << fmt6(m.mu2) << ", " << fmt6(m.mu3) << ")\n";
  }
  return kExitOk;
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string method = "mf";
  GraphInput graph;
  std::string samples_path;
  std::vector<double> moments;
  int iters = 1000;
  double gamma = 1e-3;
  std::vector<double> init;
  std::optional<double> grad_tol;
  int trace_every = 1;
  std::string trace_path;
  std::string out_path;
  double newton_tol = 1e-12;
};

int run_estimate(Context& ctx, const EstimateArgs& a) {
  GradientAscentConfig cfg;
  cfg.step = a.gamma;
  cfg.max_iter = a.iters;
  cfg.grad_tol = a.grad_tol;
  cfg.trace_every = a.trace_every;
  if (!a.init.empty()) cfg.init = {a.init.at(0), a.init.at(1), a.init.at(2)};

  std::optional<SampleSet> data;
  if (!a.samples_path.empty()) {
    std::ifstream in(a.samples_path);
    if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + a.samples_path + "'");
    data = io::read_samples(in);
  } else if (!a.graph.path.empty()) {
    SampleSet single;
    single.graphs.push_back(a.graph.load());
    single.n = single.graphs.front().size();
    single.stats.push_back(suff_stats(single.graphs.front()));
    data = std::move(single);
  }

  MomentsVector moments;
  int n = a.graph.n;
  if (!a.moments.empty()) {
    moments = {a.moments.at(0), a.moments.at(1), a.moments.at(2)};
    if (n < 1) throw Error(ErrorCode::kInvalidArgument, "--moments needs --n");
  } else if (data) {
    moments = empirical_moments(*data);
    n = data->n;
  } else if (a.method != "mple") {
    throw Error(ErrorCode::kInvalidArgument, "estimate needs --graph, --samples or --moments");
  }

  ctx.config = {{"method", a.method}, {"iters", a.iters}, {"gamma", a.gamma}, {"init", theta_json(cfg.init)},
                {"n", n},             {"moments", Json::array({moments.mu1, moments.mu2, moments.mu3})}};

  EstimateResult result;
  if (a.method == "mf") {
    NewtonConfig ncfg;
    ncfg.tol = a.newton_tol;
    result = mf_mlle(moments, n, cfg, ncfg);
  } else if (a.method == "mple") {
    if (!data) throw Error(ErrorCode::kInvalidArgument, "mple needs graphs: use --graph or --samples");
    result = mple(*data, cfg);
  } else {
    result = exact::mlle_exact(moments, n, cfg);
  }

  const Json j = io::result_to_json(result);
  ctx.out << j.dump() << '\n';
  if (!a.out_path.empty()) ctx.emit_file(a.out_path, j.dump(2) + "\n");
  if (!a.trace_path.empty()) {
    std::ostringstream ss;
    io::write_trace_csv(ss, result);
    ctx.emit_file(a.trace_path, ss.str());
  }
  if (result.phase_at_solution && result.phase_at_solution->phase != Phase::kHigh) {
    ctx.err << "warning: estimate is not in the high-temperature phase (" << phase_line(*result.phase_at_solution)
            << ")\n";
    if (ctx.strict) return kExitLowTemperature;
  }
  return kExitOk;
}

// ---- oracle ---------------------------------------------------------------

int run_oracle(Context& ctx, const std::string& what, const ThetaArgs& theta, int n, int limit) {
  const NaturalParams p = theta.natural();
  ctx.config = {{"oracle", what}, {"theta", theta_json(p)}, {"n", n}};
  if (what == "moments") {
    const MomentsVector m = exact::exact_moments(p, n, limit);
    ctx.out << Json{{"mu1", m.mu1}, {"mu2", m.mu2}, {"mu3", m.mu3}}.dump() << '\n';
  } else if (what == "partition") {
    const auto r = exact::log_partition(p, n, limit);
    ctx.out << Json{{"n", r.n}, {"log_partition", r.log_partition}}.dump() << '\n';
  } else {
    const std::vector<double> table = exact::exact_distribution(p, n);
    Json rows = Json::array();
    for (std::size_t mask = 0; mask < table.size(); ++mask) rows.push_back({{"mask", mask}, {"probability", table[mask]}});
    ctx.out << rows.dump() << '\n';
  }
  return kExitOk;
}

// ---- reproduce ------------------------------------------------------------

struct ReproduceArgs {
  std::string what;
  std::vector<int> sizes;
  std::int64_t samples = 950;
  int iters = 200;
  bool with_mple = false;
};

std::string triple(const NaturalParams& p) {
  return "(" + fmt6(p.theta1) + ", " + fmt6(p.theta2) + ", " + fmt6(p.theta3) + ")";
}

int reproduce_florentine(Context& ctx) {
  const Graph g = fixtures::florentine();
  const SufficientStats s = suff_stats(g);
  ctx.out << "stats: (" << s.edges << ", " << s.two_stars << ", " << s.triangles << ")\n";

  GradientAscentConfig mf_cfg;
  mf_cfg.step = 1e-4;
  mf_cfg.max_iter = 100000;
  mf_cfg.trace_every = 1000;
  const EstimateResult mf = mf_mlle(MomentsVector::from_stats(s), g.size(), mf_cfg);
  ctx.out << "MF-MLLE  " << triple(mf.theta_star) << "  reference (-1.5553, -0.0293, 0.2106)  "
          << fmt6(mf.total_time_ms / 1000.0) << " s, " << phase_line(*mf.phase_at_solution) << "\n";

  GradientAscentConfig pl_cfg;
  pl_cfg.step = 1e-3;
  pl_cfg.max_iter = 10000;
  pl_cfg.trace_every = 100;
  SampleSet single;
  single.n = g.size();
  single.graphs = {g};
  single.stats = {s};
  const EstimateResult pl = mple(single, pl_cfg);
  ctx.out << "MPLE     " << triple(pl.theta_star) << "  reference (-1.6231, -0.0188, 0.2459)  "
          << fmt6(pl.total_time_ms / 1000.0) << " s\n";
  ctx.config = {{"reproduce", "florentine"}};
  return kExitOk;
}

int reproduce_table1(Context& ctx, const ReproduceArgs& a) {
  std::vector<int> sizes = a.sizes.empty() ? std::vector<int>{10, 20} : a.sizes;
  ctx.out << "n,N_it,gamma,theta1,theta1_mf,theta2,theta2_mf,theta3,theta3_mf,phase";
  if (a.with_mple) ctx.out << ",theta1_pl,theta2_pl,theta3_pl";
  ctx.out << "\n";
  for (int n : sizes) {
    const auto it = table1_schedule().find(n);
    if (it == table1_schedule().end()) {
      throw Error(ErrorCode::kInvalidArgument, "table1 has no schedule for n = " + std::to_string(n));
    }
    const auto [iters, gamma] = it->second;
    const NaturalParams truth = table1_truth(n);
    SamplerConfig scfg;
    scfg.n = n;
    scfg.num_samples = a.samples;
    scfg.seed = ctx.seed;
    const SampleSet data = run_chain(truth, scfg);

    GradientAscentConfig cfg;
    cfg.step = gamma;
    cfg.max_iter = iters;
    cfg.trace_every = iters;
    const EstimateResult mf = mf_mlle(empirical_moments(data), n, cfg);
    ctx.out << n << "," << iters << "," << fmt6(gamma) << "," << fmt6(truth.theta1) << "," << fmt6(mf.theta_star.theta1)
            << "," << fmt6(truth.theta2) << "," << fmt6(mf.theta_star.theta2) << "," << fmt6(truth.theta3) << ","
            << fmt6(mf.theta_star.theta3) << "," << to_string(mf.phase_at_solution->phase);
    if (a.with_mple) {
      const EstimateResult pl = mple(data, cfg);
      ctx.out << "," << fmt6(pl.theta_star.theta1) << "," << fmt6(pl.theta_star.theta2) << ","
              << fmt6(pl.theta_star.theta3);
    }
    ctx.out << "\n" << std::flush;
  }
  ctx.config = {{"reproduce", "table1"}, {"sizes", sizes}, {"samples", a.samples}};
  return kExitOk;
}

int reproduce_bench(Context& ctx, const ReproduceArgs& a) {
  std::vector<int> sizes = a.sizes.empty() ? std::vector<int>{20, 40, 80} : a.sizes;
  ctx.out << "n,samples,iters,mf_ms_per_iter,mple_ms_per_iter\n";
  for (int n : sizes) {
    const NaturalParams truth = table1_truth(n);
    SamplerConfig scfg;
    scfg.n = n;
    scfg.num_samples = a.samples;
    scfg.seed = ctx.seed;
    const SampleSet data = run_chain(truth, scfg);

    GradientAscentConfig cfg;
    cfg.step = 1e-6;
    cfg.max_iter = a.iters;
    const auto mean_ms = [](const EstimateResult& r) {
      double total = 0.0;
      for (const auto& e : r.trace) total += e.iter_time_ms;
      return total / static_cast<double>(r.trace.size());
    };
    const EstimateResult mf = mf_mlle(empirical_moments(data), n, cfg);
    const PrecomputedDeltas deltas = precompute_deltas(data);
    const EstimateResult pl = mple(deltas, cfg);
    ctx.out << n << "," << a.samples << "," << a.iters << "," << fmt6(mean_ms(mf)) << "," << fmt6(mean_ms(pl)) << "\n"
            << std::flush;
  }
  ctx.config = {{"reproduce", "bench"}, {"sizes", sizes}, {"samples", a.samples}, {"iters", a.iters}};
  return kExitOk;
}

int exit_code_for(const Error& e, bool strict) {
  switch (e.code()) {
    case ErrorCode::kParseError:
    case ErrorCode::kNonSquare:
    case ErrorCode::kAsymmetricEntry:
    case ErrorCode::kNonzeroDiagonal:
    case ErrorCode::kVertexOutOfRange:
    case ErrorCode::kSelfLoop:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kTooLarge:
    case ErrorCode::kBadDimension:
    case ErrorCode::kEmptyDataset:
      return kExitUsage;
    case ErrorCode::kLowTemperatureEncountered:
    case ErrorCode::kLowTemperatureSuspected:
      return strict ? kExitLowTemperature : kExitNumerical;
    default:
      return kExitNumerical;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameter estimation for the 3-parameter p-star random graph model"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  std::string log_path;
  bool strict = false;
  app.add_option("--seed", seed, "Random seed")->envname("PSTAR_SEED");
  app.add_option("--log", log_path, "Append a JSON-lines run record to this file");
  app.add_flag("--strict", strict, "Exit with status 2 when the parameters leave the high-temperature phase");

  GraphInput stats_in;
  auto* stats_cmd = app.add_subcommand("stats", "Edge, 2-star and triangle counts of a graph");
  add_graph_input(stats_cmd, stats_in, true);

  ThetaArgs phase_theta;
  int phase_n = 0;
  bool phase_json = false;
  auto* phase_cmd = app.add_subcommand("phase", "Fixed points of the mean-field map and phase classification");
  add_theta(phase_cmd, phase_theta);
  phase_cmd->add_option("--n", phase_n, "Vertex count")->required();
  phase_cmd->add_flag("--json", phase_json, "Print the full diagnostic as JSON");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Metropolis-Hastings samples as JSON lines");
  add_theta(sample_cmd, sample.theta);
  sample_cmd->add_option("--n", sample.n, "Vertex count")->required();
  sample_cmd->add_option("--num", sample.num, "Number of kept samples");
  sample_cmd->add_option("--burn-in", sample.burn_in, "Burn-in steps (default ceil(10 n^2 log n))");
  sample_cmd->add_option("--thin", sample.thin, "Steps between kept samples (default n^2)");
  sample_cmd->add_option("--chains", sample.chains, "Independent chains run concurrently");
  sample_cmd->add_option("--init", sample.init, "Initial state")->check(CLI::IsMember({"empty", "random", "given"}));
  sample_cmd->add_option("--p0", sample.p0, "Edge density of a random initial state");
  sample_cmd->add_option("--graph", sample.given.path, "Initial graph for --init given");
  sample_cmd->add_option("--out", sample.out_path, "Output file (default stdout)");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate parameters from data");
  est_cmd->add_option("--method", est.method, "Estimator")->check(CLI::IsMember({"mf", "mple", "exact"}));
  add_graph_input(est_cmd, est.graph, false);
  est_cmd->add_option("--samples", est.samples_path, "JSON-lines sample file");
  est_cmd->add_option("--moments", est.moments, "Empirical moments mu1 mu2 mu3")->expected(3)->delimiter(',');
  est_cmd->add_option("--iters", est.iters, "Number of gradient-ascent iterations");
  est_cmd->add_option("--gamma", est.gamma, "Step size");
  est_cmd->add_option("--init", est.init, "Initial theta1 theta2 theta3")->expected(3)->delimiter(',');
  est_cmd->add_option("--grad-tol", est.grad_tol, "Stop once the gradient sup-norm is below this");
  est_cmd->add_option("--trace-every", est.trace_every, "Record every k-th iteration");
  est_cmd->add_option("--trace", est.trace_path, "Write the iteration trace as CSV");
  est_cmd->add_option("--out", est.out_path, "Write the result JSON");
  est_cmd->add_option("--newton-tol", est.newton_tol, "Residual tolerance of the mean-field Newton solver");

  ThetaArgs oracle_theta;
  int oracle_n = 3;
  int oracle_limit = exact::kDefaultEnumerationLimit;
  std::string oracle_what;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact enumeration for small n");
  oracle_cmd->add_option("what", oracle_what, "Quantity")->required()->check(
      CLI::IsMember({"moments", "partition", "distribution"}));
  add_theta(oracle_cmd, oracle_theta);
  oracle_cmd->add_option("--n", oracle_n, "Vertex count")->required();
  oracle_cmd->add_option("--limit", oracle_limit, "Largest n allowed for enumeration");

  ReproduceArgs repro;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run a published experiment");
  repro_cmd->add_option("what", repro.what, "Experiment")->required()->check(
      CLI::IsMember({"florentine", "table1", "bench"}));
  repro_cmd->add_option("--sizes", repro.sizes, "Vertex counts")->delimiter(',');
  repro_cmd->add_option("--samples", repro.samples, "Samples per size");
  repro_cmd->add_option("--iters", repro.iters, "Iterations per method (bench)");
  repro_cmd->add_flag("--mple", repro.with_mple, "Also run MPLE (table1)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx{out, err};
  ctx.seed = seed;
  ctx.strict = strict;
  io::RunRecord record;
  for (std::size_t k = 1; k < args.size(); ++k) record.command += (k > 1 ? " " : "") + args[k];
  record.seed = seed;
  record.started_at = io::now_iso8601();

  int code = kExitOk;
  try {
    if (stats_cmd->parsed()) {
      code = run_stats(ctx, stats_in);
    } else if (phase_cmd->parsed()) {
      code = run_phase(ctx, phase_theta, phase_n, phase_json);
    } else if (sample_cmd->parsed()) {
      code = run_sample(ctx, sample);
    } else if (est_cmd->parsed()) {
      code = run_estimate(ctx, est);
    } else if (oracle_cmd->parsed()) {
      code = run_oracle(ctx, oracle_what, oracle_theta, oracle_n, oracle_limit);
    } else if (repro.what == "florentine") {
      code = reproduce_florentine(ctx);
    } else if (repro.what == "table1") {
      code = reproduce_table1(ctx, repro);
    } else {
      code = reproduce_bench(ctx, repro);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    code = exit_code_for(e, strict);
  }

  record.finished_at = io::now_iso8601();
  record.config = ctx.config;
  for (const auto& [path, _] : ctx.pending_files) record.outputs.push_back(path);
  try {
    if (!log_path.empty()) io::append_run_record(log_path, record);
    for (const auto& [path, contents] : ctx.pending_files) io::write_file(path, contents);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}

}  // namespace pstar::cli
