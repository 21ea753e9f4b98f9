#include "kdm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kdm/coloring.hpp"
#include "kdm/gen.hpp"
#include "kdm/oracle.hpp"
#include "kdm/stk.hpp"

namespace kdm::cli {

using ordered_json = nlohmann::ordered_json;

std::string RunMetrics::to_json() const {
  ordered_json j;
  j["algo"] = algo;
  j["k"] = k;
  j["eps"] = eps;
  j["weight"] = weight;
  j["per_color_weights"] = per_color_weights;
  j["edges_stored_peak"] = edges_stored_peak;
  j["pushes_total"] = pushes_total;
  j["elapsed_ms"] = elapsed_ms;
  j["n"] = n;
  j["m_processed"] = m_processed;
  return j.dump();
}

RunMetrics run_algorithm(const std::string& algo, const std::vector<WeightedEdge>& edges,
                         std::size_t n, std::size_t k, double eps,
                         KDisjointMatching* solution_out) {
  using Clock = std::chrono::steady_clock;
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), algo) == names.end())
    throw std::invalid_argument("unknown algorithm: " + algo);

  RunMetrics metrics;
  metrics.algo = algo;
  metrics.k = k;
  metrics.eps = eps;
  metrics.n = n;
  metrics.m_processed = edges.size();

  EdgeStream stream = EdgeStream::from_edges(edges, n);
  KDisjointMatching sol;
  const auto start = Clock::now();
  if (algo == "stk" || algo == "stk-dp") {
    StkRun run = algo == "stk" ? run_stk(stream, k, eps) : run_stk_dp(stream, k, eps);
    metrics.edges_stored_peak = run.metrics.edges_stored_peak;
    metrics.pushes_total = run.metrics.pushes_total;
    sol = std::move(run.solution);
  } else if (algo.starts_with("stkb")) {
    StkbOptions opts;
    opts.common_color = algo.find("-cc") != std::string::npos;
    opts.merge = algo.ends_with("-m");
    StkbRun run = run_stkb(stream, k, eps, opts);
    // The b-matching stack only grows while streaming.
    metrics.edges_stored_peak = run.pushes;
    metrics.pushes_total = run.pushes;
    sol = std::move(run.solution);
  } else if (algo == "greedy-it") {
    sol = greedy_iterative_baseline(edges, k);
    metrics.edges_stored_peak = metrics.pushes_total = edges.size();
  } else {
    sol = exact_kdm(edges, k).solution;
    metrics.edges_stored_peak = metrics.pushes_total = edges.size();
  }
  metrics.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  metrics.per_color_weights = per_color_weights(sol);
  metrics.weight = 0.0;
  for (double w : metrics.per_color_weights) metrics.weight += w;
  if (solution_out) *solution_out = std::move(sol);
  return metrics;
}

namespace {

std::string format_weight(double w) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, end);
}

}  // namespace

void write_solution(std::ostream& os, const KDisjointMatching& sol) {
  for (std::size_t c = 0; c < sol.k(); ++c) {
    os << "# color " << c + 1 << '\n';
    for (const auto& e : sol.matchings[c].edges)
      os << c + 1 << ' ' << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
  }
}

KDisjointMatching read_solution(std::istream& is) {
  KDisjointMatching sol;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    long long c = 0, u = 0, v = 0;
    std::string wtok, extra;
    if (!(ls >> c >> u >> v >> wtok) || (ls >> extra))
      throw ParseError(line_no, "expected \"c u v w\"");
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(wtok.data(), wtok.data() + wtok.size(), w);
    if (ec != std::errc() || ptr != wtok.data() + wtok.size())
      throw ParseError(line_no, "malformed weight");
    if (c < 1 || u < 0 || v < 0 || u > UINT32_MAX || v > UINT32_MAX)
      throw ParseError(line_no, "color or vertex out of range");
    if (static_cast<std::size_t>(c) > sol.k()) sol.matchings.resize(static_cast<std::size_t>(c));
    sol.matchings[static_cast<std::size_t>(c) - 1].edges.push_back(
        {static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  return sol;
}

namespace {

struct RunArgs {
  std::string input;
  std::string algo = "stk";
  std::size_t k = 1;
  double eps = kDefaultEps;
  std::string out;
  std::string solution_out;
  bool no_timing = false;
};

struct GenerateArgs {
  std::uint32_t scale = 10;
  std::uint32_t edge_factor = 8;
  std::string initiator = "er";
  std::string weights = "uniform";
  double wmin = 1.0;
  double wmax = 524288.0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> weight_seed;
  std::string out;
};

struct VerifyArgs {
  std::string graph;
  std::string solution;
  std::size_t k = 0;
  double eps = kDefaultEps;
  bool certificate = false;
};

struct LoadedGraph {
  std::vector<WeightedEdge> edges;
  InstanceStats stats;
};

LoadedGraph load_graph(const std::string& path) {
  EdgeStream stream = open_stream(path);
  LoadedGraph g;
  g.edges = collect(stream);
  g.stats = stream.stats();
  return g;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  if (args.k < 1) {
    err << "error: --k must be at least 1\n";
    return kInvalidArguments;
  }
  if (!(args.eps >= 0.0)) {
    err << "error: --eps must be >= 0\n";
    return kInvalidArguments;
  }
  LoadedGraph g;
  try {
    g = load_graph(args.input);
  } catch (const std::exception& e) {
    err << "error: " << args.input << ": " << e.what() << '\n';
    return kParseFailure;
  }

  RunMetrics metrics;
  KDisjointMatching sol;
  try {
    metrics = run_algorithm(args.algo, g.edges, g.stats.n, args.k, args.eps, &sol);
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kOracleTooLarge;
  }
  if (args.no_timing) metrics.elapsed_ms = 0;

  if (args.out.empty()) {
    out << metrics.to_json() << '\n';
  } else {
    std::ofstream os(args.out, std::ios::binary);
    os << metrics.to_json() << '\n';
    if (!os) {
      err << "error: cannot write " << args.out << '\n';
      return kInvalidArguments;
    }
  }
  if (!args.solution_out.empty()) {
    std::ofstream os(args.solution_out, std::ios::binary);
    write_solution(os, sol);
    if (!os) {
      err << "error: cannot write " << args.solution_out << '\n';
      return kInvalidArguments;
    }
  }
  return kOk;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  RmatParams params;
  params.scale = args.scale;
  params.edge_factor = args.edge_factor;
  params.seed = args.seed;
  const auto initiator = parse_initiator(args.initiator);
  if (!initiator) {
    err << "error: --initiator must be b, g, er or four comma-separated probabilities\n";
    return kInvalidArguments;
  }
  params.initiator = *initiator;

  WeightDistribution dist;
  if (args.weights == "uniform") {
    dist.kind = WeightKind::uniform;
  } else if (args.weights == "exponential") {
    dist.kind = WeightKind::exponential;
  } else {
    err << "error: --weights must be uniform or exponential\n";
    return kInvalidArguments;
  }
  dist.lo = args.wmin;
  dist.hi = args.wmax;
  dist.seed = args.weight_seed.value_or(args.seed ^ 0x9E3779B97F4A7C15ull);

  GeneratedGraph g;
  try {
    g = generate_rmat_edges(params, dist);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }
  try {
    write_edge_list(args.out, g.stats.n, g.edges);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }
  ordered_json j;
  j["n"] = g.stats.n;
  j["m"] = g.stats.m;
  j["w_min"] = g.stats.w_min;
  j["w_max"] = g.stats.w_max;
  j["max_degree"] = max_degree(g.edges);
  j["self_loops_dropped"] = g.self_loops_dropped;
  j["duplicates_dropped"] = g.duplicates_dropped;
  out << j.dump() << '\n';
  return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (!(args.eps >= 0.0)) {
    err << "error: --eps must be >= 0\n";
    return kInvalidArguments;
  }
  LoadedGraph g;
  KDisjointMatching sol;
  try {
    g = load_graph(args.graph);
  } catch (const std::exception& e) {
    err << "error: " << args.graph << ": " << e.what() << '\n';
    return kParseFailure;
  }
  try {
    std::ifstream is(args.solution);
    if (!is) throw std::runtime_error("cannot open file");
    sol = read_solution(is);
  } catch (const std::exception& e) {
    err << "error: " << args.solution << ": " << e.what() << '\n';
    return kParseFailure;
  }

  const std::size_t k = args.k == 0 ? std::max<std::size_t>(sol.k(), 1) : args.k;
  if (sol.k() > k) {
    err << "invalid: color " << sol.k() << " exceeds k = " << k << '\n';
    return kInvalidSolution;
  }
  sol.matchings.resize(k);

  const auto report = validate_kdm(sol, g.edges);
  if (!report.ok) {
    for (const auto& v : report.violations) err << "invalid: " << v << '\n';
    return kInvalidSolution;
  }

  ordered_json j;
  j["valid"] = true;
  j["k"] = k;
  j["weight"] = solution_weight(sol);
  if (args.certificate) {
    // Replays the stack algorithm over the same edge order to recover its
    // terminal duals.
    StkState state(k, args.eps);
    for (const auto& e : g.edges) state.stream_edge(e);
    state.finalize();
    DualCertificate cert;
    try {
      cert = build_dual_certificate(state, g.edges);
    } catch (const CertificateInfeasible& e) {
      err << "certificate: " << e.what() << '\n';
      return kCertificateFailure;
    }
    const bool ratio_ok = certified_ratio_check(sol, cert, args.eps);
    j["certificate"] = {{"objective", cert.objective()},
                        {"y_total", cert.y_total},
                        {"z_total", cert.z_total},
                        {"ratio_ok", ratio_ok}};
    if (!ratio_ok) {
      err << "certificate: (3+2eps) * weight = " << (3.0 + 2.0 * args.eps) * solution_weight(sol)
          << " is below the dual objective " << cert.objective() << '\n';
      out << j.dump() << '\n';
      return kCertificateFailure;
    }
  }
  out << j.dump() << '\n';
  return kOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-streaming k-disjoint matching toolkit", "kdm"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an algorithm over an edge-list file");
  run_cmd->add_option("input", run.input, "Edge-list file")->required();
  run_cmd->add_option("--algo", run.algo, "Algorithm")
      ->check(CLI::IsMember(algorithm_names()));
  run_cmd->add_option("--k", run.k, "Number of matchings");
  run_cmd->add_option("--eps", run.eps, "Approximation parameter");
  run_cmd->add_option("--out", run.out, "Metrics JSON file (default: stdout)");
  run_cmd->add_option("--solution-out", run.solution_out, "Solution file");
  run_cmd->add_flag("--no-timing", run.no_timing, "Report elapsed_ms as 0");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate an R-MAT instance");
  gen_cmd->add_option("--scale", gen.scale, "log2 of the vertex count")->required();
  gen_cmd->add_option("--edge-factor", gen.edge_factor, "Sampled edges per vertex");
  gen_cmd->add_option("--initiator", gen.initiator, "b, g, er or a,b,c,d");
  gen_cmd->add_option("--weights", gen.weights, "uniform or exponential");
  gen_cmd->add_option("--wmin", gen.wmin, "Smallest weight");
  gen_cmd->add_option("--wmax", gen.wmax, "Largest weight");
  gen_cmd->add_option("--seed", gen.seed, "Graph seed");
  gen_cmd->add_option("--weight-seed", gen.weight_seed, "Weight seed");
  gen_cmd->add_option("--out", gen.out, "Output file")->required();

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Validate a solution file against a graph");
  ver_cmd->add_option("graph", ver.graph, "Edge-list file")->required();
  ver_cmd->add_option("solution", ver.solution, "Solution file")->required();
  ver_cmd->add_option("--k", ver.k, "Number of matchings (default: largest color)");
  ver_cmd->add_option("--eps", ver.eps, "Approximation parameter of the stk run");
  ver_cmd->add_flag("--certificate", ver.certificate, "Check the dual certificate of an stk run");

  std::vector<std::string> argv_store{"kdm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  if (*run_cmd) return cmd_run(run, out, err);
  if (*gen_cmd) return cmd_generate(gen, out, err);
  return cmd_verify(ver, out, err);
}

}  // namespace kdm::cli
