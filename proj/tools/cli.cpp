#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlc/centrality.hpp"
#include "mlc/error.hpp"
#include "mlc/format.hpp"
#include "mlc/graph.hpp"
#include "mlc/matfun.hpp"
#include "mlc/params.hpp"
#include "mlc/temporal.hpp"

namespace mlc::cli {
namespace {

namespace fs = std::filesystem;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure inside a computation, tagged with the (alpha, gamma) cell.
struct CellFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  std::string text;

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      v[static_cast<std::size_t>(k)] = count == 1 ? start : start + (stop - start) * k / (count - 1);
    }
    if (count > 1) v.back() = stop;
    return v;
  }
};

GridSpec parse_grid(const std::string& text, const char* what) {
  GridSpec g;
  g.text = text;
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ValidationError(std::string(what) + ": expected start:stop:count, got '" + text + "'");
  try {
    std::size_t pos = 0;
    const std::string a = text.substr(0, c1), b = text.substr(c1 + 1, c2 - c1 - 1), n = text.substr(c2 + 1);
    g.start = std::stod(a, &pos);
    if (pos != a.size()) throw std::invalid_argument(a);
    g.stop = std::stod(b, &pos);
    if (pos != b.size()) throw std::invalid_argument(b);
    g.count = std::stoi(n, &pos);
    if (pos != n.size()) throw std::invalid_argument(n);
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": expected start:stop:count, got '" + text + "'");
  }
  if (g.count < 1) throw ValidationError(std::string(what) + ": count must be >= 1");
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) throw ValidationError(std::string(what) + ": non-finite bound");
  return g;
}

int kbar_from_env() {
  const char* env = std::getenv("ML_KBAR");
  if (!env || !*env) return kDefaultKbar;
  int v = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1 || v > 4932) {
    throw ValidationError("ML_KBAR must be an integer in [1, 4932], got '" + s + "'");
  }
  return v;
}

Graph load_graph(const std::string& spec) {
  const fs::path p(spec);
  if (fs::exists(p)) return read_graph(p);
  if (!p.has_extension() && !p.has_parent_path()) return load_dataset(spec);
  throw ValidationError("cannot read graph '" + spec + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << content;
  if (!f) throw ValidationError("cannot write '" + path + "'");
}

std::string cell_tag(double alpha, double gamma) {
  return "(alpha = " + format_double(alpha) + ", gamma = " + format_double(gamma) + ")";
}

double rho_of(const Graph& g) {
  try {
    return spectral_radius(g.adjacency(), 1e-10);
  } catch (const ConvergenceError&) {
    return lanczos_largest(g.adjacency(), 1, 1e-10).front();
  }
}

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string output_path;
  std::string mu_path;
  std::string stats_path;
  std::string schedule_out;
  std::string measure = "total";
  std::string baseline = "degree";
  std::string scenario;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double b = 0.0;
  double z = 0.0;
  double rho = 0.0;
  double tol = 1e-10;
  std::optional<double> gamma_opt;
  std::optional<int> kbar_opt;
  std::string alpha_grid;
  std::string gamma_grid;
  std::string times_grid;
  unsigned threads = 0;
  int levels = 4;
  int noise = 5;
  double horizon = 20.0;
  std::uint64_t seed = 1;
  double tau = 0.1;
  int rounds = 8;
};

int cmd_mlfun(const RunConfig& c, std::ostream& out) {
  const MLParams p{c.alpha, c.beta, c.gamma};
  p.validate();
  if (!std::isfinite(c.z)) throw ValidationError("--z must be finite");
  if (c.alpha == 0.0 && !(std::abs(c.gamma * c.z) < 1.0)) {
    throw ValidationError("alpha = 0 requires |gamma z| < 1");
  }
  try {
    const MLEvaluation e = ml_evaluate(c.gamma * c.z, c.alpha, c.beta, std::max(c.tol, 1e-15));
    out << format_double(e.value) << '\n';
  } catch (const ConvergenceError& e) {
    throw CellFailure(std::string(e.what()) + " " + cell_tag(c.alpha, c.gamma));
  }
  return kOk;
}

int cmd_params(const RunConfig& c, std::ostream& out) {
  const int kbar = c.kbar_opt.value_or(kbar_from_env());
  double rho = c.rho;
  if (!c.input_path.empty()) rho = rho_of(load_graph(c.input_path));
  if (!(rho > 0.0)) throw ValidationError("need --rho > 0 or a --graph with edges");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw ValidationError("--alpha must lie in [0, 1]");
  const AdmissibilityReport r =
      c.gamma_opt ? assess(c.alpha, *c.gamma_opt, rho, kbar) : mu(c.alpha, rho, kbar);
  out << "alpha=" << format_double(r.alpha) << '\n';
  out << "rho=" << format_double(rho) << '\n';
  out << "kbar=" << kbar << '\n';
  out << "bound_monotone=" << format_double(r.bound_monotone) << '\n';
  out << "bound_representable=" << format_double(r.bound_representable) << '\n';
  out << "mu=" << format_double(r.mu) << '\n';
  out << "limiting=" << to_string(r.limiting) << '\n';
  if (c.gamma_opt) {
    out << "gamma=" << format_double(*c.gamma_opt) << '\n';
    out << "admissible=" << (r.admissible ? "true" : "false") << '\n';
  }
  return kOk;
}

int cmd_centrality(const RunConfig& c, std::ostream& err) {
  const Graph g = load_graph(c.input_path);
  const MLParams p{c.alpha, c.beta, c.gamma};
  CentralityVector v;
  if (c.measure == "degree") {
    v = degree_centrality(g);
  } else if (c.measure == "eigenvector") {
    v = eigenvector_centrality(g);
  } else {
    p.validate();
    try {
      v = c.measure == "subgraph" ? ml_subgraph_centrality(g, p) : ml_total_communicability(g, p, c.tol);
    } catch (const ConvergenceError& e) {
      throw CellFailure(std::string(e.what()) + " " + cell_tag(c.alpha, c.gamma));
    }
  }
  for (const auto& w : v.warnings) err << "warning: " << w << '\n';
  if (!v.finite()) throw CellFailure("scores overflow " + cell_tag(c.alpha, c.gamma));

  std::ostringstream csv;
  csv << "# mlc centrality graph=" << c.input_path << " measure=" << c.measure;
  if (v.params) {
    csv << " alpha=" << format_double(p.alpha) << " beta=" << format_double(p.beta)
        << " gamma=" << format_double(p.gamma) << " tol=" << format_double(c.tol);
  }
  csv << '\n' << "node,score\n";
  for (std::size_t i = 0; i < v.scores.size(); ++i) csv << i << ',' << format_double(v.scores[i]) << '\n';
  write_file(c.output_path, csv.str());

  if (!c.stats_path.empty()) {
    const GraphStats s = graph_stats(g);
    nlohmann::ordered_json j;
    j["graph"] = c.input_path;
    j["n"] = s.n;
    j["m"] = s.m;
    j["max_degree"] = s.degrees.empty() ? 0 : *std::max_element(s.degrees.begin(), s.degrees.end());
    j["rho"] = s.rho;
    j["lambda2"] = s.lambda2 ? nlohmann::ordered_json(*s.lambda2) : nlohmann::ordered_json(nullptr);
    j["measure"] = c.measure;
    if (v.params) {
      j["alpha"] = p.alpha;
      j["beta"] = p.beta;
      j["gamma"] = p.gamma;
      if (p.alpha <= 1.0 && s.rho > 0.0) j["mu"] = mu(p.alpha, s.rho).mu;
    }
    j["warnings"] = v.warnings;
    write_file(c.stats_path, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_sweep(const RunConfig& c) {
  const Graph g = load_graph(c.input_path);
  const GridSpec ag = parse_grid(c.alpha_grid, "--alpha");
  const GridSpec gg = parse_grid(c.gamma_grid, "--gamma");
  const auto alphas = ag.values();
  const auto gammas = gg.values();
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("--alpha grid must lie in [0, 1]");
  for (double x : gammas)
    if (!(x > 0.0)) throw ValidationError("--gamma grid must be > 0");
  if (g.m() == 0) throw ValidationError("graph has no edges");

  SweepOptions opt;
  opt.threads = c.threads;
  opt.kbar = c.kbar_opt.value_or(kbar_from_env());
  opt.krylov_tol = c.tol;
  const Baseline base = c.baseline == "degree" ? Baseline::Degree
                        : c.baseline == "eigenvector" ? Baseline::Eigenvector
                                                      : Baseline::Self;
  const SweepMeasure meas = c.measure == "subgraph" ? SweepMeasure::Subgraph : SweepMeasure::Total;
  const SweepGrid grid = sweep_grid(g, alphas, gammas, base, meas, opt);

  std::ostringstream comment;
  comment << "mlc sweep graph=" << c.input_path << " measure=" << c.measure << " baseline=" << c.baseline
          << " alpha=" << ag.text << " gamma=" << gg.text << " kbar=" << opt.kbar << " tol=" << format_double(c.tol)
          << " rho=" << format_double(grid.rho);
  std::ostringstream csv, mu_csv;
  write_sweep_csv(csv, grid, comment.str());
  write_mu_csv(mu_csv, grid, comment.str());
  write_file(c.output_path, csv.str());
  std::string mu_path = c.mu_path;
  if (mu_path.empty()) {
    const fs::path o(c.output_path);
    mu_path = (o.parent_path() / (o.stem().string() + "_mu" + o.extension().string())).string();
  }
  write_file(mu_path, mu_csv.str());
  return kOk;
}

int cmd_temporal(const RunConfig& c) {
  TemporalNetwork net;
  std::ostringstream comment;
  comment << "mlc temporal";
  if (!c.input_path.empty()) {
    std::ifstream in(c.input_path);
    if (!in) throw ValidationError("cannot read schedule '" + c.input_path + "'");
    net = parse_schedule(in);
    comment << " schedule=" << c.input_path;
  } else if (c.scenario == "tree") {
    net = gen_alternating_tree(c.levels, c.noise, c.horizon, c.seed);
    comment << " scenario=tree levels=" << c.levels << " noise=" << c.noise << " horizon=" << format_double(c.horizon)
            << " seed=" << c.seed;
  } else if (c.scenario == "phone") {
    net = gen_phone_cascade(c.tau, c.rounds);
    comment << " scenario=phone tau=" << format_double(c.tau) << " rounds=" << c.rounds;
  } else {
    throw ValidationError("need --schedule or --scenario tree|phone");
  }
  if (net.pieces.empty()) throw ValidationError("schedule has no pieces");
  const MLParams p{c.alpha, c.beta, c.gamma};
  p.validate();
  if (!(c.b >= 0.0)) throw ValidationError("--b must be >= 0");

  std::vector<double> times;
  if (!c.times_grid.empty()) {
    const GridSpec tg = parse_grid(c.times_grid, "--times");
    times = tg.values();
    comment << " times=" << tg.text;
  } else {
    for (const auto& piece : net.pieces) times.push_back(piece.t_end);
    comment << " times=piece-ends";
  }
  comment << " alpha=" << format_double(p.alpha) << " beta=" << format_double(p.beta)
          << " gamma=" << format_double(p.gamma) << " b=" << format_double(c.b);

  if (!c.schedule_out.empty()) {
    std::ostringstream s;
    write_schedule(s, net);
    write_file(c.schedule_out, s.str());
  }
  std::vector<TemporalRanking> r;
  try {
    r = run_model(net, p, c.b, times);
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  } catch (const Error& e) {
    throw CellFailure(std::string(e.what()) + " " + cell_tag(c.alpha, c.gamma));
  }
  std::ostringstream csv;
  write_trajectory_csv(csv, r, comment.str());
  write_file(c.output_path, csv.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mittag-Leffler network centrality toolkit", args.empty() ? "mlc" : args.front()};
  app.require_subcommand(1);
  RunConfig c;
  const std::vector<std::string> measures{"degree", "eigenvector", "subgraph", "total"};

  auto* mlfun = app.add_subcommand("mlfun", "evaluate E_{alpha,beta}(gamma z)");
  mlfun->add_option("--alpha", c.alpha, "alpha >= 0")->required();
  mlfun->add_option("--beta", c.beta, "beta > 0")->capture_default_str();
  mlfun->add_option("--z", c.z, "real argument")->required();
  mlfun->add_option("--gamma", c.gamma, "scale folded into z")->capture_default_str();
  mlfun->add_option("--tol", c.tol, "relative tolerance")->capture_default_str();

  auto* params = app.add_subcommand("params", "admissible gamma range mu(alpha)");
  params->add_option("--alpha", c.alpha, "alpha in [0, 1]")->required();
  auto* rho_opt = params->add_option("--rho", c.rho, "spectral radius");
  auto* graph_opt = params->add_option("--graph", c.input_path, "graph file or dataset name");
  rho_opt->excludes(graph_opt);
  params->add_option("--gamma", c.gamma_opt, "gamma to assess");
  params->add_option("--kbar", c.kbar_opt, "decimal exponent of the largest double (default $ML_KBAR or 308)");

  auto* cent = app.add_subcommand("centrality", "node centrality scores");
  cent->add_option("--graph", c.input_path, "graph file or dataset name")->required();
  cent->add_option("--measure", c.measure)->check(CLI::IsMember(measures))->capture_default_str();
  cent->add_option("--alpha", c.alpha)->capture_default_str();
  cent->add_option("--beta", c.beta)->capture_default_str();
  cent->add_option("--gamma", c.gamma)->capture_default_str();
  cent->add_option("--tol", c.tol, "Krylov tolerance")->capture_default_str();
  cent->add_option("--output", c.output_path, "CSV output")->required();
  cent->add_option("--stats", c.stats_path, "JSON graph summary");

  auto* sweep = app.add_subcommand("sweep", "Kendall tau grid over (alpha, gamma)");
  sweep->add_option("--graph", c.input_path, "graph file or dataset name")->required();
  sweep->add_option("--measure", c.measure)->check(CLI::IsMember({"subgraph", "total"}))->capture_default_str();
  sweep->add_option("--baseline", c.baseline)
      ->check(CLI::IsMember({"degree", "eigenvector", "self"}))
      ->capture_default_str();
  sweep->add_option("--alpha", c.alpha_grid, "start:stop:count")->required();
  sweep->add_option("--gamma", c.gamma_grid, "start:stop:count")->required();
  sweep->add_option("--output", c.output_path, "grid CSV")->required();
  sweep->add_option("--mu", c.mu_path, "mu(alpha) CSV (default <output>_mu.csv)");
  sweep->add_option("--threads", c.threads, "worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--kbar", c.kbar_opt, "decimal exponent of the largest double");
  sweep->add_option("--tol", c.tol, "Krylov tolerance")->capture_default_str();

  auto* temporal = app.add_subcommand("temporal", "dynamic broadcast/receive centrality");
  auto* sched = temporal->add_option("--schedule", c.input_path, "schedule file");
  auto* scen = temporal->add_option("--scenario", c.scenario)->check(CLI::IsMember({"tree", "phone"}));
  sched->excludes(scen);
  temporal->add_option("--levels", c.levels, "tree levels")->capture_default_str();
  temporal->add_option("--noise", c.noise, "random edges per interval")->capture_default_str();
  temporal->add_option("--horizon", c.horizon)->capture_default_str();
  temporal->add_option("--seed", c.seed)->capture_default_str();
  temporal->add_option("--tau", c.tau, "phone round length")->capture_default_str();
  temporal->add_option("--rounds", c.rounds)->capture_default_str();
  temporal->add_option("--alpha", c.alpha)->capture_default_str();
  temporal->add_option("--beta", c.beta)->capture_default_str();
  temporal->add_option("--gamma", c.gamma)->capture_default_str();
  temporal->add_option("--b", c.b, "decay rate")->capture_default_str();
  temporal->add_option("--times", c.times_grid, "sample times start:stop:count (default: piece ends)");
  temporal->add_option("--output", c.output_path, "trajectory CSV")->required();
  temporal->add_option("--write-schedule", c.schedule_out, "also write the schedule used");

  try {
    // CLI11 consumes the vector form back to front; argv[0] is dropped.
    std::vector<std::string> rev;
    if (args.size() > 1) rev.assign(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (mlfun->parsed()) return cmd_mlfun(c, out);
    if (params->parsed()) return cmd_params(c, out);
    if (cent->parsed()) return cmd_centrality(c, err);
    if (sweep->parsed()) return cmd_sweep(c);
    if (temporal->parsed()) return cmd_temporal(c);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const CellFailure& e) {
    err << "error: " << e.what() << '\n';
    return kComputeFailure;
  } catch (const Error& e) {
    const std::string what = e.what();
    err << "error: " << what;
    if (what.find("alpha =") == std::string::npos) err << ' ' << cell_tag(c.alpha, c.gamma);
    err << '\n';
    return kComputeFailure;
  }
  err << "error: no subcommand\n";
  return kValidationError;
}

}  // namespace mlc::cli
