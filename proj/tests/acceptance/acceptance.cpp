// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--only N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mlc/centrality.hpp"
#include "mlc/error.hpp"
#include "mlc/format.hpp"
#include "mlc/graph.hpp"
#include "mlc/linalg.hpp"
#include "mlc/matfun.hpp"
#include "mlc/mlkernel.hpp"
#include "mlc/params.hpp"
#include "mlc/temporal.hpp"
#include "ml_reference.inc"
#include "support.hpp"

namespace {

using namespace mlc;

// Tolerances and limits, one block per criterion.
constexpr double kClosedFormRelTol = 1e-10;
constexpr double kClosedFormSeconds = 5.0;

constexpr int kMatrixOracleCount = 50;
constexpr std::size_t kMatrixOracleMaxN = 8;
constexpr double kMatrixOracleTol = 1e-8;
constexpr double kMatrixOracleSeconds = 10.0;

constexpr double kKrylovRelTol = 1e-6;
constexpr std::size_t kKrylovMaxM = 40;
constexpr double kKrylovSeconds = 5.0;

constexpr double kDolphinsLambda1 = 7.19;
constexpr double kDolphinsLambda1Tol = 0.01;
constexpr std::size_t kDolphinsN = 62;
constexpr double kMinnesotaLambda1 = 3.2324;
constexpr double kMinnesotaLambda2 = 3.2319;
constexpr double kMinnesotaTol = 1e-3;
constexpr int kSweepAlphas = 21;
constexpr int kSweepGammas = 40;
constexpr double kSweepGammaMin = 0.05;
constexpr double kSweepGammaMax = 2.0;

constexpr double kLimitTau = 0.95;
constexpr double kTinyGammaFraction = 1e-4;
constexpr double kGapRatio = 1.2;

constexpr double kContinuityTol = 1e-2;

constexpr int kLemmaSamples = 1000;
constexpr int kLemmaRMax = 500;
constexpr double kLemmaJustAbove = 1.0 + 1e-9;

constexpr int kKatzSchedules = 10;
constexpr std::size_t kKatzN = 10;
constexpr double kKatzTol = 1e-8;

constexpr double kRk4Step = 1e-3;
constexpr double kRk4Tol = 1e-6;
constexpr double kTreeHorizon = 20.0;
constexpr double kTreeB = 0.01;

constexpr double kPhoneGamma = 0.9;
constexpr double kPhoneB = 0.1;

const double kAlphas4[] = {0.25, 0.5, 0.75, 1.0};
const double kAlphas3[] = {0.0, 0.5, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome time_limited(Outcome o, double seconds, double limit) {
  if (seconds >= limit) {
    o.pass = false;
    o.detail += "; runtime " + fmt("%.2f", seconds) + " s exceeds " + fmt("%.0f", limit) + " s";
  }
  return o;
}

// gamma = fraction * mu(alpha), with the resolvent radius 1/rho at alpha = 0
double scaled_gamma(double alpha, double fraction, double rho) {
  return alpha == 0.0 ? fraction / rho : fraction * mu(alpha, rho).mu;
}

double max_rho(const TemporalNetwork& net) {
  double r = 0.0;
  for (const auto& piece : net.pieces) r = std::max(r, spectral_radius(piece.A));
  return r;
}

void append_matrix_csv(std::string& out, const std::string& tag, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out += tag + ',' + std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(m(i, j)) + '\n';
}

// 1 ------------------------------------------------------------------------

Outcome closed_forms() {
  const auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, double> worst;
  std::size_t count = 0;
  for (const auto& ref : test::kClosedFormReference) {
    const double v = ml_scalar(ref.z, ref.alpha, ref.beta);
    const double rel = std::abs(v - ref.value) / std::max(std::abs(ref.value), 1e-300);
    std::string key = ref.kind;
    if (key == "PhiK") key += std::to_string(static_cast<int>(ref.beta));
    worst[key] = std::max(worst[key], rel);
    ++count;
  }
  Outcome o{true, std::to_string(count) + " points;"};
  for (const auto& [kind, rel] : worst) {
    o.pass = o.pass && rel <= kClosedFormRelTol;
    o.detail += " " + kind + " " + fmt("%.1e", rel);
  }
  o.detail += " (tol " + fmt("%.0e", kClosedFormRelTol) + ")";
  return time_limited(o, elapsed(t0), kClosedFormSeconds);
}

// 2 ------------------------------------------------------------------------

Outcome matrix_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < kMatrixOracleCount; ++trial) {
    const std::size_t n = 2 + test::uniform_below(rng, kMatrixOracleMaxN - 1);
    // weighted adjacency: symmetric, nonnegative, zero diagonal
    const DenseMatrix a = test::random_weighted_adjacency(n, rng);
    const double rho = spectral_radius(a);
    for (double alpha : kAlphas4) {
      const MLParams p{alpha, 1.0, 0.9 * mu(alpha, rho).mu};
      try {
        const DenseMatrix s = ml_matrix_series(a, p);
        const DenseMatrix e = ml_matrix_eig(a, p);
        double scale = 0.0;
        for (double v : e.data()) scale = std::max(scale, std::abs(v));
        const double rel = max_abs_diff(s, e) / scale;
        worst = std::max(worst, rel);
        if (!(rel <= kMatrixOracleTol)) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  Outcome o{failures == 0, std::to_string(kMatrixOracleCount) + " matrices x 4 alphas, max rel diff " +
                               fmt("%.1e", worst) + " (tol " + fmt("%.0e", kMatrixOracleTol) + "), " +
                               std::to_string(failures) + " failures"};
  return time_limited(o, elapsed(t0), kMatrixOracleSeconds);
}

// 3 ------------------------------------------------------------------------

Outcome krylov_dolphins() {
  const auto t0 = std::chrono::steady_clock::now();
  Graph g;
  try {
    g = load_dataset("dolphins");
  } catch (const Error& e) {
    return {false, e.what()};
  }
  const double rho = graph_stats(g).rho;
  const Vector ones(g.n(), 1.0);
  Outcome o{true, ""};
  for (double alpha : kAlphas3) {
    const MLParams p{alpha, 1.0, scaled_gamma(alpha, 0.9, rho)};
    KrylovInfo info;
    try {
      const Vector kry = ml_action_krylov(g.adjacency(), ones, p, kKrylovMaxM, 1e-10, &info);
      const Vector dense = ml_matrix_dense(g.dense(), p) * ones;
      Vector diff(dense);
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= kry[i];
      const double rel = norm_inf(diff) / norm_inf(dense);
      o.pass = o.pass && rel <= kKrylovRelTol;
      o.detail += " alpha " + fmt("%.2g", alpha) + ": m " + std::to_string(info.m) + " rel " + fmt("%.1e", rel) + ";";
    } catch (const Error& e) {
      o.pass = false;
      o.detail += " alpha " + fmt("%.2g", alpha) + ": " + e.what() + ";";
    }
  }
  return time_limited(o, elapsed(t0), kKrylovSeconds);
}

// 4 ------------------------------------------------------------------------

// Every non-finite cell has gamma above the representability bound (1/rho at
// alpha = 0) and every cell with gamma <= mu(alpha) is finite.
Outcome nan_region(const Graph& g, const std::string& name) {
  std::vector<double> alphas, gammas;
  for (int i = 0; i < kSweepAlphas; ++i) alphas.push_back(static_cast<double>(i) / (kSweepAlphas - 1));
  for (int j = 0; j < kSweepGammas; ++j)
    gammas.push_back(kSweepGammaMin + (kSweepGammaMax - kSweepGammaMin) * j / (kSweepGammas - 1));
  const SweepGrid grid = sweep_grid(g, alphas, gammas, Baseline::Degree, SweepMeasure::Total);
  int nonfinite = 0, misplaced = 0, admissible_nan = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double bound = alphas[i] == 0.0 ? 1.0 / grid.rho : bound_representable(alphas[i], grid.rho);
    for (std::size_t j = 0; j < gammas.size(); ++j) {
      if (std::isfinite(grid.at(i, j))) continue;
      ++nonfinite;
      if (!(gammas[j] > bound)) ++misplaced;
      if (gammas[j] <= grid.mu_curve[i]) ++admissible_nan;
    }
  }
  return {misplaced == 0 && admissible_nan == 0 && nonfinite > 0,
          name + " " + std::to_string(kSweepAlphas) + "x" + std::to_string(kSweepGammas) + " grid: " +
              std::to_string(nonfinite) + " non-finite, " + std::to_string(misplaced) + " below bound, " +
              std::to_string(admissible_nan) + " at gamma <= mu"};
}

Outcome datasets() {
  Outcome o{true, ""};
  try {
    const Graph g = load_dataset("minnesota");
    const GraphStats s = graph_stats(g);
    const bool ok = std::abs(s.rho - kMinnesotaLambda1) <= kMinnesotaTol && s.lambda2 &&
                    std::abs(*s.lambda2 - kMinnesotaLambda2) <= kMinnesotaTol;
    o.pass = ok;
    o.detail += "minnesota n " + std::to_string(s.n) + " lambda1 " + fmt("%.5f", s.rho) + " lambda2 " +
                (s.lambda2 ? fmt("%.5f", *s.lambda2) : std::string("?")) + "; ";
    const Outcome r = nan_region(g, "minnesota");
    o.pass = o.pass && r.pass;
    o.detail += r.detail + "; ";
  } catch (const Error& e) {
    o.pass = false;
    o.detail += std::string(e.what()) + "; ";
  }
  try {
    const Graph g = load_dataset("dolphins");
    const GraphStats s = graph_stats(g);
    o.pass = o.pass && s.n == kDolphinsN && std::abs(s.rho - kDolphinsLambda1) <= kDolphinsLambda1Tol;
    o.detail += "dolphins n " + std::to_string(s.n) + " lambda1 " + fmt("%.4f", s.rho) + "; ";
    const Outcome r = nan_region(g, "dolphins");
    o.pass = o.pass && r.pass;
    o.detail += r.detail;
  } catch (const Error& e) {
    o.pass = false;
    o.detail += e.what();
  }
  return o;
}

// 5 ------------------------------------------------------------------------

struct LimitsRun {
  Outcome outcome;
  std::string csv;
};

LimitsRun limits_run() {
  LimitsRun run{{true, ""}, "case,alpha,node,score\n"};
  const Graph er = test::erdos_renyi(100, 0.1, 1);
  const double er_rho = graph_stats(er).rho;
  const Vector deg = degree_centrality(er).scores;
  double worst_deg = 1.0;
  std::size_t discordant = 0;
  for (double alpha : kAlphas4) {
    const Vector t = ml_total_communicability(er, {alpha, 1.0, kTinyGammaFraction * mu(alpha, er_rho).mu}).scores;
    worst_deg = std::min(worst_deg, kendall_tau(t, deg));
    for (std::size_t i = 0; i < t.size(); ++i) {
      run.csv += "degree," + format_double(alpha) + ',' + std::to_string(i) + ',' + format_double(t[i]) + '\n';
      for (std::size_t j = 0; j < t.size(); ++j) discordant += deg[i] > deg[j] && !(t[i] > t[j]);
    }
  }

  const Graph pc = test::planted_clique(100, 0.05, 12, 3);
  const GraphStats st = graph_stats(pc);
  const double ratio = st.lambda2 ? st.rho / *st.lambda2 : 0.0;
  const Vector ev = eigenvector_centrality(pc).scores;
  double worst_ev = 1.0;
  for (double alpha : kAlphas4) {
    const CentralityVector t = ml_total_communicability(pc, {alpha, 1.0, mu(alpha, st.rho).mu});
    if (!t.finite()) {
      worst_ev = -2.0;
      continue;
    }
    worst_ev = std::min(worst_ev, kendall_tau(t.scores, ev));
    for (std::size_t i = 0; i < t.scores.size(); ++i)
      run.csv += "eigenvector," + format_double(alpha) + ',' + std::to_string(i) + ',' + format_double(t.scores[i]) + '\n';
  }
  run.outcome.pass = worst_deg >= kLimitTau && ratio >= kGapRatio && worst_ev >= kLimitTau;
  run.outcome.detail = "ER(100, 0.1) min tau vs degree " + fmt("%.4f", worst_deg) + " (" +
                       std::to_string(discordant) + " discordant distinct-degree pairs); planted clique ratio " +
                       fmt("%.2f", ratio) + " min tau vs eigenvector " +
                       (worst_ev < -1.0 ? std::string("overflow") : fmt("%.4f", worst_ev));
  return run;
}

// 6 ------------------------------------------------------------------------

Outcome alpha_continuity() {
  Graph g;
  try {
    g = load_dataset("dolphins");
  } catch (const Error& e) {
    return {false, e.what()};
  }
  const double rho = graph_stats(g).rho;
  auto rel_gap = [](const Vector& a, const Vector& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      num = std::max(num, std::abs(a[i] - b[i]));
      den = std::max(den, std::abs(b[i]));
    }
    return num / den;
  };
  const double g0 = 0.5 * std::min(bound_monotone(1e-3), 1.0 / rho);
  const double gap0 = rel_gap(ml_subgraph_centrality(g, {1e-3, 1.0, g0}).scores,
                              ml_subgraph_centrality(g, {0.0, 1.0, g0}).scores);
  const double g1 = 0.5 * std::min(bound_monotone(0.999), 1.0 / rho);
  const double gap1 = rel_gap(ml_subgraph_centrality(g, {0.999, 1.0, g1}).scores,
                              ml_subgraph_centrality(g, {1.0, 1.0, g1}).scores);
  return {gap0 <= kContinuityTol && gap1 <= kContinuityTol,
          "alpha 0.001 vs 0: " + fmt("%.2e", gap0) + ", alpha 0.999 vs 1: " + fmt("%.2e", gap1)};
}

// 7 ------------------------------------------------------------------------

Outcome lemma_suites() {
  std::mt19937_64 rng(7);
  int random_fail = 0;
  for (int k = 0; k < kLemmaSamples; ++k) {
    double alpha = test::uniform01(rng);
    if (alpha == 0.0) alpha = 0.5;
    double frac = test::uniform01(rng);
    if (frac == 0.0) frac = 1.0;
    if (!check_coeff_monotone(alpha, frac * bound_monotone(alpha), kLemmaRMax)) ++random_fail;
  }
  int grid_miss = 0;
  for (int i = 1; i <= 19; ++i) {
    const double alpha = 0.05 * i;
    if (check_coeff_monotone(alpha, bound_monotone(alpha) * kLemmaJustAbove, kLemmaRMax)) ++grid_miss;
  }
  return {random_fail == 0 && grid_miss == 0,
          std::to_string(random_fail) + "/" + std::to_string(kLemmaSamples) + " admissible samples failed; " +
              std::to_string(grid_miss) + "/19 grid points passed just above Gamma(alpha+1)"};
}

// 8 ------------------------------------------------------------------------

LimitsRun katz_run() {
  LimitsRun run{{true, ""}, "schedule,i,j,w\n"};
  double worst = 0.0;
  for (int s = 1; s <= kKatzSchedules; ++s) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(s));
    const TemporalNetwork net = test::random_schedule(kKatzN, 5, 0.2, rng, s % 2 == 1);
    const double rho = max_rho(net);
    const double gamma = 0.9 / rho;
    std::vector<CommunicabilityState> states;
    const double end[] = {net.t_end()};
    run_model(net, {0.0, 1.0, gamma}, 0.0, end, &states);
    const double d = max_abs_diff(states.back().W, discrete_katz_product(net, gamma));
    worst = std::max(worst, d);
    append_matrix_csv(run.csv, std::to_string(s), states.back().W);
  }
  run.outcome = {worst <= kKatzTol, std::to_string(kKatzSchedules) + " schedules, max |W - prod| " + fmt("%.2e", worst)};
  return run;
}

// 9 ------------------------------------------------------------------------

LimitsRun rk4_run() {
  LimitsRun run{{true, ""}, "alpha,i,j,w\n"};
  const TemporalNetwork net = gen_alternating_tree(4, 5, kTreeHorizon, 1);
  const double rho = std::max(max_rho(net), 1.0);
  double worst = 0.0, worst_abs = 0.0;
  for (double alpha : kAlphas3) {
    const MLParams p{alpha, 1.0, scaled_gamma(alpha, 0.9, rho)};
    std::vector<CommunicabilityState> states;
    const double end[] = {net.t_end()};
    run_model(net, p, kTreeB, end, &states);
    DenseMatrix w = DenseMatrix::identity(net.n);
    for (const auto& piece : net.pieces)
      w = test::rk4_segment(w, generator(piece.A, p), kTreeB, piece.t_end - piece.t_start, kRk4Step);
    // entries grow to ~1e9 at alpha = 0, so the tolerance is taken relative to max |W|
    double scale = 0.0;
    for (double v : w.data()) scale = std::max(scale, std::abs(v));
    const double d = max_abs_diff(states.back().W, w);
    worst_abs = std::max(worst_abs, d);
    worst = std::max(worst, d / scale);
    append_matrix_csv(run.csv, format_double(alpha), states.back().W);
  }
  run.outcome = {worst <= kRk4Tol, "tree T = 20, b = 0.01, max |exact - RK4| / max |W| " + fmt("%.2e", worst) +
                                       " (absolute " + fmt("%.2e", worst_abs) + ")"};
  return run;
}

// 10 -----------------------------------------------------------------------

Outcome phone_cascade() {
  const TemporalNetwork net = gen_phone_cascade(0.1);
  const double end[] = {net.t_end()};
  Outcome o{true, ""};
  for (double alpha : kAlphas3) {
    const auto r = run_model(net, {alpha, 1.0, kPhoneGamma}, kPhoneB, end);
    const double a = r.back().broadcast[0], b = r.back().broadcast[1];
    o.pass = o.pass && a > b;
    o.detail += "alpha " + fmt("%.2g", alpha) + ": A " + fmt("%.6f", a) + " B " + fmt("%.6f", b) + "; ";
  }
  return o;
}

// 11 -----------------------------------------------------------------------

Outcome determinism() {
  std::string detail;
  bool pass = true;
  const std::pair<const char*, std::function<std::string()>> runs[] = {
      {"limits", [] { return limits_run().csv; }},
      {"katz", [] { return katz_run().csv; }},
      {"rk4", [] { return rk4_run().csv; }},
  };
  for (const auto& [name, fn] : runs) {
    const std::string a = fn(), b = fn();
    const bool same = a == b;
    pass = pass && same && !a.empty();
    detail += std::string(name) + (same ? " identical" : " differs") + " (" + std::to_string(a.size()) + " bytes); ";
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> criteria = {
      closed_forms,
      matrix_oracle,
      krylov_dolphins,
      datasets,
      [] { return limits_run().outcome; },
      alpha_continuity,
      lemma_suites,
      [] { return katz_run().outcome; },
      [] { return rk4_run().outcome; },
      phone_cascade,
      determinism,
  };
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s %s [%.2f s]\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), elapsed(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
