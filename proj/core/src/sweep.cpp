#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <utility>
#include <ostream>
#include <string>
#include <thread>

#include "mlc/centrality.hpp"
#include "mlc/error.hpp"
#include "mlc/matfun.hpp"
#include "mlc/params.hpp"

namespace mlc {

std::string_view to_string(SweepMeasure m) { return m == SweepMeasure::Subgraph ? "subgraph" : "total"; }

std::string_view to_string(Baseline b) {
  switch (b) {
    case Baseline::Degree: return "degree";
    case Baseline::Eigenvector: return "eigenvector";
    case Baseline::Self: return "self";
  }
  return "?";
}

SweepGrid sweep_grid(const Graph& g, std::span<const double> alphas, std::span<const double> gammas,
                     Baseline baseline, SweepMeasure measure, const SweepOptions& options) {
  if (alphas.empty() || gammas.empty()) throw DomainError("sweep_grid: empty grid");
  if (g.m() == 0) throw DomainError("sweep_grid: graph has no edges");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("sweep_grid: alpha must lie in [0, 1], got " + std::to_string(a));
  }
  for (double c : gammas) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("sweep_grid: gamma must be > 0, got " + std::to_string(c));
  }

  SweepGrid out;
  out.alphas.assign(alphas.begin(), alphas.end());
  out.gammas.assign(gammas.begin(), gammas.end());
  out.baseline = baseline;
  out.measure = measure;
  out.kbar = options.kbar;
  const std::size_t na = alphas.size();
  const std::size_t ng = gammas.size();
  out.tau.assign(na * ng, std::numeric_limits<double>::quiet_NaN());

  // one spectrum per component keeps small components free of the giant one's rounding
  std::vector<std::pair<std::vector<std::size_t>, SymmetricSpectrum>> spectra;
  if (measure == SweepMeasure::Subgraph) {
    for (Component& comp : connected_components(g)) {
      spectra.emplace_back(std::move(comp.members), SymmetricSpectrum(comp.graph.dense()));
      out.rho = std::max(out.rho, spectra.back().second.rho());
    }
  } else {
    try {
      out.rho = spectral_radius(g.adjacency(), 1e-10);
    } catch (const ConvergenceError&) {
      out.rho = lanczos_largest(g.adjacency(), 1, 1e-10).front();
    }
  }
  out.mu_curve.resize(na);
  for (std::size_t i = 0; i < na; ++i) out.mu_curve[i] = mu(alphas[i], out.rho, options.kbar).mu;

  Vector base;
  if (baseline == Baseline::Degree) base = degree_centrality(g).scores;
  if (baseline == Baseline::Eigenvector) base = eigenvector_centrality(g).scores;

  auto cell = [&](std::size_t idx) -> double {
    const MLParams p{alphas[idx / ng], 1.0, gammas[idx % ng]};
    Vector scores;
    try {
      if (measure == SweepMeasure::Subgraph) {
        scores.assign(g.n(), 0.0);
        for (const auto& [members, spec] : spectra) {
          const Vector d = spec.diagonal(spec.ml_values(p));
          for (std::size_t k = 0; k < d.size(); ++k) scores[members[k]] = d[k];
        }
      } else {
        scores = ml_total_scores(g, p, options.krylov_tol);
      }
    } catch (const Error&) {
      // overflow, resolvent outside its disc, or no convergence
      return std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::all_of(scores.begin(), scores.end(), [](double s) { return std::isfinite(s); })) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    try {
      return kendall_tau(scores, baseline == Baseline::Self ? scores : base);
    } catch (const DegenerateError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, na * ng));
  if (threads <= 1) {
    for (std::size_t k = 0; k < na * ng; ++k) out.tau[k] = cell(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < na * ng; k = next++) out.tau[k] = cell(k);
      });
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepGrid& grid, std::string_view comment) {
  out << "# " << comment << '\n';
  out << "alpha,gamma,tau,finite\n";
  for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
    for (std::size_t j = 0; j < grid.gammas.size(); ++j) {
      const double t = grid.at(i, j);
      out << format_double(grid.alphas[i]) << ',' << format_double(grid.gammas[j]) << ',' << format_double(t) << ','
          << (std::isfinite(t) ? 1 : 0) << '\n';
    }
  }
}

void write_mu_csv(std::ostream& out, const SweepGrid& grid, std::string_view comment) {
  out << "# " << comment << '\n';
  out << "alpha,mu\n";
  for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
    out << format_double(grid.alphas[i]) << ',' << format_double(grid.mu_curve[i]) << '\n';
  }
}

}  // namespace mlc
