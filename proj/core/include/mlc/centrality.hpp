#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlc/dense_matrix.hpp"
#include "mlc/format.hpp"
#include "mlc/graph.hpp"
#include "mlc/mlkernel.hpp"

namespace mlc {

enum class Measure { Degree, Eigenvector, MLSubgraph, MLTotalComm };

std::string_view to_string(Measure m);

struct CentralityVector {
  Vector scores;
  Measure measure = Measure::Degree;
  std::optional<MLParams> params;
  std::vector<std::string> warnings;

  std::size_t size() const { return scores.size(); }
  bool finite() const;
};

CentralityVector degree_centrality(const Graph& g);

/// Unit-norm nonnegative Perron vector of the largest connected component
/// (power iteration on A + I, dense eigensolver if that stalls); nodes outside
/// that component score 0 and a warning is attached.
CentralityVector eigenvector_centrality(const Graph& g, double tol = 1e-10);

/// Diagonal of E_{alpha,beta}(gamma A). Overflow gives +inf scores and a
/// warning instead of an exception; alpha = 0 with gamma rho >= 1 throws
/// DomainError.
CentralityVector ml_subgraph_centrality(const Graph& g, const MLParams& p);

/// E_{alpha,beta}(gamma A) 1 by Lanczos with m_max = min(size, 200), one
/// connected component at a time. Overflow gives +inf scores and a warning.
CentralityVector ml_total_communicability(const Graph& g, const MLParams& p, double tol = 1e-10);

/// Bare scores of ml_total_communicability. Throws OverflowError instead of
/// returning +inf.
Vector ml_total_scores(const Graph& g, const MLParams& p, double tol = 1e-10);

/// (i, j) entry of E_{alpha,beta}(gamma A), i != j.
double ml_communicability(const Graph& g, const MLParams& p, std::size_t i, std::size_t j);

/// Tie-adjusted Kendall tau_b in O(n log n). Throws DegenerateError if either
/// input is constant and DomainError for mismatched lengths, n < 2 or NaN.
double kendall_tau(std::span<const double> x, std::span<const double> y);

enum class SweepMeasure { Subgraph, Total };
enum class Baseline { Degree, Eigenvector, Self };

std::string_view to_string(SweepMeasure m);
std::string_view to_string(Baseline b);

struct SweepGrid {
  Vector alphas;
  Vector gammas;
  /// Row-major alphas.size() x gammas.size(); NaN where the cell overflowed or
  /// is outside the domain (alpha = 0 with gamma rho >= 1).
  std::vector<double> tau;
  Baseline baseline = Baseline::Degree;
  SweepMeasure measure = SweepMeasure::Total;
  Vector mu_curve;
  double rho = 0.0;
  int kbar = kDefaultKbar;

  double at(std::size_t ia, std::size_t ig) const { return tau[ia * gammas.size() + ig]; }
};

struct SweepOptions {
  unsigned threads = 0;  ///< 0 = hardware concurrency
  int kbar = kDefaultKbar;
  double krylov_tol = 1e-10;
};

/// Kendall tau between the ML measure and the baseline at every (alpha,
/// gamma). Cells are independent; the output order is row-major regardless of
/// thread scheduling. Requires 0 <= alpha <= 1.
SweepGrid sweep_grid(const Graph& g, std::span<const double> alphas, std::span<const double> gammas,
                     Baseline baseline, SweepMeasure measure, const SweepOptions& options = {});

/// "alpha,gamma,tau,finite" rows after a '#' comment line.
void write_sweep_csv(std::ostream& out, const SweepGrid& grid, std::string_view comment);
/// "alpha,mu" rows after a '#' comment line.
void write_mu_csv(std::ostream& out, const SweepGrid& grid, std::string_view comment);

}  // namespace mlc
