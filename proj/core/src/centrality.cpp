#include "mlc/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mlc/error.hpp"
#include "mlc/linalg.hpp"
#include "mlc/matfun.hpp"
#include "mlc/mlkernel.hpp"
#include "mlc/params.hpp"

namespace mlc {
namespace {

// Perron vector of a connected nonnegative symmetric matrix.
Vector perron_vector(const CsrMatrix& a, double tol) {
  const std::size_t n = a.n();
  Vector x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector ax(n);
  for (int it = 0; it < 20000; ++it) {
    a.multiply(x, ax);
    const double theta = dot(x, ax);
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) res2 += (ax[i] - theta * x[i]) * (ax[i] - theta * x[i]);
    if (theta > 0.0 && std::sqrt(res2) <= tol * theta) return x;
    for (std::size_t i = 0; i < n; ++i) ax[i] += x[i];
    const double nrm = norm_2(ax);
    for (std::size_t i = 0; i < n; ++i) x[i] = ax[i] / nrm;
  }
  // Small spectral gap: take the dominant eigenvector from the dense solver.
  const SymmetricEigen e = sym_eig(a.to_dense());
  return e.vectors.column(n - 1);
}

void attach_admissibility(CentralityVector& c, const Graph& g, const MLParams& p, double rho) {
  if (p.alpha > 1.0 || g.m() == 0) return;
  const AdmissibilityReport r = assess(p.alpha, p.gamma, rho);
  if (!r.admissible) {
    c.warnings.push_back("gamma = " + std::to_string(p.gamma) + " exceeds mu(" + std::to_string(p.alpha) +
                         ") = " + std::to_string(r.mu) + " (" + std::string(to_string(r.limiting)) + " bound)");
  }
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::Degree: return "degree";
    case Measure::Eigenvector: return "eigenvector";
    case Measure::MLSubgraph: return "subgraph";
    case Measure::MLTotalComm: return "total";
  }
  return "?";
}

bool CentralityVector::finite() const {
  return std::all_of(scores.begin(), scores.end(), [](double x) { return std::isfinite(x); });
}

CentralityVector degree_centrality(const Graph& g) {
  CentralityVector c;
  c.measure = Measure::Degree;
  const auto d = g.degrees();
  c.scores.assign(d.begin(), d.end());
  return c;
}

CentralityVector eigenvector_centrality(const Graph& g, double tol) {
  if (g.m() == 0) throw DomainError("eigenvector_centrality: graph has no edges");
  const std::vector<Component> comps = connected_components(g);
  const auto best = std::max_element(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return a.members.size() < b.members.size();
  });
  const std::vector<std::size_t>& members = best->members;
  const Graph& h = best->graph;

  Vector x = perron_vector(h.adjacency(), tol);
  double sum = std::accumulate(x.begin(), x.end(), 0.0);
  const double sgn = sum < 0.0 ? -1.0 : 1.0;
  for (double& v : x) v = std::max(0.0, sgn * v);
  const double nrm = norm_2(x);

  CentralityVector c;
  c.measure = Measure::Eigenvector;
  c.scores.assign(g.n(), 0.0);
  for (std::size_t k = 0; k < members.size(); ++k) c.scores[members[k]] = x[k] / nrm;
  if (comps.size() > 1) {
    c.warnings.push_back("graph is disconnected; scores restricted to the largest component (" +
                         std::to_string(members.size()) + " of " + std::to_string(g.n()) + " nodes)");
  }
  return c;
}

CentralityVector ml_subgraph_centrality(const Graph& g, const MLParams& p) {
  p.validate();
  CentralityVector c;
  c.measure = Measure::MLSubgraph;
  c.params = p;
  if (g.n() == 0) return c;
  c.scores.assign(g.n(), 0.0);
  double rho = 0.0;
  for (const Component& comp : connected_components(g)) {
    const SymmetricSpectrum spec(comp.graph.dense());
    const Vector d = spec.diagonal(spec.ml_values(p));
    for (std::size_t k = 0; k < d.size(); ++k) c.scores[comp.members[k]] = d[k];
    rho = std::max(rho, spec.rho());
  }
  attach_admissibility(c, g, p, rho);
  if (!c.finite()) {
    for (double& s : c.scores)
      if (!std::isfinite(s)) s = std::numeric_limits<double>::infinity();
    c.warnings.push_back("E(gamma A) overflows at alpha = " + std::to_string(p.alpha) +
                         ", gamma = " + std::to_string(p.gamma));
  }
  return c;
}

Vector ml_total_scores(const Graph& g, const MLParams& p, double tol) {
  p.validate();
  Vector scores(g.n(), 0.0);
  for (const Component& comp : connected_components(g)) {
    const std::size_t k = comp.members.size();
    Vector y;
    if (comp.graph.m() == 0) {
      y.assign(k, ml_scalar(0.0, p.alpha, p.beta));
    } else {
      y = ml_action_krylov(comp.graph.adjacency(), Vector(k, 1.0), p, std::min<std::size_t>(k, 200), tol);
    }
    for (std::size_t i = 0; i < k; ++i) scores[comp.members[i]] = y[i];
  }
  return scores;
}

CentralityVector ml_total_communicability(const Graph& g, const MLParams& p, double tol) {
  p.validate();
  CentralityVector c;
  c.measure = Measure::MLTotalComm;
  c.params = p;
  if (g.n() == 0) return c;
  try {
    c.scores = ml_total_scores(g, p, tol);
  } catch (const OverflowError&) {
    c.scores.assign(g.n(), std::numeric_limits<double>::infinity());
    c.warnings.push_back("E(gamma A) 1 overflows at alpha = " + std::to_string(p.alpha) +
                         ", gamma = " + std::to_string(p.gamma));
  }
  if (g.m() > 0 && p.alpha <= 1.0) {
    double rho = 0.0;
    try {
      rho = spectral_radius(g.adjacency(), 1e-8);
    } catch (const ConvergenceError&) {
      rho = lanczos_largest(g.adjacency(), 1, 1e-10).front();
    }
    attach_admissibility(c, g, p, rho);
  }
  return c;
}

double ml_communicability(const Graph& g, const MLParams& p, std::size_t i, std::size_t j) {
  if (i >= g.n() || j >= g.n()) throw DomainError("ml_communicability: node index out of range");
  if (i == j) throw DomainError("ml_communicability: requires i != j (use subgraph centrality for i == j)");
  return ml_matrix_dense(g.dense(), p)(i, j);
}

}  // namespace mlc
