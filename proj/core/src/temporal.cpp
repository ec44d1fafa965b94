#include "mlc/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "mlc/error.hpp"
#include "mlc/linalg.hpp"
#include "mlc/matfun.hpp"

namespace mlc {
namespace {

// Uniform integer in [0, bound) by rejection; unlike
// std::uniform_int_distribution the sequence is identical on every platform.
std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

bool is_zero(const DenseMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](double x) { return x == 0.0; });
}

double boundary_slack(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

}  // namespace

void TemporalNetwork::validate() const {
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const TemporalPiece& p = pieces[k];
    const std::string where = "piece " + std::to_string(k);
    if (!std::isfinite(p.t_start) || !std::isfinite(p.t_end) || !(p.t_start < p.t_end)) {
      throw DomainError(where + ": need finite t_start < t_end");
    }
    if (k > 0 && std::abs(p.t_start - pieces[k - 1].t_end) > boundary_slack(p.t_start)) {
      throw DomainError(where + ": pieces must be contiguous");
    }
    if (p.A.rows() != n || p.A.cols() != n) throw DomainError(where + ": adjacency is not n x n");
    for (std::size_t i = 0; i < n; ++i) {
      if (p.A(i, i) != 0.0) throw DomainError(where + ": nonzero diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        const double x = p.A(i, j);
        if (!std::isfinite(x) || x < 0.0) throw DomainError(where + ": entries must be finite and nonnegative");
      }
    }
    if (!p.directed && !p.A.is_symmetric()) throw DomainError(where + ": undirected piece is not symmetric");
  }
}

DenseMatrix generator(const DenseMatrix& a, const MLParams& p) {
  p.validate();
  if (!a.square()) throw DomainError("generator: matrix is not square");
  if (is_zero(a)) {
    // log(I / Gamma(beta))
    DenseMatrix g = DenseMatrix::identity(a.rows());
    return g * -log_gamma(p.beta);
  }
  return matrix_log_principal(ml_matrix_dense(a, p));
}

CommunicabilityState propagate(const CommunicabilityState& state, const DenseMatrix& g, double b, double delta) {
  const std::size_t n = state.W.rows();
  if (g.rows() != n || g.cols() != n) throw DomainError("propagate: generator has wrong shape");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("propagate: b must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("propagate: delta must be > 0");

  CommunicabilityState next;
  next.t = state.t + delta;
  if (b == 0.0) {
    next.W = state.W * matrix_exp(g * delta);
  } else {
    DenseMatrix block(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) block(i, j) = delta * (g(i, j) - (i == j ? b : 0.0));
      block(i, n + i) = delta;
    }
    const DenseMatrix e = matrix_exp(block);
    DenseMatrix decay(n, n), integral(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        decay(i, j) = e(i, j);
        integral(i, j) = e(i, n + j);
      }
    }
    next.W = state.W * decay + integral * b;
  }
  if (!next.W.all_finite()) throw OverflowError("propagate: W is not representable");
  return next;
}

std::vector<TemporalRanking> run_model(const TemporalNetwork& net, const MLParams& p, double b,
                                       std::span<const double> sample_times,
                                       std::vector<CommunicabilityState>* states) {
  net.validate();
  p.validate();
  if (net.pieces.empty()) throw DomainError("run_model: schedule has no pieces");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("run_model: b must be >= 0");
  const double t0 = net.t_begin();
  const double t1 = net.t_end();
  for (std::size_t k = 0; k < sample_times.size(); ++k) {
    const double s = sample_times[k];
    if (!(s >= t0 - boundary_slack(t0) && s <= t1 + boundary_slack(t1))) {
      throw DomainError("run_model: sample time " + std::to_string(s) + " outside [" + std::to_string(t0) + ", " +
                        std::to_string(t1) + "]");
    }
    if (k > 0 && s < sample_times[k - 1]) throw DomainError("run_model: sample times must be non-decreasing");
  }

  std::vector<std::optional<DenseMatrix>> gens(net.pieces.size());
  auto gen_for = [&](std::size_t k) -> const DenseMatrix& {
    if (!gens[k]) gens[k] = generator(net.pieces[k].A, p);
    return *gens[k];
  };

  const std::vector<double> ones(net.n, 1.0);
  std::vector<TemporalRanking> out;
  out.reserve(sample_times.size());
  if (states) states->clear();

  CommunicabilityState st = CommunicabilityState::initial(net.n, t0);
  std::size_t piece = 0;
  for (double s : sample_times) {
    while (st.t < s - boundary_slack(s)) {
      while (piece < net.pieces.size() && net.pieces[piece].t_end <= st.t + boundary_slack(st.t)) ++piece;
      if (piece == net.pieces.size()) break;
      const double stop = std::min(s, net.pieces[piece].t_end);
      const double delta = stop - st.t;
      if (delta <= 0.0) break;
      st = propagate(st, gen_for(piece), b, delta);
      // snap to the exact boundary so round-off does not accumulate
      st.t = stop;
    }
    TemporalRanking r;
    r.t = s;
    r.broadcast = st.W * ones;
    r.receive = transpose_times(st.W, ones);
    out.push_back(std::move(r));
    if (states) states->push_back({s, st.W});
  }
  return out;
}

DenseMatrix discrete_katz_product(const TemporalNetwork& net, double gamma) {
  net.validate();
  if (!(gamma > 0.0)) throw DomainError("discrete_katz_product: gamma must be > 0");
  DenseMatrix prod = DenseMatrix::identity(net.n);
  const DenseMatrix id = DenseMatrix::identity(net.n);
  for (std::size_t k = 0; k < net.pieces.size(); ++k) {
    const DenseMatrix& a = net.pieces[k].A;
    if (is_zero(a)) continue;
    const double rho = spectral_radius(a);
    if (!(gamma * rho < 1.0)) {
      throw DomainError("discrete_katz_product: gamma * rho(A_" + std::to_string(k) + ") = " +
                        std::to_string(gamma * rho) + " >= 1");
    }
    prod = prod * inverse(id - a * gamma);
  }
  return prod;
}

TemporalNetwork gen_alternating_tree(int levels, int noise_edges, double horizon, std::uint64_t seed) {
  if (levels < 2 || levels > 16) throw DomainError("gen_alternating_tree: levels must be in [2, 16]");
  if (noise_edges < 0) throw DomainError("gen_alternating_tree: noise_edges must be >= 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("gen_alternating_tree: horizon must be > 0");

  const std::size_t n = (std::size_t{1} << levels) - 1;
  DenseMatrix a1(n, n), a2(n, n);
  for (std::size_t k = 0; 2 * k + 2 < n + 1; ++k) {
    std::size_t depth = 0;
    for (std::size_t m = k + 1; m > 1; m >>= 1) ++depth;
    DenseMatrix& layer = depth % 2 == 0 ? a1 : a2;
    for (std::size_t c : {2 * k + 1, 2 * k + 2})
      if (c < n) layer(k, c) = 1.0;
  }

  std::mt19937_64 rng(seed);
  TemporalNetwork net;
  net.n = n;
  const auto intervals = static_cast<std::size_t>(std::ceil(horizon));
  for (std::size_t i = 0; i < intervals; ++i) {
    TemporalPiece piece;
    piece.t_start = static_cast<double>(i);
    piece.t_end = std::min(static_cast<double>(i + 1), horizon);
    piece.directed = true;
    piece.A = i % 2 == 0 ? a1 : a2;
    for (int e = 0; e < noise_edges; ++e) {
      const std::size_t u = draw_below(rng, n);
      std::size_t v = draw_below(rng, n - 1);
      if (v >= u) ++v;
      piece.A(u, v) = 1.0;
    }
    net.pieces.push_back(std::move(piece));
  }
  return net;
}

TemporalNetwork gen_phone_cascade(double tau, int rounds, const PhoneCascadeConfig& config) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("gen_phone_cascade: tau must be > 0");
  if (rounds < 1) throw DomainError("gen_phone_cascade: rounds must be >= 1");
  if (!(config.active_fraction > 0.0 && config.active_fraction <= 1.0)) {
    throw DomainError("gen_phone_cascade: active_fraction must be in (0, 1]");
  }
  const std::size_t n = config.n;
  TemporalNetwork net;
  net.n = n;
  for (int r = 1; r <= rounds; ++r) {
    TemporalPiece active;
    active.t_start = (r - 1) * tau;
    active.t_end = (r - 1 + config.active_fraction) * tau;
    active.A = DenseMatrix(n, n);
    std::vector<int> busy(n, 0);
    for (const PhoneCall& c : config.calls) {
      if (c.round != r) continue;
      if (c.u >= n || c.v >= n || c.u == c.v) throw DomainError("gen_phone_cascade: invalid call endpoints");
      if (busy[c.u]++ || busy[c.v]++) {
        throw DomainError("gen_phone_cascade: conference call in round " + std::to_string(r));
      }
      active.A(c.u, c.v) = active.A(c.v, c.u) = 1.0;
    }
    net.pieces.push_back(std::move(active));
    if (config.active_fraction < 1.0) {
      TemporalPiece idle;
      idle.t_start = net.pieces.back().t_end;
      idle.t_end = r * tau;
      idle.A = DenseMatrix(n, n);
      net.pieces.push_back(std::move(idle));
    }
  }
  return net;
}

}  // namespace mlc
