#pragma once

// Dynamic communicability on piecewise-constant temporal networks:
//   W'(t) = -b (W - I) + W log E_{alpha,beta}(gamma A(t)),  W(t0) = I,
// broadcast = W 1, receive = W^T 1.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "mlc/dense_matrix.hpp"
#include "mlc/mlkernel.hpp"

namespace mlc {

struct TemporalPiece {
  double t_start = 0.0;
  double t_end = 0.0;
  DenseMatrix A;
  bool directed = false;
};

struct TemporalNetwork {
  std::size_t n = 0;
  std::vector<TemporalPiece> pieces;

  /// Contiguous, ordered pieces with t_start < t_end; every A is n x n,
  /// finite, nonnegative with zero diagonal, symmetric unless directed.
  /// Throws DomainError otherwise.
  void validate() const;
  double t_begin() const { return pieces.empty() ? 0.0 : pieces.front().t_start; }
  double t_end() const { return pieces.empty() ? 0.0 : pieces.back().t_end; }
};

struct CommunicabilityState {
  double t = 0.0;
  DenseMatrix W;

  static CommunicabilityState initial(std::size_t n, double t0 = 0.0) { return {t0, DenseMatrix::identity(n)}; }
};

struct TemporalRanking {
  double t = 0.0;
  Vector broadcast;
  Vector receive;
};

/// log E_{alpha,beta}(gamma A), principal branch.
DenseMatrix generator(const DenseMatrix& a, const MLParams& p);

/// Exact solution of W' = -b (W - I) + W G over [t, t + delta]:
/// W exp(-M delta) + b int_0^delta exp(-M s) ds with M = b I - G, both
/// blocks taken from one exponential of [[-M delta, delta I], [0, 0]].
CommunicabilityState propagate(const CommunicabilityState& state, const DenseMatrix& g, double b, double delta);

/// Integrates from W = I at the start of the schedule, splitting pieces at the
/// (non-decreasing) sample times, and reports broadcast/receive at each one.
/// Optionally returns the full states as well.
std::vector<TemporalRanking> run_model(const TemporalNetwork& net, const MLParams& p, double b,
                                       std::span<const double> sample_times,
                                       std::vector<CommunicabilityState>* states = nullptr);

/// prod_i (I - gamma A_i)^{-1}, left to right. Throws DomainError unless
/// gamma rho(A_i) < 1 for every piece.
DenseMatrix discrete_katz_product(const TemporalNetwork& net, double gamma);

/// Directed binary tree on 2^levels - 1 nodes (node k has children 2k+1 and
/// 2k+2). A1 holds the edges leaving even depths, A2 those leaving odd depths;
/// unit interval i uses A1 when i is even. Each interval also receives
/// `noise_edges` uniformly random directed edges (coalesced with existing
/// ones). Deterministic for a given seed.
TemporalNetwork gen_alternating_tree(int levels, int noise_edges, double horizon, std::uint64_t seed);

struct PhoneCall {
  int round = 1;  ///< 1-based
  std::size_t u = 0;
  std::size_t v = 0;
};

/// Nodes 0..3 are A, B, C, D. A calls C in round 1, starting a forwarding
/// cascade down a depth-3 binary tree below C (nodes 4..9); B calls C in
/// round 4, when nothing is forwarded. A and B each also call D once.
struct PhoneCascadeConfig {
  std::size_t n = 10;
  double active_fraction = 0.9;
  std::vector<PhoneCall> calls = {
      {1, 0, 2},                          // A-C
      {2, 2, 4}, {2, 0, 3},               // C-4, A-D
      {3, 2, 5}, {3, 4, 6},               // C-5, 4-6
      {4, 1, 2}, {4, 4, 7}, {4, 5, 8},    // B-C, 4-7, 5-8
      {5, 1, 3}, {5, 5, 9},               // B-D, 5-9
  };
};

/// Round i occupies [(i-1) tau, i tau): calls are active on the first
/// active_fraction of the slot and the rest is idle (A = 0). Throws
/// DomainError if a node has two calls in one round.
TemporalNetwork gen_phone_cascade(double tau, int rounds = 8, const PhoneCascadeConfig& config = {});

/// Schedule text format: "n <int>", then for each piece a line
/// "t_start t_end directed" followed by its "i j" edge lines (0-based; an
/// undirected edge sets both entries). '%' starts a comment line.
TemporalNetwork parse_schedule(std::istream& in);
TemporalNetwork parse_schedule(std::string_view text);
void write_schedule(std::ostream& out, const TemporalNetwork& net);

/// "t,node,broadcast,receive" rows after a '#' comment line.
void write_trajectory_csv(std::ostream& out, const std::vector<TemporalRanking>& rankings, std::string_view comment);

}  // namespace mlc
