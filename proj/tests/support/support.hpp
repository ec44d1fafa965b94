#pragma once

// Shared fixtures for unit and acceptance tests: seeded random graphs,
// brute-force oracles and a fixed-step RK4 integrator.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "mlc/dense_matrix.hpp"
#include "mlc/error.hpp"
#include "mlc/graph.hpp"
#include "mlc/temporal.hpp"

namespace mlc::test {

// Platform-independent draws (std distributions are implementation-defined).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_below(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

// Erdos-Renyi background plus a clique on the first k nodes.
inline Graph planted_clique(std::size_t n, double p, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((i < k && j < k) || uniform01(rng) < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

inline DenseMatrix random_symmetric(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = scale * (2.0 * uniform01(rng) - 1.0);
  return a;
}

// Symmetric, nonnegative, zero diagonal: a weighted adjacency matrix.
inline DenseMatrix random_weighted_adjacency(std::size_t n, std::mt19937_64& rng) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = uniform01(rng);
  return a;
}

// n unit-length pieces of random undirected 0/1 adjacency.
inline TemporalNetwork random_schedule(std::size_t n, std::size_t pieces, double p, std::mt19937_64& rng,
                                       bool directed = false) {
  TemporalNetwork net;
  net.n = n;
  for (std::size_t k = 0; k < pieces; ++k) {
    TemporalPiece piece;
    piece.t_start = static_cast<double>(k);
    piece.t_end = static_cast<double>(k + 1);
    piece.directed = directed;
    piece.A = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
        if (i == j || uniform01(rng) >= p) continue;
        piece.A(i, j) = 1.0;
        if (!directed) piece.A(j, i) = 1.0;
      }
    }
    net.pieces.push_back(std::move(piece));
  }
  return net;
}

// O(n^2) tau-b by pair enumeration.
inline double kendall_tau_bruteforce(const std::vector<double>& x, const std::vector<double>& y) {
  double concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        ++tie_x;
      } else if (dy == 0) {
        ++tie_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  return (concordant - discordant) / std::sqrt((concordant + discordant + tie_x) * (concordant + discordant + tie_y));
}

// W' = -b (W - I) + W G with classical RK4 at fixed step h.
inline DenseMatrix rk4_segment(DenseMatrix w, const DenseMatrix& g, double b, double duration, double h) {
  const std::size_t n = w.rows();
  const DenseMatrix id = DenseMatrix::identity(n);
  auto rhs = [&](const DenseMatrix& x) { return (x - id) * -b + x * g; };
  const auto steps = static_cast<std::size_t>(std::llround(duration / h));
  const double dt = duration / static_cast<double>(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const DenseMatrix k1 = rhs(w);
    const DenseMatrix k2 = rhs(w + k1 * (dt / 2));
    const DenseMatrix k3 = rhs(w + k2 * (dt / 2));
    const DenseMatrix k4 = rhs(w + k3 * dt);
    w += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6);
  }
  return w;
}

inline std::optional<Graph> try_dataset(const char* name) {
  try {
    return load_dataset(name);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace mlc::test
