#ifndef NEARLAP_SYNTHGEN_HPP
#define NEARLAP_SYNTHGEN_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nearlap/errors.hpp"
#include "nearlap/matrix.hpp"
#include "nearlap/rng.hpp"

// Synthetic instances: a Watts-Strogatz structure, a Laplacian with
// independent per-direction weights 10*U(0,1) on that structure, and a dense
// Gaussian perturbation of it.
//
// Draw order from a single mt19937_64 seeded with `seed`:
//   1. one uniform per lattice edge (rewire test), plus rejection-sampled
//      targets for rewired edges;
//   2. one weight per directed edge, in row-major edge order;
//   3. n*n standard normals, row-major.

namespace nearlap {

struct SynthParams {
  std::size_t n = 0;
  std::size_t k = 0;  // mean degree, even
  double beta = 0;    // rewiring probability
  double s = 0;       // noise scale
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 2 || k % 2 != 0) throw ValidationError("K must be even and >= 2, got " + std::to_string(k));
    if (k >= n) throw ValidationError("K must be < n (K = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
    if (n > kMaxDenseNodes) throw ValidationError("n exceeds dense cap " + std::to_string(kMaxDenseNodes));
    if (!(beta >= 0 && beta <= 1)) throw ValidationError("beta must lie in [0, 1]");
    if (!(s >= 0) || !std::isfinite(s)) throw ValidationError("noise scale s must be finite and >= 0");
  }
};

struct SynthInstance {
  SynthParams params;
  EdgeSet E;
  DenseMatrix L_star;
  DenseMatrix A;
};

// Watts-Strogatz small world: ring lattice joining i to i+1..i+K/2 (mod n),
// each lattice edge visited node-major then by offset, its far endpoint
// rewired with probability beta to a uniform node that is neither i nor
// already adjacent to i. Returned symmetrized (both directions).
inline EdgeSet watts_strogatz(std::size_t n, std::size_t k, double beta, Rng& rng) {
  SynthParams{n, k, beta, 0.0, 0}.validate();
  std::vector<std::unordered_set<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= k / 2; ++d) {
      const std::size_t j = (i + d) % n;
      adj[i].insert(j);
      adj[j].insert(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= k / 2; ++d) {
      const std::size_t j = (i + d) % n;
      const double u = uniform01(rng);
      if (u >= beta || adj[i].size() >= n - 1) continue;
      std::size_t t = 0;
      do {
        t = static_cast<std::size_t>(uniform_index(rng, n));
      } while (t == i || adj[i].contains(t));
      adj[i].erase(j);
      adj[j].erase(i);
      adj[i].insert(t);
      adj[t].insert(i);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : adj[i]) edges.emplace_back(i, j);
  return EdgeSet(n, std::move(edges));
}

// Laplacian with L_ij = -w_e for e = (i, j) in E.edges() order and
// L_ii = sum of row i's weights, accumulated in ascending column order.
inline DenseMatrix laplacian_from_edge_weights(const EdgeSet& E, std::span<const double> weights) {
  if (weights.size() != E.size()) throw DimensionError("one weight per edge required");
  DenseMatrix L(E.n());
  const auto& edges = E.edges();
  for (std::size_t e = 0; e < edges.size();) {
    const std::size_t i = edges[e].first;
    double degree = 0;
    for (; e < edges.size() && edges[e].first == i; ++e) {
      if (!(weights[e] >= 0)) throw ValidationError("edge weights must be nonnegative");
      L(i, edges[e].second) = -weights[e];
      degree += weights[e];
    }
    L(i, i) = degree;
  }
  return L;
}

namespace detail {

inline std::pair<EdgeSet, DenseMatrix> draw_laplacian(const SynthParams& p, Rng& rng) {
  EdgeSet E = watts_strogatz(p.n, p.k, p.beta, rng);
  std::vector<double> w(E.size());
  for (double& x : w) x = 10.0 * uniform_open01(rng);
  DenseMatrix L = laplacian_from_edge_weights(E, w);
  return {std::move(E), std::move(L)};
}

inline void add_noise(DenseMatrix& M, double s, Rng& rng) {
  NormalSampler normal;
  for (double& x : M.entries()) x += s * normal(rng);
}

}  // namespace detail

inline SynthInstance generate_instance(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  auto [E, L] = detail::draw_laplacian(params, rng);
  DenseMatrix A = L;
  detail::add_noise(A, params.s, rng);
  return {params, std::move(E), std::move(L), std::move(A)};
}

// Same draws as generate_instance, but keeps only the structure and the
// perturbed matrix (one n x n allocation instead of two).
inline std::pair<EdgeSet, DenseMatrix> generate_observation(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  auto [E, A] = detail::draw_laplacian(params, rng);
  detail::add_noise(A, params.s, rng);
  return {std::move(E), std::move(A)};
}

}  // namespace nearlap

#endif  // NEARLAP_SYNTHGEN_HPP
