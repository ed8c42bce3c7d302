#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dgsp/graph.hpp"

namespace dgsp {

/// Seeded generators for four directed random-graph families. The literature
/// defines the models for undirected graphs; the directed conventions used
/// here are documented per generator below. Edge-count targets are
/// approximate by nature.
struct ModelParams {
  enum class Model { ErdosRenyi, WattsStrogatz, BarabasiAlbert, KlemmEguiluz };

  Model model = Model::ErdosRenyi;
  int n = 0;
  std::uint64_t seed = 0;
  int max_retries = 50;  // weak-connectivity regeneration budget

  double p = 0.0;     // ER: probability per ordered pair
  int k = 0;          // WS: out-neighbors per node on the start ring (even)
  double beta = 0.0;  // WS: rewiring probability
  int seed_size = 0;  // BA / KE: initial core size
  int avg_deg = 0;    // BA: target average total degree (m = avg_deg / 2)
  double mu = 0.0;    // KE: probability of attaching to a non-active node

  static ModelParams erdos_renyi(int n, double p, std::uint64_t seed) {
    ModelParams mp;
    mp.model = Model::ErdosRenyi;
    mp.n = n;
    mp.p = p;
    mp.seed = seed;
    return mp;
  }
  static ModelParams watts_strogatz(int n, int k, double beta, std::uint64_t seed) {
    ModelParams mp;
    mp.model = Model::WattsStrogatz;
    mp.n = n;
    mp.k = k;
    mp.beta = beta;
    mp.seed = seed;
    return mp;
  }
  static ModelParams barabasi_albert(int n, int seed_size, int avg_deg,
                                     std::uint64_t seed) {
    ModelParams mp;
    mp.model = Model::BarabasiAlbert;
    mp.n = n;
    mp.seed_size = seed_size;
    mp.avg_deg = avg_deg;
    mp.seed = seed;
    return mp;
  }
  static ModelParams klemm_eguiluz(int n, int seed_size, double mu,
                                   std::uint64_t seed) {
    ModelParams mp;
    mp.model = Model::KlemmEguiluz;
    mp.n = n;
    mp.seed_size = seed_size;
    mp.mu = mu;
    mp.seed = seed;
    return mp;
  }

  void validate() const {
    if (n < 1) throw GraphError("node count must be positive");
    if (max_retries < 1) throw GraphError("max_retries must be positive");
    switch (model) {
      case Model::ErdosRenyi:
        if (p < 0 || p > 1) throw GraphError("p must be in [0, 1]");
        break;
      case Model::WattsStrogatz:
        if (k < 2 || k >= n || k % 2 != 0)
          throw GraphError("k must be even, 2 <= k < n");
        if (beta < 0 || beta > 1) throw GraphError("beta must be in [0, 1]");
        break;
      case Model::BarabasiAlbert:
        if (seed_size < 1 || seed_size >= n)
          throw GraphError("seed_size must be in [1, n)");
        if (avg_deg < 2 || avg_deg >= n || avg_deg % 2 != 0)
          throw GraphError("avg_deg must be even, 2 <= avg_deg < n");
        if (avg_deg / 2 > seed_size)
          throw GraphError("avg_deg / 2 must not exceed seed_size");
        break;
      case Model::KlemmEguiluz:
        if (seed_size < 1 || seed_size >= n)
          throw GraphError("seed_size must be in [1, n)");
        if (mu < 0 || mu > 1) throw GraphError("mu must be in [0, 1]");
        break;
    }
  }
};

namespace detail {

// Portable uniforms on top of mt19937_64; std distributions are
// implementation-defined and would break cross-platform determinism.
inline double unit_real(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}
inline int below(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

// Directed ER: each ordered pair (i, j), i != j, independently with
// probability p.
inline Digraph gen_er(const ModelParams& mp, std::mt19937_64& rng) {
  Digraph g(mp.n);
  for (int i = 0; i < mp.n; ++i)
    for (int j = 0; j < mp.n; ++j)
      if (i != j && unit_real(rng) < mp.p) g.add_edge(i, j);
  return g;
}

// Directed WS: ring lattice with out-edges i -> i +- d (mod n) for
// d = 1..k/2, then each edge's target rewired with probability beta to a
// uniform vertex (no loops, no duplicates; skipped if no slot is free).
inline Digraph gen_ws(const ModelParams& mp, std::mt19937_64& rng) {
  Digraph g(mp.n);
  std::vector<Edge> edges;
  for (int i = 0; i < mp.n; ++i)
    for (int d = 1; d <= mp.k / 2; ++d) {
      int fwd = (i + d) % mp.n;
      int bwd = (i - d % mp.n + mp.n) % mp.n;
      edges.emplace_back(i, fwd);
      if (bwd != fwd) edges.emplace_back(i, bwd);
    }
  std::vector<std::vector<char>> present(mp.n, std::vector<char>(mp.n, 0));
  for (auto& [i, j] : edges) present[i][j] = 1;
  for (auto& [i, j] : edges) {
    if (unit_real(rng) >= mp.beta) continue;
    for (int tries = 0; tries < 4 * mp.n; ++tries) {
      int t = below(rng, mp.n);
      if (t == i || present[i][t]) continue;
      present[i][j] = 0;
      present[i][t] = 1;
      j = t;
      break;
    }
  }
  for (const auto& [i, j] : edges) g.add_edge(i, j);
  return g;
}

// Directed BA: start from a directed cycle on seed_size vertices; each new
// vertex sends m = avg_deg / 2 out-edges to distinct existing vertices drawn
// preferentially by total degree (plus one, so isolated targets stay
// reachable).
inline Digraph gen_ba(const ModelParams& mp, std::mt19937_64& rng) {
  const int m = mp.avg_deg / 2;
  Digraph g(mp.n);
  std::vector<long long> deg(mp.n, 0);
  auto link = [&](int i, int j) {
    g.add_edge(i, j);
    ++deg[i];
    ++deg[j];
  };
  for (int i = 0; i < mp.seed_size; ++i)
    if (mp.seed_size > 1) link(i, (i + 1) % mp.seed_size);
  for (int v = mp.seed_size; v < mp.n; ++v) {
    std::vector<char> chosen(v, 0);
    for (int e = 0; e < std::min(m, v); ++e) {
      long long total = 0;
      for (int t = 0; t < v; ++t)
        if (!chosen[t]) total += deg[t] + 1;
      long long tick = static_cast<long long>(unit_real(rng) * static_cast<double>(total));
      int target = 0;
      for (int t = 0; t < v; ++t) {
        if (chosen[t]) continue;
        tick -= deg[t] + 1;
        if (tick < 0) {
          target = t;
          break;
        }
      }
      chosen[target] = 1;
      link(v, target);
    }
  }
  return g;
}

// Directed KE: complete digraph core of seed_size active vertices. Each new
// vertex sends one out-edge per active vertex; with probability mu the edge
// is deflected to a random non-active vertex drawn preferentially by total
// degree. The new vertex activates and one active vertex deactivates with
// probability proportional to the inverse of its degree.
inline Digraph gen_ke(const ModelParams& mp, std::mt19937_64& rng) {
  Digraph g(mp.n);
  std::vector<long long> deg(mp.n, 0);
  auto link = [&](int i, int j) {
    if (i == j || g.has_edge(i, j)) return;
    g.add_edge(i, j);
    ++deg[i];
    ++deg[j];
  };
  std::vector<int> active;
  for (int i = 0; i < mp.seed_size; ++i) {
    for (int j = 0; j < mp.seed_size; ++j)
      if (i != j) link(i, j);
    active.push_back(i);
  }
  for (int v = mp.seed_size; v < mp.n; ++v) {
    std::vector<char> is_active(mp.n, 0);
    for (int a : active) is_active[a] = 1;
    for (int a : active) {
      int target = a;
      if (unit_real(rng) < mp.mu && v > mp.seed_size) {
        long long total = 0;
        for (int t = 0; t < v; ++t)
          if (!is_active[t]) total += deg[t] + 1;
        if (total > 0) {
          long long tick =
              static_cast<long long>(unit_real(rng) * static_cast<double>(total));
          for (int t = 0; t < v; ++t) {
            if (is_active[t]) continue;
            tick -= deg[t] + 1;
            if (tick < 0) {
              target = t;
              break;
            }
          }
        }
      }
      link(v, target);
    }
    // deactivate one active vertex, probability ~ 1 / degree
    double total_inv = 0;
    for (int a : active) total_inv += 1.0 / static_cast<double>(deg[a] + 1);
    double tick = unit_real(rng) * total_inv;
    int out_idx = static_cast<int>(active.size()) - 1;
    for (size_t idx = 0; idx < active.size(); ++idx) {
      tick -= 1.0 / static_cast<double>(deg[active[idx]] + 1);
      if (tick < 0) {
        out_idx = static_cast<int>(idx);
        break;
      }
    }
    active[out_idx] = v;
  }
  return g;
}

}  // namespace detail

/// Generate a weakly connected digraph, deterministic per (params, seed).
/// Disconnected draws are regenerated with a derived seed, up to max_retries.
inline Digraph generate(const ModelParams& mp) {
  mp.validate();
  for (int attempt = 0; attempt < mp.max_retries; ++attempt) {
    std::mt19937_64 rng(mp.seed + 0x6a09e667f3bcc909ULL * static_cast<std::uint64_t>(attempt));
    Digraph g(mp.n);
    switch (mp.model) {
      case ModelParams::Model::ErdosRenyi: g = detail::gen_er(mp, rng); break;
      case ModelParams::Model::WattsStrogatz: g = detail::gen_ws(mp, rng); break;
      case ModelParams::Model::BarabasiAlbert: g = detail::gen_ba(mp, rng); break;
      case ModelParams::Model::KlemmEguiluz: g = detail::gen_ke(mp, rng); break;
    }
    if (weakly_connected_components(g).size() == 1) return g;
  }
  throw GraphError("no weakly connected graph within " +
                   std::to_string(mp.max_retries) + " attempts");
}

}  // namespace dgsp
