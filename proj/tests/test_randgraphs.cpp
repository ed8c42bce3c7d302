#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "dgsp/randgraphs.hpp"
#include "fixtures.hpp"

using namespace dgsp;

TEST_CASE("parameter validation") {
  REQUIRE_THROWS_AS(generate(ModelParams::erdos_renyi(0, 0.5, 1)), GraphError);
  REQUIRE_THROWS_AS(generate(ModelParams::erdos_renyi(5, 1.5, 1)), GraphError);
  REQUIRE_THROWS_AS(generate(ModelParams::watts_strogatz(10, 3, 0.1, 1)), GraphError);
  REQUIRE_THROWS_AS(generate(ModelParams::watts_strogatz(10, 10, 0.1, 1)), GraphError);
  REQUIRE_THROWS_AS(generate(ModelParams::barabasi_albert(10, 2, 10, 1)), GraphError);
  REQUIRE_THROWS_AS(generate(ModelParams::klemm_eguiluz(10, 0, 0.1, 1)), GraphError);
}

TEST_CASE("erdos-renyi") {
  SECTION("p = 1 gives the complete loopless digraph") {
    Digraph g = generate(ModelParams::erdos_renyi(10, 1.0, 3));
    REQUIRE(g.num_edges() == 90);
  }
  SECTION("determinism per seed") {
    Digraph a = generate(ModelParams::erdos_renyi(40, 0.1, 5));
    Digraph b = generate(ModelParams::erdos_renyi(40, 0.1, 5));
    REQUIRE(a.edges() == b.edges());
    Digraph c = generate(ModelParams::erdos_renyi(40, 0.1, 6));
    REQUIRE(a.edges() != c.edges());
  }
  SECTION("edge count near n(n-1)p") {
    double total = 0;
    const int trials = 20;
    for (int s = 0; s < trials; ++s)
      total += generate(ModelParams::erdos_renyi(200, 0.05, 100 + s)).num_edges();
    double expect = 200.0 * 199.0 * 0.05;
    REQUIRE(total / trials == Catch::Approx(expect).epsilon(0.05));
  }
  SECTION("disconnected parameters exhaust retries") {
    ModelParams mp = ModelParams::erdos_renyi(50, 0.0, 1);
    mp.max_retries = 3;
    REQUIRE_THROWS_AS(generate(mp), GraphError);
  }
}

TEST_CASE("watts-strogatz") {
  Digraph g = generate(ModelParams::watts_strogatz(100, 6, 0.05, 9));
  REQUIRE(g.num_vertices() == 100);
  REQUIRE(g.num_edges() == 600);  // rewiring preserves the count
  REQUIRE(weakly_connected_components(g).size() == 1);
  // beta = 0 keeps the ring lattice
  Digraph ring = generate(ModelParams::watts_strogatz(20, 4, 0.0, 1));
  for (int i = 0; i < 20; ++i) {
    REQUIRE(ring.has_edge(i, (i + 1) % 20));
    REQUIRE(ring.has_edge(i, (i + 19) % 20));
  }
}

TEST_CASE("barabasi-albert") {
  ModelParams mp = ModelParams::barabasi_albert(500, 5, 10, 17);
  Digraph g = generate(mp);
  REQUIRE(g.num_vertices() == 500);
  // each vertex past the core adds avg_deg / 2 out-edges
  REQUIRE(g.num_edges() == 5 + 495 * 5);
  REQUIRE(weakly_connected_components(g).size() == 1);

  // coarse scale-freeness: max in-degree well above the median
  std::vector<int> indeg(500, 0);
  for (const auto& [i, j] : g.edges()) ++indeg[j];
  std::vector<int> sorted = indeg;
  std::sort(sorted.begin(), sorted.end());
  int median = sorted[250];
  int maxdeg = sorted.back();
  REQUIRE(maxdeg >= 3 * std::max(1, median));
}

TEST_CASE("klemm-eguiluz") {
  Digraph g = generate(ModelParams::klemm_eguiluz(200, 10, 0.1, 23));
  REQUIRE(g.num_vertices() == 200);
  REQUIRE(g.num_edges() >= 150 * 10);  // roughly seed_size per new vertex
  REQUIRE(weakly_connected_components(g).size() == 1);
  Digraph h = generate(ModelParams::klemm_eguiluz(200, 10, 0.1, 23));
  REQUIRE(g.edges() == h.edges());
}

TEST_CASE("all generators emit valid weakly connected digraphs") {
  std::vector<ModelParams> all{
      ModelParams::erdos_renyi(60, 0.08, 41),
      ModelParams::watts_strogatz(60, 4, 0.1, 42),
      ModelParams::barabasi_albert(60, 4, 6, 43),
      ModelParams::klemm_eguiluz(60, 5, 0.2, 44),
  };
  for (const auto& mp : all) {
    Digraph g = generate(mp);
    REQUIRE(g.num_vertices() == 60);
    REQUIRE(weakly_connected_components(g).size() == 1);
    REQUIRE_FALSE(g.weighted());
    for (const auto& [i, j] : g.edges()) {
      REQUIRE(i >= 0);
      REQUIRE(i < 60);
      REQUIRE(j >= 0);
      REQUIRE(j < 60);
    }
  }
}
