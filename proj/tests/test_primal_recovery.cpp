#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "mwis/exact.hpp"
#include "mwis/generators.hpp"
#include "mwis/graph.hpp"
#include "mwis/primal_recovery.hpp"

using namespace mwis;

TEST_CASE("edge rounds to the heavier endpoint") {
  auto g = make_graph({1.0, 2.0}, {{0, 1}});
  dual_vector lambda{{2.01}};
  auto rec = est_recover(g, lambda, 0.05);
  CHECK(rec.x == node_subset{0, 1});
  CHECK(rec.colors[0] == node_color::gray);
  CHECK(rec.colors[1] == node_color::orange);
  CHECK(rec.rounds == 2);
}

TEST_CASE("default slack threshold keeps a floor") {
  auto g3 = make_graph({1, 1, 1}, {{0, 1}, {1, 2}});
  CHECK(default_delta1(g3, 1e-3) == 0.03);
  CHECK(default_delta1(g3, 1e-6) == 1e-4);
}

TEST_CASE("single node goes straight to red") {
  auto g = make_graph({5.0}, {});
  auto rec = est_recover(g, dual_vector::zeros(g), 0.1);
  CHECK(rec.x == node_subset{1});
  CHECK(rec.colors[0] == node_color::red);
  CHECK(rec.rounds == 1);
}

TEST_CASE("isolated nodes are always selected") {
  auto g = make_graph({1.0, 2.0, 5.0}, {{0, 1}});
  dual_vector lambda{{2.01}};
  auto rec = est_recover(g, lambda, 0.05);
  CHECK(rec.x == node_subset{0, 1, 1});
  CHECK(rec.colors[2] == node_color::red);
}

TEST_CASE("alternating cascade uses one round per node") {
  // influence flows from the high id end, one recoloring per pass
  auto g = make_graph({1.0, 2.0, 2.0, 2.0, 0.5},
                      {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  dual_vector lambda{{1.0, 1.0, 1.0, 1.0}};
  auto rec = est_recover(g, lambda, 0.1);
  CHECK(rec.rounds == 5);
  CHECK(rec.x == node_subset{0, 1, 0, 1, 0});
  CHECK(subset_weight(g, rec.x) == brute_force_mwis(g).value);
}

TEST_CASE("threshold comparisons are strict") {
  // lambda exactly at delta1 must not trigger the orange rule
  auto g = make_graph({0.2, 1.0, 0.25}, {{0, 1}, {0, 2}});
  dual_vector lambda{{0.1, 0.3}};
  auto rec = est_recover(g, lambda, 0.1);
  CHECK(rec.colors[0] == node_color::gray);
  CHECK(rec.colors[1] == node_color::red);    // never pulled in by the weak edge
  CHECK(rec.colors[2] == node_color::orange);
  CHECK(rec.x == node_subset{0, 1, 1});
}

TEST_CASE("recovery validates its inputs") {
  auto g = make_graph({1.0, 1.0}, {{0, 1}});
  CHECK_THROWS_AS(est_recover(g, dual_vector{{1.0, 2.0}}, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(est_recover(g, dual_vector{{1.0}}, -0.1), std::invalid_argument);
}

TEST_CASE("empty graph recovers trivially") {
  auto g = make_graph({}, {});
  auto rec = est_recover(g, dual_vector::zeros(g), 0.1);
  CHECK(rec.x.empty());
  CHECK(rec.rounds == 0);
}

TEST_CASE("pipeline solves separated instances exactly") {
  struct case_t {
    weighted_graph g;
    node_subset expect;
  };
  std::vector<case_t> cases;
  cases.push_back({make_graph({1.0, 2.0}, {{0, 1}}), {0, 1}});
  cases.push_back({make_graph({2.0, 3.0, 2.0}, {{0, 1}, {1, 2}}), {1, 0, 1}});
  // star: the three leaves beat the center
  cases.push_back({make_graph({2.0, 1.0, 1.0, 1.0}, {{0, 1}, {0, 2}, {0, 3}}),
                   {0, 1, 1, 1}});
  cases.push_back({make_graph({1.0, 3.0, 2.0, 1.0}, {{0, 1}, {1, 2}, {2, 3}}),
                   {0, 1, 0, 1}});

  for (std::size_t k = 0; k < cases.size(); ++k) {
    CAPTURE(k);
    algo_params params;
    params.max_sweeps = 2000000;  // flat dual faces drain slowly
    auto res = algo_mwis(cases[k].g, params);
    CHECK(res.x == cases[k].expect);
    CHECK(res.warnings.empty());
    CHECK(res.rounds <= cases[k].g.node_count());
    CHECK(is_independent(cases[k].g, res.x));
    CHECK(subset_weight(cases[k].g, res.x) ==
          brute_force_mwis(cases[k].g).value);
  }
}

TEST_CASE("fractional instances still produce a total vector") {
  auto g = make_graph({3, 3, 3, 3, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  auto res = algo_mwis(g);
  CHECK(res.x.size() == 5);
  for (auto v : res.x) CHECK((v == 0 || v == 1));
  // the relaxation is fractional here, so the rounded set may clash;
  // the pipeline must say so rather than silently repair it
  CHECK_FALSE(is_independent(g, res.x));
}

TEST_CASE("sweep starved descent is reported") {
  auto g = make_graph({2.0, 3.0, 2.0}, {{0, 1}, {1, 2}});
  algo_params p;
  p.max_sweeps = 1;
  auto res = algo_mwis(g, p);
  CHECK_FALSE(res.descent.converged);
  REQUIRE_FALSE(res.warnings.empty());
  CHECK(res.x.size() == 3);
}

TEST_CASE("bipartite instances with integer weights mostly recover exactly") {
  int attempts = 0, exact = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    generator_params p;
    p.n = 4 + static_cast<int>(seed % 5);
    p.edge_probability = 0.5;
    p.seed = 16000 + seed;
    auto g = generate_instance(instance_kind::random_bipartite, p);
    // integer weights widen the slack separation
    std::mt19937_64 rng(900 + seed);
    std::vector<double> w(g.weights.size());
    for (double& wi : w) wi = 1.0 + static_cast<double>(rng() % 5);
    g = make_graph(w, g.edges);
    auto ip = brute_force_mwis(g);
    if (ip.optima.size() != 1) continue;

    ++attempts;
    auto res = algo_mwis(g);
    CAPTURE(seed);
    CHECK(res.rounds <= g.node_count());
    if (is_independent(g, res.x) &&
        subset_weight(g, res.x) == ip.value)
      ++exact;
  }
  REQUIRE(attempts >= 15);
  // recovery succeeds when the slack separation clears the threshold
  CHECK(exact >= attempts * 8 / 10);
}

TEST_CASE("rounds never exceed the node count on random inputs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    generator_params p;
    p.n = 2 + static_cast<int>(seed % 10);
    p.edge_probability = 0.45;
    p.seed = 17000 + seed;
    auto g = generate_instance(instance_kind::random_gnp, p);
    auto res = algo_mwis(g);  // est_recover aborts internally if the bound breaks
    CAPTURE(seed);
    CHECK(res.rounds <= g.node_count());
    CHECK(res.rounds >= 1);
  }
}
