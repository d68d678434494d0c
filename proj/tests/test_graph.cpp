#include "nogam/graph.hpp"
#include "nogam/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace nogam;

TEST_SUITE_BEGIN("graph");

TEST_CASE("sample_er degenerate and error cases") {
    Rng rng(0);
    const Dag g = sample_er(1, 4, rng);
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);
    CHECK_THROWS_AS(sample_er(0, 1, rng), std::invalid_argument);
}

TEST_CASE("sample_er hits the target expected edge count") {
    // mean edge count over many draws within 3 sigma of density * d
    const int d = 10, draws = 10000;
    const double pairs = 45.0, p = 10.0 / pairs;
    Rng rng(7);
    long long total = 0;
    for (int k = 0; k < draws; ++k) total += sample_er(d, 1, rng).edge_count();
    const double mean = static_cast<double>(total) / draws;
    const double sigma_mean = std::sqrt(pairs * p * (1 - p) / draws);
    CHECK(std::abs(mean - 10.0) <= 3.0 * sigma_mean);
}

TEST_CASE("sample_er outputs are acyclic and seed-deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng a(seed), b(seed);
        const Dag ga = sample_er(12, 4, a);
        CHECK(ga.is_acyclic());
        CHECK(ga == sample_er(12, 4, b));
    }
}

TEST_CASE("sample_sf structure") {
    Rng rng(0);
    const Dag two = sample_sf(2, 1, rng);
    CHECK(two.edge_count() == 1);
    CHECK(two.has_edge(0, 1));

    const Dag g = sample_sf(20, 1, rng);
    CHECK(g.edge_count() == 19);  // m edges per attached node
    CHECK(g.is_acyclic());

    Rng a(3), b(3);
    CHECK(sample_sf(15, 2, a) == sample_sf(15, 2, b));
    CHECK_THROWS_AS(sample_sf(3, 3, rng), std::invalid_argument);
}

TEST_CASE("topological_sort tie-breaks and orderings") {
    const Dag empty(3);
    CHECK(topological_sort(empty).perm == std::vector<int>{0, 1, 2});

    Dag chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    CHECK(topological_sort(chain).perm == std::vector<int>{0, 1, 2});

    Rng rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const Dag g = sample_er(8, 2, rng);
        CHECK(is_consistent_ordering(g, topological_sort(g)));
    }
}

TEST_CASE("topological_sort detects cycles") {
    Dag g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    CHECK_THROWS_AS(topological_sort(g), CycleError);
    CHECK(!g.is_acyclic());
}

TEST_CASE("is_consistent_ordering") {
    Dag chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    CHECK(is_consistent_ordering(chain, {{0, 1, 2}}));
    CHECK(!is_consistent_ordering(chain, {{2, 1, 0}}));
    CHECK_THROWS_AS(is_consistent_ordering(chain, {{0, 1}}), std::invalid_argument);

    // agreement with d_top == 0 on random graphs and orders
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const Dag g = sample_er(6, 2, rng);
        Ordering o{{0, 1, 2, 3, 4, 5}};
        std::shuffle(o.perm.begin(), o.perm.end(), rng);
        CHECK(is_consistent_ordering(g, o) == (d_top(o, g) == 0));
    }
}

TEST_CASE("full_dag_from_ordering") {
    CHECK(full_dag_from_ordering({{0}}).edge_count() == 0);

    const Dag pair = full_dag_from_ordering({{1, 0}});
    CHECK(pair.edge_count() == 1);
    CHECK(pair.has_edge(1, 0));

    const Dag five = full_dag_from_ordering({{3, 1, 4, 0, 2}});
    CHECK(five.edge_count() == 10);
    CHECK(five.is_acyclic());
    CHECK(is_consistent_ordering(five, {{3, 1, 4, 0, 2}}));

    // contains every DAG consistent with the ordering as a subgraph
    Rng rng(9);
    const Dag g = sample_er(7, 2, rng);
    const Ordering o = topological_sort(g);
    const Dag full = full_dag_from_ordering(o);
    for (auto [i, j] : g.edges()) CHECK(full.has_edge(i, j));
}

TEST_CASE("edge list and adjacency serialization") {
    Rng rng(2);
    const Dag g = sample_er(9, 2, rng);
    CHECK(dag_from_edge_list_string(to_edge_list(g)) == g);

    const std::string csv = to_adjacency_csv(g);
    int ones = 0;
    for (char c : csv) ones += c == '1';
    CHECK(ones == g.edge_count());

    CHECK_THROWS_AS(dag_from_edge_list_string("bogus"), ParseError);
    CHECK_THROWS_AS(dag_from_edge_list_string("d=2\n0 1\n1 0\n"), CycleError);
}

TEST_SUITE_END();
