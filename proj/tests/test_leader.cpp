#include <doctest.h>

#include <algorithm>
#include <random>

#include "symclust/dissim.hpp"
#include "symclust/leader.hpp"

#include "support.hpp"

using namespace symclust;
using namespace testsupport;

TEST_CASE("compute_leader: singleton returns the unit itself") {
    std::mt19937_64 rng(41);
    Dataset ds = random_dataset(rng, 1, 4, 7);
    Leader l = compute_leader(ds, std::vector<std::size_t>{0});
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(l.components[j].values == ds.units[0].descriptions[j].values);
}

TEST_CASE("compute_leader: hand example with weights 1 and 3") {
    Dataset ds;
    ds.category_schema.labels = {"a", "b"};
    ds.variable_schema.names = {"v"};
    ds.units.push_back({"A", {validate_composition({1, 0}, 2, 1e-9)}, {1.0}});
    ds.units.push_back({"B", {validate_composition({0, 1}, 2, 1e-9)}, {3.0}});
    Leader l = compute_leader(ds, std::vector<std::size_t>{0, 1});
    CHECK(l.components[0][0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(l.components[0][1] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("weighted mean beats a dense grid search over the simplex") {
    // independent confirmation that the closed form is the minimizer
    Dataset ds;
    ds.category_schema.labels = {"a", "b", "c"};
    ds.variable_schema.names = {"v"};
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> wdist(0.5, 4.0);
    for (int i = 0; i < 4; ++i) {
        SymbolicUnit u;
        u.id = "u" + std::to_string(i);
        u.descriptions.push_back(random_composition(rng, 3));
        u.weights.push_back(wdist(rng));
        ds.units.push_back(std::move(u));
    }
    std::vector<std::size_t> members{0, 1, 2, 3};
    Leader l = compute_leader(ds, members);
    auto err_at = [&](const std::vector<double>& r) {
        return oracle_cluster_error(ds, members, {r});
    };
    long double best = err_at(l.components[0].values);
    const int grid = 60;
    for (int a = 0; a <= grid; ++a)
        for (int b = 0; b <= grid - a; ++b) {
            std::vector<double> r{static_cast<double>(a) / grid,
                                  static_cast<double>(b) / grid,
                                  static_cast<double>(grid - a - b) / grid};
            CHECK(err_at(r) >= best - 1e-12L);
        }
}

TEST_CASE("leader of identical compositions is that composition") {
    std::mt19937_64 rng(47);
    Composition c = random_composition(rng, 7);
    Dataset ds;
    for (std::size_t l = 0; l < 7; ++l)
        ds.category_schema.labels.push_back("c" + std::to_string(l));
    ds.variable_schema.names = {"v"};
    std::uniform_real_distribution<double> wdist(0.1, 9.0);
    for (int i = 0; i < 5; ++i)
        ds.units.push_back({"u" + std::to_string(i), {c}, {wdist(rng)}});
    Leader l = compute_leader(ds, std::vector<std::size_t>{0, 1, 2, 3, 4});
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(l.components[0][i] == doctest::Approx(c[i]).epsilon(1e-12));
}

TEST_CASE("zero-total-weight variable falls back to the unweighted mean") {
    std::mt19937_64 rng(53);
    Dataset ds = random_dataset(rng, 3, 2, 7);
    for (auto& u : ds.units) u.weights[1] = 0.0;
    std::vector<std::size_t> members{0, 1, 2};
    Leader l = compute_leader(ds, members);
    auto expect = oracle_weighted_mean(ds, members, 1);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(l.components[1][i] == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK_THROWS_AS(compute_leader(ds, std::vector<std::size_t>{}),
                    ConstraintError);
}

TEST_CASE("leader components stay inside the member convex hull") {
    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 50; ++rep) {
        Dataset ds = random_dataset(rng, 6, 3, 7);
        std::vector<std::size_t> members{0, 1, 2, 3, 4, 5};
        Leader l = compute_leader(ds, members);
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t i = 0; i < 7; ++i) {
                double lo = 1.0, hi = 0.0;
                for (std::size_t idx : members) {
                    lo = std::min(lo, ds.units[idx].descriptions[j][i]);
                    hi = std::max(hi, ds.units[idx].descriptions[j][i]);
                }
                CHECK(l.components[j][i] >= lo - 1e-12);
                CHECK(l.components[j][i] <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("assign_units matches the exhaustive dissimilarity table") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 30; ++rep) {
        Dataset ds = random_dataset(rng, 12, 3, 7);
        std::vector<Leader> leaders;
        for (int l = 0; l < 3; ++l) {
            std::vector<Composition> comps;
            for (int j = 0; j < 3; ++j) comps.push_back(random_composition(rng, 7));
            leaders.push_back(Leader{comps});
        }
        Partition pt = assign_units(ds, leaders);
        pt.validate(ds);
        // brute-force expected assignment
        for (std::size_t i = 0; i < ds.n(); ++i) {
            std::size_t expect = 0;
            double best = unit_leader_dissim(ds.units[i], leaders[0]);
            for (std::size_t l = 1; l < leaders.size(); ++l) {
                double d = unit_leader_dissim(ds.units[i], leaders[l]);
                if (d < best) {
                    best = d;
                    expect = l;
                }
            }
            // find the cluster that holds unit i; its dissim to the expected
            // leader must equal the minimum
            for (const auto& c : pt.clusters) {
                if (std::find(c.members.begin(), c.members.end(), i) ==
                    c.members.end())
                    continue;
                double got = std::numeric_limits<double>::infinity();
                for (const auto& l2 : leaders)
                    got = std::min(got, unit_leader_dissim(ds.units[i], l2));
                CHECK(got == doctest::Approx(best).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("assign_units: exact match and tie rule") {
    std::mt19937_64 rng(67);
    Dataset ds = random_dataset(rng, 1, 1, 3);
    ds.units[0].descriptions[0] = validate_composition({0.5, 0.5, 0.0}, 3, 1e-9);
    Leader a{{validate_composition({1, 0, 0}, 3, 1e-9)}};
    Leader b{{validate_composition({0, 1, 0}, 3, 1e-9)}};  // equidistant
    Partition pt = assign_units(ds, {a, b, a});
    REQUIRE(pt.k() == 1);
    // tie between leaders 0 and 1 (and 2): goes to leader 0
    CHECK(pt.clusters[0].members == std::vector<std::size_t>{0});

    Leader exact{{ds.units[0].descriptions[0]}};
    Partition pt2 = assign_units(ds, {a, b, exact});
    CHECK(pt2.k() == 1);
    CHECK(unit_leader_dissim(ds.units[0], exact) == 0.0);
}

TEST_CASE("run_leader_method: k = n drives Err to 0") {
    std::mt19937_64 rng(71);
    Dataset ds = random_dataset(rng, 6, 2, 7);
    LeaderConfig cfg;
    cfg.k = 6;
    cfg.init_strategy = InitStrategy::spread_seeding;
    LeaderResult res = run_leader_method(ds, cfg);
    CHECK(res.partition.k() == 6);
    CHECK(res.criterion_trace.back() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("run_leader_method: k = 1 equals the global cluster error") {
    std::mt19937_64 rng(73);
    Dataset ds = random_dataset(rng, 8, 3, 7);
    LeaderConfig cfg;
    cfg.k = 1;
    LeaderResult res = run_leader_method(ds, cfg);
    Cluster whole = make_cluster(ds, {0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(res.criterion_trace.back() ==
          doctest::Approx(cluster_error(whole, ds)).epsilon(1e-12));
}

TEST_CASE("run_leader_method is deterministic under a fixed seed") {
    std::mt19937_64 rng(79);
    Dataset ds = random_dataset(rng, 15, 3, 7);
    LeaderConfig cfg;
    cfg.k = 4;
    cfg.seed = 1234;
    cfg.init_strategy = InitStrategy::random_units;
    LeaderResult a = run_leader_method(ds, cfg);
    LeaderResult b = run_leader_method(ds, cfg);
    CHECK(a.criterion_trace == b.criterion_trace);
    REQUIRE(a.partition.k() == b.partition.k());
    for (std::size_t c = 0; c < a.partition.k(); ++c)
        CHECK(a.partition.clusters[c].members == b.partition.clusters[c].members);
}

TEST_CASE("criterion trace is non-increasing and bounded by max_iterations") {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 20; ++rep) {
        Dataset ds = random_dataset(rng, 12, 3, 7);
        LeaderConfig cfg;
        cfg.k = 3;
        cfg.seed = static_cast<std::uint64_t>(rep);
        cfg.init_strategy = InitStrategy::random_units;
        LeaderResult res = run_leader_method(ds, cfg);
        CHECK(res.criterion_trace.size() <= cfg.max_iterations);
        for (std::size_t i = 1; i < res.criterion_trace.size(); ++i)
            CHECK(res.criterion_trace[i] <= res.criterion_trace[i - 1] + 1e-12);
    }
}

TEST_CASE("weight scaling leaves leaders and partitions unchanged") {
    std::mt19937_64 rng(89);
    Dataset ds = random_dataset(rng, 12, 4, 7);
    Dataset scaled = ds;
    for (auto& u : scaled.units)
        for (double& w : u.weights) w *= 7.3;
    LeaderConfig cfg;
    cfg.k = 3;
    cfg.seed = 5;
    cfg.init_strategy = InitStrategy::random_units;
    LeaderResult a = run_leader_method(ds, cfg);
    LeaderResult b = run_leader_method(scaled, cfg);
    REQUIRE(a.partition.k() == b.partition.k());
    for (std::size_t c = 0; c < a.partition.k(); ++c) {
        CHECK(a.partition.clusters[c].members == b.partition.clusters[c].members);
        for (std::size_t j = 0; j < ds.p(); ++j)
            for (std::size_t l = 0; l < ds.m(); ++l)
                CHECK(a.partition.clusters[c].leader.components[j][l] ==
                      doctest::Approx(
                          b.partition.clusters[c].leader.components[j][l])
                          .epsilon(1e-12));
    }
    CHECK(b.criterion_trace.back() ==
          doctest::Approx(7.3 * a.criterion_trace.back()).epsilon(1e-10));
}

TEST_CASE("k outside [1, n] is rejected") {
    std::mt19937_64 rng(97);
    Dataset ds = random_dataset(rng, 3, 2, 7);
    LeaderConfig cfg;
    cfg.k = 4;
    CHECK_THROWS_AS(run_leader_method(ds, cfg), ConstraintError);
    cfg.k = 0;
    CHECK_THROWS_AS(run_leader_method(ds, cfg), ConstraintError);
}
