#include <doctest.h>

#include <cmath>
#include <random>

#include "symclust/diag.hpp"
#include "symclust/dissim.hpp"
#include "symclust/leader.hpp"

#include "support.hpp"

using namespace symclust;
using namespace testsupport;

TEST_CASE("specificity extremes and oracle") {
    Composition a = validate_composition({1, 0, 0, 0, 0, 0, 0}, 7, 1e-9);
    Composition b = validate_composition({0, 1, 0, 0, 0, 0, 0}, 7, 1e-9);
    CHECK(specificity(a, a) == 0.0);
    CHECK(specificity(a, b) == 1.0);
    std::mt19937_64 rng(157);
    for (int i = 0; i < 500; ++i) {
        Composition x = random_composition(rng, 7);
        Composition y = random_composition(rng, 7);
        double s = specificity(x, y);
        CHECK(s == doctest::Approx(0.5 * sq_euclidean(x, y)).epsilon(1e-14));
        CHECK(s == specificity(y, x));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("contrast branches") {
    CHECK(contrast(0.1, 0.1).value == 1.0);
    CHECK(contrast(0.2, 0.1).value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(contrast(0.05, 0.1).value == doctest::Approx(-2.0).epsilon(1e-14));
    auto neutral = contrast(0.0, 0.0);
    CHECK(neutral.value == 1.0);
    CHECK(neutral.kind == ContrastKind::neutral_zero);
    auto pos_inf = contrast(0.3, 0.0);
    CHECK(pos_inf.kind == ContrastKind::infinite);
    CHECK(pos_inf.value > 0);
    auto neg_inf = contrast(0.0, 0.3);
    CHECK(neg_inf.kind == ContrastKind::infinite);
    CHECK(neg_inf.value < 0);
    CHECK_THROWS_AS(contrast(-0.1, 0.1), ConstraintError);
}

TEST_CASE("contrast magnitude and sign properties") {
    std::mt19937_64 rng(163);
    std::uniform_real_distribution<double> d(0.0001, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double rc = d(rng), rs = d(rng);
        auto c = contrast(rc, rs);
        CHECK(std::abs(c.value) >= 1.0);
        if (rc > rs) CHECK(c.value > 0);
        if (rc < rs) CHECK(c.value < 0);
        if (rc == rs) CHECK(c.value == 1.0);
    }
}

TEST_CASE("diagnostics_report with k = 1 is all zeros and ones") {
    std::mt19937_64 rng(167);
    Dataset ds = random_dataset(rng, 8, 3, 7);
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1, 2, 3, 4, 5, 6, 7}));
    DiagnosticsReport rep = diagnostics_report(pt, ds);
    REQUIRE(rep.clusters.size() == 1);
    for (const auto& vd : rep.clusters[0].variables) {
        CHECK(vd.specificity == 0.0);
        for (const auto& cell : vd.cells) {
            CHECK(cell.value == 1.0);
            CHECK_FALSE(cell.highlighted);
        }
    }
}

TEST_CASE("diagnostics_report matches direct formula application") {
    std::mt19937_64 rng(173);
    auto [ds, labels] = planted_blobs(rng, 5, 3);
    (void)labels;
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1, 2, 3, 4}));
    pt.clusters.push_back(
        make_cluster(ds, {5, 6, 7, 8, 9, 10, 11, 12, 13, 14}));
    DiagnosticsReport rep = diagnostics_report(pt, ds, 1.25);

    std::vector<std::size_t> all(ds.n());
    std::iota(all.begin(), all.end(), 0u);
    Leader global = compute_leader(ds, all);
    for (std::size_t c = 0; c < 2; ++c) {
        const Cluster& cl = pt.clusters[c];
        for (std::size_t j = 0; j < ds.p(); ++j) {
            long double spec = 0.0L;
            for (std::size_t l = 0; l < ds.m(); ++l) {
                long double diff = global.components[j][l] -
                                   cl.leader.components[j][l];
                spec += diff * diff;
            }
            spec /= 2.0L;
            CHECK(rep.clusters[c].variables[j].specificity ==
                  doctest::Approx(static_cast<double>(spec)).epsilon(1e-12));
            for (std::size_t l = 0; l < ds.m(); ++l) {
                double rc = cl.leader.components[j][l];
                double rs = global.components[j][l];
                double expect = rc >= rs ? rc / rs : -rs / rc;
                CHECK(rep.clusters[c].variables[j].cells[l].value ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("highlight rule is |value| >= threshold") {
    std::mt19937_64 rng(179);
    Dataset ds = random_dataset(rng, 10, 2, 7);
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1, 2}));
    pt.clusters.push_back(make_cluster(ds, {3, 4, 5, 6, 7, 8, 9}));
    DiagnosticsReport rep = diagnostics_report(pt, ds, 1.25);
    bool saw_any = false;
    for (const auto& cd : rep.clusters)
        for (const auto& vd : cd.variables)
            for (const auto& cell : vd.cells) {
                CHECK(cell.highlighted == (std::abs(cell.value) >= 1.25));
                saw_any = true;
            }
    CHECK(saw_any);
}

TEST_CASE("cluster leaders recombine to the global leader") {
    std::mt19937_64 rng(181);
    Dataset ds = random_dataset(rng, 12, 3, 7);
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1, 2, 3}));
    pt.clusters.push_back(make_cluster(ds, {4, 5, 6, 7}));
    pt.clusters.push_back(make_cluster(ds, {8, 9, 10, 11}));
    std::vector<std::size_t> all(ds.n());
    std::iota(all.begin(), all.end(), 0u);
    Leader global = compute_leader(ds, all);
    for (std::size_t j = 0; j < ds.p(); ++j) {
        for (std::size_t l = 0; l < ds.m(); ++l) {
            double num = 0.0, den = 0.0;
            for (const auto& c : pt.clusters) {
                num += c.agg_weights[j] * c.leader.components[j][l];
                den += c.agg_weights[j];
            }
            CHECK(num / den ==
                  doctest::Approx(global.components[j][l]).epsilon(1e-10));
        }
    }
}

TEST_CASE("decile ranks: darker deciles for larger values, ties share rank") {
    IndicatorTable t;
    t.indicator_names = {"ind"};
    for (int i = 0; i < 20; ++i)
        t.values["u" + std::to_string(i)]["ind"] = static_cast<double>(i);
    auto d = decile_ranks(t);
    CHECK(d["u0"]["ind"] == 0);
    CHECK(d["u19"]["ind"] == 9);
    CHECK(d["u10"]["ind"] == 5);
    IndicatorTable ties;
    ties.indicator_names = {"x"};
    for (int i = 0; i < 10; ++i)
        ties.values["u" + std::to_string(i)]["x"] = 1.0;
    auto dt = decile_ranks(ties);
    for (int i = 0; i < 10; ++i)
        CHECK(dt["u" + std::to_string(i)]["x"] == 0);
}

namespace {

Dataset tiny_dataset(std::size_t n) {
    std::mt19937_64 rng(191);
    return random_dataset(rng, n, 2, 7);
}

}  // namespace

TEST_CASE("anova: identical group means give F near 0") {
    Dataset ds = tiny_dataset(6);
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1, 2}));
    pt.clusters.push_back(make_cluster(ds, {3, 4, 5}));
    IndicatorTable t;
    t.indicator_names = {"ind"};
    double vals[] = {1.0, 2.0, 3.0, 1.0, 2.0, 3.0};
    for (std::size_t i = 0; i < 6; ++i) t.values[ds.units[i].id]["ind"] = vals[i];
    auto res = anova_bonferroni(t, pt, ds);
    REQUIRE(res.size() == 1);
    CHECK(res[0].f_statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res[0].p_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("anova textbook instance matches the frozen hand computation") {
    Dataset ds = tiny_dataset(9);
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1, 2}));
    pt.clusters.push_back(make_cluster(ds, {3, 4, 5}));
    pt.clusters.push_back(make_cluster(ds, {6, 7, 8}));
    IndicatorTable t;
    t.indicator_names = {"ind"};
    double vals[] = {1, 2, 3, 2, 3, 4, 6, 7, 8};
    for (std::size_t i = 0; i < 9; ++i) t.values[ds.units[i].id]["ind"] = vals[i];
    auto res = anova_bonferroni(t, pt, ds);
    REQUIRE(res.size() == 1);
    const AnovaResult& r = res[0];
    // hand decomposition: SSB = 42 (df 2), SSW = 6 (df 6), F = 21
    CHECK(r.f_statistic == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.001953125).epsilon(1e-8));
    REQUIRE(r.pairwise.size() == 3);
    // pooled-variance t tests, df 6, Bonferroni x3 (frozen via independent
    // statistical tables)
    CHECK(r.pairwise[0].mean_difference == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.pairwise[0].p_value ==
          doctest::Approx(0.266569703380069).epsilon(1e-8));
    CHECK(r.pairwise[0].p_adjusted ==
          doctest::Approx(0.7997091101402071).epsilon(1e-8));
    CHECK(r.pairwise[1].mean_difference == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(r.pairwise[1].p_adjusted ==
          doctest::Approx(0.0025990300196444224).epsilon(1e-8));
    CHECK(r.pairwise[2].mean_difference == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(r.pairwise[2].p_adjusted ==
          doctest::Approx(0.008141046105281389).epsilon(1e-8));
    for (const auto& pc : r.pairwise) {
        CHECK(pc.p_adjusted >= pc.p_value);
        CHECK(pc.p_adjusted <= 1.0);
    }
}

TEST_CASE("anova rejects degenerate inputs") {
    Dataset ds = tiny_dataset(4);
    Partition pt;
    pt.clusters.push_back(make_cluster(ds, {0, 1}));
    pt.clusters.push_back(make_cluster(ds, {2, 3}));
    IndicatorTable all_same;
    all_same.indicator_names = {"ind"};
    for (std::size_t i = 0; i < 4; ++i)
        all_same.values[ds.units[i].id]["ind"] = 5.0;
    CHECK_THROWS_AS(anova_bonferroni(all_same, pt, ds), ConstraintError);

    IndicatorTable missing_group;
    missing_group.indicator_names = {"ind"};
    missing_group.values[ds.units[0].id]["ind"] = 1.0;
    missing_group.values[ds.units[1].id]["ind"] = 2.0;
    CHECK_THROWS_AS(anova_bonferroni(missing_group, pt, ds), ConstraintError);
}
