// Shared generators and oracles for the test suites. Oracles here stay
// independent of the library code paths they check.
#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symclust/io.hpp"
#include "symclust/leader.hpp"
#include "symclust/model.hpp"

namespace testsupport {

using namespace symclust;

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t m) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> v(m);
    double s = 0.0;
    for (double& x : v) s += (x = expo(rng));
    for (double& x : v) x /= s;
    return v;
}

inline Composition random_composition(std::mt19937_64& rng, std::size_t m) {
    return validate_composition(random_simplex(rng, m), m, 1e-6);
}

inline Dataset random_dataset(std::mt19937_64& rng, std::size_t n,
                              std::size_t p, std::size_t m,
                              double w_lo = 0.01, double w_hi = 10.0) {
    Dataset ds;
    for (std::size_t l = 0; l < m; ++l)
        ds.category_schema.labels.push_back("c" + std::to_string(l));
    for (std::size_t j = 0; j < p; ++j)
        ds.variable_schema.names.push_back("v" + std::to_string(j));
    std::uniform_real_distribution<double> wdist(w_lo, w_hi);
    for (std::size_t i = 0; i < n; ++i) {
        SymbolicUnit u;
        u.id = std::string("u") + (i < 10 ? "0" : "") + std::to_string(i);
        for (std::size_t j = 0; j < p; ++j) {
            u.descriptions.push_back(random_composition(rng, m));
            u.weights.push_back(wdist(rng));
        }
        ds.units.push_back(std::move(u));
    }
    return ds;
}

// Brute-force weighted mean, plain double loop; independent of
// compute_leader (long double accumulation, no compensation logic shared).
inline std::vector<double> oracle_weighted_mean(
    const Dataset& ds, const std::vector<std::size_t>& members,
    std::size_t j) {
    const std::size_t m = ds.m();
    long double wsum = 0.0L;
    for (std::size_t idx : members) wsum += ds.units[idx].weights[j];
    std::vector<double> out(m, 0.0);
    if (wsum > 0.0L) {
        for (std::size_t l = 0; l < m; ++l) {
            long double num = 0.0L;
            for (std::size_t idx : members)
                num += static_cast<long double>(ds.units[idx].weights[j]) *
                       ds.units[idx].descriptions[j][l];
            out[l] = static_cast<double>(num / wsum);
        }
    } else {
        for (std::size_t l = 0; l < m; ++l) {
            long double num = 0.0L;
            for (std::size_t idx : members)
                num += ds.units[idx].descriptions[j][l];
            out[l] = static_cast<double>(num / members.size());
        }
    }
    return out;
}

// err(C) recomputed from scratch in extended precision against an arbitrary
// representative.
inline long double oracle_cluster_error(
    const Dataset& ds, const std::vector<std::size_t>& members,
    const std::vector<std::vector<double>>& rep) {
    long double total = 0.0L;
    for (std::size_t idx : members) {
        const SymbolicUnit& u = ds.units[idx];
        for (std::size_t j = 0; j < ds.p(); ++j) {
            long double d2 = 0.0L;
            for (std::size_t l = 0; l < ds.m(); ++l) {
                long double d = u.descriptions[j][l] - rep[j][l];
                d2 += d * d;
            }
            total += u.weights[j] * d2;
        }
    }
    return total;
}

inline long double oracle_cluster_error_optimal(
    const Dataset& ds, const std::vector<std::size_t>& members) {
    std::vector<std::vector<double>> rep;
    for (std::size_t j = 0; j < ds.p(); ++j)
        rep.push_back(oracle_weighted_mean(ds, members, j));
    return oracle_cluster_error(ds, members, rep);
}

// Planted-cluster generator: three centroids with pairwise squared
// Euclidean distance >= 0.5, Gaussian noise sigma projected back onto the
// simplex. Returns the dataset plus the planted label per unit.
inline std::pair<Dataset, std::vector<int>> planted_blobs(
    std::mt19937_64& rng, std::size_t n_per_blob, std::size_t p,
    double sigma = 0.02) {
    const std::size_t m = 7;
    // concentrated on disjoint category pairs, pairwise d_E^2 well above 0.5
    std::vector<std::vector<double>> centroids = {
        {0.60, 0.20, 0.05, 0.05, 0.04, 0.03, 0.03},
        {0.03, 0.04, 0.60, 0.20, 0.05, 0.05, 0.03},
        {0.03, 0.05, 0.04, 0.05, 0.20, 0.60, 0.03}};
    Dataset ds;
    for (std::size_t l = 0; l < m; ++l)
        ds.category_schema.labels.push_back("c" + std::to_string(l));
    for (std::size_t j = 0; j < p; ++j)
        ds.variable_schema.names.push_back("v" + std::to_string(j));
    std::normal_distribution<double> noise(0.0, sigma);
    std::uniform_real_distribution<double> wdist(0.5, 5.0);
    std::vector<int> labels;
    for (int b = 0; b < 3; ++b) {
        for (std::size_t i = 0; i < n_per_blob; ++i) {
            SymbolicUnit u;
            u.id = "b" + std::to_string(b) + "_" +
                   (i < 10 ? "0" : "") + std::to_string(i);
            for (std::size_t j = 0; j < p; ++j) {
                std::vector<double> v = centroids[static_cast<std::size_t>(b)];
                for (double& x : v) x = std::max(0.0, x + noise(rng));
                double s = 0.0;
                for (double x : v) s += x;
                for (double& x : v) x /= s;
                u.descriptions.push_back(validate_composition(v, m, 1e-6));
                u.weights.push_back(wdist(rng));
            }
            ds.units.push_back(std::move(u));
            labels.push_back(b);
        }
    }
    return {ds, labels};
}

// True when the partition's clusters coincide with the planted labels.
inline bool matches_planted(const Partition& pt, const Dataset& ds,
                            const std::vector<int>& labels) {
    if (pt.k() != 3) return false;
    for (const auto& c : pt.clusters) {
        int lbl = labels[c.members.front()];
        for (std::size_t idx : c.members)
            if (labels[idx] != lbl) return false;
    }
    return true;
}

inline std::string fixtures_dir() {
    const char* env = std::getenv("SYMCLUST_FIXTURES");
    return env ? env : "../data";
}

// EU28 fixture from the bundled appendix data, validated at the published
// rounding slack.
inline Dataset load_eu28() {
    nlohmann::json j =
        nlohmann::json::parse(io::read_file(fixtures_dir() + "/eu28_appendix.json"));
    Dataset ds;
    ds.category_schema.labels =
        j.at("categories").get<std::vector<std::string>>();
    ds.variable_schema.names =
        j.at("variables").get<std::vector<std::string>>();
    SymbolicUnit u;
    u.id = "EU28";
    for (const auto& var : ds.variable_schema.names) {
        const auto& row = j.at("rows").at(var);
        u.descriptions.push_back(validate_composition(
            row.at("values").get<std::vector<double>>(), ds.m(), 2e-3));
        u.weights.push_back(row.at("weight").get<double>());
    }
    ds.units.push_back(std::move(u));
    ds.validate();
    return ds;
}

}  // namespace testsupport
