#include "symclust/leader.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "symclust/dissim.hpp"
#include "symclust/kernels.hpp"

namespace symclust {

Leader compute_leader(std::span<const SymbolicUnit* const> members) {
    if (members.empty()) throw ConstraintError("cannot compute leader of an empty cluster");
    if (members.size() == 1) {
        // the weighted mean of one unit is the unit itself; copying keeps it
        // bit-identical and the singleton error exactly 0
        return Leader{members.front()->descriptions};
    }
    const std::size_t p = members.front()->descriptions.size();
    const std::size_t m = members.front()->descriptions.front().size();
    Leader r;
    r.components.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        KahanSum wsum;
        for (const SymbolicUnit* u : members) wsum.add(u->weights[j]);
        std::vector<double> comp(m, 0.0);
        if (wsum.value() > 0.0) {
            for (std::size_t l = 0; l < m; ++l) {
                KahanSum num;
                for (const SymbolicUnit* u : members)
                    num.add(u->weights[j] * u->descriptions[j][l]);
                comp[l] = num.value() / wsum.value();
            }
        } else {
            // all member weights are 0 for this variable: any simplex point
            // is optimal, take the unweighted mean
            for (std::size_t l = 0; l < m; ++l) {
                KahanSum num;
                for (const SymbolicUnit* u : members)
                    num.add(u->descriptions[j][l]);
                comp[l] = num.value() / static_cast<double>(members.size());
            }
        }
        r.components[j] = validate_composition(comp, m, 1e-9);
    }
    return r;
}

Leader compute_leader(const Dataset& ds, std::span<const std::size_t> members) {
    std::vector<const SymbolicUnit*> ptrs;
    ptrs.reserve(members.size());
    for (std::size_t idx : members) ptrs.push_back(&ds.units[idx]);
    return compute_leader(ptrs);
}

Cluster make_cluster(const Dataset& ds, std::vector<std::size_t> members) {
    if (members.empty()) throw ConstraintError("cannot build an empty cluster");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Cluster c;
    c.leader = compute_leader(ds, members);
    c.agg_weights.assign(ds.p(), 0.0);
    for (std::size_t j = 0; j < ds.p(); ++j) {
        KahanSum s;
        for (std::size_t idx : members) s.add(ds.units[idx].weights[j]);
        c.agg_weights[j] = s.value();
    }
    c.members = std::move(members);
    return c;
}

Partition assign_units(const Dataset& ds, const std::vector<Leader>& leaders) {
    std::vector<std::size_t> assignment = nearest_leader_omp(ds, leaders);
    std::vector<std::vector<std::size_t>> groups(leaders.size());
    for (std::size_t i = 0; i < assignment.size(); ++i)
        groups[assignment[i]].push_back(i);
    Partition pt;
    for (auto& g : groups)
        if (!g.empty()) pt.clusters.push_back(make_cluster(ds, std::move(g)));
    return pt;
}

namespace {

std::vector<Leader> init_leaders(const Dataset& ds, const LeaderConfig& cfg) {
    std::vector<std::size_t> seeds;
    if (cfg.init_strategy == InitStrategy::random_units) {
        std::vector<std::size_t> idx(ds.n());
        std::iota(idx.begin(), idx.end(), 0u);
        std::mt19937_64 rng(cfg.seed);
        for (std::size_t i = 0; i < cfg.k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        seeds.assign(idx.begin(), idx.begin() + static_cast<long>(cfg.k));
    } else {
        // spread seeding: start from the unit with the largest total weight,
        // then repeatedly take the unit farthest from its nearest seed
        std::size_t first = 0;
        double best_w = -1.0;
        for (std::size_t i = 0; i < ds.n(); ++i) {
            double tw = std::accumulate(ds.units[i].weights.begin(),
                                        ds.units[i].weights.end(), 0.0);
            if (tw > best_w) {
                best_w = tw;
                first = i;
            }
        }
        seeds.push_back(first);
        while (seeds.size() < cfg.k) {
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < ds.n(); ++i) {
                if (std::find(seeds.begin(), seeds.end(), i) != seeds.end())
                    continue;
                double near_d = std::numeric_limits<double>::infinity();
                for (std::size_t s : seeds) {
                    SymbolicUnit proxy = ds.units[i];
                    Leader as_leader{ds.units[s].descriptions};
                    near_d = std::min(near_d, unit_leader_dissim(proxy, as_leader));
                }
                if (near_d > far_d) {
                    far_d = near_d;
                    far = i;
                }
            }
            seeds.push_back(far);
        }
    }
    std::vector<Leader> leaders;
    leaders.reserve(seeds.size());
    for (std::size_t s : seeds) leaders.push_back(Leader{ds.units[s].descriptions});
    return leaders;
}

// Reseed empty leader slots with the units farthest from their current
// leaders, keeping k clusters alive.
void repair_empty(const Dataset& ds, std::vector<std::size_t>& assignment,
                  std::size_t k) {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t a : assignment) ++counts[a];
    for (std::size_t slot = 0; slot < k; ++slot) {
        if (counts[slot] > 0) continue;
        // farthest unit from the leader of its (non-singleton) cluster
        std::size_t worst = assignment.size();
        double worst_d = -1.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] < 2) continue;
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < assignment.size(); ++i)
                if (assignment[i] == c) members.push_back(i);
            Leader l = compute_leader(ds, members);
            for (std::size_t i : members) {
                double d = unit_leader_dissim(ds.units[i], l);
                if (d > worst_d) {
                    worst_d = d;
                    worst = i;
                }
            }
        }
        if (worst == assignment.size()) break;  // nothing left to split
        --counts[assignment[worst]];
        assignment[worst] = slot;
        ++counts[slot];
    }
}

}  // namespace

LeaderResult run_leader_method(const Dataset& ds, const LeaderConfig& cfg) {
    ds.validate();
    if (cfg.k == 0 || cfg.k > ds.n())
        throw ConstraintError(
            fmt::format("k = {} outside [1, n = {}]", cfg.k, ds.n()));

    std::vector<Leader> leaders = init_leaders(ds, cfg);
    LeaderResult result;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
        std::vector<std::size_t> assignment = nearest_leader_omp(ds, leaders);
        repair_empty(ds, assignment, leaders.size());
        std::vector<std::vector<std::size_t>> groups(leaders.size());
        for (std::size_t i = 0; i < assignment.size(); ++i)
            groups[assignment[i]].push_back(i);
        Partition pt;
        for (auto& g : groups)
            if (!g.empty()) pt.clusters.push_back(make_cluster(ds, std::move(g)));
        double err = partition_criterion(pt, ds);
        result.criterion_trace.push_back(err);
        result.partition = std::move(pt);
        if (prev - err < cfg.convergence_epsilon) break;
        prev = err;
        leaders.clear();
        for (const auto& c : result.partition.clusters)
            leaders.push_back(c.leader);
    }
    return result;
}

}  // namespace symclust
