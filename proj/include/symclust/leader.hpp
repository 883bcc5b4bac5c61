#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symclust/model.hpp"

namespace symclust {

enum class InitStrategy { random_units, spread_seeding };

struct LeaderConfig {
    std::size_t k = 1;
    std::size_t max_iterations = 100;
    double convergence_epsilon = 1e-12;  // absolute decrease of Err
    std::uint64_t seed = 0;
    InitStrategy init_strategy = InitStrategy::spread_seeding;
};

// Closed-form optimal representative: per variable, the weighted mean of
// member compositions. A variable whose member weights sum to 0 gets the
// unweighted mean (any simplex point is optimal there; the mean keeps the
// result deterministic and schema-valid).
Leader compute_leader(std::span<const SymbolicUnit* const> members);
Leader compute_leader(const Dataset& ds, std::span<const std::size_t> members);

// Builds a Cluster (sorted members, aggregated weights, optimal leader).
Cluster make_cluster(const Dataset& ds, std::vector<std::size_t> members);

// Assigns each unit to its nearest leader (ties to the lowest leader index)
// and recomputes the leaders of the resulting clusters. Leaders left with no
// members produce no cluster here; run_leader_method repairs them.
Partition assign_units(const Dataset& ds, const std::vector<Leader>& leaders);

struct LeaderResult {
    Partition partition;
    std::vector<double> criterion_trace;  // Err per iteration, non-increasing
};

// Iterative leader method: alternate assignment and leader recomputation
// until the criterion decrease drops below convergence_epsilon. Empty
// clusters are reseeded with the unit farthest from its current leader.
LeaderResult run_leader_method(const Dataset& ds, const LeaderConfig& config);

}  // namespace symclust
