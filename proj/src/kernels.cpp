#include "symclust/kernels.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "symclust/dissim.hpp"

namespace symclust {

namespace {

std::size_t argmin_leader(const SymbolicUnit& unit,
                          const std::vector<Leader>& leaders) {
    std::size_t best = 0;
    double best_d = unit_leader_dissim(unit, leaders[0]);
    for (std::size_t l = 1; l < leaders.size(); ++l) {
        double d = unit_leader_dissim(unit, leaders[l]);
        if (d < best_d) {
            best_d = d;
            best = l;
        }
    }
    return best;
}

}  // namespace

std::vector<std::size_t> nearest_leader_serial(
    const Dataset& ds, const std::vector<Leader>& leaders) {
    if (leaders.empty()) throw ConstraintError("no leaders to assign to");
    std::vector<std::size_t> assignment(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i)
        assignment[i] = argmin_leader(ds.units[i], leaders);
    return assignment;
}

std::vector<std::size_t> nearest_leader_omp(
    const Dataset& ds, const std::vector<Leader>& leaders) {
    if (leaders.empty()) throw ConstraintError("no leaders to assign to");
    std::vector<std::size_t> assignment(ds.n());
    const std::int64_t n = static_cast<std::int64_t>(ds.n());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        assignment[static_cast<std::size_t>(i)] =
            argmin_leader(ds.units[static_cast<std::size_t>(i)], leaders);
    return assignment;
}

std::vector<double> pairwise_merge_costs_serial(
    const std::vector<Cluster>& clusters, bool normalize_by_p) {
    const std::size_t k = clusters.size();
    std::vector<double> costs(k * (k - 1) / 2);
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            costs[triangle_index(i, j, k)] =
                merge_dissim_closed(clusters[i], clusters[j], normalize_by_p);
    return costs;
}

std::vector<double> pairwise_merge_costs_omp(
    const std::vector<Cluster>& clusters, bool normalize_by_p) {
    const std::size_t k = clusters.size();
    std::vector<double> costs(k * (k - 1) / 2);
    const std::int64_t total = static_cast<std::int64_t>(costs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < total; ++t) {
        // invert the triangle index
        std::size_t i = 0;
        std::size_t rem = static_cast<std::size_t>(t);
        while (rem >= k - 1 - i) {
            rem -= k - 1 - i;
            ++i;
        }
        std::size_t j = i + 1 + rem;
        costs[static_cast<std::size_t>(t)] =
            merge_dissim_closed(clusters[i], clusters[j], normalize_by_p);
    }
    return costs;
}

bool openmp_enabled() {
#ifdef _OPENMP
    return omp_get_max_threads() > 1;
#else
    return false;
#endif
}

int openmp_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_cap(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

}  // namespace symclust
