#pragma once

#include <vector>

#include "symclust/model.hpp"

namespace symclust {

// Hot inner loops, each in a serial reference form and an OpenMP form.
// Both produce identical results: every output element depends only on its
// own inputs, and all final reductions run serially in fixed order.
// The omp variants fall back to the serial code when built without OpenMP.

// Index of the nearest leader per unit (ties to the lowest leader index).
std::vector<std::size_t> nearest_leader_serial(
    const Dataset& ds, const std::vector<Leader>& leaders);
std::vector<std::size_t> nearest_leader_omp(const Dataset& ds,
                                            const std::vector<Leader>& leaders);

// Flattened strict upper triangle of the pairwise closed-form merge costs:
// entry for (i, j), i < j, lives at i*k - i*(i+1)/2 + (j-i-1).
std::vector<double> pairwise_merge_costs_serial(
    const std::vector<Cluster>& clusters, bool normalize_by_p);
std::vector<double> pairwise_merge_costs_omp(
    const std::vector<Cluster>& clusters, bool normalize_by_p);

inline std::size_t triangle_index(std::size_t i, std::size_t j, std::size_t k) {
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

// True when this build can run the omp kernels on more than one thread.
bool openmp_enabled();

// Threads the omp kernels will use: 1 when built without OpenMP.
int openmp_threads();

// Caps OpenMP threads, e.g. from SYMCLUST_THREADS. No-op without OpenMP.
void set_thread_cap(int threads);

}  // namespace symclust
