// Compares the serial reference kernels against the OpenMP ones on a
// synthetic dataset and checks that they agree.

#include <chrono>
#include <cstdio>
#include <random>

#include "symclust/kernels.hpp"
#include "symclust/leader.hpp"

using namespace symclust;

namespace {

Dataset random_dataset(std::size_t n, std::size_t p, std::size_t m,
                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> wdist(0.1, 10.0);
    Dataset ds;
    for (std::size_t l = 0; l < m; ++l)
        ds.category_schema.labels.push_back("c" + std::to_string(l));
    for (std::size_t j = 0; j < p; ++j)
        ds.variable_schema.names.push_back("v" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        SymbolicUnit u;
        u.id = "u" + std::to_string(i);
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> v(m);
            double s = 0.0;
            for (double& x : v) s += (x = expo(rng));
            for (double& x : v) x /= s;
            u.descriptions.push_back(validate_composition(v, m, 1e-6));
            u.weights.push_back(wdist(rng));
        }
        ds.units.push_back(std::move(u));
    }
    return ds;
}

template <typename F>
double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    const std::size_t n = 2000, p = 8, m = 7, k = 200;
    Dataset ds = random_dataset(n, p, m, 42);

    std::vector<Leader> leaders;
    for (std::size_t i = 0; i < 16; ++i)
        leaders.push_back(Leader{ds.units[i * 37 % n].descriptions});

    std::vector<Cluster> clusters;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = c; i < n; i += k) members.push_back(i);
        clusters.push_back(make_cluster(ds, std::move(members)));
    }

    std::printf("openmp: %s, %d thread(s)\n",
                openmp_enabled() ? "multi-threaded" : "single-threaded",
                openmp_threads());

    auto a_serial = nearest_leader_serial(ds, leaders);
    auto a_omp = nearest_leader_omp(ds, leaders);
    std::printf("assignment agree: %s\n", a_serial == a_omp ? "yes" : "NO");
    double t1 = time_ms([&] { nearest_leader_serial(ds, leaders); }, 5);
    double t2 = time_ms([&] { nearest_leader_omp(ds, leaders); }, 5);
    std::printf("nearest_leader      serial %8.2f ms   omp %8.2f ms   speedup %.2fx\n",
                t1, t2, t1 / t2);

    auto c_serial = pairwise_merge_costs_serial(clusters, false);
    auto c_omp = pairwise_merge_costs_omp(clusters, false);
    std::printf("merge costs agree: %s\n", c_serial == c_omp ? "yes" : "NO");
    double t3 = time_ms([&] { pairwise_merge_costs_serial(clusters, false); }, 5);
    double t4 = time_ms([&] { pairwise_merge_costs_omp(clusters, false); }, 5);
    std::printf("pairwise_merge_cost serial %8.2f ms   omp %8.2f ms   speedup %.2fx\n",
                t3, t4, t3 / t4);

    return (a_serial == a_omp && c_serial == c_omp) ? 0 : 1;
}
