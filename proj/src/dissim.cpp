#include "symclust/dissim.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "symclust/leader.hpp"

namespace symclust {

double sq_euclidean(const Composition& a, const Composition& b) {
    if (a.size() != b.size())
        throw ConstraintError(fmt::format("composition length mismatch: {} vs {}",
                                          a.size(), b.size()));
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s.add(d * d);
    }
    return s.value();
}

double unit_leader_dissim(const SymbolicUnit& x, const Leader& r) {
    if (x.descriptions.size() != r.components.size())
        throw ConstraintError(
            fmt::format("unit '{}' and leader disagree on variable count", x.id));
    KahanSum s;
    for (std::size_t j = 0; j < x.descriptions.size(); ++j)
        s.add(x.weights[j] * sq_euclidean(x.descriptions[j], r.components[j]));
    return s.value();
}

double cluster_error(const Cluster& c, const Dataset& ds) {
    KahanSum s;
    for (std::size_t idx : c.members) {
        if (idx >= ds.n()) throw InternalError("cluster member out of range");
        s.add(unit_leader_dissim(ds.units[idx], c.leader));
    }
    return s.value();
}

double partition_criterion(const Partition& pt, const Dataset& ds) {
    KahanSum s;
    for (const auto& c : pt.clusters) s.add(cluster_error(c, ds));
    return s.value();
}

void check_disjoint(const Cluster& cu, const Cluster& cv) {
    // members are sorted
    std::vector<std::size_t> common;
    std::set_intersection(cu.members.begin(), cu.members.end(),
                          cv.members.begin(), cv.members.end(),
                          std::back_inserter(common));
    if (!common.empty())
        throw ConstraintError("clusters overlap");
}

double merge_dissim_definitional(const Cluster& cu, const Cluster& cv,
                                 const Dataset& ds) {
    check_disjoint(cu, cv);
    std::vector<std::size_t> pooled(cu.members);
    pooled.insert(pooled.end(), cv.members.begin(), cv.members.end());
    Cluster merged = make_cluster(ds, std::move(pooled));
    return cluster_error(merged, ds) - cluster_error(cu, ds) -
           cluster_error(cv, ds);
}

double merge_dissim_closed(const Cluster& cu, const Cluster& cv,
                           bool normalize_by_p) {
    check_disjoint(cu, cv);
    const std::size_t p = cu.agg_weights.size();
    if (cv.agg_weights.size() != p)
        throw ConstraintError("clusters disagree on variable count");
    KahanSum s;
    for (std::size_t j = 0; j < p; ++j) {
        double wu = cu.agg_weights[j];
        double wv = cv.agg_weights[j];
        if (wu + wv <= 0.0) continue;  // zero-weight variable contributes 0
        s.add(wu * wv / (wu + wv) *
              sq_euclidean(cu.leader.components[j], cv.leader.components[j]));
    }
    double d = s.value();
    return normalize_by_p ? d / static_cast<double>(p) : d;
}

}  // namespace symclust
