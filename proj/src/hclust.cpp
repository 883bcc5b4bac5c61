#include "symclust/hclust.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "symclust/dissim.hpp"
#include "symclust/kernels.hpp"
#include "symclust/leader.hpp"

namespace symclust {

std::vector<std::size_t> Dendrogram::leaves_under(std::size_t node) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        if (cur < n()) {
            out.push_back(cur);
        } else {
            const Merge& mg = merges[cur - n()];
            // push right first so the left subtree is emitted first
            stack.push_back(mg.right_node);
            stack.push_back(mg.left_node);
        }
    }
    return out;
}

std::vector<std::size_t> Dendrogram::leaf_order() const {
    if (merges.empty()) {
        std::vector<std::size_t> out(n());
        for (std::size_t i = 0; i < n(); ++i) out[i] = i;
        return out;
    }
    return leaves_under(n() + merges.size() - 1);
}

Leader merge_leaders(const Cluster& cu, const Cluster& cv) {
    check_disjoint(cu, cv);
    const std::size_t p = cu.agg_weights.size();
    Leader out;
    out.components.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        double wu = cu.agg_weights[j];
        double wv = cv.agg_weights[j];
        const Composition& u = cu.leader.components[j];
        const Composition& v = cv.leader.components[j];
        std::vector<double> comp(u.size());
        if (wu + wv > 0.0) {
            for (std::size_t l = 0; l < u.size(); ++l)
                comp[l] = (wu * u[l] + wv * v[l]) / (wu + wv);
        } else {
            // zero-weight union: average the two (unweighted-mean) leaders
            // weighted by member counts, matching compute_leader's fallback
            double nu = static_cast<double>(cu.members.size());
            double nv = static_cast<double>(cv.members.size());
            for (std::size_t l = 0; l < u.size(); ++l)
                comp[l] = (nu * u[l] + nv * v[l]) / (nu + nv);
        }
        out.components[j] = validate_composition(comp, u.size(), 1e-9);
    }
    return out;
}

Dendrogram agglomerate(const Dataset& ds, bool normalize_by_p) {
    ds.validate();
    const std::size_t n = ds.n();
    if (n < 2) throw ConstraintError("agglomeration needs at least 2 units");

    struct Active {
        Cluster cluster;
        std::size_t node;  // dendrogram node id
    };
    std::vector<Active> active;
    active.reserve(n);
    Dendrogram d;
    d.normalize_by_p = normalize_by_p;
    for (std::size_t i = 0; i < n; ++i) {
        d.leaves.push_back(ds.units[i].id);
        active.push_back({make_cluster(ds, {i}), i});
    }

    double last_height = -std::numeric_limits<double>::infinity();
    while (active.size() > 1) {
        const std::size_t k = active.size();
        std::vector<Cluster> snapshot;
        snapshot.reserve(k);
        for (const auto& a : active) snapshot.push_back(a.cluster);
        std::vector<double> costs =
            pairwise_merge_costs_omp(snapshot, normalize_by_p);

        // serial scan picks the pair; ties by smallest (left id, right id)
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                double c = costs[triangle_index(i, j, k)];
                if (c > best) continue;
                if (c < best) {
                    best = c;
                    bi = i;
                    bj = j;
                    continue;
                }
                auto key = [&](std::size_t a, std::size_t b) {
                    const std::string& ia = active[a].cluster.id(ds);
                    const std::string& ib = active[b].cluster.id(ds);
                    return ia < ib ? std::pair(ia, ib) : std::pair(ib, ia);
                };
                if (key(i, j) < key(bi, bj)) {
                    bi = i;
                    bj = j;
                }
            }
        }

        // left node = cluster with the smaller id
        if (active[bj].cluster.id(ds) < active[bi].cluster.id(ds))
            std::swap(bi, bj);

        Merge mg;
        mg.left_node = active[bi].node;
        mg.right_node = active[bj].node;
        mg.height = best;
        mg.merged_leader = merge_leaders(active[bi].cluster, active[bj].cluster);
        mg.merged_agg_weights.resize(ds.p());
        for (std::size_t j = 0; j < ds.p(); ++j)
            mg.merged_agg_weights[j] = active[bi].cluster.agg_weights[j] +
                                       active[bj].cluster.agg_weights[j];
        if (best < last_height) d.height_inversion = true;
        last_height = best;

        Cluster merged;
        merged.members = active[bi].cluster.members;
        merged.members.insert(merged.members.end(),
                              active[bj].cluster.members.begin(),
                              active[bj].cluster.members.end());
        std::sort(merged.members.begin(), merged.members.end());
        merged.leader = mg.merged_leader;
        merged.agg_weights = mg.merged_agg_weights;

        std::size_t new_node = n + d.merges.size();
        d.merges.push_back(std::move(mg));
        // replace slot bi, drop slot bj
        active[bi] = {std::move(merged), new_node};
        active.erase(active.begin() + static_cast<long>(bj));
    }
    return d;
}

Partition cut(const Dendrogram& d, std::size_t k, const Dataset& ds) {
    const std::size_t n = d.n();
    if (k == 0 || k > n)
        throw ConstraintError(fmt::format("k = {} outside [1, n = {}]", k, n));
    // roots after removing the top k-1 merges
    std::vector<std::size_t> roots;
    if (n == 1) {
        roots.push_back(0);
    } else {
        roots.push_back(n + d.merges.size() - 1);
        while (roots.size() < k) {
            auto it = std::max_element(roots.begin(), roots.end());
            std::size_t node = *it;
            roots.erase(it);
            const Merge& mg = d.merges[node - n];
            roots.push_back(mg.left_node);
            roots.push_back(mg.right_node);
        }
    }
    Partition pt;
    for (std::size_t r : roots) {
        std::vector<std::size_t> members;
        for (std::size_t leaf : d.leaves_under(r))
            members.push_back(ds.index_of_unit(d.leaves[leaf]));
        pt.clusters.push_back(make_cluster(ds, std::move(members)));
    }
    pt.validate(ds);
    return pt;
}

}  // namespace symclust
