#pragma once

#include <string>
#include <vector>

#include "symclust/model.hpp"

namespace symclust {

// One agglomeration step. Nodes are numbered scipy-style: 0..n-1 are
// leaves (dataset order), n+i is the cluster created by merges[i].
struct Merge {
    std::size_t left_node = 0;
    std::size_t right_node = 0;
    double height = 0.0;
    Leader merged_leader;
    std::vector<double> merged_agg_weights;
};

struct Dendrogram {
    std::vector<std::string> leaves;  // unit ids, dataset order
    std::vector<Merge> merges;        // n-1 entries
    bool normalize_by_p = false;
    // true when some merge height is below an earlier one
    bool height_inversion = false;

    std::size_t n() const { return leaves.size(); }
    // Leaf indices under a node, in left-first display order.
    std::vector<std::size_t> leaves_under(std::size_t node) const;
    // Display order of all leaves (left subtree first).
    std::vector<std::size_t> leaf_order() const;
};

// Leader of the union from the two cluster summaries alone, without touching
// the member units. Equals compute_leader over the pooled members.
Leader merge_leaders(const Cluster& cu, const Cluster& cv);

// Criterion-compatible agglomerative clustering: greedily merge the pair
// with the smallest closed-form merge cost. Ties go to the pair with the
// lexicographically smallest (left id, right id); within a merge the cluster
// with the smaller id is the left node.
Dendrogram agglomerate(const Dataset& ds, bool normalize_by_p);

// Undo the last k-1 merges and rebuild the k remaining clusters.
Partition cut(const Dendrogram& d, std::size_t k, const Dataset& ds);

}  // namespace symclust
