#pragma once

#include "symclust/model.hpp"

namespace symclust {

// Kahan compensated accumulator; keeps long reductions near working
// precision.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Squared Euclidean distance between two compositions; bounded by 2 on the
// simplex.
double sq_euclidean(const Composition& a, const Composition& b);

// d(X,R) = sum_j w_xj * d_E^2(x_j, r_j).
double unit_leader_dissim(const SymbolicUnit& x, const Leader& r);

// err(C) = sum of member-to-leader dissimilarities.
double cluster_error(const Cluster& c, const Dataset& ds);

// Err = sum of cluster errors over the partition.
double partition_criterion(const Partition& pt, const Dataset& ds);

// Criterion increase of a merge, by actually forming the merged cluster:
// err(Cu u Cv) - err(Cu) - err(Cv). Always >= 0.
double merge_dissim_definitional(const Cluster& cu, const Cluster& cv,
                                 const Dataset& ds);

// Closed-form merge cost from leaders and aggregated weights:
//   sum_j [w_uj w_vj / (w_uj + w_vj)] d_E^2(u_j, v_j),
// optionally divided by p. The un-normalized variant equals the
// definitional value; the normalized one reproduces the published formula.
// A variable with w_uj + w_vj = 0 contributes 0.
double merge_dissim_closed(const Cluster& cu, const Cluster& cv,
                           bool normalize_by_p);

void check_disjoint(const Cluster& cu, const Cluster& cv);

}  // namespace symclust
