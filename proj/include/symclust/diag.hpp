#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symclust/model.hpp"

namespace symclust {

// spec(Y_j, C) = 1/2 * sum_l (r_Sjl - r_Cjl)^2, in [0, 1] on the simplex.
double specificity(const Composition& cluster_leader_j,
                   const Composition& global_leader_j);

enum class ContrastKind {
    defined,       // finite ratio, |value| >= 1
    neutral_zero,  // both proportions 0; reported as 1
    infinite       // exactly one proportion 0; signed sentinel
};

struct ContrastValue {
    double value = 1.0;
    ContrastKind kind = ContrastKind::defined;
};

// Signed ratio of a cluster proportion against the overall one:
// r_C/r_S when r_C >= r_S, else -r_S/r_C.
ContrastValue contrast(double cluster_prop, double overall_prop);

struct ContrastCell {
    std::string variable;
    std::string category;
    double value = 1.0;
    ContrastKind kind = ContrastKind::defined;
    bool highlighted = false;
};

struct VariableDiag {
    std::string variable;
    double specificity = 0.0;
    std::vector<ContrastCell> cells;  // one per category
};

struct ClusterDiag {
    std::string cluster_id;
    std::vector<std::string> member_ids;
    std::vector<VariableDiag> variables;  // rows, one per variable
};

struct DiagnosticsReport {
    Leader global_leader;
    double highlight_threshold = 1.25;
    std::vector<ClusterDiag> clusters;
};

DiagnosticsReport diagnostics_report(const Partition& pt, const Dataset& ds,
                                     double highlight_threshold = 1.25);

// unit id -> (indicator -> value); missing entries are missing values
struct IndicatorTable {
    std::vector<std::string> indicator_names;
    std::map<std::string, std::map<std::string, double>> values;

    std::optional<double> get(const std::string& unit,
                              const std::string& indicator) const;
};

// Empirical decile rank (0..9) per unit and indicator, rank-based over the
// non-missing values; ties share the lower rank.
std::map<std::string, std::map<std::string, int>> decile_ranks(
    const IndicatorTable& table);

struct PairwiseComparison {
    std::size_t group_a = 0;
    std::size_t group_b = 0;
    double mean_difference = 0.0;  // mean(a) - mean(b)
    double t_statistic = 0.0;
    double p_value = 1.0;           // unadjusted, two-sided
    double p_adjusted = 1.0;        // Bonferroni, capped at 1
};

struct AnovaResult {
    std::string indicator;
    std::vector<double> group_means;
    std::vector<std::size_t> group_sizes;
    double f_statistic = 0.0;
    double p_value = 1.0;
    std::vector<PairwiseComparison> pairwise;
};

// One-way ANOVA per indicator across the partition's clusters, with
// Bonferroni-adjusted pooled-variance pairwise t tests.
std::vector<AnovaResult> anova_bonferroni(const IndicatorTable& indicators,
                                          const Partition& pt,
                                          const Dataset& ds);

}  // namespace symclust
