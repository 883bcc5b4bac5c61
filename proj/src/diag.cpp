#include "symclust/diag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "symclust/dissim.hpp"
#include "symclust/leader.hpp"

namespace symclust {

double specificity(const Composition& cluster_leader_j,
                   const Composition& global_leader_j) {
    return 0.5 * sq_euclidean(cluster_leader_j, global_leader_j);
}

ContrastValue contrast(double cluster_prop, double overall_prop) {
    if (cluster_prop < 0.0 || overall_prop < 0.0)
        throw ConstraintError("contrast needs nonnegative proportions");
    if (cluster_prop == 0.0 && overall_prop == 0.0)
        return {1.0, ContrastKind::neutral_zero};
    if (overall_prop == 0.0)
        return {std::numeric_limits<double>::infinity(), ContrastKind::infinite};
    if (cluster_prop == 0.0)
        return {-std::numeric_limits<double>::infinity(),
                ContrastKind::infinite};
    if (cluster_prop >= overall_prop)
        return {cluster_prop / overall_prop, ContrastKind::defined};
    return {-overall_prop / cluster_prop, ContrastKind::defined};
}

DiagnosticsReport diagnostics_report(const Partition& pt, const Dataset& ds,
                                     double highlight_threshold) {
    pt.validate(ds);
    DiagnosticsReport rep;
    rep.highlight_threshold = highlight_threshold;

    std::vector<std::size_t> all(ds.n());
    std::iota(all.begin(), all.end(), 0u);
    rep.global_leader = compute_leader(ds, all);

    for (const auto& c : pt.clusters) {
        ClusterDiag cd;
        cd.cluster_id = c.id(ds);
        for (std::size_t idx : c.members)
            cd.member_ids.push_back(ds.units[idx].id);
        for (std::size_t j = 0; j < ds.p(); ++j) {
            VariableDiag vd;
            vd.variable = ds.variable_schema.names[j];
            vd.specificity = specificity(c.leader.components[j],
                                         rep.global_leader.components[j]);
            for (std::size_t l = 0; l < ds.m(); ++l) {
                ContrastValue cv = contrast(c.leader.components[j][l],
                                            rep.global_leader.components[j][l]);
                ContrastCell cell;
                cell.variable = vd.variable;
                cell.category = ds.category_schema.labels[l];
                cell.value = cv.value;
                cell.kind = cv.kind;
                cell.highlighted = std::abs(cv.value) >= highlight_threshold;
                vd.cells.push_back(std::move(cell));
            }
            cd.variables.push_back(std::move(vd));
        }
        rep.clusters.push_back(std::move(cd));
    }
    return rep;
}

std::optional<double> IndicatorTable::get(const std::string& unit,
                                          const std::string& indicator) const {
    auto it = values.find(unit);
    if (it == values.end()) return std::nullopt;
    auto jt = it->second.find(indicator);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::map<std::string, std::map<std::string, int>> decile_ranks(
    const IndicatorTable& table) {
    std::map<std::string, std::map<std::string, int>> out;
    for (const auto& ind : table.indicator_names) {
        std::vector<std::pair<double, std::string>> vals;
        for (const auto& [unit, row] : table.values) {
            auto it = row.find(ind);
            if (it != row.end()) vals.emplace_back(it->second, unit);
        }
        std::sort(vals.begin(), vals.end());
        const std::size_t n = vals.size();
        for (std::size_t r = 0; r < n; ++r) {
            // equal values share the rank of their first occurrence
            std::size_t first = r;
            while (first > 0 && vals[first - 1].first == vals[r].first) --first;
            int decile = static_cast<int>(10 * first / n);
            out[vals[r].second][ind] = std::min(decile, 9);
        }
    }
    return out;
}

std::vector<AnovaResult> anova_bonferroni(const IndicatorTable& indicators,
                                          const Partition& pt,
                                          const Dataset& ds) {
    pt.validate(ds);
    const std::size_t k = pt.k();
    if (k < 2)
        throw ConstraintError("ANOVA needs at least 2 clusters");

    std::vector<AnovaResult> results;
    for (const auto& ind : indicators.indicator_names) {
        std::vector<std::vector<double>> groups(k);
        for (std::size_t g = 0; g < k; ++g)
            for (std::size_t idx : pt.clusters[g].members)
                if (auto v = indicators.get(ds.units[idx].id, ind))
                    groups[g].push_back(*v);

        std::size_t total_n = 0;
        for (const auto& g : groups) {
            if (g.empty())
                throw ConstraintError(fmt::format(
                    "indicator '{}' has a cluster with no values", ind));
            total_n += g.size();
        }
        if (total_n <= k)
            throw ConstraintError(
                fmt::format("indicator '{}' has too few values for ANOVA", ind));

        AnovaResult res;
        res.indicator = ind;
        double grand = 0.0;
        for (const auto& g : groups) {
            double mean = std::accumulate(g.begin(), g.end(), 0.0) /
                          static_cast<double>(g.size());
            res.group_means.push_back(mean);
            res.group_sizes.push_back(g.size());
            grand += std::accumulate(g.begin(), g.end(), 0.0);
        }
        grand /= static_cast<double>(total_n);

        double ssb = 0.0, ssw = 0.0;
        for (std::size_t g = 0; g < k; ++g) {
            double d = res.group_means[g] - grand;
            ssb += static_cast<double>(groups[g].size()) * d * d;
            for (double v : groups[g]) {
                double e = v - res.group_means[g];
                ssw += e * e;
            }
        }
        const double df_b = static_cast<double>(k - 1);
        const double df_w = static_cast<double>(total_n - k);
        if (ssw <= 0.0)
            throw ConstraintError(fmt::format(
                "indicator '{}' has zero within-group variance", ind));
        const double msw = ssw / df_w;
        res.f_statistic = (ssb / df_b) / msw;
        boost::math::fisher_f fdist(df_b, df_w);
        res.p_value = boost::math::cdf(boost::math::complement(
            fdist, res.f_statistic));

        const double n_pairs = static_cast<double>(k * (k - 1) / 2);
        boost::math::students_t tdist(df_w);
        for (std::size_t a = 0; a + 1 < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                PairwiseComparison pc;
                pc.group_a = a;
                pc.group_b = b;
                pc.mean_difference = res.group_means[a] - res.group_means[b];
                double se = std::sqrt(
                    msw * (1.0 / static_cast<double>(groups[a].size()) +
                           1.0 / static_cast<double>(groups[b].size())));
                pc.t_statistic = pc.mean_difference / se;
                pc.p_value = 2.0 * boost::math::cdf(boost::math::complement(
                                       tdist, std::abs(pc.t_statistic)));
                pc.p_adjusted = std::min(1.0, pc.p_value * n_pairs);
                res.pairwise.push_back(pc);
            }
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace symclust
