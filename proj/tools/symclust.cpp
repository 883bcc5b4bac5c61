// symclust: cluster units described by weighted compositions.
//
// Subcommands: ingest, cluster, report, plot. See README.md.

#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "symclust/diag.hpp"
#include "symclust/dissim.hpp"
#include "symclust/hclust.hpp"
#include "symclust/ingest.hpp"
#include "symclust/io.hpp"
#include "symclust/kernels.hpp"
#include "symclust/leader.hpp"
#include "symclust/svg.hpp"

namespace fs = std::filesystem;
using namespace symclust;

namespace {

std::string out_path(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

int cmd_ingest(const std::string& rates_path, const std::string& std_path,
               const std::string& mapping_path, const std::string& out_dir,
               double gender_share, double std_total) {
    CategorySchema categories = CategorySchema::default_mortality();
    VariableSchema variables = VariableSchema::default_age_gender();
    auto records = io::read_rates_csv(rates_path);
    auto std_pop = io::read_std_csv(std_path, variables, gender_share, std_total);
    auto mapping = io::read_mapping_json(mapping_path);
    Dataset ds = build_dataset(records, std_pop, mapping, categories, variables);
    io::write_file(out_path(out_dir, "dataset.json"), io::dataset_to_json(ds));

    fmt::print("{} units, {} variables, {} categories\n", ds.n(), ds.p(), ds.m());
    for (const auto& u : ds.units) {
        double total = std::accumulate(u.weights.begin(), u.weights.end(), 0.0);
        fmt::print("  {:<12} total expected deaths {:.3f}\n", u.id, total);
    }
    return 0;
}

int cmd_cluster(const std::string& dataset_path, const std::string& method,
                std::size_t k, std::uint64_t seed, bool uniform_weights,
                bool normalize_by_p, const std::string& init,
                const std::string& out_dir) {
    Dataset ds = io::dataset_from_json(io::read_file(dataset_path));
    if (uniform_weights) ds = set_uniform_weights(ds);

    if (method == "hclust") {
        Dendrogram d = agglomerate(ds, normalize_by_p);
        io::write_file(out_path(out_dir, "dendrogram.json"),
                       io::dendrogram_to_json(d));
        io::write_file(out_path(out_dir, "dendrogram.nwk"),
                       io::dendrogram_to_newick(d));
        fmt::print("{} merges, root height {:.6g}{}\n", d.merges.size(),
                   d.merges.empty() ? 0.0 : d.merges.back().height,
                   d.height_inversion ? " (height inversion present)" : "");
    } else if (method == "leader") {
        LeaderConfig cfg;
        cfg.k = k;
        cfg.seed = seed;
        cfg.init_strategy = (init == "random") ? InitStrategy::random_units
                                               : InitStrategy::spread_seeding;
        LeaderResult res = run_leader_method(ds, cfg);
        io::write_file(out_path(out_dir, "partition.json"),
                       io::partition_to_json(res.partition, ds,
                                             res.criterion_trace));
        fmt::print("k = {}, Err = {:.10g} after {} iterations\n",
                   res.partition.k(), res.criterion_trace.back(),
                   res.criterion_trace.size());
    } else {
        throw ConstraintError(fmt::format("unknown method '{}'", method));
    }
    return 0;
}

std::string format_contrast(const ContrastCell& cell) {
    if (cell.kind == ContrastKind::infinite)
        return cell.value > 0 ? "+inf" : "-inf";
    return fmt::format("{:.2f}", cell.value);
}

int cmd_report(const std::string& dataset_path, const std::string& partition_path,
               const std::string& dendrogram_path, std::size_t k,
               const std::string& indicators_path, double highlight_threshold,
               const std::string& out_dir) {
    Dataset ds = io::dataset_from_json(io::read_file(dataset_path));
    Partition pt;
    if (!partition_path.empty()) {
        pt = io::partition_from_json(io::read_file(partition_path), ds);
    } else if (!dendrogram_path.empty()) {
        Dendrogram d = io::dendrogram_from_json(io::read_file(dendrogram_path));
        pt = cut(d, k, ds);
    } else {
        throw ConstraintError("report needs --partition or --dendrogram");
    }

    DiagnosticsReport rep = diagnostics_report(pt, ds, highlight_threshold);

    std::string csv =
        "cluster,variable,specificity,category,contrast,kind,highlighted\n";
    std::string txt;
    for (const auto& cd : rep.clusters) {
        txt += fmt::format("CLUSTER {} ({} units):\n", cd.cluster_id,
                           cd.member_ids.size());
        txt += fmt::format("{:<12}{:>12}", "variable", "specificity");
        for (const auto& cat : ds.category_schema.labels)
            txt += fmt::format("{:>9}", cat);
        txt += "\n";
        for (const auto& vd : cd.variables) {
            txt += fmt::format("{:<12}{:>12.2f}", vd.variable, vd.specificity);
            for (const auto& cell : vd.cells) {
                std::string v = format_contrast(cell);
                if (cell.highlighted) v += "*";
                txt += fmt::format("{:>9}", v);
                csv += fmt::format("{},{},{:.17g},{},{:.17g},{},{}\n",
                                   cd.cluster_id, vd.variable, vd.specificity,
                                   cell.category, cell.value,
                                   cell.kind == ContrastKind::defined
                                       ? "defined"
                                       : (cell.kind == ContrastKind::neutral_zero
                                              ? "neutral_zero"
                                              : "infinite"),
                                   cell.highlighted ? 1 : 0);
            }
            txt += "\n";
        }
        txt += "\n";
    }
    io::write_file(out_path(out_dir, "report.csv"), csv);
    io::write_file(out_path(out_dir, "report.txt"), txt);

    if (!indicators_path.empty()) {
        IndicatorTable table = io::read_indicators_csv(indicators_path);
        auto deciles = decile_ranks(table);
        std::string dec_csv = "unit_id,indicator,decile\n";
        for (const auto& [unit, row] : deciles)
            for (const auto& [ind, d] : row)
                dec_csv += fmt::format("{},{},{}\n", unit, ind, d);
        io::write_file(out_path(out_dir, "deciles.csv"), dec_csv);

        auto anova = anova_bonferroni(table, pt, ds);
        std::string a_csv = "indicator,f_statistic,p_value\n";
        std::string pw_csv =
            "indicator,cluster_a,cluster_b,mean_difference,t_statistic,"
            "p_value,p_adjusted\n";
        for (const auto& res : anova) {
            a_csv += fmt::format("{},{:.17g},{:.17g}\n", res.indicator,
                                 res.f_statistic, res.p_value);
            for (const auto& pc : res.pairwise)
                pw_csv += fmt::format(
                    "{},{},{},{:.17g},{:.17g},{:.17g},{:.17g}\n", res.indicator,
                    pt.clusters[pc.group_a].id(ds),
                    pt.clusters[pc.group_b].id(ds), pc.mean_difference,
                    pc.t_statistic, pc.p_value, pc.p_adjusted);
        }
        io::write_file(out_path(out_dir, "anova.csv"), a_csv);
        io::write_file(out_path(out_dir, "anova_pairwise.csv"), pw_csv);
    }
    fmt::print("report written to {}\n", out_dir);
    return 0;
}

int cmd_plot(const std::string& dataset_path, const std::string& dendrogram_path,
             std::size_t k, const std::string& indicators_path,
             const std::string& out_dir) {
    Dataset ds = io::dataset_from_json(io::read_file(dataset_path));
    Dendrogram d = io::dendrogram_from_json(io::read_file(dendrogram_path));

    std::map<std::string, std::map<std::string, int>> deciles;
    std::vector<std::string> indicator_names;
    if (!indicators_path.empty()) {
        IndicatorTable table = io::read_indicators_csv(indicators_path);
        deciles = decile_ranks(table);
        indicator_names = table.indicator_names;
    }
    io::write_file(out_path(out_dir, "dendrogram.svg"),
                   svg::render_dendrogram(d, deciles, indicator_names));

    Partition pt = cut(d, k, ds);
    io::write_file(out_path(out_dir, "patterns.svg"),
                   svg::render_patterns(pt, ds));
    fmt::print("plots written to {}\n", out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("SYMCLUST_THREADS"))
        set_thread_cap(std::atoi(threads));

    CLI::App app{"Clustering of units described by weighted compositions"};
    app.require_subcommand(1);

    std::string rates_path, std_path, mapping_path, dataset_path;
    std::string partition_path, dendrogram_path, indicators_path;
    std::string method = "hclust", init = "spread", out_dir = ".";
    std::size_t k = 1;
    std::uint64_t seed = 0;
    bool uniform_weights = false, normalize_by_p = false;
    double highlight_threshold = 1.25, gender_share = 0.5, std_total = 100000.0;

    auto* ing = app.add_subcommand("ingest", "Build a dataset from rate CSVs");
    ing->add_option("--rates", rates_path, "rates CSV")->required();
    ing->add_option("--std", std_path, "standard-population CSV")->required();
    ing->add_option("--mapping", mapping_path, "cause-mapping JSON")->required();
    ing->add_option("--gender-share", gender_share,
                    "male fraction of the standard total (1d form)");
    ing->add_option("--std-total", std_total, "standard population size");
    ing->add_option("--out-dir", out_dir, "output directory");

    auto* clu = app.add_subcommand("cluster", "Run a clustering method");
    clu->add_option("--dataset", dataset_path, "dataset JSON")->required();
    clu->add_option("--method", method, "leader|hclust");
    clu->add_option("--k", k, "number of clusters (leader method)");
    clu->add_option("--seed", seed, "random seed");
    clu->add_option("--init", init, "leader init: spread|random");
    clu->add_flag("--uniform-weights", uniform_weights,
                  "set all weights to 1 first");
    clu->add_flag("--normalize-by-p", normalize_by_p,
                  "divide merge heights by the variable count");
    clu->add_option("--out-dir", out_dir, "output directory");

    auto* rep = app.add_subcommand("report", "Specificity/contrast diagnostics");
    rep->add_option("--dataset", dataset_path, "dataset JSON")->required();
    rep->add_option("--partition", partition_path, "partition JSON");
    rep->add_option("--dendrogram", dendrogram_path, "dendrogram JSON");
    rep->add_option("--k", k, "clusters to cut the dendrogram into");
    rep->add_option("--indicators", indicators_path, "indicator CSV");
    rep->add_option("--highlight-threshold", highlight_threshold,
                    "highlight |contrast| at or above this");
    rep->add_option("--out-dir", out_dir, "output directory");

    auto* plt = app.add_subcommand("plot", "Dendrogram and pattern SVGs");
    plt->add_option("--dataset", dataset_path, "dataset JSON")->required();
    plt->add_option("--dendrogram", dendrogram_path, "dendrogram JSON")
        ->required();
    plt->add_option("--k", k, "clusters for the pattern panels");
    plt->add_option("--indicators", indicators_path, "indicator CSV");
    plt->add_option("--out-dir", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ing->parsed())
            return cmd_ingest(rates_path, std_path, mapping_path, out_dir,
                              gender_share, std_total);
        if (clu->parsed())
            return cmd_cluster(dataset_path, method, k, seed, uniform_weights,
                               normalize_by_p, init, out_dir);
        if (rep->parsed())
            return cmd_report(dataset_path, partition_path, dendrogram_path, k,
                              indicators_path, highlight_threshold, out_dir);
        if (plt->parsed())
            return cmd_plot(dataset_path, dendrogram_path, k, indicators_path,
                            out_dir);
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return 4;
    }
    return 0;
}
