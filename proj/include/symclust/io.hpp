#pragma once

#include <string>
#include <vector>

#include "symclust/diag.hpp"
#include "symclust/hclust.hpp"
#include "symclust/ingest.hpp"
#include "symclust/leader.hpp"
#include "symclust/model.hpp"

namespace symclust::io {

// --- CSV ---------------------------------------------------------------

// Splits one CSV line; supports double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

// rates CSV: country,variable,cause_code,deaths,population
std::vector<RateRecord> read_rates_csv(const std::string& path);

// standard-population CSV, either form (detected from the header):
//   variable,std_count            (already two-dimensional)
//   age_group,gender,count        (combined via combine_gender_distributions)
StandardPopulation2D read_std_csv(const std::string& path,
                                  const VariableSchema& variables,
                                  double gender_share, double total);

// indicator CSV: unit_id,indicator,value (long format)
IndicatorTable read_indicators_csv(const std::string& path);

// cause-mapping JSON:
// {"rules":[{"category":"Acc","ranges":["V01-X59","Y85"]},...],"residual":"Oth"}
CauseMapping read_mapping_json(const std::string& path);

// --- dataset / partition / dendrogram JSON -----------------------------

std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);

std::string partition_to_json(const Partition& pt, const Dataset& ds,
                              const std::vector<double>& criterion_trace);
Partition partition_from_json(const std::string& text, const Dataset& ds);

std::string dendrogram_to_json(const Dendrogram& d);
Dendrogram dendrogram_from_json(const std::string& text);

// --- Newick ------------------------------------------------------------

// Branch length = parent merge height - own height (leaves sit at height 0).
std::string dendrogram_to_newick(const Dendrogram& d);

struct NewickNode {
    std::string label;  // leaves only
    double branch_length = 0.0;
    std::vector<NewickNode> children;
};
NewickNode parse_newick(const std::string& text);

// --- files -------------------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace symclust::io
