#include "symclust/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace symclust::io {

using nlohmann::json;

namespace {
constexpr int kFormatVersion = 1;

double parse_number(const std::string& s, const std::string& path, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(
            fmt::format("{}:{}: not a number: '{}'", path, line, s));
    }
}

void check_version(const json& j, const std::string& what) {
    if (!j.contains("format_version") || j["format_version"] != kFormatVersion)
        throw ParseError(
            fmt::format("{} JSON: missing or unsupported format_version", what));
}
}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::vector<RateRecord> read_rates_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
    std::string line;
    int lineno = 0;
    std::vector<RateRecord> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (lineno == 1 && f.size() >= 1 && f[0] == "country") continue;
        if (f.size() != 5)
            throw ParseError(fmt::format("{}:{}: expected 5 fields, got {}",
                                         path, lineno, f.size()));
        RateRecord r;
        r.country = f[0];
        r.variable = f[1];
        r.cause_code = f[2];
        r.deaths = parse_number(f[3], path, lineno);
        r.population = parse_number(f[4], path, lineno);
        if (r.population <= 0.0)
            throw ParseError(
                fmt::format("{}:{}: population must be positive", path, lineno));
        if (r.deaths < 0.0)
            throw ParseError(
                fmt::format("{}:{}: negative deaths", path, lineno));
        records.push_back(std::move(r));
    }
    return records;
}

StandardPopulation2D read_std_csv(const std::string& path,
                                  const VariableSchema& variables,
                                  double gender_share, double total) {
    std::ifstream in(path);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(fmt::format("{}: empty file", path));
    auto header = split_csv_line(line);

    if (header.size() == 2 && header[0] == "variable") {
        StandardPopulation2D std_pop;
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto f = split_csv_line(line);
            if (f.size() != 2)
                throw ParseError(fmt::format("{}:{}: expected 2 fields", path,
                                             lineno));
            double v = parse_number(f[1], path, lineno);
            if (v <= 0.0)
                throw ParseError(fmt::format(
                    "{}:{}: standard count must be positive", path, lineno));
            std_pop.entries[f[0]] = v;
        }
        for (const auto& var : variables.names)
            if (!std_pop.entries.count(var))
                throw ParseError(fmt::format(
                    "{}: no standard-population entry for '{}'", path, var));
        return std_pop;
    }

    if (header.size() == 3 && header[0] == "age_group") {
        std::map<std::string, double> male, female;
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto f = split_csv_line(line);
            if (f.size() != 3)
                throw ParseError(fmt::format("{}:{}: expected 3 fields", path,
                                             lineno));
            double v = parse_number(f[2], path, lineno);
            if (f[1] == "M")
                male[f[0]] += v;
            else if (f[1] == "F")
                female[f[0]] += v;
            else
                throw ParseError(fmt::format("{}:{}: gender must be M or F",
                                             path, lineno));
        }
        return combine_gender_distributions(male, female, variables,
                                            gender_share, total);
    }
    throw ParseError(fmt::format(
        "{}: header must be 'variable,std_count' or 'age_group,gender,count'",
        path));
}

IndicatorTable read_indicators_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
    IndicatorTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (lineno == 1 && f.size() >= 1 && f[0] == "unit_id") continue;
        if (f.size() != 3)
            throw ParseError(
                fmt::format("{}:{}: expected 3 fields", path, lineno));
        double v = parse_number(f[2], path, lineno);
        table.values[f[0]][f[1]] = v;
        if (std::find(table.indicator_names.begin(),
                      table.indicator_names.end(),
                      f[1]) == table.indicator_names.end())
            table.indicator_names.push_back(f[1]);
    }
    return table;
}

CauseMapping read_mapping_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()));
    }
    CauseMapping mapping;
    if (j.contains("residual")) mapping.residual_label = j["residual"];
    if (!j.contains("rules") || !j["rules"].is_array())
        throw ParseError(fmt::format("{}: missing 'rules' array", path));
    for (const auto& rule : j["rules"]) {
        std::vector<IcdRange> ranges;
        for (const auto& r : rule.at("ranges"))
            ranges.push_back(parse_icd_range(r.get<std::string>()));
        mapping.rules.emplace_back(rule.at("category").get<std::string>(),
                                   std::move(ranges));
    }
    return mapping;
}

std::string dataset_to_json(const Dataset& ds) {
    json j;
    j["format_version"] = kFormatVersion;
    j["categories"] = ds.category_schema.labels;
    j["variables"] = ds.variable_schema.names;
    j["units"] = json::array();
    for (const auto& u : ds.units) {
        json ju;
        ju["id"] = u.id;
        ju["weights"] = u.weights;
        ju["compositions"] = json::array();
        for (const auto& c : u.descriptions) ju["compositions"].push_back(c.values);
        j["units"].push_back(std::move(ju));
    }
    return j.dump(2) + "\n";
}

Dataset dataset_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(fmt::format("dataset JSON: {}", e.what()));
    }
    check_version(j, "dataset");
    Dataset ds;
    ds.category_schema.labels = j.at("categories").get<std::vector<std::string>>();
    ds.variable_schema.names = j.at("variables").get<std::vector<std::string>>();
    for (const auto& ju : j.at("units")) {
        SymbolicUnit u;
        u.id = ju.at("id");
        u.weights = ju.at("weights").get<std::vector<double>>();
        for (const auto& jc : ju.at("compositions"))
            u.descriptions.push_back(validate_composition(
                jc.get<std::vector<double>>(), ds.m(), 1e-9));
        ds.units.push_back(std::move(u));
    }
    ds.validate();
    return ds;
}

std::string partition_to_json(const Partition& pt, const Dataset& ds,
                              const std::vector<double>& criterion_trace) {
    json j;
    j["format_version"] = kFormatVersion;
    j["criterion_trace"] = criterion_trace;
    j["clusters"] = json::array();
    for (const auto& c : pt.clusters) {
        json jc;
        jc["members"] = json::array();
        for (std::size_t idx : c.members) jc["members"].push_back(ds.units[idx].id);
        jc["agg_weights"] = c.agg_weights;
        jc["leader"] = json::array();
        for (const auto& comp : c.leader.components)
            jc["leader"].push_back(comp.values);
        j["clusters"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

Partition partition_from_json(const std::string& text, const Dataset& ds) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(fmt::format("partition JSON: {}", e.what()));
    }
    check_version(j, "partition");
    Partition pt;
    for (const auto& jc : j.at("clusters")) {
        std::vector<std::size_t> members;
        for (const auto& id : jc.at("members"))
            members.push_back(ds.index_of_unit(id.get<std::string>()));
        pt.clusters.push_back(make_cluster(ds, std::move(members)));
    }
    pt.validate(ds);
    return pt;
}

std::string dendrogram_to_json(const Dendrogram& d) {
    json j;
    j["format_version"] = kFormatVersion;
    j["leaves"] = d.leaves;
    j["normalize_by_p"] = d.normalize_by_p;
    j["height_inversion"] = d.height_inversion;
    j["merges"] = json::array();
    for (const auto& mg : d.merges) {
        json jm;
        jm["left"] = mg.left_node;
        jm["right"] = mg.right_node;
        jm["height"] = mg.height;
        jm["agg_weights"] = mg.merged_agg_weights;
        jm["leader"] = json::array();
        for (const auto& comp : mg.merged_leader.components)
            jm["leader"].push_back(comp.values);
        j["merges"].push_back(std::move(jm));
    }
    return j.dump(2) + "\n";
}

Dendrogram dendrogram_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(fmt::format("dendrogram JSON: {}", e.what()));
    }
    check_version(j, "dendrogram");
    Dendrogram d;
    d.leaves = j.at("leaves").get<std::vector<std::string>>();
    d.normalize_by_p = j.at("normalize_by_p");
    d.height_inversion = j.at("height_inversion");
    for (const auto& jm : j.at("merges")) {
        Merge mg;
        mg.left_node = jm.at("left");
        mg.right_node = jm.at("right");
        mg.height = jm.at("height");
        mg.merged_agg_weights = jm.at("agg_weights").get<std::vector<double>>();
        for (const auto& jc : jm.at("leader")) {
            std::vector<double> vals = jc.get<std::vector<double>>();
            mg.merged_leader.components.push_back(
                validate_composition(vals, vals.size(), 1e-9));
        }
        d.merges.push_back(std::move(mg));
    }
    if (d.merges.size() + 1 != d.leaves.size())
        throw ParseError("dendrogram JSON: merge count does not match leaves");
    return d;
}

namespace {
void newick_node(const Dendrogram& d, std::size_t node, double parent_height,
                 std::string& out) {
    if (node < d.n()) {
        out += d.leaves[node];
        out += fmt::format(":{:.17g}", parent_height);
        return;
    }
    const Merge& mg = d.merges[node - d.n()];
    out += '(';
    newick_node(d, mg.left_node, mg.height, out);
    out += ',';
    newick_node(d, mg.right_node, mg.height, out);
    out += ')';
    if (parent_height > 0.0 || node + 1 != d.n() + d.merges.size())
        out += fmt::format(":{:.17g}", parent_height - mg.height);
}
}  // namespace

std::string dendrogram_to_newick(const Dendrogram& d) {
    std::string out;
    if (d.merges.empty()) {
        out = d.leaves.empty() ? "" : d.leaves.front();
    } else {
        std::size_t root = d.n() + d.merges.size() - 1;
        const Merge& mg = d.merges[root - d.n()];
        out += '(';
        newick_node(d, mg.left_node, mg.height, out);
        out += ',';
        newick_node(d, mg.right_node, mg.height, out);
        out += ')';
    }
    out += ";\n";
    return out;
}

namespace {
NewickNode parse_newick_node(const std::string& s, std::size_t& i) {
    NewickNode node;
    if (i < s.size() && s[i] == '(') {
        ++i;  // '('
        node.children.push_back(parse_newick_node(s, i));
        while (i < s.size() && s[i] == ',') {
            ++i;
            node.children.push_back(parse_newick_node(s, i));
        }
        if (i >= s.size() || s[i] != ')')
            throw ParseError("Newick: missing ')'");
        ++i;
    }
    while (i < s.size() && s[i] != ':' && s[i] != ',' && s[i] != ')' &&
           s[i] != ';')
        node.label += s[i++];
    if (i < s.size() && s[i] == ':') {
        ++i;
        std::string num;
        while (i < s.size() && s[i] != ',' && s[i] != ')' && s[i] != ';')
            num += s[i++];
        try {
            node.branch_length = std::stod(num);
        } catch (const std::exception&) {
            throw ParseError(fmt::format("Newick: bad branch length '{}'", num));
        }
    }
    return node;
}
}  // namespace

NewickNode parse_newick(const std::string& text) {
    std::size_t i = 0;
    NewickNode root = parse_newick_node(text, i);
    if (i >= text.size() || text[i] != ';')
        throw ParseError("Newick: missing ';'");
    return root;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(fmt::format("cannot write '{}'", path));
    out << content;
}

}  // namespace symclust::io
