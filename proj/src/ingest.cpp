#include "symclust/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "symclust/dissim.hpp"

namespace symclust {

IcdCode parse_icd(const std::string& code) {
    if (code.size() < 2 || !std::isalpha(static_cast<unsigned char>(code[0])))
        throw ParseError(fmt::format("unparseable ICD code '{}'", code));
    std::size_t i = 1;
    int num = 0;
    bool any = false;
    while (i < code.size() && std::isdigit(static_cast<unsigned char>(code[i]))) {
        num = num * 10 + (code[i] - '0');
        any = true;
        ++i;
    }
    // trailing ".xx" subdivisions inherit the parent code
    if (!any || (i < code.size() && code[i] != '.'))
        throw ParseError(fmt::format("unparseable ICD code '{}'", code));
    return {static_cast<char>(std::toupper(static_cast<unsigned char>(code[0]))),
            num};
}

IcdRange parse_icd_range(const std::string& text) {
    auto dash = text.find('-');
    IcdRange r;
    if (dash == std::string::npos) {
        r.start = r.end = parse_icd(text);
    } else {
        r.start = parse_icd(text.substr(0, dash));
        r.end = parse_icd(text.substr(dash + 1));
    }
    if (r.end < r.start)
        throw ParseError(fmt::format("ICD range '{}' is reversed", text));
    return r;
}

bool icd_in_range(const std::string& code, const IcdRange& range) {
    return range.contains(parse_icd(code));
}

std::string CauseMapping::categorize(const std::string& code,
                                     const CategorySchema& schema) const {
    // pre-grouped input: the code already names a category
    if (std::find(schema.labels.begin(), schema.labels.end(), code) !=
        schema.labels.end())
        return code;
    IcdCode parsed = parse_icd(code);
    for (const auto& [label, ranges] : rules)
        for (const auto& r : ranges)
            if (r.contains(parsed)) return label;
    return residual_label;
}

double compute_weight(double deaths, double population, double std_population) {
    if (population <= 0.0)
        throw ConstraintError(
            fmt::format("population must be positive, got {}", population));
    if (deaths < 0.0)
        throw ConstraintError(fmt::format("negative death count {}", deaths));
    if (std_population <= 0.0)
        throw ConstraintError(fmt::format(
            "standard population must be positive, got {}", std_population));
    return deaths * std_population / population;
}

StandardPopulation2D combine_gender_distributions(
    const std::map<std::string, double>& male_1d,
    const std::map<std::string, double>& female_1d,
    const VariableSchema& variables, double gender_share, double total) {
    if (!(gender_share > 0.0 && gender_share < 1.0))
        throw ConstraintError(
            fmt::format("gender share {} outside (0,1)", gender_share));
    if (total <= 0.0)
        throw ConstraintError("standard total must be positive");

    double male_sum = 0.0, female_sum = 0.0;
    for (const auto& [age, c] : male_1d) male_sum += c;
    for (const auto& [age, c] : female_1d) female_sum += c;
    if (male_sum <= 0.0 || female_sum <= 0.0)
        throw ConstraintError("degenerate 1d standard distribution");

    StandardPopulation2D out;
    for (const auto& var : variables.names) {
        auto dot = var.find('.');
        if (dot == std::string::npos || dot == 0)
            throw ConstraintError(fmt::format(
                "variable '{}' is not of the form <gender>.<age_group>", var));
        std::string gender = var.substr(0, dot);
        std::string age = var.substr(dot + 1);
        const auto& dist = (gender == "M") ? male_1d : female_1d;
        double share = (gender == "M") ? gender_share : 1.0 - gender_share;
        double sum = (gender == "M") ? male_sum : female_sum;
        if (gender != "M" && gender != "F")
            throw ConstraintError(
                fmt::format("unknown gender prefix in variable '{}'", var));
        auto it = dist.find(age);
        if (it == dist.end())
            throw ConstraintError(fmt::format(
                "age group '{}' missing from the {} distribution", age, gender));
        out.entries[var] = share * total * it->second / sum;
    }
    return out;
}

Dataset build_dataset(const std::vector<RateRecord>& records,
                      const StandardPopulation2D& std_pop,
                      const CauseMapping& mapping,
                      const CategorySchema& categories,
                      const VariableSchema& variables) {
    categories.validate();
    variables.validate();
    for (const auto& var : variables.names)
        if (!std_pop.entries.count(var))
            throw ConstraintError(fmt::format(
                "standard population has no entry for variable '{}'", var));

    const std::size_t p = variables.size();
    const std::size_t m = categories.size();

    struct Cell {
        std::vector<double> deaths_by_cat;
        double population = -1.0;
    };
    // country -> per-variable cell; std::map keeps output order independent
    // of record order
    std::map<std::string, std::vector<Cell>> table;

    for (std::size_t row = 0; row < records.size(); ++row) {
        const RateRecord& r = records[row];
        if (!variables.contains(r.variable))
            throw ConstraintError(fmt::format(
                "record {}: variable '{}' not in schema", row + 1, r.variable));
        if (r.population <= 0.0)
            throw ConstraintError(fmt::format(
                "record {}: population must be positive", row + 1));
        if (r.deaths < 0.0)
            throw ConstraintError(
                fmt::format("record {}: negative deaths", row + 1));

        auto& cells = table[r.country];
        if (cells.empty()) cells.resize(p);
        Cell& cell = cells[variables.index_of(r.variable)];
        if (cell.deaths_by_cat.empty()) cell.deaths_by_cat.assign(m, 0.0);
        if (cell.population < 0.0) {
            cell.population = r.population;
        } else if (cell.population != r.population) {
            throw ConstraintError(fmt::format(
                "record {}: population {} conflicts with earlier value {} for "
                "({}, {})",
                row + 1, r.population, cell.population, r.country, r.variable));
        }
        std::string cat = mapping.categorize(r.cause_code, categories);
        cell.deaths_by_cat[categories.index_of(cat)] += r.deaths;
    }

    Dataset ds;
    ds.category_schema = categories;
    ds.variable_schema = variables;
    for (auto& [country, cells] : table) {
        SymbolicUnit unit;
        unit.id = country;
        for (std::size_t j = 0; j < p; ++j) {
            const Cell& cell = cells[j];
            if (cell.deaths_by_cat.empty())
                throw ConstraintError(fmt::format(
                    "country '{}' has no records for variable '{}'", country,
                    variables.names[j]));
            KahanSum total;
            for (double d : cell.deaths_by_cat) total.add(d);
            double d_total = total.value();
            if (d_total > 0.0) {
                std::vector<double> comp(m);
                for (std::size_t l = 0; l < m; ++l)
                    comp[l] = cell.deaths_by_cat[l] / d_total;
                unit.descriptions.push_back(validate_composition(comp, m, 1e-9));
                unit.weights.push_back(compute_weight(
                    d_total, cell.population,
                    std_pop.entries.at(variables.names[j])));
            } else {
                // zero-death cell: inert uniform composition, weight 0
                unit.descriptions.push_back(uniform_composition(m));
                unit.weights.push_back(0.0);
            }
        }
        ds.units.push_back(std::move(unit));
    }
    ds.validate();
    return ds;
}

}  // namespace symclust
