#pragma once

#include <map>
#include <string>
#include <vector>

#include "symclust/model.hpp"

namespace symclust {

struct RateRecord {
    std::string country;
    std::string variable;    // age-gender group, e.g. "M.Y20-24"
    std::string cause_code;  // ICD-10 code or pre-grouped category label
    double deaths = 0.0;     // 3-year average count, may be fractional
    double population = 0.0;
};

// Age-gender group -> persons in the standard population.
struct StandardPopulation2D {
    std::map<std::string, double> entries;
};

// Parsed ICD-10 code: leading letter plus 2-digit number; decimal
// subdivisions ("X60.1") inherit the parent code.
struct IcdCode {
    char letter = 'A';
    int number = 0;

    auto operator<=>(const IcdCode&) const = default;
};
IcdCode parse_icd(const std::string& code);

struct IcdRange {
    IcdCode start;
    IcdCode end;  // inclusive

    bool contains(const IcdCode& c) const { return start <= c && c <= end; }
};

// Parses "V01-X59" or a single code "Y85" (singleton range).
IcdRange parse_icd_range(const std::string& text);

struct CauseMapping {
    // first matching rule wins; unmatched codes go to residual_label
    std::vector<std::pair<std::string, std::vector<IcdRange>>> rules;
    std::string residual_label = "Oth";

    // Category label for a code. Codes that already equal a category label
    // are passed through (pre-grouped input).
    std::string categorize(const std::string& code,
                           const CategorySchema& schema) const;
};

// Expected deaths in a standard population: deaths / population * std.
double compute_weight(double deaths, double population, double std_population);

bool icd_in_range(const std::string& code, const IcdRange& range);

// Builds the two-dimensional standard population from separate male and
// female age distributions. Variables are named "<gender>.<age_group>".
// gender_share is the male fraction of the combined standard total.
StandardPopulation2D combine_gender_distributions(
    const std::map<std::string, double>& male_1d,
    const std::map<std::string, double>& female_1d,
    const VariableSchema& variables, double gender_share,
    double total = 100000.0);

// Aggregates rate records into a Dataset: per (country, variable), group
// deaths by category, normalize to a composition, weight by the expected
// death count. Zero-death cells get the uniform composition with weight 0.
Dataset build_dataset(const std::vector<RateRecord>& records,
                      const StandardPopulation2D& std_pop,
                      const CauseMapping& mapping,
                      const CategorySchema& categories,
                      const VariableSchema& variables);

}  // namespace symclust
