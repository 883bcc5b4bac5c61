#include "symclust/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

namespace symclust {

std::size_t CategorySchema::index_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw ConstraintError(fmt::format("unknown category '{}'", label));
    return static_cast<std::size_t>(it - labels.begin());
}

void CategorySchema::validate() const {
    if (labels.size() < 2)
        throw ConstraintError("category schema needs at least 2 labels");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw ConstraintError("empty category label");
        if (!seen.insert(l).second)
            throw ConstraintError(fmt::format("duplicate category '{}'", l));
    }
}

CategorySchema CategorySchema::default_mortality() {
    return {{"Neop", "Nerv", "Circ", "Resp", "Acc", "Suic", "Oth"}};
}

std::size_t VariableSchema::index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw ConstraintError(fmt::format("unknown variable '{}'", name));
    return static_cast<std::size_t>(it - names.begin());
}

bool VariableSchema::contains(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

void VariableSchema::validate() const {
    if (names.empty()) throw ConstraintError("variable schema is empty");
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw ConstraintError("empty variable name");
        if (!seen.insert(n).second)
            throw ConstraintError(fmt::format("duplicate variable '{}'", n));
    }
}

VariableSchema VariableSchema::default_age_gender() {
    return {{"M.Y20-24", "F.Y20-24", "M.Y25-29", "F.Y25-29", "M.Y30-34",
             "F.Y30-34", "M.Y35-39", "F.Y35-39"}};
}

Composition validate_composition(const std::vector<double>& values,
                                 std::size_t expected_size, double tolerance) {
    if (values.size() != expected_size)
        throw ConstraintError(fmt::format(
            "composition has {} components, schema expects {}", values.size(),
            expected_size));
    double sum = 0.0;
    for (double v : values) {
        if (v < 0.0 || std::isnan(v))
            throw ConstraintError(
                fmt::format("negative composition component {}", v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance)
        throw ConstraintError(fmt::format(
            "composition sums to {} (off by more than tolerance {})", sum,
            tolerance));

    Composition c{values};
    if (sum != 1.0) {
        for (double& v : c.values) v /= sum;
        fold_to_one(c.values);
    }
    return c;
}

void fold_to_one(std::vector<double>& values) {
    auto total = [&values]() {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    };
    // fold the rounding residual into one component until the plain
    // left-to-right sum is exactly 1; each step must strictly shrink the
    // residual, so the loop cannot oscillate
    for (int iter = 0; iter < 100; ++iter) {
        double s = total();
        if (s == 1.0) return;
        // candidate order: the largest component first, then every index
        // from the back (later components have finer effective resolution
        // in the running sum)
        std::vector<std::size_t> candidates;
        candidates.push_back(static_cast<std::size_t>(
            std::max_element(values.begin(), values.end()) - values.begin()));
        for (std::size_t i = values.size(); i-- > 0;) candidates.push_back(i);
        bool improved = false;
        for (std::size_t idx : candidates) {
            double before = values[idx];
            double corrected = before + (1.0 - s);
            if (corrected < 0.0) continue;
            values[idx] = corrected;
            double s2 = total();
            if (s2 == 1.0) return;
            if (std::abs(1.0 - s2) < std::abs(1.0 - s)) {
                improved = true;
                break;
            }
            values[idx] = before;
        }
        if (!improved) return;
    }
}

Composition uniform_composition(std::size_t m) {
    Composition c;
    c.values.assign(m, 1.0 / static_cast<double>(m));
    fold_to_one(c.values);
    return c;
}

std::size_t Dataset::index_of_unit(const std::string& id) const {
    for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i].id == id) return i;
    throw ConstraintError(fmt::format("unknown unit '{}'", id));
}

void Dataset::validate() const {
    category_schema.validate();
    variable_schema.validate();
    if (units.empty()) throw ConstraintError("dataset has no units");
    std::unordered_set<std::string> ids;
    for (const auto& u : units) {
        if (!ids.insert(u.id).second)
            throw ConstraintError(fmt::format("duplicate unit id '{}'", u.id));
        if (u.descriptions.size() != p() || u.weights.size() != p())
            throw ConstraintError(fmt::format(
                "unit '{}' does not match the variable schema", u.id));
        for (const auto& c : u.descriptions)
            if (c.size() != m())
                throw ConstraintError(fmt::format(
                    "unit '{}' composition does not match the category schema",
                    u.id));
        for (double w : u.weights)
            if (w < 0.0 || std::isnan(w))
                throw ConstraintError(
                    fmt::format("unit '{}' has negative weight", u.id));
    }
}

Dataset set_uniform_weights(const Dataset& ds) {
    Dataset out = ds;
    for (auto& u : out.units) std::fill(u.weights.begin(), u.weights.end(), 1.0);
    return out;
}

const std::string& Cluster::id(const Dataset& ds) const {
    const std::string* best = &ds.units[members.front()].id;
    for (std::size_t idx : members)
        if (ds.units[idx].id < *best) best = &ds.units[idx].id;
    return *best;
}

void Partition::validate(const Dataset& ds) const {
    if (clusters.empty()) throw ConstraintError("empty partition");
    std::set<std::size_t> seen;
    for (const auto& c : clusters) {
        if (c.members.empty()) throw ConstraintError("empty cluster");
        for (std::size_t idx : c.members) {
            if (idx >= ds.n())
                throw InternalError("cluster member index out of range");
            if (!seen.insert(idx).second)
                throw ConstraintError("clusters overlap");
        }
    }
    if (seen.size() != ds.n())
        throw ConstraintError("partition does not cover the dataset");
}

}  // namespace symclust
