#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symclust/error.hpp"

namespace symclust {

// Ordered list of category labels shared by every variable of a dataset.
// The order is fixed: a composition's ℓ-th component always refers to
// labels[ℓ].
struct CategorySchema {
    std::vector<std::string> labels;

    std::size_t size() const { return labels.size(); }
    // Index of a label, or throws ConstraintError.
    std::size_t index_of(const std::string& label) const;
    void validate() const;

    static CategorySchema default_mortality();
};

struct VariableSchema {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    std::size_t index_of(const std::string& name) const;
    bool contains(const std::string& name) const;
    void validate() const;

    static VariableSchema default_age_gender();
};

// A point on the simplex: nonnegative components summing to 1.
struct Composition {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    bool operator==(const Composition&) const = default;
};

// Checks length, nonnegativity and the sum constraint, then rescales so the
// components sum to exactly 1. Rescaling an already-exact composition is a
// no-op bit for bit.
Composition validate_composition(const std::vector<double>& values,
                                 std::size_t expected_size, double tolerance);

// Nudges the largest component so the vector sums to exactly 1.
void fold_to_one(std::vector<double>& values);

// Uniform composition 1/m per component (used for zero-death cells).
Composition uniform_composition(std::size_t m);

// One observation unit: p weighted compositions, one per variable.
struct SymbolicUnit {
    std::string id;
    std::vector<Composition> descriptions;  // size p
    std::vector<double> weights;            // size p, all >= 0
};

struct Dataset {
    CategorySchema category_schema;
    VariableSchema variable_schema;
    std::vector<SymbolicUnit> units;

    std::size_t n() const { return units.size(); }
    std::size_t p() const { return variable_schema.size(); }
    std::size_t m() const { return category_schema.size(); }

    std::size_t index_of_unit(const std::string& id) const;
    void validate() const;
};

// Copy of the dataset with every weight set to 1 (pattern-only mode).
Dataset set_uniform_weights(const Dataset& ds);

// Optimal cluster representative: one composition per variable.
struct Leader {
    std::vector<Composition> components;  // size p
};

// A cluster over dataset unit indices, with its cached leader and the
// per-variable aggregated member weights.
struct Cluster {
    std::vector<std::size_t> members;  // sorted, non-empty
    Leader leader;
    std::vector<double> agg_weights;  // size p

    // Lexicographically smallest member unit id; used as the cluster's
    // stable name for tie-breaking.
    const std::string& id(const Dataset& ds) const;
};

struct Partition {
    std::vector<Cluster> clusters;

    std::size_t k() const { return clusters.size(); }
    // Checks disjointness and coverage of [0, n).
    void validate(const Dataset& ds) const;
};

}  // namespace symclust
