#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cainfer/index_set.hpp"

namespace cainfer {

// Ordered set of named elements over which an information measure is defined.
// Immutable; shared between subsets and measures.
class GroundSet {
public:
    explicit GroundSet(std::vector<std::string> elements);

    std::size_t size() const { return elements_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }
    const std::string& name(std::size_t i) const { return elements_.at(i); }
    std::size_t index_of(std::string_view name) const;  // throws on unknown name
    bool operator==(const GroundSet& other) const { return elements_ == other.elements_; }

private:
    std::vector<std::string> elements_;
};

using GroundSetPtr = std::shared_ptr<const GroundSet>;

GroundSetPtr make_ground_set(std::vector<std::string> elements);

// Subset of a ground set, kept as sorted indices. Empty subsets are valid.
class ElementSubset {
public:
    ElementSubset(GroundSetPtr ground, IndexSet members);

    static ElementSubset empty(GroundSetPtr ground);
    static ElementSubset of_names(const GroundSetPtr& ground, std::span<const std::string> names);
    static ElementSubset of_mask(const GroundSetPtr& ground, std::uint64_t mask);

    const GroundSetPtr& ground() const { return ground_; }
    const IndexSet& members() const { return members_; }
    bool is_empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }

    bool same_ground(const ElementSubset& other) const;
    bool disjoint_with(const ElementSubset& other) const { return set_disjoint(members_, other.members_); }
    ElementSubset union_with(const ElementSubset& other) const;

    std::string to_string() const;  // "{a,b}" in ground order

private:
    GroundSetPtr ground_;
    IndexSet members_;
};

// Three-argument conditional mutual information oracle I(A:B|C) in bits.
// Implementations must be deterministic and defined for every pairwise-disjoint
// argument triple over their ground set. All evaluation is const and may be
// called concurrently from multiple threads.
class InfoMeasure {
public:
    virtual ~InfoMeasure() = default;

    const GroundSetPtr& ground() const { return ground_; }

    // Validates the arguments (same ground set, pairwise disjoint) and evaluates.
    double cmi(const ElementSubset& a, const ElementSubset& b, const ElementSubset& c) const;
    double cmi(const ElementSubset& a, const ElementSubset& b) const;

protected:
    explicit InfoMeasure(GroundSetPtr ground);
    virtual double evaluate(const ElementSubset& a, const ElementSubset& b,
                            const ElementSubset& c) const = 0;

private:
    GroundSetPtr ground_;
};

double cmi(const InfoMeasure& measure, const ElementSubset& a, const ElementSubset& b,
           const ElementSubset& c);

bool is_independent(const InfoMeasure& measure, const ElementSubset& a, const ElementSubset& b,
                    const ElementSubset& c, double tol_bits);

struct AxiomViolation {
    std::string axiom;      // "normalization", "non-negativity", "symmetry", "chain-rule", ...
    std::string arguments;  // rendered argument subsets
    double magnitude_bits;
};

struct AxiomAuditReport {
    std::size_t checked_triples = 0;
    std::vector<AxiomViolation> violations;

    bool clean() const { return violations.empty(); }
    double worst_violation_bits() const;
};

// Exhaustive enumeration guard; beyond this the caller must supply sampled tuples.
inline constexpr std::size_t kMaxExhaustiveAuditElements = 12;

// Checks the four defining axioms (normalization, non-negativity, symmetry,
// chain rule) over every disjoint argument tuple of the ground set, in
// lexicographic bitmask order. Violations beyond tol are reported.
AxiomAuditReport audit_axioms(const InfoMeasure& measure, double tol_bits);
AxiomAuditReport audit_axioms(const InfoMeasure& measure, double tol_bits,
                              std::span<const std::array<ElementSubset, 4>> tuples);

// Checks consequences of the axioms: the data processing inequality, the
// increase of information under conditioning on independent sets (with its
// difference identity), and the four semi-graphoid implications.
AxiomAuditReport audit_derived(const InfoMeasure& measure, double tol_bits);
AxiomAuditReport audit_derived(const InfoMeasure& measure, double tol_bits,
                               std::span<const std::array<ElementSubset, 4>> tuples);

}  // namespace cainfer
