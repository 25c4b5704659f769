#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cainfer/index_set.hpp"
#include "cainfer/measure.hpp"

namespace cainfer {

// Directed acyclic graph over named nodes. Acyclicity, self-loops and
// duplicate edges are checked at construction. Immutable.
class Dag {
public:
    Dag(std::vector<std::string> nodes, const std::vector<std::pair<std::string, std::string>>& edges);
    Dag(std::vector<std::string> nodes, std::span<const std::pair<std::size_t, std::size_t>> edges);

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& name(std::size_t i) const { return nodes_.at(i); }
    std::size_t index_of(std::string_view name) const;  // throws on unknown node

    const IndexSet& parents(std::size_t i) const { return parents_.at(i); }
    const IndexSet& children(std::size_t i) const { return children_.at(i); }
    std::size_t edge_count() const { return edge_count_; }
    bool has_edge(std::size_t parent, std::size_t child) const;

    IndexSet descendants(std::size_t i) const;  // proper descendants, excluding i
    std::vector<std::size_t> topological_order() const;

private:
    void finish_construction(std::span<const std::pair<std::size_t, std::size_t>> edges);

    std::vector<std::string> nodes_;
    std::vector<IndexSet> parents_;
    std::vector<IndexSet> children_;
    std::size_t edge_count_ = 0;
};

// Smallest ancestral set containing S; every node is an ancestor of itself.
IndexSet ancestral_closure(const Dag& dag, const IndexSet& s);

// d-separation of A from B given C, by the reachability formulation.
bool d_separated(const Dag& dag, const IndexSet& a, const IndexSet& b, const IndexSet& c);

// Literal enumeration of undirected simple paths with the two blocking rules;
// cross-check oracle for d_separated at small size.
bool d_separated_by_paths(const Dag& dag, const IndexSet& a, const IndexSet& b, const IndexSet& c);

// Observed node subsets O_1..O_n plus the reference node set Y (possibly empty
// when Y is external to the graph).
class ObservationGroups {
public:
    ObservationGroups(const Dag& dag, std::vector<IndexSet> groups, IndexSet y_nodes);

    const Dag& dag() const { return *dag_; }
    const std::vector<IndexSet>& groups() const { return groups_; }
    const IndexSet& y_nodes() const { return y_nodes_; }
    std::size_t group_count() const { return groups_.size(); }
    IndexSet group_union() const;

private:
    const Dag* dag_;
    std::vector<IndexSet> groups_;
    IndexSet y_nodes_;
};

struct MarkovViolation {
    std::string context;  // e.g. "node X2" or "A={..} B={..} C={..}" or "condition (iv): ..."
    double cmi_bits;
};

struct MarkovCheckResult {
    bool holds = true;
    std::vector<MarkovViolation> violations;
};

// Local Markov condition: every node independent of its non-descendants given
// its parents. Nodes map one-to-one into the measure's ground set by name (the
// ground set may carry extra elements, e.g. an external reference Y).
MarkovCheckResult local_markov_holds(const Dag& dag, const InfoMeasure& measure, double tol_bits);

// Global Markov condition: every d-separated disjoint triple is independent.
// Exhaustive over node triples; guarded to <= 8 nodes.
inline constexpr std::size_t kMaxGlobalMarkovNodes = 8;
MarkovCheckResult global_markov_holds(const Dag& dag, const InfoMeasure& measure, double tol_bits);

// DAG-model validation: (i) groups are node subsets, (ii) local Markov holds,
// (iii) I(Y:O_S) matches observed_values_by_mask for every subset S of group
// indices, (iv) the Y nodes are leaves. With an empty (external) Y, (iii)
// reduces to consistency checks on the supplied values and (iv) is skipped.
MarkovCheckResult validate_dag_model(const Dag& dag, const InfoMeasure& measure,
                                     const ObservationGroups& obs,
                                     std::span<const double> observed_values_by_mask,
                                     double tol_bits);

// d_i of the ancestral decomposition: the largest k such that some node of
// an(O_i) lies in the ancestral closure of k groups (joint-membership reading).
int ancestor_multiplicity(const Dag& dag, const ObservationGroups& obs, std::size_t group_index);

}  // namespace cainfer
