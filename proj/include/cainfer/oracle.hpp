#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cainfer/dag.hpp"
#include "cainfer/distribution.hpp"
#include "cainfer/index_set.hpp"

namespace cainfer {

// Conditional probability table p(node | parents). Parents are sorted by node
// index; rows are indexed by the parent configuration (last parent fastest),
// each row a simplex over the node's categories.
struct Cpt {
    std::size_t node = 0;
    IndexSet parents;
    std::vector<double> table;  // size = Π card(parent) × card(node)
};

struct BayesNet {
    Dag dag;
    std::vector<std::uint32_t> cardinalities;  // per node
    std::vector<Cpt> cpts;                     // one per node, in node order
};

// Seed-deterministic random net: nodes in a random permutation order, each
// forward pair an edge with edge_prob, cardinalities uniform in [2, max_card],
// CPT rows from the flat simplex.
BayesNet random_bayes_net(std::size_t n_nodes, double edge_prob, std::uint32_t max_card,
                          std::uint64_t seed);

// Dense joint = product of the CPTs. Guarded by the table-size limit.
JointDistribution exact_joint(const BayesNet& net);

// Appends a node that is a deterministic function of the given parents;
// value_map has one entry per parent configuration (last parent fastest).
BayesNet extend_with_function_node(const BayesNet& net, std::string name, const IndexSet& parents,
                                   std::span<const std::uint32_t> value_map,
                                   std::uint32_t cardinality);

// Appends a node that copies the joint configuration of the given parents
// (cardinality = product of parent cardinalities).
BayesNet extend_with_copy_node(const BayesNet& net, std::string name, const IndexSet& parents);

// Parity net: independent uniform roots U12, U13, U23 and observed X1, X2, X3,
// each X_i the spin product of its two U parents. The marginal on the X's is
// the beta=∞ parity distribution; no node is an ancestor of all three X's.
BayesNet build_parity_net();

// U → X_1..X_n with copy CPTs and a fair-coin root; the minimal net realizing
// perfectly synchronized observations.
BayesNet build_hub_net(std::size_t n_leaves);

struct VerifyConfig {
    std::size_t trials = 200;
    std::size_t n_nodes = 6;
    double edge_prob = 0.5;
    std::uint32_t max_card = 2;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    double tol_bits = 1e-9;
};

struct CheckTally {
    std::string check;
    std::size_t instances = 0;
    std::size_t violations = 0;
    std::optional<double> worst_slack_bits;  // most negative slack seen
    std::vector<std::uint64_t> failing_seeds;
};

struct VerificationReport {
    VerifyConfig config;
    std::vector<CheckTally> checks;

    bool all_passed() const;
    const CheckTally* find(std::string_view check) const;
};

// Batch verification of the decomposition inequalities on random exact nets:
// local/global Markov, the node-level decomposition (with its equality
// condition), the ancestral decomposition with 1/d_i coefficients (assumption
// reference-locality assumption enforced by construction, verified per trial),
// decomposition, submodularity on independent groups, and the identical-groups
// equality case. Trials are independent; threads > 1 splits them while keeping
// the report byte-identical.
VerificationReport verify_batch(const VerifyConfig& config);

}  // namespace cainfer
