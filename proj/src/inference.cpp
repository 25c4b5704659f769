#include "cainfer/inference.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cainfer {
namespace {

constexpr double kValueMonotoneTol = 1e-9;
constexpr double kFlagConsistencyTol = 1e-6;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

ElementSubset nodes_to_subset(const Dag& dag, const InfoMeasure& measure, const IndexSet& nodes) {
    IndexSet members;
    members.reserve(nodes.size());
    for (std::size_t i : nodes) members.push_back(measure.ground()->index_of(dag.name(i)));
    return ElementSubset(measure.ground(), make_index_set(std::move(members)));
}

}  // namespace

ObservationValues::ObservationValues(std::size_t n, std::vector<double> values_by_mask,
                                     std::optional<double> ancestral_info_bits,
                                     bool y_is_function_of_obs)
    : n_(n),
      values_(std::move(values_by_mask)),
      ancestral_info_(ancestral_info_bits),
      y_is_function_of_obs_(y_is_function_of_obs) {
    require(n_ >= 1 && n_ <= 24, "ObservationValues: group count out of range");
    require(values_.size() == (std::size_t{1} << n_),
            "ObservationValues: need a value for every subset of group indices (" +
                std::to_string(std::size_t{1} << n_) + " values)");
    require(std::abs(values_[0]) <= kValueMonotoneTol, "ObservationValues: values(empty) must be 0");
    for (std::size_t mask = 0; mask < values_.size(); ++mask) {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t super = mask | (std::size_t{1} << i);
            if (super == mask) continue;
            require(values_[mask] <= values_[super] + kValueMonotoneTol,
                    "ObservationValues: values must be monotone in S (violated at mask " +
                        std::to_string(mask) + ")");
        }
    }
    if (y_is_function_of_obs_ && ancestral_info_.has_value()) {
        require(std::abs(*ancestral_info_ - values_.back()) <= kFlagConsistencyTol,
                "ObservationValues: with y_is_function_of_obs, ancestral_info must equal "
                "values([n])");
    }
}

bool ObservationValues::has_ancestral_information() const {
    return ancestral_info_.has_value() || y_is_function_of_obs_;
}

double ObservationValues::ancestral_information_bits() const {
    if (ancestral_info_.has_value()) return *ancestral_info_;
    if (y_is_function_of_obs_) return values_.back();
    throw std::invalid_argument(
        "ObservationValues: I(Y:an(O)) unavailable; supply ancestral_info or set "
        "y_is_function_of_obs");
}

ObservationValues observed_values_from_distribution(const JointDistribution& dist,
                                                    std::span<const VarSet> groups, const VarSet& y,
                                                    bool y_is_function_of_obs) {
    require(!groups.empty() && groups.size() <= 20, "observed_values: bad group count");
    const std::size_t n = groups.size();
    std::vector<double> values(std::size_t{1} << n, 0.0);
    const VarSet none = VarSet::empty(dist);
    for (std::size_t mask = 1; mask < values.size(); ++mask) {
        VarSet s = VarSet::empty(dist);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) s = s.union_with(groups[i]);
        }
        values[mask] = cmi_bits(dist, y, s, none);
    }
    return ObservationValues(n, std::move(values), std::nullopt, y_is_function_of_obs);
}

namespace {

InferenceReport build_report(std::string mode, std::size_t n,
                             const std::vector<double>& criteria_by_c, double decision_tol_bits,
                             std::vector<std::string> assumptions) {
    InferenceReport report;
    report.mode = std::move(mode);
    report.decision_tol_bits = decision_tol_bits;
    report.assumptions = std::move(assumptions);
    for (std::size_t c = 1; c + 1 <= n; ++c) {
        ConclusionEntry entry;
        entry.c = static_cast<int>(c);
        entry.criterion_bits = criteria_by_c[c - 1];
        entry.qualifies = entry.criterion_bits > decision_tol_bits;
        if (entry.qualifies) {
            entry.bound_bits =
                static_cast<double>(c) / static_cast<double>(n - c) * entry.criterion_bits;
            report.largest_qualifying_c = entry.c;
        }
        report.per_c.push_back(entry);
    }
    return report;
}

}  // namespace

InferenceReport infer_multiplicity(const ObservationValues& obs, double decision_tol_bits) {
    require(decision_tol_bits >= 0, "infer_multiplicity: negative decision tolerance");
    require(obs.has_ancestral_information(),
            "infer_multiplicity: value mode needs ancestral_info or y_is_function_of_obs");
    const std::size_t n = obs.group_count();
    const double ancestral = obs.ancestral_information_bits();
    double sum_singles = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum_singles += obs.single_bits(i);

    std::vector<double> criteria;
    for (std::size_t c = 1; c + 1 <= n; ++c) {
        criteria.push_back(sum_singles / static_cast<double>(c) - ancestral);
    }
    std::vector<std::string> assumptions;
    if (obs.y_is_function_of_obs()) {
        assumptions.push_back("y_is_function_of_obs: I(Y:an(O)) = I(Y:O_[n])");
    } else {
        assumptions.push_back("ancestral_info supplied by caller");
    }
    assumptions.push_back(
        "conclusions bound common ancestors that may themselves be observed elements");
    return build_report("value", n, criteria, decision_tol_bits, std::move(assumptions));
}

InferenceReport infer_multiplicity(const JointDistribution& dist, std::span<const VarSet> groups,
                                   double decision_tol_bits) {
    require(decision_tol_bits >= 0, "infer_multiplicity: negative decision tolerance");
    require(groups.size() >= 2, "infer_multiplicity: need at least two groups");
    const std::size_t n = groups.size();
    std::vector<double> criteria;
    for (std::size_t c = 1; c + 1 <= n; ++c) {
        criteria.push_back(multi_information_c_bits(dist, groups, static_cast<int>(c)));
    }
    return build_report("entropy", n, criteria, decision_tol_bits,
                        {"Y is a copy of the observations (I_c = r_c)",
                         "conclusions bound common ancestors that may themselves be observed "
                         "elements"});
}

double ancestor_entropy_bound_bits(std::span<const double> group_entropies_bits,
                                   double joint_entropy_bits, int c) {
    const int n = static_cast<int>(group_entropies_bits.size());
    require(n >= 2, "ancestor_entropy_bound: need at least two groups");
    require(c >= 1 && c <= n - 1, "ancestor_entropy_bound: c out of range [1, n-1]");
    double sum = 0.0;
    for (double h : group_entropies_bits) sum += h;
    const double i_c = sum / c - joint_entropy_bits;
    return static_cast<double>(c) / static_cast<double>(n - c) * i_c;
}

EpsilonBound epsilon_and_bound(const ObservationValues& obs, std::span<const int> c_vec) {
    const std::size_t n = obs.group_count();
    require(c_vec.size() == n, "epsilon_and_bound: c vector length must match group count");
    for (int c : c_vec) {
        require(c >= 1 && static_cast<std::size_t>(c) <= n - 1,
                "epsilon_and_bound: c_i out of range [1, n-1]");
    }
    const double ancestral = obs.ancestral_information_bits();

    double epsilon = 0.0;
    double coeff_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        epsilon += obs.single_bits(i) / c_vec[i];
        coeff_sum += 1.0 / c_vec[i];
    }
    epsilon -= ancestral;

    EpsilonBound out;
    out.epsilon_bits = epsilon;
    if (epsilon > 0.0) {
        if (coeff_sum <= 1.0) {
            throw std::invalid_argument(
                "epsilon_and_bound: degenerate configuration (sum of 1/c_i <= 1); the existence "
                "claim holds but the quantitative bound formula is inapplicable");
        }
        out.information_bound_bits = epsilon / (coeff_sum - 1.0);
    }
    return out;
}

DecompositionReport check_decomposition(const Dag& dag, const InfoMeasure& measure,
                                        const ObservationGroups& obs, const ElementSubset& y,
                                        double tol_bits) {
    MarkovCheckResult markov = local_markov_holds(dag, measure, tol_bits);
    if (!markov.holds) {
        throw std::invalid_argument(
            "check_decomposition: local Markov condition fails on the supplied DAG (first "
            "violation: " +
            markov.violations.front().context + ")");
    }
    const ElementSubset none = ElementSubset::empty(measure.ground());
    DecompositionReport report;

    // Node-level decomposition over the non-Y nodes.
    IndexSet graph_nodes;
    for (std::size_t i = 0; i < dag.node_count(); ++i) {
        if (!set_contains(obs.y_nodes(), i)) graph_nodes.push_back(i);
    }
    const ElementSubset all_nodes = nodes_to_subset(dag, measure, graph_nodes);
    report.node_lhs_bits = measure.cmi(y, all_nodes, none);
    double rhs = 0.0;
    report.equality_condition_per_node.assign(graph_nodes.size(), false);
    IndexSet all_set = graph_nodes;
    bool all_conditions = true;
    for (std::size_t k = 0; k < graph_nodes.size(); ++k) {
        const std::size_t i = graph_nodes[k];
        const IndexSet pa = set_difference(dag.parents(i), obs.y_nodes());
        rhs += measure.cmi(y, nodes_to_subset(dag, measure, {i}),
                           nodes_to_subset(dag, measure, pa));
        // Equality condition: O_i ⫫ O_nd_i | (O_pa_i, Y).
        IndexSet excluded = set_union(dag.descendants(i), dag.parents(i));
        excluded.push_back(i);
        excluded = set_union(excluded, obs.y_nodes());
        const IndexSet nd = set_difference(all_set, make_index_set(std::move(excluded)));
        const double cond =
            nd.empty() ? 0.0
                       : measure.cmi(nodes_to_subset(dag, measure, {i}),
                                     nodes_to_subset(dag, measure, nd),
                                     nodes_to_subset(dag, measure, pa).union_with(y));
        const bool holds = cond <= tol_bits;
        report.equality_condition_per_node[k] = holds;
        all_conditions = all_conditions && holds;
    }
    report.node_rhs_bits = rhs;
    report.node_slack_bits = report.node_lhs_bits - rhs;
    report.equality_condition_holds = all_conditions;
    report.equality_achieved = std::abs(report.node_slack_bits) <= tol_bits;

    // Group-level ancestral decomposition.
    const std::size_t n = obs.group_count();
    report.multiplicities.resize(n);
    IndexSet union_nodes = obs.group_union();
    const IndexSet an_all = ancestral_closure(dag, union_nodes);
    report.ancestral_lhs_bits = measure.cmi(y, nodes_to_subset(dag, measure, an_all), none);
    double weighted_an = 0.0;
    double weighted_obs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        report.multiplicities[i] = ancestor_multiplicity(dag, obs, i);
        const double coeff = 1.0 / report.multiplicities[i];
        const IndexSet an_i = ancestral_closure(dag, obs.groups()[i]);
        weighted_an += coeff * measure.cmi(y, nodes_to_subset(dag, measure, an_i), none);
        weighted_obs +=
            coeff * measure.cmi(y, nodes_to_subset(dag, measure, obs.groups()[i]), none);
    }
    report.weighted_ancestral_bits = weighted_an;
    report.weighted_observed_bits = weighted_obs;
    report.ancestral_slack_bits = report.ancestral_lhs_bits - weighted_an;
    report.ancestral_monotonicity_slack_bits = weighted_an - weighted_obs;
    report.observed_lhs_bits = measure.cmi(y, nodes_to_subset(dag, measure, union_nodes), none);
    report.observed_slack_bits = report.observed_lhs_bits - weighted_obs;

    // Locality assumption: Y ⫫ X∖(O_[n]∪Y) | O_[n].
    const IndexSet rest = set_difference(graph_nodes, union_nodes);
    report.y_locality_residual_bits =
        rest.empty() ? 0.0
                     : measure.cmi(y, nodes_to_subset(dag, measure, rest),
                                   nodes_to_subset(dag, measure, union_nodes));
    report.y_locality_holds = report.y_locality_residual_bits <= tol_bits;
    return report;
}

std::vector<SubmodularityViolation> submodularity_audit(const InfoMeasure& measure,
                                                        const ElementSubset& y,
                                                        std::span<const ElementSubset> groups,
                                                        double tol_bits) {
    require(!groups.empty(), "submodularity_audit: no groups");
    require(groups.size() <= kMaxSubmodularityGroups,
            "submodularity_audit: guarded to <= " + std::to_string(kMaxSubmodularityGroups) +
                " groups");
    const std::size_t n = groups.size();
    for (std::size_t i = 0; i < n; ++i) {
        require(y.disjoint_with(groups[i]), "submodularity_audit: Y overlaps a group");
    }
    const ElementSubset none = ElementSubset::empty(measure.ground());
    const std::size_t n_masks = std::size_t{1} << n;

    // I(Y:O_S) per subset mask, computed once.
    std::vector<double> info(n_masks, 0.0);
    for (std::size_t mask = 1; mask < n_masks; ++mask) {
        ElementSubset s = none;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) s = s.union_with(groups[i]);
        }
        info[mask] = measure.cmi(y, s, none);
    }

    std::vector<SubmodularityViolation> violations;
    for (std::size_t s = 0; s < n_masks; ++s) {
        for (std::size_t t = s + 1; t < n_masks; ++t) {
            const double lhs = info[s] + info[t];
            const double rhs = info[s | t] + info[s & t];
            if (lhs > rhs + tol_bits) {
                violations.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t),
                                      lhs, rhs, lhs - rhs});
            }
        }
    }
    return violations;
}

SynergyDecomposition synergy_decomposition(const JointDistribution& dist,
                                           std::span<const VarSet> groups, const VarSet& y,
                                           int c) {
    require(!groups.empty(), "synergy_decomposition: no groups");
    VarSet all = groups[0];
    for (std::size_t i = 1; i < groups.size(); ++i) all = all.union_with(groups[i]);

    SynergyDecomposition out;
    out.r_y_bits = redundancy_c_bits(dist, groups, y, c, nullptr,
                                     OverlapPolicy::AllowViaEntropyIdentity);
    // r_c(O_[n]) and r_c(O_[n]|Y) take Z = O_[n], hence the non-disjoint
    // extension of the discrete backend.
    out.r_obs_bits = redundancy_c_bits(dist, groups, all, c, nullptr,
                                       OverlapPolicy::AllowViaEntropyIdentity);
    out.r_obs_given_y_bits = redundancy_c_bits(dist, groups, all, c, &y,
                                               OverlapPolicy::AllowViaEntropyIdentity);
    return out;
}

}  // namespace cainfer
