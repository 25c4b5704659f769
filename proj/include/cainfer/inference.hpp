#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cainfer/dag.hpp"
#include "cainfer/discrete_measure.hpp"
#include "cainfer/distribution.hpp"
#include "cainfer/measure.hpp"

namespace cainfer {

inline constexpr double kDefaultDecisionTolBits = 1e-6;

// An observation: the values I(Y:O_S) for every subset S
// of group indices, addressed by bitmask (bit i <-> group i).
class ObservationValues {
public:
    ObservationValues(std::size_t n, std::vector<double> values_by_mask,
                      std::optional<double> ancestral_info_bits, bool y_is_function_of_obs);

    std::size_t group_count() const { return n_; }
    const std::vector<double>& values_by_mask() const { return values_; }
    double value_bits(std::uint32_t mask) const { return values_.at(mask); }
    double single_bits(std::size_t i) const { return values_.at(std::uint32_t{1} << i); }
    double full_bits() const { return values_.back(); }

    std::optional<double> ancestral_info_bits() const { return ancestral_info_; }
    bool y_is_function_of_obs() const { return y_is_function_of_obs_; }

    bool has_ancestral_information() const;
    // I(Y:an(O_[n])): the supplied value, or values([n]) when Y is a function
    // of the observations (the chain-rule collapse on the ancestral set). Throws when
    // neither source is available.
    double ancestral_information_bits() const;

private:
    std::size_t n_;
    std::vector<double> values_;
    std::optional<double> ancestral_info_;
    bool y_is_function_of_obs_;
};

// Builds the observation values of a discrete instance, evaluating I(Y:O_S)
// for every subset of the groups.
ObservationValues observed_values_from_distribution(const JointDistribution& dist,
                                                    std::span<const VarSet> groups, const VarSet& y,
                                                    bool y_is_function_of_obs);

struct ConclusionEntry {
    int c = 0;
    double criterion_bits = 0.0;  // r_c(Y) in value mode, I_c in entropy mode
    bool qualifies = false;       // criterion > decision tolerance
    // (c/(n−c))·criterion: a lower bound on the information about (entropy of,
    // in entropy mode) the common ancestors of more than c groups.
    std::optional<double> bound_bits;
};

struct InferenceReport {
    std::string mode;  // "entropy" (Y = copy) or "value"
    std::vector<ConclusionEntry> per_c;       // c = 1..n−1, ascending
    int largest_qualifying_c = 0;             // 0: no structural conclusion
    double decision_tol_bits = kDefaultDecisionTolBits;
    std::vector<std::string> assumptions;
};

// Largest c whose criterion exceeds the decision tolerance, with per-c details.
// A qualifying c asserts a common ancestor of at least c+1 of the observed
// groups in every DAG-model of the observation.
InferenceReport infer_multiplicity(const ObservationValues& obs,
                                   double decision_tol_bits = kDefaultDecisionTolBits);
InferenceReport infer_multiplicity(const JointDistribution& dist, std::span<const VarSet> groups,
                                   double decision_tol_bits = kDefaultDecisionTolBits);

// (c/(n−c))·I_c from per-group and joint entropies; <= 0 means "no bound".
double ancestor_entropy_bound_bits(std::span<const double> group_entropies_bits,
                                   double joint_entropy_bits, int c);

struct EpsilonBound {
    double epsilon_bits = 0.0;
    // Present iff epsilon > 0 (then required coefficient sum > 1).
    std::optional<double> information_bound_bits;
};

// ε_c = Σ (1/c_i)·I(Y:O_i) − I(Y:an(O_[n])) and, when positive, the bound
// (Σ 1/c_i − 1)^{-1}·ε_c on the information about the union of the A_{c_i+1}.
// Throws a degenerate-configuration error when ε_c > 0 but Σ 1/c_i <= 1.
EpsilonBound epsilon_and_bound(const ObservationValues& obs, std::span<const int> c_vec);

struct DecompositionReport {
    // Node-level decomposition: I(Y:X_[n]) >= Σ_i I(Y:X_i | X_pa_i).
    double node_lhs_bits = 0.0;
    double node_rhs_bits = 0.0;
    double node_slack_bits = 0.0;
    // Per-node equality condition O_i ⫫ O_nd_i | (O_pa_i, Y); equality of the
    // node-level decomposition is expected when all hold.
    std::vector<bool> equality_condition_per_node;
    bool equality_condition_holds = false;
    bool equality_achieved = false;

    // Group-level ancestral decomposition with coefficients 1/d_i.
    std::vector<int> multiplicities;          // d_i per group
    double ancestral_lhs_bits = 0.0;          // I(Y:an(O_[n]))
    double weighted_ancestral_bits = 0.0;     // Σ (1/d_i)·I(Y:an(O_i))
    double weighted_observed_bits = 0.0;      // Σ (1/d_i)·I(Y:O_i)
    double ancestral_slack_bits = 0.0;               // ancestral_lhs − weighted_ancestral
    double ancestral_monotonicity_slack_bits = 0.0;  // weighted_ancestral − weighted_observed
    double observed_lhs_bits = 0.0;                  // I(Y:O_[n])
    double observed_slack_bits = 0.0;                // observed_lhs − weighted_observed
    // Residual of the locality assumption Y ⫫ X∖(O_[n]∪Y) | O_[n].
    double y_locality_residual_bits = 0.0;
    bool y_locality_holds = false;
};

// Evaluates the decomposition inequalities on a concrete DAG + measure. The
// measure's ground set must contain every dag node plus the elements of y;
// y names measure elements (it may be the obs.y_nodes mapped by name, or an
// external element not in the graph). Requires local Markov at tol.
DecompositionReport check_decomposition(const Dag& dag, const InfoMeasure& measure,
                                        const ObservationGroups& obs, const ElementSubset& y,
                                        double tol_bits);

struct SubmodularityViolation {
    std::uint32_t s_mask = 0;
    std::uint32_t t_mask = 0;
    double lhs_bits = 0.0;  // I(Y:O_S) + I(Y:O_T)
    double rhs_bits = 0.0;  // I(Y:O_{S∪T}) + I(Y:O_{S∩T})
    double magnitude_bits = 0.0;
};

inline constexpr std::size_t kMaxSubmodularityGroups = 12;

// Checks I(Y:O_S) + I(Y:O_T) <= I(Y:O_{S∪T}) + I(Y:O_{S∩T}) + tol over all
// unordered subset pairs. Violations certify the groups are not mutually
// independent, rejecting the edgeless DAG-model.
std::vector<SubmodularityViolation> submodularity_audit(const InfoMeasure& measure,
                                                        const ElementSubset& y,
                                                        std::span<const ElementSubset> groups,
                                                        double tol_bits);

struct SynergyDecomposition {
    double r_y_bits = 0.0;            // r_c(Y)
    double r_obs_bits = 0.0;          // r_c(O_[n])
    double r_obs_given_y_bits = 0.0;  // r_c(O_[n]|Y)

    double identity_residual_bits() const {
        return r_y_bits - (r_obs_bits - r_obs_given_y_bits);
    }
};

// r_c(Y) = r_c(O_[n]) − r_c(O_[n]|Y); needs the discrete backend since the
// middle terms evaluate I on non-disjoint sets.
SynergyDecomposition synergy_decomposition(const JointDistribution& dist,
                                           std::span<const VarSet> groups, const VarSet& y, int c);

}  // namespace cainfer
