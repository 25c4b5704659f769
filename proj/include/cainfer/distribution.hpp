#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cainfer/index_set.hpp"

namespace cainfer {

struct VariableDecl {
    std::string name;
    std::uint32_t cardinality = 2;

    bool operator==(const VariableDecl&) const = default;
};

// Exact discrete joint distribution as a dense table. Row-major over value
// tuples with the last variable fastest. Immutable after construction.
class JointDistribution {
public:
    // Guard on the dense table size.
    static constexpr std::size_t kMaxTableSize = std::size_t{1} << 24;

    JointDistribution(std::vector<VariableDecl> variables, std::vector<double> probabilities);

    std::size_t variable_count() const { return variables_.size(); }
    const std::vector<VariableDecl>& variables() const { return variables_; }
    const VariableDecl& variable(std::size_t i) const { return variables_.at(i); }
    std::size_t index_of(std::string_view name) const;  // throws on unknown name

    std::size_t table_size() const { return probabilities_.size(); }
    const std::vector<double>& probabilities() const { return probabilities_; }

    std::size_t flat_index(std::span<const std::uint32_t> values) const;
    void decode_index(std::size_t flat, std::span<std::uint32_t> values_out) const;
    double probability(std::span<const std::uint32_t> values) const;

private:
    std::vector<VariableDecl> variables_;
    std::vector<double> probabilities_;
    std::vector<std::size_t> strides_;
};

// Set of variable indices of one distribution.
class VarSet {
public:
    VarSet(const JointDistribution& dist, IndexSet indices);

    static VarSet empty(const JointDistribution& dist) { return VarSet(dist, {}); }
    static VarSet all(const JointDistribution& dist);
    static VarSet of_names(const JointDistribution& dist, std::span<const std::string> names);
    static VarSet single(const JointDistribution& dist, std::string_view name);

    const IndexSet& indices() const { return indices_; }
    bool is_empty() const { return indices_.empty(); }
    std::size_t size() const { return indices_.size(); }

    bool compatible_with(const JointDistribution& dist) const;
    VarSet union_with(const VarSet& other) const;
    bool disjoint_with(const VarSet& other) const { return set_disjoint(indices_, other.indices_); }

private:
    const JointDistribution* dist_;
    IndexSet indices_;
};

// Raw categorical observations; rows of value tuples.
struct SampleTable {
    std::vector<VariableDecl> variables;
    std::vector<std::vector<std::uint32_t>> rows;
};

enum class OverlapPolicy {
    Forbid,                    // arguments must be pairwise disjoint
    AllowViaEntropyIdentity,   // evaluate the entropy identity on overlapping sets
};

JointDistribution marginal(const JointDistribution& dist, const VarSet& s);

// Shannon entropy H(X_S) in bits; 0 log 0 := 0, entries below 1e-15 are exact
// zeros. Compensated summation in canonical index order.
double entropy_bits(const JointDistribution& dist, const VarSet& s);

// I(A:B|C) = H(A∪C) + H(B∪C) − H(A∪B∪C) − H(C). Symmetry in A,B is structural.
double cmi_bits(const JointDistribution& dist, const VarSet& a, const VarSet& b, const VarSet& c,
                OverlapPolicy policy = OverlapPolicy::Forbid);

// I_c = (1/c)·Σ_i H(group_i) − H(union), 1 <= c <= #groups.
double multi_information_c_bits(const JointDistribution& dist, std::span<const VarSet> groups,
                                int c);

// r_c(Y|given) = (1/c)·Σ_i I(Y:O_i|given) − I(Y:O_[n]|given).
double redundancy_c_bits(const JointDistribution& dist, std::span<const VarSet> groups,
                         const VarSet& y, int c, const VarSet* given = nullptr,
                         OverlapPolicy policy = OverlapPolicy::Forbid);

// Plug-in relative-frequency estimate. Results are empirical, not exact.
JointDistribution from_samples(const SampleTable& table);

// Pure n-interaction family p_beta ∝ exp(beta·s_1···s_n) over spins in {−1,+1},
// encoded as categories {0 ↦ −1, 1 ↦ +1}. beta may be ±infinity.
JointDistribution make_parity(int n, double beta);

// n perfect copies of a single-variable base distribution.
JointDistribution make_copies(int n, const JointDistribution& base);

}  // namespace cainfer
