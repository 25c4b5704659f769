#include "cainfer/distribution.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace cainfer {
namespace {

constexpr double kProbZeroCutoff = 1e-15;
constexpr double kSumTolerance = 1e-12;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Compensated (Kahan) accumulator; entropy sums are order-pinned and tracked.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double entropy_of_table(const std::vector<double>& probs) {
    Kahan acc;
    for (double p : probs) {
        if (p > kProbZeroCutoff) acc.add(-p * std::log2(p));
    }
    // Guard against -0.0 and tiny negative round-off on near-point masses.
    return acc.sum <= 0.0 ? 0.0 : acc.sum;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<VariableDecl> variables,
                                     std::vector<double> probabilities)
    : variables_(std::move(variables)), probabilities_(std::move(probabilities)) {
    require(!variables_.empty(), "JointDistribution: no variables");
    std::set<std::string> seen;
    std::size_t size = 1;
    for (const auto& v : variables_) {
        require(!v.name.empty(), "JointDistribution: empty variable name");
        require(seen.insert(v.name).second, "JointDistribution: duplicate variable '" + v.name + "'");
        require(v.cardinality >= 1, "JointDistribution: cardinality must be >= 1");
        require(size <= kMaxTableSize / v.cardinality,
                "JointDistribution: table exceeds the size guard");
        size *= v.cardinality;
    }
    require(probabilities_.size() == size,
            "JointDistribution: expected " + std::to_string(size) + " probabilities, got " +
                std::to_string(probabilities_.size()));
    Kahan total;
    for (double p : probabilities_) {
        require(p >= 0.0, "JointDistribution: negative probability entry");
        total.add(p);
    }
    require(std::abs(total.sum - 1.0) <= kSumTolerance,
            "JointDistribution: probabilities sum to " + std::to_string(total.sum));

    strides_.assign(variables_.size(), 1);
    for (std::size_t i = variables_.size(); i-- > 1;) {
        strides_[i - 1] = strides_[i] * variables_[i].cardinality;
    }
}

std::size_t JointDistribution::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return i;
    }
    throw std::invalid_argument("JointDistribution: unknown variable '" + std::string(name) + "'");
}

std::size_t JointDistribution::flat_index(std::span<const std::uint32_t> values) const {
    require(values.size() == variables_.size(), "flat_index: wrong tuple length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i] < variables_[i].cardinality, "flat_index: value out of range");
        idx += values[i] * strides_[i];
    }
    return idx;
}

void JointDistribution::decode_index(std::size_t flat, std::span<std::uint32_t> values_out) const {
    require(values_out.size() == variables_.size(), "decode_index: wrong tuple length");
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        values_out[i] = static_cast<std::uint32_t>(flat / strides_[i] % variables_[i].cardinality);
    }
}

double JointDistribution::probability(std::span<const std::uint32_t> values) const {
    return probabilities_[flat_index(values)];
}

VarSet::VarSet(const JointDistribution& dist, IndexSet indices)
    : dist_(&dist), indices_(make_index_set(std::move(indices))) {
    for (std::size_t i : indices_) {
        require(i < dist.variable_count(), "VarSet: variable index out of range");
    }
}

VarSet VarSet::all(const JointDistribution& dist) {
    IndexSet idx(dist.variable_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return VarSet(dist, std::move(idx));
}

VarSet VarSet::of_names(const JointDistribution& dist, std::span<const std::string> names) {
    IndexSet idx;
    idx.reserve(names.size());
    for (const auto& name : names) idx.push_back(dist.index_of(name));
    return VarSet(dist, std::move(idx));
}

VarSet VarSet::single(const JointDistribution& dist, std::string_view name) {
    return VarSet(dist, {dist.index_of(name)});
}

bool VarSet::compatible_with(const JointDistribution& dist) const {
    if (dist_ == &dist) return true;
    for (std::size_t i : indices_) {
        if (i >= dist.variable_count()) return false;
        if (!(dist_->variable(i) == dist.variable(i))) return false;
    }
    return true;
}

VarSet VarSet::union_with(const VarSet& other) const {
    return VarSet(*dist_, set_union(indices_, other.indices_));
}

JointDistribution marginal(const JointDistribution& dist, const VarSet& s) {
    require(s.compatible_with(dist), "marginal: VarSet belongs to a different distribution");
    require(!s.is_empty(), "marginal: empty variable set");

    const auto& kept = s.indices();
    if (kept.size() == dist.variable_count()) return dist;

    std::vector<VariableDecl> out_vars;
    out_vars.reserve(kept.size());
    std::size_t out_size = 1;
    for (std::size_t i : kept) {
        out_vars.push_back(dist.variable(i));
        out_size *= dist.variable(i).cardinality;
    }
    std::vector<std::size_t> out_strides(kept.size(), 1);
    for (std::size_t k = kept.size(); k-- > 1;) {
        out_strides[k - 1] = out_strides[k] * out_vars[k].cardinality;
    }

    // One pass over the full table in canonical order, with an incrementally
    // maintained mixed-radix tuple and output index.
    const std::size_t n = dist.variable_count();
    std::vector<std::uint32_t> tuple(n, 0);
    std::vector<std::size_t> out_stride_of_var(n, 0);
    for (std::size_t k = 0; k < kept.size(); ++k) out_stride_of_var[kept[k]] = out_strides[k];

    std::vector<double> out_probs(out_size, 0.0);
    std::size_t out_idx = 0;
    const auto& probs = dist.probabilities();
    for (std::size_t flat = 0;; ++flat) {
        out_probs[out_idx] += probs[flat];
        if (flat + 1 == probs.size()) break;
        // Increment the tuple (last variable fastest).
        for (std::size_t i = n; i-- > 0;) {
            const std::uint32_t card = dist.variable(i).cardinality;
            if (++tuple[i] < card) {
                out_idx += out_stride_of_var[i];
                break;
            }
            tuple[i] = 0;
            out_idx -= out_stride_of_var[i] * (card - 1);
        }
    }
    return JointDistribution(std::move(out_vars), std::move(out_probs));
}

double entropy_bits(const JointDistribution& dist, const VarSet& s) {
    require(!s.is_empty(), "entropy: empty variable set");
    if (s.size() == dist.variable_count()) return entropy_of_table(dist.probabilities());
    return entropy_of_table(marginal(dist, s).probabilities());
}

namespace {

double entropy_maybe_empty(const JointDistribution& dist, const VarSet& s) {
    return s.is_empty() ? 0.0 : entropy_bits(dist, s);
}

}  // namespace

double cmi_bits(const JointDistribution& dist, const VarSet& a, const VarSet& b, const VarSet& c,
                OverlapPolicy policy) {
    require(a.compatible_with(dist) && b.compatible_with(dist) && c.compatible_with(dist),
            "cmi: VarSet belongs to a different distribution");
    if (policy == OverlapPolicy::Forbid) {
        require(a.disjoint_with(b) && a.disjoint_with(c) && b.disjoint_with(c),
                "cmi: overlapping variable sets (pass OverlapPolicy::AllowViaEntropyIdentity "
                "to evaluate the entropy identity on overlapping sets)");
    }
    const double hac = entropy_maybe_empty(dist, a.union_with(c));
    const double hbc = entropy_maybe_empty(dist, b.union_with(c));
    const double habc = entropy_maybe_empty(dist, a.union_with(b).union_with(c));
    const double hc = entropy_maybe_empty(dist, c);
    return hac + hbc - habc - hc;
}

double multi_information_c_bits(const JointDistribution& dist, std::span<const VarSet> groups,
                                int c) {
    require(!groups.empty(), "multi_information: no groups");
    const int n = static_cast<int>(groups.size());
    require(c >= 1 && c <= n, "multi_information: c out of range [1, n]");
    VarSet all = groups[0];
    for (std::size_t i = 0; i < groups.size(); ++i) {
        require(groups[i].compatible_with(dist), "multi_information: foreign VarSet");
        require(!groups[i].is_empty(), "multi_information: empty group");
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            require(groups[i].disjoint_with(groups[j]), "multi_information: overlapping groups");
        }
        if (i > 0) all = all.union_with(groups[i]);
    }
    Kahan acc;
    for (const auto& g : groups) acc.add(entropy_bits(dist, g) / c);
    return acc.sum - entropy_bits(dist, all);
}

double redundancy_c_bits(const JointDistribution& dist, std::span<const VarSet> groups,
                         const VarSet& y, int c, const VarSet* given, OverlapPolicy policy) {
    require(!groups.empty(), "redundancy: no groups");
    const int n = static_cast<int>(groups.size());
    require(c >= 1 && c <= n, "redundancy: c out of range [1, n]");
    VarSet all = groups[0];
    for (std::size_t i = 0; i < groups.size(); ++i) {
        require(!groups[i].is_empty(), "redundancy: empty group");
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            require(groups[i].disjoint_with(groups[j]), "redundancy: overlapping groups");
        }
        if (i > 0) all = all.union_with(groups[i]);
    }
    const VarSet cond = given != nullptr ? *given : VarSet::empty(dist);
    Kahan acc;
    for (const auto& g : groups) acc.add(cmi_bits(dist, y, g, cond, policy) / c);
    return acc.sum - cmi_bits(dist, y, all, cond, policy);
}

JointDistribution from_samples(const SampleTable& table) {
    require(!table.rows.empty(), "from_samples: empty sample table");
    require(!table.variables.empty(), "from_samples: no variables");
    std::size_t size = 1;
    for (const auto& v : table.variables) {
        require(v.cardinality >= 1, "from_samples: cardinality must be >= 1");
        size *= v.cardinality;
    }
    std::vector<std::size_t> strides(table.variables.size(), 1);
    for (std::size_t i = table.variables.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * table.variables[i].cardinality;
    }
    std::vector<double> counts(size, 0.0);
    for (const auto& row : table.rows) {
        require(row.size() == table.variables.size(), "from_samples: ragged row");
        std::size_t idx = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            require(row[j] < table.variables[j].cardinality,
                    "from_samples: value out of range for '" + table.variables[j].name + "'");
            idx += row[j] * strides[j];
        }
        counts[idx] += 1.0;
    }
    const double m = static_cast<double>(table.rows.size());
    for (double& x : counts) x /= m;
    return JointDistribution(table.variables, std::move(counts));
}

JointDistribution make_parity(int n, double beta) {
    require(n >= 2, "make_parity: n must be >= 2");
    std::vector<VariableDecl> vars;
    vars.reserve(n);
    for (int i = 0; i < n; ++i) vars.push_back({"X" + std::to_string(i + 1), 2});
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> probs(size, 0.0);

    if (std::isinf(beta)) {
        // Uniform over the tuples whose spin product matches the sign of beta.
        const bool want_positive = beta > 0;
        std::size_t count = 0;
        for (std::size_t x = 0; x < size; ++x) {
            const int zeros = n - std::popcount(x);
            const bool positive = zeros % 2 == 0;
            if (positive == want_positive) {
                probs[x] = 1.0;
                ++count;
            }
        }
        for (double& p : probs) p /= static_cast<double>(count);
        return JointDistribution(std::move(vars), std::move(probs));
    }

    double z = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
        const int zeros = n - std::popcount(x);
        const double product = zeros % 2 == 0 ? 1.0 : -1.0;
        probs[x] = std::exp(beta * product);
        z += probs[x];
    }
    for (double& p : probs) p /= z;
    return JointDistribution(std::move(vars), std::move(probs));
}

JointDistribution make_copies(int n, const JointDistribution& base) {
    require(n >= 1, "make_copies: n must be >= 1");
    require(base.variable_count() == 1, "make_copies: base must have exactly one variable");
    if (n == 1) return base;

    const std::uint32_t card = base.variable(0).cardinality;
    std::vector<VariableDecl> vars;
    vars.reserve(n);
    for (int i = 0; i < n; ++i) {
        vars.push_back({base.variable(0).name + std::to_string(i + 1), card});
    }
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= card;
    std::vector<double> probs(size, 0.0);
    // Diagonal index of value v is v * (card^{n-1} + ... + card + 1).
    std::size_t diag_step = 0;
    std::size_t stride = 1;
    for (int i = 0; i < n; ++i) {
        diag_step += stride;
        stride *= card;
    }
    for (std::uint32_t v = 0; v < card; ++v) {
        probs[v * diag_step] = base.probabilities()[v];
    }
    return JointDistribution(std::move(vars), std::move(probs));
}

}  // namespace cainfer
