#include "cainfer/discrete_measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cainfer {
namespace {

constexpr double kProbZeroCutoff = 1e-15;
constexpr std::size_t kMaxPrecomputeVariables = 16;
constexpr std::size_t kMaxPrecomputeWork = std::size_t{1} << 22;

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
    return acc.sum <= 0.0 ? 0.0 : acc.sum;
}

std::vector<std::string> variable_names(const JointDistribution& dist) {
    std::vector<std::string> names;
    names.reserve(dist.variable_count());
    for (const auto& v : dist.variables()) names.push_back(v.name);
    return names;
}

// Σ over masks of sub-table sizes = Π (card_i + 1); the memory/time bound of
// the all-subsets precompute.
bool precompute_feasible(const JointDistribution& dist) {
    if (dist.variable_count() > kMaxPrecomputeVariables) return false;
    std::size_t work = 1;
    for (const auto& v : dist.variables()) {
        const std::size_t factor = static_cast<std::size_t>(v.cardinality) + 1;
        if (work > kMaxPrecomputeWork / factor) return false;
        work *= factor;
    }
    return true;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(JointDistribution dist)
    : InfoMeasure(make_ground_set(variable_names(dist))), dist_(std::move(dist)) {
    if (!precompute_feasible(dist_)) return;

    const std::size_t n = dist_.variable_count();
    const std::size_t n_masks = std::size_t{1} << n;
    // Sub-tables per mask, derived by eliminating one variable at a time from a
    // one-larger mask, full mask downward.
    std::vector<std::vector<double>> tables(n_masks);
    tables[n_masks - 1] = dist_.probabilities();

    std::vector<std::uint64_t> order(n_masks);
    for (std::size_t m = 0; m < n_masks; ++m) order[m] = m;
    std::sort(order.begin(), order.end(), [](std::uint64_t a, std::uint64_t b) {
        const int pa = std::popcount(a);
        const int pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });

    for (std::uint64_t mask : order) {
        if (mask == n_masks - 1) continue;
        // Lowest variable index missing from mask; its parent table exists.
        std::size_t drop = 0;
        while (mask & (std::uint64_t{1} << drop)) ++drop;
        const std::uint64_t parent = mask | (std::uint64_t{1} << drop);
        const std::vector<double>& src = tables[parent];

        // Layout of the parent table: variables of `parent` in index order,
        // last fastest. Compute the stride and extent of the dropped variable.
        std::size_t inner = 1;  // product of cards of parent vars with index > drop
        for (std::size_t i = drop + 1; i < n; ++i) {
            if (parent & (std::uint64_t{1} << i)) inner *= dist_.variable(i).cardinality;
        }
        const std::size_t card = dist_.variable(drop).cardinality;
        std::vector<double> dst(src.size() / card, 0.0);
        std::size_t src_idx = 0;
        for (std::size_t outer = 0; outer < dst.size() / inner; ++outer) {
            for (std::size_t v = 0; v < card; ++v) {
                const std::size_t base = outer * inner;
                for (std::size_t k = 0; k < inner; ++k) {
                    dst[base + k] += src[src_idx++];
                }
            }
        }
        tables[mask] = std::move(dst);
    }

    entropy_by_mask_.resize(n_masks);
    for (std::size_t m = 0; m < n_masks; ++m) {
        entropy_by_mask_[m] = m == 0 ? 0.0 : entropy_of_table(tables[m]);
    }
}

double DiscreteMeasure::subset_entropy_bits(std::uint64_t mask) const {
    if (!entropy_by_mask_.empty()) return entropy_by_mask_.at(mask);
    if (mask == 0) return 0.0;
    return entropy_bits(dist_, VarSet(dist_, indices_of_mask(mask)));
}

double DiscreteMeasure::evaluate(const ElementSubset& a, const ElementSubset& b,
                                 const ElementSubset& c) const {
    if (dist_.variable_count() <= 64) {
        const std::uint64_t ma = mask_of_indices(a.members());
        const std::uint64_t mb = mask_of_indices(b.members());
        const std::uint64_t mc = mask_of_indices(c.members());
        // Entropy identity; symmetry in A,B is a structural property of the form.
        return subset_entropy_bits(ma | mc) + subset_entropy_bits(mb | mc) -
               subset_entropy_bits(ma | mb | mc) - subset_entropy_bits(mc);
    }
    const VarSet va(dist_, a.members());
    const VarSet vb(dist_, b.members());
    const VarSet vc(dist_, c.members());
    return cmi_bits(dist_, va, vb, vc, OverlapPolicy::Forbid);
}

}  // namespace cainfer
