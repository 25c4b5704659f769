#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cainfer/distribution.hpp"
#include "cainfer/oracle.hpp"

namespace testsupport {

// n independent uniform bits as a Bayes net (empty DAG, fair-coin priors).
inline cainfer::BayesNet uniform_bit_roots(std::size_t n, const std::string& prefix = "O") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
    cainfer::BayesNet net{
        cainfer::Dag(std::move(names), std::span<const std::pair<std::size_t, std::size_t>>{}),
        std::vector<std::uint32_t>(n, 2),
        {}};
    for (std::size_t i = 0; i < n; ++i) net.cpts.push_back({i, {}, {0.5, 0.5}});
    return net;
}

// Independent oracle: joint tables as tuple->probability maps, entropies by
// direct marginalization over the map. Deliberately shares no code with the
// library's dense-array path.
struct NaiveJoint {
    std::vector<std::uint32_t> cards;
    std::map<std::vector<std::uint32_t>, double> p;
};

inline double naive_entropy_of(const std::map<std::vector<std::uint32_t>, double>& table) {
    double h = 0.0;
    for (const auto& [tuple, prob] : table) {
        if (prob > 1e-15) h -= prob * std::log2(prob);
    }
    return h < 0 ? 0.0 : h;
}

inline double naive_subset_entropy(const NaiveJoint& joint, std::span<const std::size_t> subset) {
    if (subset.empty()) return 0.0;
    std::map<std::vector<std::uint32_t>, double> marg;
    for (const auto& [tuple, prob] : joint.p) {
        std::vector<std::uint32_t> key;
        for (std::size_t i : subset) key.push_back(tuple[i]);
        marg[key] += prob;
    }
    return naive_entropy_of(marg);
}

inline double naive_cmi(const NaiveJoint& joint, std::vector<std::size_t> a,
                        std::vector<std::size_t> b, std::vector<std::size_t> c) {
    auto join = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
        for (std::size_t i : y) {
            if (std::find(x.begin(), x.end(), i) == x.end()) x.push_back(i);
        }
        std::sort(x.begin(), x.end());
        return x;
    };
    const auto ac = join(a, c);
    const auto bc = join(b, c);
    const auto abc = join(join(a, b), c);
    std::sort(c.begin(), c.end());
    return naive_subset_entropy(joint, ac) + naive_subset_entropy(joint, bc) -
           naive_subset_entropy(joint, abc) - naive_subset_entropy(joint, c);
}

inline NaiveJoint naive_from(const cainfer::JointDistribution& dist) {
    NaiveJoint joint;
    for (const auto& v : dist.variables()) joint.cards.push_back(v.cardinality);
    std::vector<std::uint32_t> tuple(dist.variable_count());
    for (std::size_t flat = 0; flat < dist.table_size(); ++flat) {
        dist.decode_index(flat, tuple);
        if (dist.probabilities()[flat] > 0) joint.p[tuple] = dist.probabilities()[flat];
    }
    return joint;
}

// L1 distance between two dense tables of equal layout.
inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

}  // namespace testsupport
