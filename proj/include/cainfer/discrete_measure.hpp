#pragma once

#include <cstdint>
#include <vector>

#include "cainfer/distribution.hpp"
#include "cainfer/measure.hpp"

namespace cainfer {

// InfoMeasure backed by an exact joint distribution: ground elements are the
// distribution's variables, in declaration order. Subset entropies are
// precomputed at construction when the table is small enough, which makes the
// audit and Markov-check loops cheap; beyond the precompute bound every call
// marginalizes directly. Immutable and safe to share across threads.
class DiscreteMeasure final : public InfoMeasure {
public:
    explicit DiscreteMeasure(JointDistribution dist);

    const JointDistribution& distribution() const { return dist_; }

    // H of the variable subset given by mask bit i <-> variable i.
    double subset_entropy_bits(std::uint64_t mask) const;

protected:
    double evaluate(const ElementSubset& a, const ElementSubset& b,
                    const ElementSubset& c) const override;

private:
    JointDistribution dist_;
    std::vector<double> entropy_by_mask_;  // empty when not precomputed
};

}  // namespace cainfer
