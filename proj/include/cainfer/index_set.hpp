#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cainfer {

// Sorted, duplicate-free vector of indices. Used for variable sets, node sets
// and element subsets alike; all set algebra in the library goes through here.
using IndexSet = std::vector<std::size_t>;

inline IndexSet make_index_set(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool is_sorted_unique(const IndexSet& v) {
    return std::adjacent_find(v.begin(), v.end(),
                              [](std::size_t a, std::size_t b) { return a >= b; }) == v.end();
}

inline bool set_contains(const IndexSet& v, std::size_t x) {
    return std::binary_search(v.begin(), v.end(), x);
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool set_disjoint(const IndexSet& a, const IndexSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else return false;
    }
    return true;
}

inline bool set_subset_of(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Decode a bitmask over [0, n) into an IndexSet; bit i selects index i.
inline IndexSet indices_of_mask(std::uint64_t mask) {
    IndexSet out;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) out.push_back(i);
    }
    return out;
}

inline std::uint64_t mask_of_indices(const IndexSet& v) {
    std::uint64_t mask = 0;
    for (std::size_t i : v) mask |= (std::uint64_t{1} << i);
    return mask;
}

}  // namespace cainfer
