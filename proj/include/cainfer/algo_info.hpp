#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cainfer/measure.hpp"

namespace cainfer {

// Compressed-length oracle standing in for Kolmogorov complexity. The compress
// function must be deterministic. Invocations of one handle are not
// synchronized internally; use per-thread handles for parallel work.
struct CompressorHandle {
    std::string name;
    std::function<std::size_t(std::span<const std::byte>)> compressed_size_bytes;
    double floor_bits = 0.0;  // 8 × compressed size of the empty input
};

// zlib deflate at the given level. 32 KiB window: blind to redundancy at
// longer range, kept for small corpora and comparison runs.
CompressorHandle make_deflate_compressor(int level = 9);

// liblzma (xz container) at the given preset; multi-MiB dictionary, so
// duplicated content detects across file-sized distances. Default adapter.
CompressorHandle make_xz_compressor(std::uint32_t preset = 6);

// Ordered list of labelled byte strings. Labels are unique; canonical order of
// any string set is lexicographic by label.
class StringCorpus {
public:
    StringCorpus() = default;

    void add(std::string label, std::vector<std::byte> bytes);
    static StringCorpus from_files(std::span<const std::string> paths);  // label = path

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::byte>& bytes(std::string_view label) const;
    bool contains(std::string_view label) const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::byte>> strings_;
};

// The additive constant of algorithmic information statements, surfaced as an
// explicit budget in bits.
struct SlackBudget {
    double slack_bits = 0.0;

    // 4096 bits plus 128 bits of framing overhead per string.
    static SlackBudget default_for(std::size_t n_strings);
};

// K-estimate of a string set: compressed length in bits of the self-delimiting
// concatenation (8-byte little-endian length prefix per string) in canonical
// label order. S must be non-empty.
double k_estimate_bits(const CompressorHandle& comp, const StringCorpus& corpus,
                       std::span<const std::string> labels);

// I(A:B|C) ≐ K(A∪C) + K(B∪C) − K(A∪B∪C) − K(C), with K(∅) := 0. Label sets
// must be pairwise disjoint. May be slightly negative within the slack.
double algo_cmi_bits(const CompressorHandle& comp, const StringCorpus& corpus,
                     std::span<const std::string> a, std::span<const std::string> b,
                     std::span<const std::string> c);

// InfoMeasure over the corpus labels, backed by the compressor. Satisfies the
// axioms only up to the declared slack.
class AlgoMeasure final : public InfoMeasure {
public:
    AlgoMeasure(CompressorHandle comp, StringCorpus corpus);

    const StringCorpus& corpus() const { return corpus_; }
    const CompressorHandle& compressor() const { return comp_; }

protected:
    double evaluate(const ElementSubset& a, const ElementSubset& b,
                    const ElementSubset& c) const override;

private:
    CompressorHandle comp_;
    StringCorpus corpus_;
};

struct StringInferenceReport {
    std::string compressor;
    int c = 0;
    double criterion_bits = 0.0;  // (1/c)·Σ K(s_i) − K(s_1..s_n)
    double slack_bits = 0.0;
    bool concluded = false;       // criterion > slack
    std::vector<double> per_string_k_bits;
    double joint_k_bits = 0.0;
};

// String version of the common-ancestor inference: a criterion above the slack
// budget asserts a common ancestor of at least c+1 strings in any DAG-model.
StringInferenceReport infer_string_ancestors(const CompressorHandle& comp,
                                             const StringCorpus& corpus, int c, SlackBudget slack);

}  // namespace cainfer
