#include "cainfer/algo_info.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <lzma.h>
#include <zlib.h>

namespace cainfer {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::size_t deflate_size(std::span<const std::byte> input, int level) {
    uLongf out_size = compressBound(static_cast<uLong>(input.size()));
    std::vector<Bytef> out(out_size);
    const int rc = compress2(out.data(), &out_size, reinterpret_cast<const Bytef*>(input.data()),
                             static_cast<uLong>(input.size()), level);
    if (rc != Z_OK) throw std::runtime_error("deflate: compress2 failed with code " + std::to_string(rc));
    return static_cast<std::size_t>(out_size);
}

std::size_t xz_size(std::span<const std::byte> input, std::uint32_t preset) {
    std::size_t bound = lzma_stream_buffer_bound(input.size());
    std::vector<std::uint8_t> out(bound);
    std::size_t out_pos = 0;
    const lzma_ret rc = lzma_easy_buffer_encode(
        preset, LZMA_CHECK_CRC32, nullptr, reinterpret_cast<const std::uint8_t*>(input.data()),
        input.size(), out.data(), &out_pos, out.size());
    if (rc != LZMA_OK) throw std::runtime_error("xz: encode failed with code " + std::to_string(rc));
    return out_pos;
}

CompressorHandle finish_handle(std::string name,
                               std::function<std::size_t(std::span<const std::byte>)> fn) {
    CompressorHandle handle;
    handle.name = std::move(name);
    handle.floor_bits = 8.0 * static_cast<double>(fn(std::span<const std::byte>{}));
    handle.compressed_size_bytes = std::move(fn);
    return handle;
}

void append_frame(std::vector<std::byte>& out, const std::vector<std::byte>& s) {
    // Self-delimiting: 8-byte little-endian length prefix, then the raw bytes.
    std::uint64_t len = s.size();
    for (int k = 0; k < 8; ++k) {
        out.push_back(static_cast<std::byte>(len & 0xff));
        len >>= 8;
    }
    out.insert(out.end(), s.begin(), s.end());
}

}  // namespace

CompressorHandle make_deflate_compressor(int level) {
    require(level >= 1 && level <= 9, "deflate: level out of range [1, 9]");
    return finish_handle("deflate-" + std::to_string(level),
                         [level](std::span<const std::byte> in) { return deflate_size(in, level); });
}

CompressorHandle make_xz_compressor(std::uint32_t preset) {
    require(preset <= 9, "xz: preset out of range [0, 9]");
    return finish_handle("xz-" + std::to_string(preset),
                         [preset](std::span<const std::byte> in) { return xz_size(in, preset); });
}

void StringCorpus::add(std::string label, std::vector<std::byte> bytes) {
    require(!label.empty(), "StringCorpus: empty label");
    require(!contains(label), "StringCorpus: duplicate label '" + label + "'");
    labels_.push_back(std::move(label));
    strings_.push_back(std::move(bytes));
}

StringCorpus StringCorpus::from_files(std::span<const std::string> paths) {
    StringCorpus corpus;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("StringCorpus: cannot open '" + path + "'");
        std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        std::vector<std::byte> bytes(raw.size());
        std::transform(raw.begin(), raw.end(), bytes.begin(),
                       [](char ch) { return static_cast<std::byte>(ch); });
        corpus.add(path, std::move(bytes));
    }
    return corpus;
}

const std::vector<std::byte>& StringCorpus::bytes(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return strings_[i];
    }
    throw std::invalid_argument("StringCorpus: unknown label '" + std::string(label) + "'");
}

bool StringCorpus::contains(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

SlackBudget SlackBudget::default_for(std::size_t n_strings) {
    return {4096.0 + 128.0 * static_cast<double>(n_strings)};
}

double k_estimate_bits(const CompressorHandle& comp, const StringCorpus& corpus,
                       std::span<const std::string> labels) {
    require(!labels.empty(), "k_estimate: empty string set");
    std::vector<std::string> canonical(labels.begin(), labels.end());
    std::sort(canonical.begin(), canonical.end());
    canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
    require(canonical.size() == labels.size(), "k_estimate: duplicate labels in set");

    std::vector<std::byte> framed;
    for (const auto& label : canonical) {
        append_frame(framed, corpus.bytes(label));
    }
    return 8.0 * static_cast<double>(comp.compressed_size_bytes(framed));
}

namespace {

double k_maybe_empty(const CompressorHandle& comp, const StringCorpus& corpus,
                     const std::vector<std::string>& labels) {
    // K(∅) := 0; every identity in the four-term form is insensitive to this
    // constant, and it keeps I(A:∅) = 0 exact.
    if (labels.empty()) return 0.0;
    return k_estimate_bits(comp, corpus, labels);
}

std::vector<std::string> label_union(std::span<const std::string> a, std::span<const std::string> b) {
    std::vector<std::string> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

double algo_cmi_bits(const CompressorHandle& comp, const StringCorpus& corpus,
                     std::span<const std::string> a, std::span<const std::string> b,
                     std::span<const std::string> c) {
    auto disjoint = [](std::span<const std::string> x, std::span<const std::string> y) {
        for (const auto& lx : x) {
            for (const auto& ly : y) {
                if (lx == ly) return false;
            }
        }
        return true;
    };
    require(disjoint(a, b) && disjoint(a, c) && disjoint(b, c),
            "algo_cmi: label sets must be pairwise disjoint");

    const std::vector<std::string> a_c = label_union(a, c);
    const std::vector<std::string> b_c = label_union(b, c);
    const std::vector<std::string> abc = label_union(label_union(a, b), c);
    const std::vector<std::string> just_c(c.begin(), c.end());
    return k_maybe_empty(comp, corpus, a_c) + k_maybe_empty(comp, corpus, b_c) -
           k_maybe_empty(comp, corpus, abc) - k_maybe_empty(comp, corpus, just_c);
}

AlgoMeasure::AlgoMeasure(CompressorHandle comp, StringCorpus corpus)
    : InfoMeasure(make_ground_set(corpus.labels())), comp_(std::move(comp)),
      corpus_(std::move(corpus)) {}

double AlgoMeasure::evaluate(const ElementSubset& a, const ElementSubset& b,
                             const ElementSubset& c) const {
    auto to_labels = [&](const ElementSubset& s) {
        std::vector<std::string> labels;
        labels.reserve(s.size());
        for (std::size_t i : s.members()) labels.push_back(ground()->name(i));
        return labels;
    };
    const auto la = to_labels(a);
    const auto lb = to_labels(b);
    const auto lc = to_labels(c);
    return k_maybe_empty(comp_, corpus_, label_union(la, lc)) +
           k_maybe_empty(comp_, corpus_, label_union(lb, lc)) -
           k_maybe_empty(comp_, corpus_, label_union(label_union(la, lb), lc)) -
           k_maybe_empty(comp_, corpus_, lc);
}

StringInferenceReport infer_string_ancestors(const CompressorHandle& comp,
                                             const StringCorpus& corpus, int c,
                                             SlackBudget slack) {
    const int n = static_cast<int>(corpus.size());
    require(n >= 2, "infer_string_ancestors: need at least two strings");
    require(c >= 1 && c <= n - 1, "infer_string_ancestors: c out of range [1, n-1]");
    require(slack.slack_bits >= 0, "infer_string_ancestors: negative slack");

    StringInferenceReport report;
    report.compressor = comp.name;
    report.c = c;
    report.slack_bits = slack.slack_bits;

    double sum = 0.0;
    for (const auto& label : corpus.labels()) {
        const double k = k_estimate_bits(comp, corpus, std::span(&label, 1));
        report.per_string_k_bits.push_back(k);
        sum += k;
    }
    report.joint_k_bits = k_estimate_bits(comp, corpus, corpus.labels());
    report.criterion_bits = sum / c - report.joint_k_bits;
    report.concluded = report.criterion_bits > slack.slack_bits;
    return report;
}

}  // namespace cainfer
