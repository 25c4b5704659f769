#include "cainfer/measure.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

namespace cainfer {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::string render_triple(const ElementSubset& a, const ElementSubset& b, const ElementSubset& c) {
    return "A=" + a.to_string() + " B=" + b.to_string() + " C=" + c.to_string();
}

std::string render_quad(const ElementSubset& a, const ElementSubset& b, const ElementSubset& c,
                        const ElementSubset& d) {
    return render_triple(a, b, c) + " D=" + d.to_string();
}

class AuditCollector {
public:
    explicit AuditCollector(double tol_bits) : tol_(tol_bits) {}

    void count() { ++report_.checked_triples; }

    // Flags `excess` (amount beyond the allowed bound) when positive.
    void check(const std::string& axiom, double excess, const std::string& arguments) {
        count();
        if (excess > tol_) {
            report_.violations.push_back({axiom, arguments, excess});
        }
    }

    AxiomAuditReport take() { return std::move(report_); }

private:
    double tol_;
    AxiomAuditReport report_;
};

// All disjoint quadruple masks over n elements, lexicographic in (a, b, c, d).
// visit(a_mask, b_mask, c_mask, d_mask) over every assignment of elements to
// one of the four argument slots or none.
template <typename Visit>
void for_each_disjoint_quad(std::size_t n, Visit&& visit) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t a = 0; a <= full; ++a) {
        const std::uint64_t rest_a = full & ~a;
        for (std::uint64_t b = rest_a;; b = (b - 1) & rest_a) {
            const std::uint64_t rest_b = rest_a & ~b;
            for (std::uint64_t c = rest_b;; c = (c - 1) & rest_b) {
                const std::uint64_t rest_c = rest_b & ~c;
                for (std::uint64_t d = rest_c;; d = (d - 1) & rest_c) {
                    visit(a, b, c, d);
                    if (d == 0) break;
                }
                if (c == 0) break;
            }
            if (b == 0) break;
        }
    }
}

std::vector<std::array<ElementSubset, 4>> exhaustive_tuples(const InfoMeasure& measure) {
    const auto& ground = measure.ground();
    const std::size_t n = ground->size();
    if (n > kMaxExhaustiveAuditElements) {
        throw std::invalid_argument(
            "audit: exhaustive enumeration requested over " + std::to_string(n) +
            " elements (guard: " + std::to_string(kMaxExhaustiveAuditElements) +
            "); supply a sampled tuple family instead");
    }
    // Subset-mask enumeration is deterministic but not lexicographic in the
    // (a,b,c,d) tuple; collect and sort so reports are reproducible and ordered.
    std::vector<std::array<std::uint64_t, 4>> masks;
    for_each_disjoint_quad(n, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
        masks.push_back({a, b, c, d});
    });
    std::sort(masks.begin(), masks.end());
    std::vector<std::array<ElementSubset, 4>> tuples;
    tuples.reserve(masks.size());
    for (const auto& m : masks) {
        tuples.push_back({ElementSubset::of_mask(ground, m[0]), ElementSubset::of_mask(ground, m[1]),
                          ElementSubset::of_mask(ground, m[2]), ElementSubset::of_mask(ground, m[3])});
    }
    return tuples;
}

}  // namespace

GroundSet::GroundSet(std::vector<std::string> elements) : elements_(std::move(elements)) {
    std::set<std::string> seen;
    for (const auto& e : elements_) {
        require(!e.empty(), "GroundSet: element names must be non-empty");
        require(seen.insert(e).second, "GroundSet: duplicate element name '" + e + "'");
    }
}

std::size_t GroundSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] == name) return i;
    }
    throw std::invalid_argument("GroundSet: unknown element '" + std::string(name) + "'");
}

GroundSetPtr make_ground_set(std::vector<std::string> elements) {
    return std::make_shared<const GroundSet>(std::move(elements));
}

ElementSubset::ElementSubset(GroundSetPtr ground, IndexSet members)
    : ground_(std::move(ground)), members_(std::move(members)) {
    require(ground_ != nullptr, "ElementSubset: null ground set");
    if (!is_sorted_unique(members_)) members_ = make_index_set(std::move(members_));
    for (std::size_t i : members_) {
        require(i < ground_->size(), "ElementSubset: member index out of range");
    }
}

ElementSubset ElementSubset::empty(GroundSetPtr ground) {
    return ElementSubset(std::move(ground), {});
}

ElementSubset ElementSubset::of_names(const GroundSetPtr& ground,
                                      std::span<const std::string> names) {
    IndexSet members;
    members.reserve(names.size());
    for (const auto& name : names) members.push_back(ground->index_of(name));
    return ElementSubset(ground, make_index_set(std::move(members)));
}

ElementSubset ElementSubset::of_mask(const GroundSetPtr& ground, std::uint64_t mask) {
    return ElementSubset(ground, indices_of_mask(mask));
}

bool ElementSubset::same_ground(const ElementSubset& other) const {
    return ground_ == other.ground_ || *ground_ == *other.ground_;
}

ElementSubset ElementSubset::union_with(const ElementSubset& other) const {
    require(same_ground(other), "ElementSubset: union across different ground sets");
    return ElementSubset(ground_, set_union(members_, other.members_));
}

std::string ElementSubset::to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (k) out += ",";
        out += ground_->name(members_[k]);
    }
    out += "}";
    return out;
}

InfoMeasure::InfoMeasure(GroundSetPtr ground) : ground_(std::move(ground)) {
    require(ground_ != nullptr, "InfoMeasure: null ground set");
}

double InfoMeasure::cmi(const ElementSubset& a, const ElementSubset& b,
                        const ElementSubset& c) const {
    require(a.same_ground(b) && a.same_ground(c), "cmi: arguments on different ground sets");
    require(a.ground() == ground_ || *a.ground() == *ground_,
            "cmi: arguments belong to a foreign ground set");
    require(a.disjoint_with(b) && a.disjoint_with(c) && b.disjoint_with(c),
            "cmi: arguments must be pairwise disjoint (" + render_triple(a, b, c) + ")");
    return evaluate(a, b, c);
}

double InfoMeasure::cmi(const ElementSubset& a, const ElementSubset& b) const {
    return cmi(a, b, ElementSubset::empty(ground_));
}

double cmi(const InfoMeasure& measure, const ElementSubset& a, const ElementSubset& b,
           const ElementSubset& c) {
    return measure.cmi(a, b, c);
}

bool is_independent(const InfoMeasure& measure, const ElementSubset& a, const ElementSubset& b,
                    const ElementSubset& c, double tol_bits) {
    if (tol_bits < 0) throw std::invalid_argument("is_independent: negative tolerance");
    return std::abs(measure.cmi(a, b, c)) <= tol_bits;
}

double AxiomAuditReport::worst_violation_bits() const {
    double worst = 0.0;
    for (const auto& v : violations) worst = std::max(worst, v.magnitude_bits);
    return worst;
}

AxiomAuditReport audit_axioms(const InfoMeasure& measure, double tol_bits) {
    const auto tuples = exhaustive_tuples(measure);
    return audit_axioms(measure, tol_bits, tuples);
}

AxiomAuditReport audit_axioms(const InfoMeasure& measure, double tol_bits,
                              std::span<const std::array<ElementSubset, 4>> tuples) {
    AuditCollector out(tol_bits);
    for (const auto& [a, b, c, d] : tuples) {
        // Normalization I(A:∅|D) = 0 (empty B slot instances).
        if (b.is_empty() && c.is_empty()) {
            out.check("normalization", std::abs(measure.cmi(a, b, d)), render_quad(a, b, c, d));
            continue;
        }
        if (b.is_empty()) continue;  // mirror of the c-empty case below
        if (c.is_empty()) {
            // Non-negativity and symmetry on the triple (A, B | D).
            if (!a.is_empty()) {
                const double ab = measure.cmi(a, b, d);
                const double ba = measure.cmi(b, a, d);
                out.check("non-negativity", -ab, render_triple(a, b, d));
                out.check("symmetry", std::abs(ab - ba), render_triple(a, b, d));
            }
            continue;
        }
        // Chain rule I(A:B∪C|D) = I(A:B|C∪D) + I(A:C|D) on full quadruples.
        if (a.is_empty()) continue;
        const double lhs = measure.cmi(a, b.union_with(c), d);
        const double rhs = measure.cmi(a, b, c.union_with(d)) + measure.cmi(a, c, d);
        out.check("chain-rule", std::abs(lhs - rhs), render_quad(a, b, c, d));
    }
    return out.take();
}

AxiomAuditReport audit_derived(const InfoMeasure& measure, double tol_bits) {
    const auto tuples = exhaustive_tuples(measure);
    return audit_derived(measure, tol_bits, tuples);
}

AxiomAuditReport audit_derived(const InfoMeasure& measure, double tol_bits,
                               std::span<const std::array<ElementSubset, 4>> tuples) {
    AuditCollector out(tol_bits);
    const ElementSubset none = ElementSubset::empty(measure.ground());
    for (const auto& [a, b, c, y] : tuples) {
        if (a.is_empty() || c.is_empty()) continue;

        // Data-processing and conditioning laws, hypothesis A ⫫ C | B.
        if (y.is_empty() && measure.cmi(a, c, b) <= tol_bits) {
            const double iab = measure.cmi(a, b, none);
            const double iac = measure.cmi(a, c, none);
            out.check("data-processing", iac - iab, render_triple(a, b, c));
        }
        if (!y.is_empty() && measure.cmi(a, c, b) <= tol_bits) {
            const double base = measure.cmi(y, a, b);
            const double cond = measure.cmi(y, a, b.union_with(c));
            out.check("conditioning-increase", base - cond, render_quad(a, b, c, y));
            // The difference is I(A:C|B,Y) exactly (chain-rule identity; holds
            // with or without the hypothesis, checked here where it is cheap).
            const double diff = measure.cmi(a, c, b.union_with(y));
            out.check("conditioning-difference", std::abs((cond - base) - diff) - 2 * tol_bits,
                      render_quad(a, b, c, y));
        }

        // Semi-graphoid implications on (X,Y,Z,W) = (a, c, b, y).
        // Conclusions follow from the axioms only up to small multiples of tol
        // (contraction sums two hypotheses), so they are tested at that bound.
        const ElementSubset& sx = a;
        const ElementSubset& sy = c;
        const ElementSubset& sz = b;
        const ElementSubset& sw = y;
        if (sw.is_empty()) {
            if (measure.cmi(sx, sy, sz) <= tol_bits) {
                out.check("semi-graphoid-symmetry", measure.cmi(sy, sx, sz) - tol_bits,
                          render_triple(sx, sy, sz));
            }
            continue;
        }
        if (measure.cmi(sx, sy.union_with(sw), sz) <= tol_bits) {
            out.check("semi-graphoid-decomposition",
                      std::max(measure.cmi(sx, sy, sz), measure.cmi(sx, sw, sz)) - 2 * tol_bits,
                      render_quad(sx, sy, sz, sw));
            out.check("semi-graphoid-weak-union", measure.cmi(sx, sy, sz.union_with(sw)) - 2 * tol_bits,
                      render_quad(sx, sy, sz, sw));
        }
        if (measure.cmi(sx, sw, sz.union_with(sy)) <= tol_bits &&
            measure.cmi(sx, sy, sz) <= tol_bits) {
            out.check("semi-graphoid-contraction",
                      measure.cmi(sx, sy.union_with(sw), sz) - 3 * tol_bits,
                      render_quad(sx, sy, sz, sw));
        }
    }
    return out.take();
}

}  // namespace cainfer
