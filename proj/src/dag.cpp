#include "cainfer/dag.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>

namespace cainfer {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::string render_node_set(const Dag& dag, const IndexSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ",";
        out += dag.name(s[k]);
    }
    return out + "}";
}

// Maps dag nodes into the measure's ground set by name (injective; the ground
// set may carry extra elements such as an external reference Y).
std::vector<std::size_t> node_to_ground(const Dag& dag, const InfoMeasure& measure) {
    std::vector<std::size_t> map(dag.node_count());
    for (std::size_t i = 0; i < dag.node_count(); ++i) {
        map[i] = measure.ground()->index_of(dag.name(i));
    }
    return map;
}

ElementSubset to_subset(const InfoMeasure& measure, const std::vector<std::size_t>& map,
                        const IndexSet& nodes) {
    IndexSet members;
    members.reserve(nodes.size());
    for (std::size_t i : nodes) members.push_back(map[i]);
    return ElementSubset(measure.ground(), make_index_set(std::move(members)));
}

}  // namespace

Dag::Dag(std::vector<std::string> nodes,
         const std::vector<std::pair<std::string, std::string>>& edges)
    : nodes_(std::move(nodes)) {
    std::vector<std::pair<std::size_t, std::size_t>> idx_edges;
    idx_edges.reserve(edges.size());
    // index_of needs the node table in place first.
    parents_.assign(nodes_.size(), {});
    children_.assign(nodes_.size(), {});
    for (const auto& [p, c] : edges) {
        idx_edges.emplace_back(index_of(p), index_of(c));
    }
    finish_construction(idx_edges);
}

Dag::Dag(std::vector<std::string> nodes, std::span<const std::pair<std::size_t, std::size_t>> edges)
    : nodes_(std::move(nodes)) {
    parents_.assign(nodes_.size(), {});
    children_.assign(nodes_.size(), {});
    finish_construction(edges);
}

void Dag::finish_construction(std::span<const std::pair<std::size_t, std::size_t>> edges) {
    std::set<std::string> seen;
    for (const auto& n : nodes_) {
        require(!n.empty(), "Dag: empty node name");
        require(seen.insert(n).second, "Dag: duplicate node '" + n + "'");
    }
    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    for (const auto& [p, c] : edges) {
        require(p < nodes_.size() && c < nodes_.size(), "Dag: edge endpoint out of range");
        require(p != c, "Dag: self-loop at '" + nodes_[p] + "'");
        require(edge_set.insert({p, c}).second,
                "Dag: duplicate edge " + nodes_[p] + " -> " + nodes_[c]);
    }
    for (const auto& [p, c] : edge_set) {
        parents_[c].push_back(p);
        children_[p].push_back(c);
    }
    edge_count_ = edge_set.size();
    topological_order();  // throws on cycles
}

std::size_t Dag::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] == name) return i;
    }
    throw std::invalid_argument("Dag: unknown node '" + std::string(name) + "'");
}

bool Dag::has_edge(std::size_t parent, std::size_t child) const {
    return set_contains(children_.at(parent), child);
}

IndexSet Dag::descendants(std::size_t i) const {
    require(i < nodes_.size(), "Dag: node index out of range");
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{i};
    IndexSet out;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : children_[u]) {
            if (!seen[v]) {
                seen[v] = true;
                out.push_back(v);
                stack.push_back(v);
            }
        }
    }
    return make_index_set(std::move(out));
}

std::vector<std::size_t> Dag::topological_order() const {
    std::vector<std::size_t> in_degree(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) in_degree[i] = parents_[i].size();
    std::vector<std::size_t> order;
    order.reserve(nodes_.size());
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (in_degree[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
        const std::size_t u = ready.front();
        ready.pop_front();
        order.push_back(u);
        for (std::size_t v : children_[u]) {
            if (--in_degree[v] == 0) ready.push_back(v);
        }
    }
    require(order.size() == nodes_.size(), "Dag: graph contains a cycle");
    return order;
}

IndexSet ancestral_closure(const Dag& dag, const IndexSet& s) {
    for (std::size_t i : s) {
        require(i < dag.node_count(), "ancestral_closure: unknown node index");
    }
    std::vector<bool> seen(dag.node_count(), false);
    std::vector<std::size_t> stack;
    for (std::size_t i : s) {
        if (!seen[i]) {
            seen[i] = true;
            stack.push_back(i);
        }
    }
    IndexSet out(s.begin(), s.end());
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t p : dag.parents(u)) {
            if (!seen[p]) {
                seen[p] = true;
                out.push_back(p);
                stack.push_back(p);
            }
        }
    }
    return make_index_set(std::move(out));
}

bool d_separated(const Dag& dag, const IndexSet& a, const IndexSet& b, const IndexSet& c) {
    require(set_disjoint(a, b) && set_disjoint(a, c) && set_disjoint(b, c),
            "d_separated: node sets must be pairwise disjoint");
    for (std::size_t i : a) require(i < dag.node_count(), "d_separated: node out of range");
    for (std::size_t i : b) require(i < dag.node_count(), "d_separated: node out of range");
    for (std::size_t i : c) require(i < dag.node_count(), "d_separated: node out of range");
    if (a.empty() || b.empty()) return true;

    const std::size_t n = dag.node_count();
    // Nodes that are in C or have a descendant in C (colliders open there).
    std::vector<bool> in_c(n, false);
    for (std::size_t i : c) in_c[i] = true;
    std::vector<bool> anc_of_c = in_c;
    {
        std::vector<std::size_t> stack(c.begin(), c.end());
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t p : dag.parents(u)) {
                if (!anc_of_c[p]) {
                    anc_of_c[p] = true;
                    stack.push_back(p);
                }
            }
        }
    }

    std::vector<bool> in_b(n, false);
    for (std::size_t i : b) in_b[i] = true;

    // Reachability over (node, arrival direction) states along active trails.
    // kUp: arrived from a child (or source); kDown: arrived from a parent.
    enum Dir : std::size_t { kUp = 0, kDown = 1 };
    std::vector<bool> visited(2 * n, false);
    std::vector<std::pair<std::size_t, Dir>> stack;
    for (std::size_t s : a) {
        stack.push_back({s, kUp});
        visited[2 * s + kUp] = true;
    }
    while (!stack.empty()) {
        const auto [u, dir] = stack.back();
        stack.pop_back();
        if (in_b[u]) return false;

        auto push = [&](std::size_t v, Dir d) {
            if (!visited[2 * v + d]) {
                visited[2 * v + d] = true;
                stack.push_back({v, d});
            }
        };
        if (dir == kUp) {
            // Trail continues through u as a chain/fork; blocked when u ∈ C.
            if (!in_c[u]) {
                for (std::size_t p : dag.parents(u)) push(p, kUp);
                for (std::size_t ch : dag.children(u)) push(ch, kDown);
            }
        } else {
            // Arrived parent→u. Chain →u→ is open unless u ∈ C; collider →u←
            // is open iff u or one of its descendants is in C.
            if (!in_c[u]) {
                for (std::size_t ch : dag.children(u)) push(ch, kDown);
            }
            if (anc_of_c[u]) {
                for (std::size_t p : dag.parents(u)) push(p, kUp);
            }
        }
    }
    return true;
}

namespace {

// DFS over simple undirected paths from `u` toward B, evaluating the two
// blocking rules literally on every completed path.
bool active_path_exists(const Dag& dag, std::vector<std::size_t>& path, std::vector<bool>& on_path,
                        const std::vector<bool>& in_b, const std::vector<bool>& in_c,
                        const std::vector<bool>& anc_of_c) {
    const std::size_t u = path.back();
    if (in_b[u]) {
        // Evaluate blocking on interior nodes of the completed path.
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            const std::size_t prev = path[k - 1];
            const std::size_t mid = path[k];
            const std::size_t next = path[k + 1];
            const bool collider = dag.has_edge(prev, mid) && dag.has_edge(next, mid);
            if (collider) {
                if (!anc_of_c[mid]) return false;  // rule (2)
            } else {
                if (in_c[mid]) return false;  // rule (1)
            }
        }
        return true;
    }
    auto neighbors = set_union(dag.parents(u), dag.children(u));
    for (std::size_t v : neighbors) {
        if (on_path[v]) continue;
        path.push_back(v);
        on_path[v] = true;
        if (active_path_exists(dag, path, on_path, in_b, in_c, anc_of_c)) return true;
        on_path[v] = false;
        path.pop_back();
    }
    return false;
}

}  // namespace

bool d_separated_by_paths(const Dag& dag, const IndexSet& a, const IndexSet& b, const IndexSet& c) {
    require(set_disjoint(a, b) && set_disjoint(a, c) && set_disjoint(b, c),
            "d_separated_by_paths: node sets must be pairwise disjoint");
    const std::size_t n = dag.node_count();
    std::vector<bool> in_b(n, false), in_c(n, false);
    for (std::size_t i : b) in_b[i] = true;
    for (std::size_t i : c) in_c[i] = true;
    std::vector<bool> anc_of_c = in_c;
    std::vector<std::size_t> stack(c.begin(), c.end());
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t p : dag.parents(u)) {
            if (!anc_of_c[p]) {
                anc_of_c[p] = true;
                stack.push_back(p);
            }
        }
    }
    for (std::size_t s : a) {
        std::vector<std::size_t> path{s};
        std::vector<bool> on_path(n, false);
        on_path[s] = true;
        if (active_path_exists(dag, path, on_path, in_b, in_c, anc_of_c)) return false;
    }
    return true;
}

ObservationGroups::ObservationGroups(const Dag& dag, std::vector<IndexSet> groups, IndexSet y_nodes)
    : dag_(&dag), groups_(std::move(groups)), y_nodes_(make_index_set(std::move(y_nodes))) {
    require(!groups_.empty(), "ObservationGroups: no groups");
    for (auto& g : groups_) {
        g = make_index_set(std::move(g));
        require(!g.empty(), "ObservationGroups: empty group");
        for (std::size_t i : g) {
            require(i < dag.node_count(), "ObservationGroups: group node out of range");
        }
        require(set_disjoint(g, y_nodes_), "ObservationGroups: Y overlaps an observed group");
    }
    for (std::size_t i : y_nodes_) {
        require(i < dag.node_count(), "ObservationGroups: Y node out of range");
    }
}

IndexSet ObservationGroups::group_union() const {
    IndexSet out;
    for (const auto& g : groups_) out = set_union(out, g);
    return out;
}

MarkovCheckResult local_markov_holds(const Dag& dag, const InfoMeasure& measure, double tol_bits) {
    const auto map = node_to_ground(dag, measure);
    MarkovCheckResult result;
    IndexSet all(dag.node_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    for (std::size_t i = 0; i < dag.node_count(); ++i) {
        const IndexSet& pa = dag.parents(i);
        IndexSet excluded = set_union(dag.descendants(i), pa);
        excluded.push_back(i);
        const IndexSet nd = set_difference(all, make_index_set(std::move(excluded)));
        if (nd.empty()) continue;
        const double value = measure.cmi(to_subset(measure, map, {i}), to_subset(measure, map, nd),
                                         to_subset(measure, map, pa));
        if (value > tol_bits) {
            result.violations.push_back({"node " + dag.name(i), value});
        }
    }
    result.holds = result.violations.empty();
    return result;
}

MarkovCheckResult global_markov_holds(const Dag& dag, const InfoMeasure& measure, double tol_bits) {
    const std::size_t n = dag.node_count();
    require(n <= kMaxGlobalMarkovNodes,
            "global_markov_holds: exhaustive triple enumeration guarded to <= " +
                std::to_string(kMaxGlobalMarkovNodes) + " nodes");
    const auto map = node_to_ground(dag, measure);
    MarkovCheckResult result;

    // Assign each node to one of {A, B, C, none}; lexicographic in the
    // base-4 digit string, A/B deduplicated by requiring min(A) < min(B).
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
        IndexSet a, b, c;
        std::size_t x = code;
        for (std::size_t i = 0; i < n; ++i, x >>= 2) {
            switch (x & 3) {
                case 1: a.push_back(i); break;
                case 2: b.push_back(i); break;
                case 3: c.push_back(i); break;
                default: break;
            }
        }
        if (a.empty() || b.empty() || a.front() > b.front()) continue;
        if (!d_separated(dag, a, b, c)) continue;
        const double value = measure.cmi(to_subset(measure, map, a), to_subset(measure, map, b),
                                         to_subset(measure, map, c));
        if (value > tol_bits) {
            result.violations.push_back({"A=" + render_node_set(dag, a) +
                                             " B=" + render_node_set(dag, b) +
                                             " C=" + render_node_set(dag, c),
                                         value});
        }
    }
    result.holds = result.violations.empty();
    return result;
}

MarkovCheckResult validate_dag_model(const Dag& dag, const InfoMeasure& measure,
                                     const ObservationGroups& obs,
                                     std::span<const double> observed_values_by_mask,
                                     double tol_bits) {
    const std::size_t n = obs.group_count();
    require(n <= 20, "validate_dag_model: too many groups");
    require(observed_values_by_mask.size() == (std::size_t{1} << n),
            "validate_dag_model: observed_values must cover every subset of group indices");
    MarkovCheckResult result;

    // (i) groups are node subsets: enforced by ObservationGroups construction;
    // re-checked here against this dag.
    for (const auto& g : obs.groups()) {
        for (std::size_t i : g) {
            if (i >= dag.node_count()) {
                result.violations.push_back({"condition (i): group node out of range", 0.0});
            }
        }
    }

    // (ii) local Markov.
    MarkovCheckResult local = local_markov_holds(dag, measure, tol_bits);
    for (auto& v : local.violations) {
        result.violations.push_back({"condition (ii): " + v.context, v.cmi_bits});
    }

    // (iii) I(Y:O_S) matches the observed values. With an external Y (no Y
    // nodes) the graph-side value is unavailable; the supplied values are
    // checked for internal consistency instead (normalization, monotonicity).
    const auto map = node_to_ground(dag, measure);
    const bool y_internal = !obs.y_nodes().empty();
    if (y_internal) {
        const ElementSubset y = to_subset(measure, map, obs.y_nodes());
        for (std::size_t mask = 0; mask < observed_values_by_mask.size(); ++mask) {
            IndexSet nodes;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::size_t{1} << i)) nodes = set_union(nodes, obs.groups()[i]);
            }
            const double graph_value =
                mask == 0 ? 0.0
                          : measure.cmi(y, to_subset(measure, map, nodes),
                                        ElementSubset::empty(measure.ground()));
            const double delta = std::abs(graph_value - observed_values_by_mask[mask]);
            if (delta > tol_bits) {
                result.violations.push_back(
                    {"condition (iii): I(Y:O_S) mismatch at subset mask " + std::to_string(mask),
                     delta});
            }
        }
    } else {
        if (std::abs(observed_values_by_mask[0]) > tol_bits) {
            result.violations.push_back({"condition (iii): values(empty) must be 0",
                                         std::abs(observed_values_by_mask[0])});
        }
        for (std::size_t mask = 0; mask < observed_values_by_mask.size(); ++mask) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t super = mask | (std::size_t{1} << i);
                if (super == mask) continue;
                const double drop = observed_values_by_mask[mask] - observed_values_by_mask[super];
                if (drop > tol_bits) {
                    result.violations.push_back(
                        {"condition (iii): values not monotone at subset mask " +
                             std::to_string(mask),
                         drop});
                }
            }
        }
    }

    // (iv) Y is a leaf. Not applicable for an external Y.
    if (y_internal) {
        for (std::size_t i : obs.y_nodes()) {
            if (!dag.children(i).empty()) {
                result.violations.push_back(
                    {"condition (iv): Y node " + dag.name(i) + " has outgoing edges",
                     static_cast<double>(dag.children(i).size())});
            }
        }
    }

    result.holds = result.violations.empty();
    return result;
}

int ancestor_multiplicity(const Dag& dag, const ObservationGroups& obs, std::size_t group_index) {
    require(group_index < obs.group_count(), "ancestor_multiplicity: group index out of range");
    std::vector<IndexSet> closures;
    closures.reserve(obs.group_count());
    for (const auto& g : obs.groups()) closures.push_back(ancestral_closure(dag, g));

    int best = 0;
    for (std::size_t v : closures[group_index]) {
        int count = 0;
        for (const auto& an : closures) {
            if (set_contains(an, v)) ++count;
        }
        best = std::max(best, count);
    }
    return best;
}

}  // namespace cainfer
