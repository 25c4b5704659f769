#include "cainfer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <atomic>
#include <thread>
#include <utility>

#include "cainfer/discrete_measure.hpp"
#include "cainfer/inference.hpp"
#include "cainfer/rng.hpp"

namespace cainfer {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::size_t parent_config_count(const BayesNet& net, const Cpt& cpt) {
    std::size_t n = 1;
    for (std::size_t p : cpt.parents) n *= net.cardinalities[p];
    return n;
}

}  // namespace

BayesNet random_bayes_net(std::size_t n_nodes, double edge_prob, std::uint32_t max_card,
                          std::uint64_t seed) {
    require(n_nodes >= 1, "random_bayes_net: need at least one node");
    require(max_card >= 2, "random_bayes_net: max_card must be >= 2");
    require(edge_prob >= 0.0 && edge_prob <= 1.0, "random_bayes_net: edge_prob out of [0, 1]");

    Rng rng(seed);
    std::vector<std::size_t> perm(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) perm[i] = i;
    rng.shuffle(perm);

    std::vector<std::uint32_t> cards(n_nodes);
    std::size_t table = 1;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        cards[i] = 2 + static_cast<std::uint32_t>(rng.next_below(max_card - 1));
        require(table <= JointDistribution::kMaxTableSize / cards[i],
                "random_bayes_net: joint table exceeds the size guard");
        table *= cards[i];
    }

    // Edges i→j for i before j in the permutation order.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n_nodes; ++a) {
        for (std::size_t b = a + 1; b < n_nodes; ++b) {
            if (rng.next_bool(edge_prob)) edges.emplace_back(perm[a], perm[b]);
        }
    }
    std::vector<std::string> names(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) names[i] = "X" + std::to_string(i + 1);
    BayesNet net{Dag(std::move(names), std::span<const std::pair<std::size_t, std::size_t>>(edges)),
                 std::move(cards), {}};

    net.cpts.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        Cpt& cpt = net.cpts[i];
        cpt.node = i;
        cpt.parents = net.dag.parents(i);
        const std::size_t rows = parent_config_count(net, cpt);
        cpt.table.reserve(rows * net.cardinalities[i]);
        for (std::size_t r = 0; r < rows; ++r) {
            const std::vector<double> row = rng.next_simplex(net.cardinalities[i]);
            cpt.table.insert(cpt.table.end(), row.begin(), row.end());
        }
    }
    return net;
}

JointDistribution exact_joint(const BayesNet& net) {
    const std::size_t n = net.dag.node_count();
    require(net.cpts.size() == n && net.cardinalities.size() == n,
            "exact_joint: net is missing CPTs or cardinalities");
    std::size_t size = 1;
    for (std::uint32_t card : net.cardinalities) {
        require(card >= 1 && size <= JointDistribution::kMaxTableSize / card,
                "exact_joint: joint table exceeds the size guard");
        size *= card;
    }
    for (std::size_t i = 0; i < n; ++i) {
        require(net.cpts[i].node == i, "exact_joint: CPT order must match node order");
        require(net.cpts[i].parents == net.dag.parents(i),
                "exact_joint: CPT parents must match the dag edges");
        require(net.cpts[i].table.size() ==
                    parent_config_count(net, net.cpts[i]) * net.cardinalities[i],
                "exact_joint: CPT table size mismatch");
    }

    std::vector<VariableDecl> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = {net.dag.name(i), net.cardinalities[i]};

    std::vector<double> probs(size, 0.0);
    std::vector<std::uint32_t> tuple(n, 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
        double p = 1.0;
        for (std::size_t i = 0; i < n && p > 0.0; ++i) {
            const Cpt& cpt = net.cpts[i];
            std::size_t row = 0;
            for (std::size_t parent : cpt.parents) {
                row = row * net.cardinalities[parent] + tuple[parent];
            }
            p *= cpt.table[row * net.cardinalities[i] + tuple[i]];
        }
        probs[flat] = p;
        for (std::size_t i = n; i-- > 0;) {
            if (++tuple[i] < net.cardinalities[i]) break;
            tuple[i] = 0;
        }
    }
    return JointDistribution(std::move(vars), std::move(probs));
}

BayesNet extend_with_function_node(const BayesNet& net, std::string name, const IndexSet& parents,
                                   std::span<const std::uint32_t> value_map,
                                   std::uint32_t cardinality) {
    require(cardinality >= 1, "extend_with_function_node: cardinality must be >= 1");
    require(is_sorted_unique(parents), "extend_with_function_node: parents must be sorted unique");
    std::size_t configs = 1;
    for (std::size_t p : parents) {
        require(p < net.dag.node_count(), "extend_with_function_node: parent out of range");
        configs *= net.cardinalities[p];
    }
    require(value_map.size() == configs, "extend_with_function_node: value_map size mismatch");
    for (std::uint32_t v : value_map) {
        require(v < cardinality, "extend_with_function_node: mapped value out of range");
    }

    const std::size_t n = net.dag.node_count();
    std::vector<std::string> names = net.dag.nodes();
    names.push_back(std::move(name));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t ch : net.dag.children(i)) edges.emplace_back(i, ch);
    }
    for (std::size_t p : parents) edges.emplace_back(p, n);

    BayesNet out{Dag(std::move(names), std::span<const std::pair<std::size_t, std::size_t>>(edges)),
                 net.cardinalities, net.cpts};
    out.cardinalities.push_back(cardinality);
    Cpt cpt;
    cpt.node = n;
    cpt.parents = parents;
    cpt.table.assign(configs * cardinality, 0.0);
    for (std::size_t r = 0; r < configs; ++r) cpt.table[r * cardinality + value_map[r]] = 1.0;
    out.cpts.push_back(std::move(cpt));
    return out;
}

BayesNet extend_with_copy_node(const BayesNet& net, std::string name, const IndexSet& parents) {
    std::size_t configs = 1;
    for (std::size_t p : parents) configs *= net.cardinalities[p];
    require(configs <= std::numeric_limits<std::uint32_t>::max(),
            "extend_with_copy_node: copy alphabet too large");
    std::vector<std::uint32_t> identity(configs);
    for (std::size_t r = 0; r < configs; ++r) identity[r] = static_cast<std::uint32_t>(r);
    return extend_with_function_node(net, std::move(name), parents, identity,
                                     static_cast<std::uint32_t>(configs));
}

BayesNet build_parity_net() {
    // U12, U13, U23 uniform roots; X_i the spin product of its two U parents.
    // Spin s = 2b − 1, so the product is +1 exactly when the bits agree:
    // X category = 1 XOR u_a XOR u_b.
    const std::vector<std::string> names{"U12", "U13", "U23", "X1", "X2", "X3"};
    const std::vector<std::pair<std::size_t, std::size_t>> edges{
        {0, 3}, {1, 3},  // X1 <- U12, U13
        {0, 4}, {2, 4},  // X2 <- U12, U23
        {1, 5}, {2, 5},  // X3 <- U13, U23
    };
    BayesNet net{Dag(names, std::span<const std::pair<std::size_t, std::size_t>>(edges)),
                 std::vector<std::uint32_t>(6, 2), {}};
    net.cpts.resize(6);
    for (std::size_t u = 0; u < 3; ++u) {
        net.cpts[u] = {u, {}, {0.5, 0.5}};
    }
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t node = 3 + k;
        Cpt cpt;
        cpt.node = node;
        cpt.parents = net.dag.parents(node);
        cpt.table.assign(4 * 2, 0.0);
        for (std::uint32_t ua = 0; ua < 2; ++ua) {
            for (std::uint32_t ub = 0; ub < 2; ++ub) {
                const std::uint32_t value = 1u ^ ua ^ ub;
                cpt.table[(ua * 2 + ub) * 2 + value] = 1.0;
            }
        }
        net.cpts[node] = std::move(cpt);
    }
    return net;
}

BayesNet build_hub_net(std::size_t n_leaves) {
    require(n_leaves >= 1, "build_hub_net: need at least one leaf");
    std::vector<std::string> names{"U"};
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n_leaves; ++i) {
        names.push_back("X" + std::to_string(i + 1));
        edges.emplace_back(0, i + 1);
    }
    BayesNet net{Dag(std::move(names), std::span<const std::pair<std::size_t, std::size_t>>(edges)),
                 std::vector<std::uint32_t>(n_leaves + 1, 2), {}};
    net.cpts.resize(n_leaves + 1);
    net.cpts[0] = {0, {}, {0.5, 0.5}};
    for (std::size_t i = 1; i <= n_leaves; ++i) {
        net.cpts[i] = {i, {0}, {1.0, 0.0, 0.0, 1.0}};  // copy of U
    }
    return net;
}

bool VerificationReport::all_passed() const {
    for (const auto& t : checks) {
        if (t.violations != 0) return false;
    }
    return true;
}

const CheckTally* VerificationReport::find(std::string_view check) const {
    for (const auto& t : checks) {
        if (t.check == check) return &t;
    }
    return nullptr;
}

namespace {

// Per-trial observations merged into the report in trial order.
struct TrialOutcome {
    // (check name, slack, violated) tuples; slack is the signed margin
    // (>= -tol passes for inequality checks, |.| <= tol for equality checks).
    std::vector<std::tuple<std::string, double, bool>> records;
};

void record(TrialOutcome& out, std::string check, double slack, bool violated) {
    out.records.emplace_back(std::move(check), slack, violated);
}

void record_inequality(TrialOutcome& out, const std::string& check, double slack, double tol) {
    record(out, check, slack, slack < -tol);
}

void record_equality(TrialOutcome& out, const std::string& check, double residual, double tol) {
    record(out, check, -std::abs(residual), std::abs(residual) > tol);
}

// Random disjoint groups of sizes 1..2 over the net's nodes.
std::vector<IndexSet> random_groups(Rng& rng, std::size_t n_nodes) {
    std::vector<std::size_t> pool(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) pool[i] = i;
    rng.shuffle(pool);
    const std::size_t max_groups = std::min<std::size_t>(4, n_nodes / 2 + 1);
    const std::size_t n_groups = 2 + rng.next_below(std::max<std::size_t>(1, max_groups - 1));
    std::vector<IndexSet> groups;
    std::size_t cursor = 0;
    for (std::size_t g = 0; g < n_groups && cursor < pool.size(); ++g) {
        const std::size_t want = 1 + rng.next_below(2);
        IndexSet group;
        for (std::size_t k = 0; k < want && cursor < pool.size(); ++k) {
            group.push_back(pool[cursor++]);
        }
        if (!group.empty()) groups.push_back(make_index_set(std::move(group)));
    }
    return groups;
}

std::vector<std::uint32_t> random_value_map(Rng& rng, std::size_t configs, std::uint32_t card) {
    std::vector<std::uint32_t> map(configs);
    for (auto& v : map) v = static_cast<std::uint32_t>(rng.next_below(card));
    return map;
}

void run_dag_trial(const VerifyConfig& config, std::uint64_t trial_seed, TrialOutcome& out) {
    const double tol = config.tol_bits;
    Rng rng = Rng::stream(trial_seed, 0x0ffcull);
    const BayesNet net = random_bayes_net(config.n_nodes, config.edge_prob, config.max_card,
                                          trial_seed);
    const JointDistribution joint = exact_joint(net);
    const DiscreteMeasure measure(joint);

    // Markov equivalence: both conditions must hold on an exact net.
    const MarkovCheckResult local = local_markov_holds(net.dag, measure, tol);
    record(out, "local_markov", local.holds ? 0.0 : -local.violations.front().cmi_bits,
           !local.holds);
    if (net.dag.node_count() <= kMaxGlobalMarkovNodes) {
        const MarkovCheckResult global = global_markov_holds(net.dag, measure, tol);
        record(out, "global_markov", global.holds ? 0.0 : -global.violations.front().cmi_bits,
               !global.holds);
    }

    const std::vector<IndexSet> groups = random_groups(rng, config.n_nodes);
    const ObservationGroups obs(net.dag, groups, {});
    IndexSet union_nodes = obs.group_union();

    for (int variant = 0; variant < 2; ++variant) {
        BayesNet extended = [&] {
            if (variant == 0) return extend_with_copy_node(net, "Y", union_nodes);
            std::size_t configs = 1;
            for (std::size_t p : union_nodes) configs *= net.cardinalities[p];
            const std::uint32_t card = 2 + static_cast<std::uint32_t>(rng.next_below(3));
            return extend_with_function_node(net, "Y", union_nodes,
                                             random_value_map(rng, configs, card), card);
        }();
        const JointDistribution ext_joint = exact_joint(extended);
        const DiscreteMeasure ext_measure(ext_joint);
        const ElementSubset y =
            ElementSubset::of_mask(ext_measure.ground(),
                                   std::uint64_t{1} << (extended.dag.node_count() - 1));
        const std::string tag = variant == 0 ? "y_copy" : "y_function";

        const DecompositionReport rep =
            check_decomposition(net.dag, ext_measure, obs, y, tol);
        record_equality(out, "y_locality_by_construction/" + tag, rep.y_locality_residual_bits, tol);
        record_inequality(out, "node_decomposition/" + tag, rep.node_slack_bits, tol);
        if (rep.equality_condition_holds) {
            record_equality(out, "node_decomposition_equality/" + tag, rep.node_slack_bits, tol);
        }
        record_inequality(out, "ancestral_decomposition/" + tag, rep.ancestral_slack_bits, tol);
        record_inequality(out, "ancestral_monotonicity/" + tag, rep.ancestral_monotonicity_slack_bits, tol);
        record_inequality(out, "observed_decomposition/" + tag, rep.observed_slack_bits, tol);
    }
}

void run_independent_roots_trial(const VerifyConfig& config, std::uint64_t trial_seed,
                                 TrialOutcome& out) {
    const double tol = config.tol_bits;
    Rng rng = Rng::stream(trial_seed, 0x4005ull);
    const BayesNet roots = random_bayes_net(config.n_nodes, 0.0, config.max_card, trial_seed ^ 1);

    // Independent-elements instance: overlapping subsets of mutually independent elements.
    const std::size_t r = roots.dag.node_count();
    const std::size_t n_groups = 2 + rng.next_below(3);
    std::vector<IndexSet> groups;
    for (std::size_t g = 0; g < n_groups; ++g) {
        IndexSet group;
        for (std::size_t i = 0; i < r; ++i) {
            if (rng.next_bool(0.4)) group.push_back(i);
        }
        if (group.empty()) group.push_back(rng.next_below(r));
        groups.push_back(make_index_set(std::move(group)));
    }

    IndexSet all(r);
    for (std::size_t i = 0; i < r; ++i) all[i] = i;
    std::size_t configs = 1;
    for (std::size_t i = 0; i < r; ++i) configs *= roots.cardinalities[i];
    const std::uint32_t card = 2 + static_cast<std::uint32_t>(rng.next_below(3));
    const BayesNet extended = extend_with_function_node(
        roots, "Y", all, random_value_map(rng, configs, card), card);
    const JointDistribution joint = exact_joint(extended);
    const DiscreteMeasure measure(joint);
    const ObservationGroups obs(roots.dag, groups, {});
    const ElementSubset y = ElementSubset::of_mask(measure.ground(), std::uint64_t{1} << r);

    auto group_subset = [&](const IndexSet& nodes) {
        return ElementSubset(measure.ground(), nodes);  // roots map to ground 1:1 by index
    };
    const ElementSubset none = ElementSubset::empty(measure.ground());

    double weighted = 0.0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const int d_i = ancestor_multiplicity(roots.dag, obs, i);
        weighted += measure.cmi(y, group_subset(groups[i]), none) / d_i;
    }
    const double lhs = measure.cmi(y, group_subset(obs.group_union()), none);
    record_inequality(out, "independent_elements_decomposition", lhs - weighted, tol);

    // Submodularity instance: disjoint groups of independent roots are mutually
    // independent; submodularity must hold.
    std::vector<std::size_t> pool(r);
    for (std::size_t i = 0; i < r; ++i) pool[i] = i;
    rng.shuffle(pool);
    std::vector<ElementSubset> disjoint_groups;
    std::size_t cursor = 0;
    const std::size_t k_groups = 2 + rng.next_below(2);
    for (std::size_t g = 0; g < k_groups && cursor < r; ++g) {
        IndexSet group;
        const std::size_t want = 1 + rng.next_below(2);
        for (std::size_t k = 0; k < want && cursor < r; ++k) group.push_back(pool[cursor++]);
        disjoint_groups.push_back(group_subset(make_index_set(std::move(group))));
    }
    const auto violations = submodularity_audit(measure, y, disjoint_groups, tol);
    double worst = 0.0;
    for (const auto& v : violations) worst = std::max(worst, v.magnitude_bits);
    record(out, "submodularity_independent_groups", -worst, !violations.empty());
}

// Fixed instances exercised once per batch: a ring of overlapping groups over independent elements with
// coefficients 1/2, and the identical-groups equality case d_1 = d_2 = 2.
void run_fixed_instances(const VerifyConfig& config, TrialOutcome& out) {
    const double tol = config.tol_bits;
    {
        // Eight independent uniform bits, four sets in a ring; no element is in
        // three sets, so every d_i = 2.
        const BayesNet roots = random_bayes_net(8, 0.0, 2, config.seed ^ 0xf16a);
        const std::vector<IndexSet> groups{{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {0, 6, 7}};
        IndexSet all(8);
        for (std::size_t i = 0; i < 8; ++i) all[i] = i;
        Rng rng = Rng::stream(config.seed, 0xf16a);
        const BayesNet extended =
            extend_with_function_node(roots, "Y", all, random_value_map(rng, 256, 4), 4);
        const JointDistribution joint = exact_joint(extended);
        const DiscreteMeasure measure(joint);
        const ObservationGroups obs(roots.dag, groups, {});
        const ElementSubset none = ElementSubset::empty(measure.ground());
        const ElementSubset y = ElementSubset::of_mask(measure.ground(), std::uint64_t{1} << 8);

        double weighted = 0.0;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const int d_i = ancestor_multiplicity(roots.dag, obs, i);
            record_equality(out, "overlap_ring_multiplicity_is_2", d_i - 2, 0);
            weighted += measure.cmi(y, ElementSubset(measure.ground(), groups[i]), none) / 2.0;
        }
        const double lhs = measure.cmi(y, ElementSubset(measure.ground(), all), none);
        record_inequality(out, "overlap_ring_half_coefficients", lhs - weighted, tol);
    }
    {
        // Identical groups O_1 = O_2: d_i = 2 and the decomposition is tight.
        const BayesNet net = random_bayes_net(3, 0.5, config.max_card, config.seed ^ 0x1de0);
        const IndexSet group{0, 1};
        const BayesNet extended = extend_with_copy_node(net, "Y", group);
        const JointDistribution joint = exact_joint(extended);
        const DiscreteMeasure measure(joint);
        const ObservationGroups obs(net.dag, {group, group}, {});
        const ElementSubset none = ElementSubset::empty(measure.ground());
        const ElementSubset y = ElementSubset::of_mask(measure.ground(), std::uint64_t{1} << 3);
        const double info = measure.cmi(y, ElementSubset(measure.ground(), group), none);
        record_equality(out, "identical_groups_multiplicity", ancestor_multiplicity(net.dag, obs, 0) - 2,
                        0);
        record_equality(out, "identical_groups_equality", info - (info / 2.0 + info / 2.0), tol);
    }
}

}  // namespace

VerificationReport verify_batch(const VerifyConfig& config) {
    require(config.trials >= 1, "verify_batch: need at least one trial");
    require(config.n_nodes >= 2 && config.n_nodes <= 6,
            "verify_batch: exhaustive checks guarded to 2..6 nodes");
    require(config.max_card >= 2, "verify_batch: max_card must be >= 2");

    std::vector<TrialOutcome> outcomes(config.trials + 1);
    std::vector<std::uint64_t> trial_seeds(config.trials);
    for (std::size_t t = 0; t < config.trials; ++t) {
        trial_seeds[t] = Rng::stream(config.seed, t).next_u64();
    }

    auto run_trial = [&](std::size_t t) {
        run_dag_trial(config, trial_seeds[t], outcomes[t]);
        run_independent_roots_trial(config, trial_seeds[t], outcomes[t]);
    };

    const std::size_t threads = std::max<std::size_t>(1, config.threads);
    if (threads == 1) {
        for (std::size_t t = 0; t < config.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < config.trials;
                     t = next.fetch_add(1)) {
                    run_trial(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    run_fixed_instances(config, outcomes[config.trials]);

    // Merge in trial order; reports are byte-identical regardless of threads.
    VerificationReport report;
    report.config = config;
    auto tally_of = [&](const std::string& name) -> CheckTally& {
        for (auto& t : report.checks) {
            if (t.check == name) return t;
        }
        report.checks.push_back({name, 0, 0, std::nullopt, {}});
        return report.checks.back();
    };
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        for (const auto& [name, slack, violated] : outcomes[t].records) {
            CheckTally& tally = tally_of(name);
            ++tally.instances;
            if (!tally.worst_slack_bits || slack < *tally.worst_slack_bits) {
                tally.worst_slack_bits = slack;
            }
            if (violated) {
                ++tally.violations;
                if (t < config.trials) tally.failing_seeds.push_back(trial_seeds[t]);
            }
        }
    }
    return report;
}

}  // namespace cainfer
