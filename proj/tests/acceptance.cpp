// Acceptance suite: runs every top-level criterion at its stated tolerance and
// prints one pass/fail line each. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cainfer/algo_info.hpp"
#include "cainfer/cli.hpp"
#include "cainfer/discrete_measure.hpp"
#include "cainfer/distribution.hpp"
#include "cainfer/inference.hpp"
#include "cainfer/json_io.hpp"
#include "cainfer/measure.hpp"
#include "cainfer/oracle.hpp"
#include "cainfer/rng.hpp"

using namespace cainfer;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Criterion {
    int id;
    std::string description;
    double time_limit_s;
    std::function<void(std::vector<std::string>&)> body;  // pushes failure notes
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

std::vector<VarSet> singleton_groups(const JointDistribution& dist) {
    std::vector<VarSet> groups;
    for (std::size_t i = 0; i < dist.variable_count(); ++i) {
        groups.push_back(VarSet(dist, {i}));
    }
    return groups;
}

JointDistribution fair_coin() { return JointDistribution({{"X", 2}}, {0.5, 0.5}); }

double l1(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

// --- criterion 2 helper: fair-coin marginals with a chosen joint entropy ----

JointDistribution maxent_triple_with_entropy(double target_bits) {
    auto mixture = [](double lambda) {
        std::vector<double> p(8, lambda / 8.0);
        p[0] += (1 - lambda) * 0.5;
        p[7] += (1 - lambda) * 0.5;
        return p;
    };
    auto entropy = [](const std::vector<double>& p) {
        double h = 0.0;
        for (double x : p) {
            if (x > 1e-15) h -= x * std::log2(x);
        }
        return h;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (entropy(mixture(mid)) < target_bits ? lo : hi) = mid;
    }
    return JointDistribution({{"X1", 2}, {"X2", 2}, {"X3", 2}}, mixture(0.5 * (lo + hi)));
}

// --- criterion 5 helpers ----------------------------------------------------

// Acyclicity of an adjacency matrix given as n*(n-1) arc bits (row-major over
// ordered pairs, skipping the diagonal), by repeated sink elimination.
bool acyclic(std::size_t n, std::uint32_t arcs) {
    std::uint32_t alive = (std::uint32_t{1} << n) - 1;
    auto arc = [&](std::size_t i, std::size_t j) {
        std::size_t k = i * (n - 1) + (j > i ? j - 1 : j);
        return (arcs >> k) & 1u;
    };
    for (std::size_t round = 0; round < n; ++round) {
        bool removed = false;
        for (std::size_t i = 0; i < n && !removed; ++i) {
            if (!((alive >> i) & 1u)) continue;
            bool has_out = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && ((alive >> j) & 1u) && arc(i, j)) {
                    has_out = true;
                    break;
                }
            }
            if (!has_out) {
                alive &= ~(std::uint32_t{1} << i);
                removed = true;
            }
        }
        if (alive == 0) return true;
        if (!removed) return false;
    }
    return alive == 0;
}

BayesNet random_cpts_for(const Dag& dag, std::uint64_t seed) {
    Rng rng(seed);
    BayesNet net{dag, std::vector<std::uint32_t>(dag.node_count(), 2), {}};
    net.cpts.resize(dag.node_count());
    for (std::size_t i = 0; i < dag.node_count(); ++i) {
        Cpt cpt;
        cpt.node = i;
        cpt.parents = dag.parents(i);
        const std::size_t rows = std::size_t{1} << cpt.parents.size();
        for (std::size_t r = 0; r < rows; ++r) {
            const auto row = rng.next_simplex(2);
            cpt.table.insert(cpt.table.end(), row.begin(), row.end());
        }
        net.cpts[i] = std::move(cpt);
    }
    return net;
}

// Every disjoint (A,B,C) with A,B non-empty; returns false from the visitor to
// abort early.
template <typename Visit>
void for_each_triple(std::size_t n, Visit&& visit) {
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
        visit(a, b, c);
    }
}

// --- CLI fixtures for criterion 10 -------------------------------------------

fs::path fixture_dir() {
    const fs::path dir = fs::temp_directory_path() / "cainfer_acceptance";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path path = fixture_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path.string();
}

std::string run_capture(const std::vector<std::string>& args, int& exit_code) {
    std::ostringstream out, err;
    exit_code = run_cli(args, out, err);
    return out.str();
}

std::vector<std::byte> seeded_bytes(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::byte> out(n);
    for (auto& b : out) b = static_cast<std::byte>(rng.next_below(256));
    return out;
}

std::string write_binary(const std::string& name, const std::vector<std::byte>& bytes) {
    const fs::path path = fixture_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    return path.string();
}

// -----------------------------------------------------------------------------

void criterion1(std::vector<std::string>& failures) {
    const auto parity = make_parity(3, kInf);
    const auto groups = singleton_groups(parity);
    expect(failures, close(multi_information_c_bits(parity, groups, 1), 1.0, 1e-9),
           "I_1(parity) != 1.0");
    expect(failures, close(multi_information_c_bits(parity, groups, 2), -0.5, 1e-9),
           "I_2(parity) != -0.5");

    const auto net = build_parity_net();
    const auto joint = exact_joint(net);
    const auto observed = marginal(
        joint, VarSet::of_names(joint, std::vector<std::string>{"X1", "X2", "X3"}));
    expect(failures, l1(observed.probabilities(), parity.probabilities()) <= 1e-12,
           "parity net marginal deviates beyond 1e-12");
    expect(failures, local_markov_holds(net.dag, DiscreteMeasure(joint), 1e-9).holds,
           "parity net violates local Markov");

    const ObservationGroups obs(net.dag, {IndexSet{3}, IndexSet{4}, IndexSet{5}}, {});
    int max_multiplicity = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        max_multiplicity = std::max(max_multiplicity, ancestor_multiplicity(net.dag, obs, i));
    }
    expect(failures, max_multiplicity == 2, "parity net max ancestor multiplicity != 2");

    // Sufficiency-only caveat: the criterion claims pairwise ancestors (c = 1)
    // and nothing stronger, and the pairwise-ancestor net is a valid DAG-model.
    const auto report = infer_multiplicity(parity, groups);
    expect(failures, report.largest_qualifying_c == 1, "parity conclusion is not c = 1");
    const auto with_y = extend_with_copy_node(net, "Y", {3, 4, 5});
    const auto ext_joint = exact_joint(with_y);
    const DiscreteMeasure ext_measure(ext_joint);
    const ObservationGroups obs_y(with_y.dag, {IndexSet{3}, IndexSet{4}, IndexSet{5}}, {6});
    std::vector<VarSet> ext_groups{VarSet(ext_joint, {3}), VarSet(ext_joint, {4}),
                                   VarSet(ext_joint, {5})};
    const auto values = observed_values_from_distribution(ext_joint, ext_groups,
                                                          VarSet(ext_joint, {6}), true);
    expect(failures,
           validate_dag_model(with_y.dag, ext_measure, obs_y, values.values_by_mask(), 1e-9).holds,
           "pairwise-ancestor parity net rejected as a DAG-model");
}

void criterion2(std::vector<std::string>& failures) {
    const auto below = maxent_triple_with_entropy(1.5 - 1e-3);
    const auto rb = infer_multiplicity(below, singleton_groups(below));
    expect(failures, rb.largest_qualifying_c == 2,
           "H = 1.5 - 1e-3 must conclude a triple ancestor");

    const auto above = maxent_triple_with_entropy(1.5 + 1e-3);
    const auto ra = infer_multiplicity(above, singleton_groups(above));
    expect(failures, ra.largest_qualifying_c < 2,
           "H = 1.5 + 1e-3 must not conclude a triple ancestor");

    // The conclusion flips exactly at I_2 = 1.5 - H crossing the decision
    // tolerance.
    for (double h : {1.2, 1.45, 1.55, 2.2}) {
        const auto dist = maxent_triple_with_entropy(h);
        const auto groups = singleton_groups(dist);
        for (std::size_t i = 0; i < 3; ++i) {
            expect(failures, close(entropy_bits(dist, groups[i]), 1.0, 1e-9),
                   "marginal not max-entropy");
        }
        const auto report = infer_multiplicity(dist, groups);
        const double i2 = report.per_c[1].criterion_bits;
        expect(failures, close(i2, 1.5 - h, 1e-6), "I_2 != 1.5 - H");
        expect(failures,
               (report.largest_qualifying_c == 2) == (h < 1.5 - kDefaultDecisionTolBits),
               "threshold decision wrong at H = " + std::to_string(h));
    }
}

void criterion3(std::vector<std::string>& failures) {
    for (int n = 2; n <= 5; ++n) {
        const auto copies = make_copies(n, fair_coin());
        const auto groups = singleton_groups(copies);
        const double i_top = multi_information_c_bits(copies, groups, n - 1);
        expect(failures, close(i_top, 1.0 / (n - 1), 1e-9),
               "I_{n-1} != 1/(n-1) at n = " + std::to_string(n));

        const auto report = infer_multiplicity(copies, groups);
        expect(failures, report.largest_qualifying_c == n - 1,
               "copies must conclude an ancestor of all n = " + std::to_string(n));

        std::vector<double> hs(n, 1.0);
        const double bound = ancestor_entropy_bound_bits(hs, 1.0, n - 1);
        expect(failures, close(bound, 1.0, 1e-9), "entropy bound != 1.0 at n = " + std::to_string(n));

        const auto hub = build_hub_net(n);
        const auto joint = exact_joint(hub);
        const double hub_source = entropy_bits(joint, VarSet::single(joint, "U"));
        expect(failures, close(bound, hub_source, 1e-9),
               "hub source entropy does not meet the bound with equality");
    }
}

void criterion4(std::vector<std::string>& failures) {
    VerifyConfig config;
    config.trials = 200;
    config.n_nodes = 6;
    config.max_card = 2;
    config.seed = 20260810;
    config.threads = 4;
    const auto report = verify_batch(config);

    const std::vector<std::string> required{
        "node_decomposition/y_copy",    "node_decomposition/y_function",
        "ancestral_decomposition/y_copy",        "ancestral_decomposition/y_function",
        "ancestral_monotonicity/y_copy",     "ancestral_monotonicity/y_function",
        "observed_decomposition/y_copy",         "observed_decomposition/y_function",
        "y_locality_by_construction/y_copy",  "y_locality_by_construction/y_function",
        "independent_elements_decomposition",  "submodularity_independent_groups",
        "overlap_ring_half_coefficients",     "identical_groups_equality",
        "node_decomposition_equality/y_copy"};
    for (const auto& name : required) {
        const CheckTally* tally = report.find(name);
        if (tally == nullptr || tally->instances == 0) {
            failures.push_back("check missing or empty: " + name);
            continue;
        }
        if (tally->violations != 0) {
            failures.push_back(name + ": " + std::to_string(tally->violations) + " violations");
        }
        if (tally->worst_slack_bits && *tally->worst_slack_bits < -1e-9) {
            failures.push_back(name + ": slack below -1e-9");
        }
    }
}

void criterion5(std::vector<std::string>& failures) {
    std::size_t dag_count = 0;
    std::size_t disagreements = 0;
    std::size_t cmi_violations = 0;

    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
        const std::uint32_t arc_bits = static_cast<std::uint32_t>(n * (n - 1));
        for (std::uint32_t arcs = 0; arcs < (std::uint32_t{1} << arc_bits); ++arcs) {
            if (!acyclic(n, arcs)) continue;
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            std::uint32_t k = 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if ((arcs >> k) & 1u) edges.emplace_back(i, j);
                    ++k;
                }
            }
            const Dag dag(names, edges);
            ++dag_count;
            const auto net = random_cpts_for(dag, 17 * arcs + n);
            const DiscreteMeasure measure(exact_joint(net));
            const auto ground = measure.ground();
            for_each_triple(n, [&](const IndexSet& a, const IndexSet& b, const IndexSet& c) {
                const bool sep = d_separated(dag, a, b, c);
                if (sep != d_separated_by_paths(dag, a, b, c)) ++disagreements;
                if (sep) {
                    const double value =
                        measure.cmi(ElementSubset(ground, a), ElementSubset(ground, b),
                                    ElementSubset(ground, c));
                    if (value > 1e-9) ++cmi_violations;
                }
            });
        }
    }
    // Labeled DAG counts 1, 3, 25, 543, 29281 for n = 1..5.
    expect(failures, dag_count == 1 + 3 + 25 + 543 + 29281,
           "exhaustive DAG enumeration count off: " + std::to_string(dag_count));

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto net = random_bayes_net(6, 0.5, 2, 9000 + seed);
        const DiscreteMeasure measure(exact_joint(net));
        const auto ground = measure.ground();
        for_each_triple(6, [&](const IndexSet& a, const IndexSet& b, const IndexSet& c) {
            const bool sep = d_separated(net.dag, a, b, c);
            if (sep != d_separated_by_paths(net.dag, a, b, c)) ++disagreements;
            if (sep) {
                const double value =
                    measure.cmi(ElementSubset(ground, a), ElementSubset(ground, b),
                                ElementSubset(ground, c));
                if (value > 1e-9) ++cmi_violations;
            }
        });
    }
    expect(failures, disagreements == 0,
           std::to_string(disagreements) + " d-separation disagreements");
    expect(failures, cmi_violations == 0,
           std::to_string(cmi_violations) + " d-separated triples with CMI > 1e-9");
}

void criterion6(std::vector<std::string>& failures) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 3 + seed % 3;  // 3..5 binary variables
        const auto net = random_bayes_net(n, 0.5, 2, 7000 + seed);
        const DiscreteMeasure measure(exact_joint(net));
        const auto axioms = audit_axioms(measure, 1e-9);
        if (!axioms.clean()) {
            failures.push_back("axiom violation at seed " + std::to_string(seed) + " (worst " +
                               std::to_string(axioms.worst_violation_bits()) + " bits)");
        }
        const auto derived = audit_derived(measure, 1e-9);
        if (!derived.clean()) {
            failures.push_back("derived/semi-graphoid violation at seed " + std::to_string(seed));
        }
    }
}

void criterion7(std::vector<std::string>& failures) {
    // Three identical coins through a copy Y.
    const ObservationValues obs(3, {0, 1, 1, 1, 1, 1, 1, 1}, std::nullopt, true);
    const std::vector<int> c_vec{2, 2, 2};
    const auto eps = epsilon_and_bound(obs, c_vec);
    expect(failures, close(eps.epsilon_bits, 0.5, 1e-9), "epsilon != 0.5");
    expect(failures,
           eps.information_bound_bits && close(*eps.information_bound_bits, 1.0, 1e-9),
           "ancestor-information bound != 1.0");

    // In the hub net the realized common-ancestor set is {U}; it must carry at
    // least the bound about Y.
    const auto hub = build_hub_net(3);
    const auto with_y = extend_with_copy_node(hub, "Y", {1, 2, 3});
    const auto joint = exact_joint(with_y);
    const DiscreteMeasure measure(joint);
    const auto ground = measure.ground();
    const double info_u = measure.cmi(ElementSubset::of_names(ground, std::vector<std::string>{"Y"}),
                                      ElementSubset::of_names(ground, std::vector<std::string>{"U"}),
                                      ElementSubset::empty(ground));
    expect(failures, info_u >= 1.0 - 1e-9, "I(Y:U) < 1.0 bit in the hub net");
}

void criterion8(std::vector<std::string>& failures) {
    // XOR examples, exact values.
    {
        std::vector<std::string> names{"O1", "O2", "O3"};
        BayesNet roots{Dag(names, std::span<const std::pair<std::size_t, std::size_t>>{}),
                       {2, 2, 2},
                       {}};
        roots.cpts = {{0, {}, {0.5, 0.5}}, {1, {}, {0.5, 0.5}}, {2, {}, {0.5, 0.5}}};
        std::vector<std::uint32_t> xmap(8);
        for (std::size_t cfg = 0; cfg < 8; ++cfg) {
            xmap[cfg] = static_cast<std::uint32_t>(__builtin_popcountll(cfg) % 2);
        }
        const auto ext = extend_with_function_node(roots, "Y", {0, 1, 2}, xmap, 2);
        const auto joint = exact_joint(ext);
        std::vector<VarSet> groups{VarSet(joint, {0}), VarSet(joint, {1}), VarSet(joint, {2})};
        const auto dec = synergy_decomposition(joint, groups, VarSet(joint, {3}), 1);
        expect(failures, close(dec.r_y_bits, -1.0, 1e-9), "n-wise XOR r_1 != -1.0");
        expect(failures, std::abs(dec.identity_residual_bits()) <= 1e-9,
               "synergy identity fails on the XOR instance");

        const std::vector<std::uint32_t> xor2{0, 1, 1, 0};
        auto y1 = extend_with_function_node(roots, "Y12", {0, 1}, xor2, 2);
        auto y2 = extend_with_function_node(y1, "Y13", {0, 2}, xor2, 2);
        auto y3 = extend_with_function_node(y2, "Y23", {1, 2}, xor2, 2);
        const auto pj = exact_joint(y3);
        std::vector<VarSet> pgroups{VarSet(pj, {0}), VarSet(pj, {1}), VarSet(pj, {2})};
        const auto pdec = synergy_decomposition(pj, pgroups, VarSet(pj, {3, 4, 5}), 1);
        expect(failures, close(pdec.r_y_bits, -2.0, 1e-9), "pairwise XOR triple r_1 != -2.0");
        expect(failures, std::abs(pdec.identity_residual_bits()) <= 1e-9,
               "synergy identity fails on the pairwise XOR instance");
    }

    Rng rng(31415);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto net = random_bayes_net(4, 0.5, 3, 100 + seed);
        std::size_t configs = 1;
        for (auto card : net.cardinalities) configs *= card;
        const std::uint32_t ycard = 2 + static_cast<std::uint32_t>(rng.next_below(3));
        std::vector<std::uint32_t> ymap(configs);
        for (auto& v : ymap) v = static_cast<std::uint32_t>(rng.next_below(ycard));
        const auto ext = extend_with_function_node(net, "Y", {0, 1, 2, 3}, ymap, ycard);
        const auto joint = exact_joint(ext);
        std::vector<VarSet> groups{VarSet(joint, {0}), VarSet(joint, {1}),
                                   VarSet(joint, {2, 3})};
        const int c = 1 + static_cast<int>(rng.next_below(3));
        const auto dec = synergy_decomposition(joint, groups, VarSet(joint, {4}), c);
        if (std::abs(dec.identity_residual_bits()) > 1e-9) {
            failures.push_back("synergy identity residual > 1e-9 at seed " + std::to_string(seed));
        }
    }
}

void criterion9(std::vector<std::string>& failures) {
    const auto comp = make_xz_compressor();
    const auto payload = seeded_bytes(65536, 80);

    StringCorpus dup;
    dup.add("a", payload);
    dup.add("b", payload);
    dup.add("c", payload);
    const auto dup_report = infer_string_ancestors(comp, dup, 2, SlackBudget::default_for(3));
    expect(failures, dup_report.concluded, "duplicated files must conclude at c = 2");

    StringCorpus indep;
    indep.add("a", seeded_bytes(65536, 81));
    indep.add("b", seeded_bytes(65536, 82));
    indep.add("c", seeded_bytes(65536, 83));
    for (int c = 1; c <= 2; ++c) {
        const auto report = infer_string_ancestors(comp, indep, c, SlackBudget::default_for(3));
        expect(failures, !report.concluded,
               "independent files must not conclude at c = " + std::to_string(c));
    }

    const auto again = infer_string_ancestors(comp, dup, 2, SlackBudget::default_for(3));
    expect(failures,
           again.criterion_bits == dup_report.criterion_bits &&
               again.joint_k_bits == dup_report.joint_k_bits &&
               again.per_string_k_bits == dup_report.per_string_k_bits,
           "string inference not bit-identical across runs");
}

void criterion10(std::vector<std::string>& failures) {
    const auto parity = make_parity(3, kInf);
    const std::string dist = write_file("parity3.json", distribution_to_json(parity).dump());

    const auto hub = build_hub_net(3);
    const auto with_y = extend_with_copy_node(hub, "Y", {1, 2, 3});
    const std::string hub_dist =
        write_file("hub.json", distribution_to_json(exact_joint(with_y)).dump());
    const std::string hub_dag = write_file("hub.dag.json", R"({
        "nodes": ["U", "X1", "X2", "X3", "Y"],
        "edges": [["U","X1"], ["U","X2"], ["U","X3"], ["X1","Y"], ["X2","Y"], ["X3","Y"]],
        "groups": [["X1"], ["X2"], ["X3"]],
        "y": ["Y"]
    })");
    const std::string values = write_file("copies.values.json", R"({
        "n": 3,
        "values": {"": 0, "1": 1, "2": 1, "3": 1, "1,2": 1, "1,3": 1, "2,3": 1, "1,2,3": 1},
        "ancestral_info": null,
        "y_is_function_of_obs": true
    })");
    const std::string csv = write_file("samples.csv", "A,B\n0,0\n1,1\n0,0\n1,1\n");
    const std::string s1 = write_binary("s1.bin", seeded_bytes(8192, 1));
    const std::string s2 = write_binary("s2.bin", seeded_bytes(8192, 2));

    const std::vector<std::vector<std::string>> invocations{
        {"analyze", "--dist", dist, "--groups", "X1;X2;X3", "--c", "2"},
        {"analyze", "--samples", csv},
        {"infer", "--values", values, "--c-vec", "2,2,2"},
        {"check-dag", "--dag", hub_dag, "--dist", hub_dist},
        {"strings", "--c", "1", s1, s2},
        {"verify", "--trials", "5", "--nodes", "4", "--seed", "42"},
    };
    for (const auto& args : invocations) {
        int code1 = 0, code2 = 0;
        const std::string first = run_capture(args, code1);
        const std::string second = run_capture(args, code2);
        if (code1 != code2 || first != second || first.empty()) {
            failures.push_back("non-deterministic or empty report for subcommand " + args[0]);
        }
    }
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "parity family: I_1 = 1, I_2 = -1/2, pairwise-ancestor net valid", 1.0, criterion1},
        {2, "three max-entropy binaries: triple ancestor iff H < 3/2 bits", 1.0, criterion2},
        {3, "synchronized copies: I_{n-1} = 1/(n-1), tight entropy bound", 1.0, criterion3},
        {4, "decomposition inequalities on 200 random exact nets", 60.0, criterion4},
        {5, "Markov equivalence: exhaustive <=5-node DAGs + 100 random 6-node nets", 120.0,
         criterion5},
        {6, "axiom and semi-graphoid audits on 50 random joints", 60.0, criterion6},
        {7, "quantitative common-ancestor bound on the copy instance", 1.0, criterion7},
        {8, "synergy decomposition identity and the XOR values", 10.0, criterion8},
        {9, "string inference: duplicates conclude, independents do not", 10.0, criterion9},
        {10, "CLI determinism: byte-identical reports across runs", 60.0, criterion10},
    };

    int failed = 0;
    for (auto& criterion : criteria) {
        std::vector<std::string> failures;
        const auto start = std::chrono::steady_clock::now();
        criterion.body(failures);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criterion.time_limit_s) {
            failures.push_back("runtime " + std::to_string(elapsed) + "s exceeds " +
                               std::to_string(criterion.time_limit_s) + "s");
        }
        const bool ok = failures.empty();
        std::printf("criterion %2d [%s] (%6.2fs) %s\n", criterion.id, ok ? "PASS" : "FAIL",
                    elapsed, criterion.description.c_str());
        for (const auto& f : failures) std::printf("    - %s\n", f.c_str());
        if (!ok) ++failed;
    }
    return failed;
}
