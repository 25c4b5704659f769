#include "cainfer/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cainfer/algo_info.hpp"
#include "cainfer/dag.hpp"
#include "cainfer/discrete_measure.hpp"
#include "cainfer/distribution.hpp"
#include "cainfer/inference.hpp"
#include "cainfer/json_io.hpp"
#include "cainfer/oracle.hpp"

namespace cainfer {
namespace {

struct RunConfig {
    std::string dist_path;
    std::string samples_path;
    std::string dag_path;
    std::string values_path;
    std::string groups_spec;
    int c = 0;  // 0: derive from the instance
    std::string c_vec_spec;
    double tol_bits = 1e-9;
    double decision_tol_bits = kDefaultDecisionTolBits;
    double slack_bits = -1.0;  // <0: default budget
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t trials = 200;
    std::size_t nodes = 6;
    std::size_t threads = 1;
    std::string out_path;
    bool strict = false;
    std::vector<std::string> files;
};

nlohmann::json base_report(const std::string& mode, double tolerance_bits,
                           const RunConfig& cfg) {
    nlohmann::json report;
    report["mode"] = mode;
    report["quantities"] = nlohmann::json::object();
    report["conclusions"] = nlohmann::json::array();
    report["slacks"] = nlohmann::json::object();
    report["assumptions"] = nlohmann::json::array();
    report["tolerance_bits"] = tolerance_bits;
    if (cfg.seed_given) {
        report["seed"] = cfg.seed;
    } else {
        report["seed"] = nullptr;
    }
    return report;
}

// One conclusion entry per examined c; non-qualifying values are reported as
// explicit "no_conclusion" rows. Returns whether anything qualified.
bool append_conclusions(nlohmann::json& report, const InferenceReport& inference, int c_cap) {
    bool concluded = false;
    for (const auto& entry : inference.per_c) {
        if (c_cap > 0 && entry.c > c_cap) continue;
        nlohmann::json conclusion{{"c", entry.c},
                                  {"claim", entry.qualifies ? "common_ancestor_ge" : "no_conclusion"},
                                  {"k", entry.qualifies ? entry.c + 1 : 0},
                                  {"criterion_bits", entry.criterion_bits}};
        if (entry.qualifies && entry.bound_bits) conclusion["bound_bits"] = *entry.bound_bits;
        report["conclusions"].push_back(conclusion);
        concluded = concluded || entry.qualifies;
    }
    for (const auto& a : inference.assumptions) report["assumptions"].push_back(a);
    return concluded;
}

// Groups grammar: groups separated by ';', members by ','.
std::vector<std::vector<std::string>> parse_groups(const std::string& spec) {
    std::vector<std::vector<std::string>> out;
    std::stringstream ss(spec);
    std::string group;
    while (std::getline(ss, group, ';')) {
        std::vector<std::string> members;
        std::stringstream gs(group);
        std::string name;
        while (std::getline(gs, name, ',')) {
            const auto begin = name.find_first_not_of(" \t");
            if (begin == std::string::npos) continue;
            const auto end = name.find_last_not_of(" \t");
            members.push_back(name.substr(begin, end - begin + 1));
        }
        if (!members.empty()) out.push_back(std::move(members));
    }
    if (out.empty()) throw std::runtime_error("--groups: no groups parsed from '" + spec + "'");
    return out;
}

std::vector<int> parse_c_vec(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::size_t pos = 0;
        out.push_back(std::stoi(token, &pos));
        if (pos != token.size()) throw std::runtime_error("--c-vec: bad entry '" + token + "'");
    }
    if (out.empty()) throw std::runtime_error("--c-vec: empty");
    return out;
}

int emit(const nlohmann::json& report, const RunConfig& cfg, std::ostream& out, bool concluded) {
    const std::string text = report.dump(2) + "\n";
    if (!cfg.out_path.empty()) {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
        file << text;
    } else {
        out << text;
    }
    return (!concluded && cfg.strict) ? 1 : 0;
}

int run_analyze(const RunConfig& cfg, std::ostream& out) {
    if (cfg.dist_path.empty() == cfg.samples_path.empty()) {
        throw std::runtime_error("analyze: pass exactly one of --dist or --samples");
    }
    nlohmann::json report = base_report("analyze", cfg.decision_tol_bits, cfg);
    std::optional<JointDistribution> dist;
    if (!cfg.dist_path.empty()) {
        dist = distribution_from_json(load_json_file(cfg.dist_path));
        report["assumptions"].push_back("exact distribution supplied");
    } else {
        std::ifstream in(cfg.samples_path);
        if (!in) throw std::runtime_error("cannot open '" + cfg.samples_path + "'");
        dist = from_samples(sample_table_from_csv(in));
        report["assumptions"].push_back(
            "empirical: plug-in estimate from samples; the inequalities concern the true "
            "distribution");
    }

    std::vector<std::vector<std::string>> group_names;
    if (!cfg.groups_spec.empty()) {
        group_names = parse_groups(cfg.groups_spec);
    } else {
        for (const auto& v : dist->variables()) group_names.push_back({v.name});
    }
    std::vector<std::string> grouped_names;
    for (const auto& g : group_names) {
        for (const auto& name : g) grouped_names.push_back(name);
    }
    if (grouped_names.size() < dist->variable_count()) {
        dist = marginal(*dist, VarSet::of_names(*dist, grouped_names));
        report["assumptions"].push_back("ungrouped variables marginalized out");
    }
    std::vector<VarSet> groups;
    for (const auto& g : group_names) groups.push_back(VarSet::of_names(*dist, g));
    const std::size_t n = groups.size();
    if (n < 2) throw std::runtime_error("analyze: need at least two groups");

    std::vector<double> group_entropies;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = entropy_bits(*dist, groups[i]);
        group_entropies.push_back(h);
        report["quantities"]["H_group" + std::to_string(i + 1) + "_bits"] = h;
    }
    VarSet all = groups[0];
    for (std::size_t i = 1; i < n; ++i) all = all.union_with(groups[i]);
    report["quantities"]["H_joint_bits"] = entropy_bits(*dist, all);

    const InferenceReport inference = infer_multiplicity(*dist, groups, cfg.decision_tol_bits);
    const int c_cap =
        cfg.c > 0 ? std::min<int>(cfg.c, static_cast<int>(n) - 1) : static_cast<int>(n) - 1;
    for (const auto& entry : inference.per_c) {
        if (entry.c > c_cap) continue;
        report["quantities"]["I_" + std::to_string(entry.c) + "_bits"] = entry.criterion_bits;
        if (entry.qualifies && entry.bound_bits) {
            report["quantities"]["ancestor_entropy_bound_c" + std::to_string(entry.c) + "_bits"] =
                *entry.bound_bits;
        }
    }
    const bool concluded = append_conclusions(report, inference, c_cap);
    return emit(report, cfg, out, concluded);
}

int run_infer(const RunConfig& cfg, std::ostream& out) {
    if (cfg.values_path.empty()) throw std::runtime_error("infer: --values is required");
    const ObservationValues values = observation_values_from_json(load_json_file(cfg.values_path));
    const std::size_t n = values.group_count();

    std::vector<int> c_vec;
    if (!cfg.c_vec_spec.empty()) {
        c_vec = parse_c_vec(cfg.c_vec_spec);
    } else {
        const int c = cfg.c > 0 ? cfg.c : 1;
        c_vec.assign(n, c);
    }
    nlohmann::json report = base_report("infer", cfg.decision_tol_bits, cfg);
    const EpsilonBound eps = epsilon_and_bound(values, c_vec);
    report["quantities"]["epsilon_bits"] = eps.epsilon_bits;
    if (eps.information_bound_bits) {
        report["quantities"]["ancestor_information_bound_bits"] = *eps.information_bound_bits;
    }
    report["quantities"]["I_Y_ancestral_bits"] = values.ancestral_information_bits();
    if (values.y_is_function_of_obs()) {
        report["assumptions"].push_back("y_is_function_of_obs: I(Y:an(O)) = I(Y:O_[n])");
    } else {
        report["assumptions"].push_back("ancestral_info supplied by caller");
    }

    bool concluded = false;
    if (eps.epsilon_bits > cfg.decision_tol_bits) {
        concluded = true;
        nlohmann::json conclusion{{"claim", "common_ancestor_exists_for_some_group"},
                                  {"c_vec", c_vec},
                                  {"epsilon_bits", eps.epsilon_bits}};
        if (eps.information_bound_bits) conclusion["bound_bits"] = *eps.information_bound_bits;
        report["conclusions"].push_back(conclusion);
        report["assumptions"].push_back(
            "the claim is existential: some index i has a common ancestor of O_i and at least "
            "c_i other groups");
    }
    // Per-c sweep when the vector is uniform.
    const bool uniform = std::all_of(c_vec.begin(), c_vec.end(),
                                     [&](int c) { return c == c_vec.front(); });
    if (uniform) {
        const InferenceReport inference = infer_multiplicity(values, cfg.decision_tol_bits);
        for (const auto& entry : inference.per_c) {
            report["quantities"]["r_" + std::to_string(entry.c) + "_bits"] = entry.criterion_bits;
        }
        concluded = append_conclusions(report, inference, 0) || concluded;
    } else if (!concluded) {
        report["conclusions"].push_back(
            {{"c", 0}, {"claim", "no_conclusion"}, {"k", 0}});
    }
    return emit(report, cfg, out, concluded);
}

int run_check_dag(const RunConfig& cfg, std::ostream& out) {
    if (cfg.dag_path.empty() || cfg.dist_path.empty()) {
        throw std::runtime_error("check-dag: --dag and --dist are required");
    }
    DagSpec spec = dag_from_json(load_json_file(cfg.dag_path));
    const JointDistribution dist = distribution_from_json(load_json_file(cfg.dist_path));
    const DiscreteMeasure measure(dist);

    nlohmann::json report = base_report("check-dag", cfg.tol_bits, cfg);
    const MarkovCheckResult local = local_markov_holds(spec.dag, measure, cfg.tol_bits);
    report["quantities"]["local_markov_holds"] = local.holds;
    for (const auto& v : local.violations) {
        report["slacks"]["local_markov:" + v.context] = v.cmi_bits;
    }
    if (spec.dag.node_count() <= kMaxGlobalMarkovNodes) {
        const MarkovCheckResult global = global_markov_holds(spec.dag, measure, cfg.tol_bits);
        report["quantities"]["global_markov_holds"] = global.holds;
        for (const auto& v : global.violations) {
            report["slacks"]["global_markov:" + v.context] = v.cmi_bits;
        }
    }

    bool concluded = local.holds;
    if (!spec.groups.empty()) {
        std::vector<IndexSet> group_nodes;
        for (const auto& g : spec.groups) {
            IndexSet nodes;
            for (const auto& name : g) nodes.push_back(spec.dag.index_of(name));
            group_nodes.push_back(make_index_set(std::move(nodes)));
        }
        IndexSet y_nodes;
        for (const auto& name : spec.y) y_nodes.push_back(spec.dag.index_of(name));
        const ObservationGroups obs(spec.dag, group_nodes, make_index_set(std::move(y_nodes)));

        for (std::size_t i = 0; i < obs.group_count(); ++i) {
            report["quantities"]["d_" + std::to_string(i + 1)] =
                ancestor_multiplicity(spec.dag, obs, i);
        }

        if (!obs.y_nodes().empty()) {
            std::vector<VarSet> group_vars;
            for (const auto& g : spec.groups) {
                group_vars.push_back(VarSet::of_names(dist, g));
            }
            const VarSet y_vars = VarSet::of_names(dist, spec.y);
            const ObservationValues observed =
                observed_values_from_distribution(dist, group_vars, y_vars, false);
            const MarkovCheckResult model = validate_dag_model(
                spec.dag, measure, obs, observed.values_by_mask(), cfg.tol_bits);
            report["quantities"]["dag_model_valid"] = model.holds;
            for (const auto& v : model.violations) {
                report["slacks"]["dag_model:" + v.context] = v.cmi_bits;
            }
            concluded = concluded && model.holds;

            if (local.holds) {
                ElementSubset y_subset = ElementSubset::of_names(
                    measure.ground(), std::span<const std::string>(spec.y));
                const DecompositionReport decomp =
                    check_decomposition(spec.dag, measure, obs, y_subset, cfg.tol_bits);
                report["slacks"]["node_slack_bits"] = decomp.node_slack_bits;
                report["slacks"]["ancestral_slack_bits"] = decomp.ancestral_slack_bits;
                report["slacks"]["observed_slack_bits"] = decomp.observed_slack_bits;
                report["quantities"]["equality_condition_holds"] = decomp.equality_condition_holds;
                report["quantities"]["y_locality_holds"] = decomp.y_locality_holds;
                report["quantities"]["I_Y_observed_bits"] = decomp.observed_lhs_bits;
                report["quantities"]["I_Y_ancestral_bits"] = decomp.ancestral_lhs_bits;
            }
        }
    }
    report["assumptions"].push_back("observed values computed from the supplied joint");
    return emit(report, cfg, out, concluded);
}

int run_strings(const RunConfig& cfg, std::ostream& out) {
    if (cfg.files.size() < 2) throw std::runtime_error("strings: need at least two files");
    const StringCorpus corpus = StringCorpus::from_files(cfg.files);
    const int n = static_cast<int>(corpus.size());
    const int c = cfg.c > 0 ? cfg.c : 1;
    if (c > n - 1) throw std::runtime_error("strings: --c must be in [1, n-1]");
    const SlackBudget slack =
        cfg.slack_bits >= 0 ? SlackBudget{cfg.slack_bits} : SlackBudget::default_for(corpus.size());

    const CompressorHandle comp = make_xz_compressor();
    const StringInferenceReport result = infer_string_ancestors(comp, corpus, c, slack);

    nlohmann::json report = base_report("strings", slack.slack_bits, cfg);
    report["quantities"]["criterion_bits"] = result.criterion_bits;
    report["quantities"]["joint_k_bits"] = result.joint_k_bits;
    for (std::size_t i = 0; i < cfg.files.size(); ++i) {
        report["quantities"]["K_" + cfg.files[i] + "_bits"] = result.per_string_k_bits[i];
    }
    report["assumptions"].push_back("compressor: " + result.compressor);
    report["assumptions"].push_back(
        "compressed length stands in for Kolmogorov complexity; conclusions hold up to the "
        "declared slack");
    report["conclusions"].push_back(
        {{"c", c},
         {"claim", result.concluded ? "common_ancestor_ge" : "no_conclusion"},
         {"k", result.concluded ? c + 1 : 0},
         {"criterion_bits", result.criterion_bits}});
    return emit(report, cfg, out, result.concluded);
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    VerifyConfig config;
    config.trials = cfg.trials;
    config.n_nodes = cfg.nodes;
    config.seed = cfg.seed;
    config.threads = cfg.threads;
    config.tol_bits = cfg.tol_bits;
    const VerificationReport result = verify_batch(config);

    nlohmann::json report = base_report("verify", cfg.tol_bits, cfg);
    report["quantities"]["trials"] = config.trials;
    report["quantities"]["all_passed"] = result.all_passed();
    report["slacks"] = verification_report_to_json(result)["checks"];
    report["assumptions"].push_back(
        "trials are seed-deterministic; failing seeds reproduce violations");
    return emit(report, cfg, out, result.all_passed());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"information-theoretic inference of common ancestors"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol-bits", cfg.tol_bits, "numerical tolerance in bits");
        sub->add_option("--decision-tol-bits", cfg.decision_tol_bits,
                        "criterion threshold for conclusions, in bits");
        sub->add_option("--out", cfg.out_path, "write the report JSON here instead of stdout");
        sub->add_flag("--strict", cfg.strict, "exit 1 when no conclusion is drawn");
        sub->add_option("--seed", cfg.seed, "random seed")->each([&](const std::string&) {
            cfg.seed_given = true;
        });
    };

    CLI::App* analyze = app.add_subcommand("analyze", "I_c / r_c analysis of a distribution");
    analyze->add_option("--dist", cfg.dist_path, "distribution JSON");
    analyze->add_option("--samples", cfg.samples_path, "samples CSV");
    analyze->add_option("--groups", cfg.groups_spec, "groups, e.g. \"X1;X2,X3;X4\"");
    analyze->add_option("--c", cfg.c, "largest c to report");
    add_common(analyze);

    CLI::App* infer = app.add_subcommand("infer", "epsilon_c and bounds from observation values");
    infer->add_option("--values", cfg.values_path, "observation-values JSON");
    infer->add_option("--c", cfg.c, "uniform c");
    infer->add_option("--c-vec", cfg.c_vec_spec, "per-group c, e.g. \"2,2,2\"");
    add_common(infer);

    CLI::App* check = app.add_subcommand("check-dag", "Markov checks and decomposition slacks");
    check->add_option("--dag", cfg.dag_path, "DAG JSON");
    check->add_option("--dist", cfg.dist_path, "distribution JSON");
    add_common(check);

    CLI::App* strings = app.add_subcommand("strings", "common ancestors of files via compression");
    strings->add_option("--c", cfg.c, "multiplicity parameter");
    strings->add_option("--slack-bits", cfg.slack_bits, "slack budget in bits");
    strings->add_option("files", cfg.files, "input files")->expected(-1);
    add_common(strings);

    CLI::App* verify = app.add_subcommand("verify", "batch inequality verification on random nets");
    verify->add_option("--trials", cfg.trials, "number of seeded trials");
    verify->add_option("--nodes", cfg.nodes, "nodes per random net (2..6)");
    verify->add_option("--threads", cfg.threads, "worker threads");
    add_common(verify);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(cfg, out);
        if (infer->parsed()) return run_infer(cfg, out);
        if (check->parsed()) return run_check_dag(cfg, out);
        if (strings->parsed()) return run_strings(cfg, out);
        if (verify->parsed()) return run_verify(cfg, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cainfer
