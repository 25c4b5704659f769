#include "cainfer/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cainfer {
namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

std::string subset_key(std::uint32_t mask) {
    std::string key;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) {
            if (!key.empty()) key += ",";
            key += std::to_string(i + 1);
        }
    }
    return key;
}

std::uint32_t subset_mask(const std::string& key, std::size_t n) {
    if (key.empty()) return 0;
    std::uint32_t mask = 0;
    std::stringstream ss(key);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::size_t pos = 0;
        const unsigned long idx = std::stoul(token, &pos);
        if (pos != token.size() || idx < 1 || idx > n) {
            fail("observation values: bad subset key '" + key + "'");
        }
        mask |= std::uint32_t{1} << (idx - 1);
    }
    return mask;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, sep)) out.push_back(token);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

JointDistribution distribution_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("variables") || !j.contains("probs")) {
        fail("distribution: expected an object with 'variables' and 'probs'");
    }
    std::vector<VariableDecl> vars;
    for (const auto& v : j.at("variables")) {
        if (!v.contains("name") || !v.contains("cardinality")) {
            fail("distribution: each variable needs 'name' and 'cardinality'");
        }
        vars.push_back({v.at("name").get<std::string>(), v.at("cardinality").get<std::uint32_t>()});
    }
    std::vector<double> probs;
    for (const auto& p : j.at("probs")) probs.push_back(p.get<double>());
    try {
        return JointDistribution(std::move(vars), std::move(probs));
    } catch (const std::invalid_argument& e) {
        fail(std::string("distribution: ") + e.what());
    }
}

nlohmann::json distribution_to_json(const JointDistribution& dist) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : dist.variables()) {
        vars.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
    }
    return {{"variables", vars}, {"probs", dist.probabilities()}};
}

SampleTable sample_table_from_csv(std::istream& in) {
    SampleTable table;
    std::string line;
    if (!std::getline(in, line)) fail("samples: empty file");
    std::vector<bool> declared;
    for (const auto& raw : split(line, ',')) {
        const std::string cell = trimmed(raw);
        if (cell.empty()) fail("samples: empty header cell");
        const auto colon = cell.find(':');
        if (colon == std::string::npos) {
            table.variables.push_back({cell, 0});
            declared.push_back(false);
        } else {
            const std::string name = trimmed(cell.substr(0, colon));
            std::size_t pos = 0;
            const std::string card_str = trimmed(cell.substr(colon + 1));
            const unsigned long card = std::stoul(card_str, &pos);
            if (name.empty() || pos != card_str.size() || card < 1) {
                fail("samples: bad header cell '" + cell + "'");
            }
            table.variables.push_back({name, static_cast<std::uint32_t>(card)});
            declared.push_back(true);
        }
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != table.variables.size()) {
            fail("samples: row " + std::to_string(line_no) + " has " +
                 std::to_string(cells.size()) + " cells, expected " +
                 std::to_string(table.variables.size()));
        }
        std::vector<std::uint32_t> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trimmed(cells[c]);
            std::size_t pos = 0;
            unsigned long value = 0;
            try {
                value = std::stoul(cell, &pos);
            } catch (...) {
                pos = std::string::npos;
            }
            if (cell.empty() || pos != cell.size()) {
                fail("samples: row " + std::to_string(line_no) + ", column '" +
                     table.variables[c].name + "': bad value '" + cell + "'");
            }
            row.push_back(static_cast<std::uint32_t>(value));
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) fail("samples: no data rows");
    for (std::size_t c = 0; c < table.variables.size(); ++c) {
        std::uint32_t max_seen = 0;
        for (const auto& row : table.rows) max_seen = std::max(max_seen, row[c]);
        if (!declared[c]) {
            table.variables[c].cardinality = max_seen + 1;
        } else if (max_seen >= table.variables[c].cardinality) {
            fail("samples: column '" + table.variables[c].name + "' has value " +
                 std::to_string(max_seen) + " outside declared cardinality " +
                 std::to_string(table.variables[c].cardinality));
        }
    }
    return table;
}

DagSpec dag_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges")) {
        fail("dag: expected an object with 'nodes' and 'edges'");
    }
    std::vector<std::string> nodes;
    for (const auto& n : j.at("nodes")) nodes.push_back(n.get<std::string>());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) fail("dag: each edge must be [parent, child]");
        edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    DagSpec spec{Dag(std::move(nodes), edges), {}, {}};
    if (j.contains("groups")) {
        for (const auto& g : j.at("groups")) {
            std::vector<std::string> group;
            for (const auto& name : g) group.push_back(name.get<std::string>());
            spec.groups.push_back(std::move(group));
        }
    }
    if (j.contains("y") && !j.at("y").is_null()) {
        for (const auto& name : j.at("y")) spec.y.push_back(name.get<std::string>());
    }
    return spec;
}

ObservationValues observation_values_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("values")) {
        fail("observation values: expected an object with 'n' and 'values'");
    }
    const std::size_t n = j.at("n").get<std::size_t>();
    if (n < 1 || n > 24) fail("observation values: n out of range");
    std::vector<double> values(std::size_t{1} << n, 0.0);
    std::vector<bool> present(values.size(), false);
    for (const auto& [key, value] : j.at("values").items()) {
        const std::uint32_t mask = subset_mask(key, n);
        if (present[mask]) fail("observation values: duplicate subset key '" + key + "'");
        present[mask] = true;
        values[mask] = value.get<double>();
    }
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
        if (!present[mask]) {
            fail("observation values: missing subset key '" + subset_key(mask) + "'");
        }
    }
    std::optional<double> ancestral;
    if (j.contains("ancestral_info") && !j.at("ancestral_info").is_null()) {
        ancestral = j.at("ancestral_info").get<double>();
    }
    const bool flag = j.value("y_is_function_of_obs", false);
    try {
        return ObservationValues(n, std::move(values), ancestral, flag);
    } catch (const std::invalid_argument& e) {
        fail(std::string("observation values: ") + e.what());
    }
}

nlohmann::json observation_values_to_json(const ObservationValues& values) {
    nlohmann::json map = nlohmann::json::object();
    for (std::size_t mask = 0; mask < values.values_by_mask().size(); ++mask) {
        map[subset_key(static_cast<std::uint32_t>(mask))] = values.values_by_mask()[mask];
    }
    nlohmann::json out{{"n", values.group_count()},
                       {"values", map},
                       {"y_is_function_of_obs", values.y_is_function_of_obs()}};
    if (values.ancestral_info_bits()) {
        out["ancestral_info"] = *values.ancestral_info_bits();
    } else {
        out["ancestral_info"] = nullptr;
    }
    return out;
}

nlohmann::json verification_report_to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& t : report.checks) {
        nlohmann::json entry{{"instances", t.instances}, {"violations", t.violations}};
        if (t.worst_slack_bits) {
            entry["worst_slack_bits"] = *t.worst_slack_bits;
        } else {
            entry["worst_slack_bits"] = nullptr;
        }
        if (!t.failing_seeds.empty()) entry["failing_seeds"] = t.failing_seeds;
        checks[t.check] = entry;
    }
    return {{"trials", report.config.trials},
            {"nodes", report.config.n_nodes},
            {"edge_prob", report.config.edge_prob},
            {"max_card", report.config.max_card},
            {"tol_bits", report.config.tol_bits},
            {"all_passed", report.all_passed()},
            {"checks", checks}};
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        fail("'" + path + "': " + e.what());
    }
    return j;
}

}  // namespace cainfer
