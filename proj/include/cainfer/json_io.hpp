#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cainfer/dag.hpp"
#include "cainfer/distribution.hpp"
#include "cainfer/inference.hpp"
#include "cainfer/oracle.hpp"

namespace cainfer {

// File formats of the CLI. All ingestion throws std::runtime_error with the
// offending field on malformed input; all emission uses sorted keys so reports
// are byte-identical for identical inputs.

// {"variables":[{"name":"X1","cardinality":2},...],"probs":[...]}
// Dense row-major, last variable fastest.
JointDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const JointDistribution& dist);

// CSV with a header of variable names; body rows of integer category indices.
// Cardinality is inferred as max+1 unless declared in the header as "name:card".
SampleTable sample_table_from_csv(std::istream& in);

// {"nodes":[...],"edges":[["parent","child"],...],"groups":[["X1"],...],"y":["Y"]}
struct DagSpec {
    Dag dag;
    std::vector<std::vector<std::string>> groups;
    std::vector<std::string> y;
};
DagSpec dag_from_json(const nlohmann::json& j);

// {"n":3,"values":{"":0,"1":...,"1,2":...},"ancestral_info":null,
//  "y_is_function_of_obs":true}; subset keys are comma-joined sorted 1-based indices.
ObservationValues observation_values_from_json(const nlohmann::json& j);
nlohmann::json observation_values_to_json(const ObservationValues& values);

nlohmann::json verification_report_to_json(const VerificationReport& report);

nlohmann::json load_json_file(const std::string& path);

}  // namespace cainfer
