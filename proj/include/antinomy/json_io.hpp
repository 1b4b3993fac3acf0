// JSON serialization for every on-disk format. Rational entries travel as
// "num/den" strings in lowest terms, doubles as JSON numbers; tables are
// arrays of columns, outer index = setting tuple, inner = outcome tuple,
// both lexicographic with party 1 most significant.
#pragma once

#include "antinomy/antinomy.hpp"
#include "antinomy/causality.hpp"
#include "antinomy/process.hpp"
#include "antinomy/quantum.hpp"
#include "antinomy/scenario.hpp"
#include "antinomy/witness.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace antinomy {

using json = nlohmann::json;

json to_json(const Scenario& sc);
Scenario scenario_from_json(const json& j);

json to_json(const Correlation& p);
Correlation correlation_from_json(const json& j);

json to_json(const Vertex& v);
Vertex vertex_from_json(const json& j);

json to_json(const Digraph& g);  // 1-based edge pairs
Digraph digraph_from_json(const json& j);

json to_json(const StochasticProcess& p);
StochasticProcess stochastic_process_from_json(const json& j);

json to_json(const QuasiProcessFunction& w);
QuasiProcessFunction quasi_process_function_from_json(const json& j);

json to_json(const ProcessMatrix& w);  // entries as [re, im] pairs, row-major
ProcessMatrix process_matrix_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);

json to_json(const Census& c);
std::string census_to_csv(const Census& c);

json to_json(const AntinomyVerdict& v);
json to_json(const RobustnessResult& r);
json to_json(const CausalCertificate& c);
json to_json(const DEPDecomposition& d);

// Envelope written by the command-line tool: arguments echoed, results,
// library version. Deterministic field order; no wall-clock content unless
// explicitly requested, so identical invocations serialize identically.
struct RunReport {
    std::string command;
    json arguments;
    std::string mode;  // "rational" | "double"
    json result;
    std::optional<double> elapsed_ms;  // only with --timings
};
json to_json(const RunReport& r);

}  // namespace antinomy
