// JSON codecs for the on-disk formats. One helper pair handles NumTable
// columns in both numeric modes; everything else is field plumbing. All
// deserializers validate through the owning type's constructor so malformed
// documents surface as std::invalid_argument with a usable message.
#include "antinomy/json_io.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace antinomy {

namespace {

const char* mode_name(NumericMode m) {
    return m == NumericMode::rational ? "rational" : "double";
}

NumericMode mode_from_name(const std::string& s) {
    if (s == "rational") return NumericMode::rational;
    if (s == "double") return NumericMode::dbl;
    throw std::invalid_argument("unknown numeric mode \"" + s + "\"");
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return *it;
}

std::vector<int> int_vector(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(e.get<int>());
    return out;
}

// Tables travel as arrays of columns: outer index = column, inner = row.
json table_to_json(const NumTable& t) {
    json cols = json::array();
    for (std::size_t c = 0; c < t.cols; ++c) {
        json col = json::array();
        for (std::size_t r = 0; r < t.rows; ++r) {
            if (t.is_rational())
                col.push_back(rat_to_string(t.q(r, c)));
            else
                col.push_back(t.d(r, c));
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

NumTable table_from_json(const json& jt, NumericMode mode, std::size_t rows,
                         std::size_t cols) {
    if (!jt.is_array() || jt.size() != cols)
        throw std::invalid_argument("table must have " + std::to_string(cols) + " columns");
    NumTable t = NumTable::zeros(mode, rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const json& col = jt[c];
        if (!col.is_array() || col.size() != rows)
            throw std::invalid_argument("table column " + std::to_string(c) + " must have " +
                                        std::to_string(rows) + " entries");
        for (std::size_t r = 0; r < rows; ++r) {
            if (mode == NumericMode::rational) {
                if (!col[r].is_string())
                    throw std::invalid_argument("rational entries must be \"num/den\" strings");
                t.q(r, c) = rat_from_string(col[r].get<std::string>());
            } else {
                t.d(r, c) = col[r].get<double>();
            }
        }
    }
    return t;
}

json rat_vector_to_json(const std::vector<Rat>& v) {
    json out = json::array();
    for (const Rat& r : v) out.push_back(rat_to_string(r));
    return out;
}

json process_dims_to_json(const ProcessDims& d) {
    return json{{"i", d.dims_i}, {"o", d.dims_o}};
}

ProcessDims process_dims_from_json(const json& j) {
    return ProcessDims(int_vector(field(j, "i"), "dims.i"),
                       int_vector(field(j, "o"), "dims.o"));
}

}  // namespace

json to_json(const Scenario& sc) {
    return json{{"settings", sc.settings}, {"outcomes", sc.outcomes}};
}

Scenario scenario_from_json(const json& j) {
    return Scenario(int_vector(field(j, "settings"), "scenario.settings"),
                    int_vector(field(j, "outcomes"), "scenario.outcomes"));
}

json to_json(const Correlation& p) {
    return json{{"scenario", to_json(p.scenario)},
                {"numeric", mode_name(p.table.mode)},
                {"table", table_to_json(p.table)}};
}

Correlation correlation_from_json(const json& j) {
    Scenario sc = scenario_from_json(field(j, "scenario"));
    NumericMode mode = mode_from_name(field(j, "numeric").get<std::string>());
    NumTable t = table_from_json(field(j, "table"), mode, sc.outcome_tuples(),
                                 sc.setting_tuples());
    return Correlation(std::move(sc), std::move(t));
}

json to_json(const Vertex& v) {
    return json{{"scenario", to_json(v.scenario)}, {"f", v.f}};
}

Vertex vertex_from_json(const json& j) {
    Scenario sc = scenario_from_json(field(j, "scenario"));
    const json& jf = field(j, "f");
    if (!jf.is_array()) throw std::invalid_argument("vertex f must be an array");
    std::vector<std::uint32_t> f;
    f.reserve(jf.size());
    for (const auto& e : jf) f.push_back(e.get<std::uint32_t>());
    return Vertex(std::move(sc), std::move(f));
}

json to_json(const Digraph& g) {
    json edges = json::array();
    for (auto [k, l] : g.edges()) edges.push_back(json::array({k + 1, l + 1}));
    return json{{"n", g.n}, {"edges", std::move(edges)}};
}

Digraph digraph_from_json(const json& j) {
    int n = field(j, "n").get<int>();
    const json& je = field(j, "edges");
    if (!je.is_array()) throw std::invalid_argument("digraph edges must be an array");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(je.size());
    for (const auto& e : je) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("digraph edge must be a [k,l] pair");
        int k = e[0].get<int>(), l = e[1].get<int>();
        if (k < 1 || k > n || l < 1 || l > n)
            throw std::invalid_argument("digraph edge endpoints are 1-based party indices");
        edges.emplace_back(k - 1, l - 1);
    }
    return Digraph(n, edges);
}

json to_json(const StochasticProcess& p) {
    return json{{"dims", process_dims_to_json(p.dims)},
                {"numeric", mode_name(p.table.mode)},
                {"table", table_to_json(p.table)}};
}

StochasticProcess stochastic_process_from_json(const json& j) {
    ProcessDims dims = process_dims_from_json(field(j, "dims"));
    NumericMode mode = mode_from_name(field(j, "numeric").get<std::string>());
    NumTable t = table_from_json(field(j, "table"), mode, dims.i_tuples(), dims.o_tuples());
    return StochasticProcess(std::move(dims), std::move(t));
}

json to_json(const QuasiProcessFunction& w) {
    return json{{"dims", process_dims_to_json(w.dims)}, {"omega", w.omega}};
}

QuasiProcessFunction quasi_process_function_from_json(const json& j) {
    ProcessDims dims = process_dims_from_json(field(j, "dims"));
    const json& jo = field(j, "omega");
    if (!jo.is_array()) throw std::invalid_argument("omega must be an array");
    std::vector<std::uint32_t> omega;
    omega.reserve(jo.size());
    for (const auto& e : jo) omega.push_back(e.get<std::uint32_t>());
    return QuasiProcessFunction(std::move(dims), std::move(omega));
}

json to_json(const ProcessMatrix& w) {
    json entries = json::array();
    for (const cplx& z : w.w.a) entries.push_back(json::array({z.real(), z.imag()}));
    return json{{"dims", json{{"i", w.dims_i}, {"o", w.dims_o}}},
                {"entries", std::move(entries)}};
}

ProcessMatrix process_matrix_from_json(const json& j) {
    const json& jd = field(j, "dims");
    std::vector<int> di = int_vector(field(jd, "i"), "dims.i");
    std::vector<int> dob = int_vector(field(jd, "o"), "dims.o");
    std::size_t dim = 1;
    for (std::size_t k = 0; k < di.size() && k < dob.size(); ++k)
        dim *= static_cast<std::size_t>(di[k]) * static_cast<std::size_t>(dob[k]);
    const json& je = field(j, "entries");
    if (!je.is_array() || je.size() != dim * dim)
        throw std::invalid_argument("process matrix needs " + std::to_string(dim * dim) +
                                    " row-major [re,im] entries");
    CMat m(dim);
    for (std::size_t idx = 0; idx < dim * dim; ++idx) {
        const json& e = je[idx];
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("process matrix entries must be [re,im] pairs");
        m.a[idx] = cplx{e[0].get<double>(), e[1].get<double>()};
    }
    return ProcessMatrix(std::move(di), std::move(dob), std::move(m));
}

json to_json(const Witness& w) {
    json out{{"name", w.name},
             {"scenario", to_json(w.scenario)},
             {"numeric", mode_name(w.coeff.mode)},
             {"coeff", table_to_json(w.coeff)},
             {"pi", table_to_json(w.pi)}};
    json bounds = json::object();
    if (w.bounds.causal) bounds["causal"] = rat_to_string(*w.bounds.causal);
    if (w.bounds.classical) bounds["classical"] = rat_to_string(*w.bounds.classical);
    if (w.bounds.algebraic) bounds["algebraic"] = rat_to_string(*w.bounds.algebraic);
    if (!bounds.empty()) out["bounds"] = std::move(bounds);
    return out;
}

Witness witness_from_json(const json& j) {
    std::string name = field(j, "name").get<std::string>();
    Scenario sc = scenario_from_json(field(j, "scenario"));
    NumericMode mode = mode_from_name(field(j, "numeric").get<std::string>());
    std::size_t rows = sc.outcome_tuples(), cols = sc.setting_tuples();
    NumTable coeff = table_from_json(field(j, "coeff"), mode, rows, cols);
    Witness w = j.contains("pi")
                    ? Witness(std::move(name), sc, std::move(coeff),
                              table_from_json(j["pi"], mode, 1, cols))
                    : Witness(std::move(name), sc, std::move(coeff));
    if (j.contains("bounds")) {
        const json& b = j["bounds"];
        if (b.contains("causal")) w.bounds.causal = rat_from_string(b["causal"].get<std::string>());
        if (b.contains("classical"))
            w.bounds.classical = rat_from_string(b["classical"].get<std::string>());
        if (b.contains("algebraic"))
            w.bounds.algebraic = rat_from_string(b["algebraic"].get<std::string>());
    }
    return w;
}

json to_json(const Census& c) {
    json rows = json::array();
    for (const CensusRow& row : c.rows) {
        json by_graph = json::array();
        for (const auto& [key, tc] : row.by_graph)
            by_graph.push_back(json{{"key", key},
                                    {"edges", to_json(digraph_from_key(row.cls.n, key))["edges"]},
                                    {"total", tc.first},
                                    {"causal", tc.second}});
        rows.push_back(json{{"class", row.cls.canon},
                            {"representative", to_json(row.cls.representative)},
                            {"total", row.total},
                            {"causal", row.causal},
                            {"noncausal", row.noncausal},
                            {"by_graph", std::move(by_graph)}});
    }
    return json{{"scenario", to_json(c.scenario)},
                {"total", c.total()},
                {"classes", std::move(rows)}};
}

std::string census_to_csv(const Census& c) {
    std::ostringstream out;
    out << "class,edges,total,causal,noncausal\n";
    for (const CensusRow& row : c.rows) {
        out << row.cls.canon << ",\"";
        bool first = true;
        for (auto [k, l] : row.cls.representative.edges()) {
            if (!first) out << ";";
            first = false;
            out << (k + 1) << "->" << (l + 1);
        }
        out << "\"," << row.total << "," << row.causal << "," << row.noncausal << "\n";
    }
    return out.str();
}

json to_json(const AntinomyVerdict& v) {
    json out{{"verdict", v.verdict == DCVerdict::CLASSICAL ? "CLASSICAL" : "ANTINOMIC"}};
    if (v.realization) {
        const FaithfulRealization& r = *v.realization;
        out["realization"] = json{{"scenario", to_json(r.scenario)},
                                  {"class_count", r.class_count},
                                  {"g", r.g},
                                  {"f_prime", r.f_prime},
                                  {"candidate", to_json(r.candidate)}};
    }
    if (v.witness)
        out["witness"] = json{{"h", v.witness->h}, {"fixed_points", v.witness->fixed_points}};
    return out;
}

json to_json(const RobustnessResult& r) {
    bool rational = r.mode == NumericMode::rational;
    json out{{"status", r.status == LPStatus::OPTIMAL
                            ? "optimal"
                            : (r.status == LPStatus::INFEASIBLE ? "infeasible" : "unbounded")},
             {"numeric", mode_name(r.mode)}};
    if (r.status == LPStatus::OPTIMAL) {
        out["value"] = rational ? json(rat_to_string(r.valueq)) : json(r.valued);
        json terms = json::array();
        for (const auto& term : r.decomposition)
            terms.push_back(json{{"code", term.code},
                                 {"weight", rational ? json(rat_to_string(term.wq)) : json(term.wd)},
                                 {"antinomic", term.antinomic}});
        out["decomposition"] = std::move(terms);
    }
    out["dual"] = rational ? rat_vector_to_json(r.dualq) : json(r.duald);
    return out;
}

json to_json(const CausalCertificate& c) {
    bool rational = c.mode == NumericMode::rational;
    json out{{"member", c.member}, {"numeric", mode_name(c.mode)}};
    if (c.member) {
        json terms = json::array();
        if (rational) {
            for (const auto& [code, w] : c.decompq)
                terms.push_back(json{{"code", code}, {"weight", rat_to_string(w)}});
        } else {
            for (const auto& [code, w] : c.decompd)
                terms.push_back(json{{"code", code}, {"weight", w}});
        }
        out["decomposition"] = std::move(terms);
    } else {
        out["separating"] = rational ? rat_vector_to_json(c.sepq) : json(c.sepd);
    }
    return out;
}

json to_json(const DEPDecomposition& d) {
    bool rational = d.mode == NumericMode::rational;
    json out{{"member", d.member}, {"numeric", mode_name(d.mode)}};
    if (d.member) {
        json terms = json::array();
        if (rational) {
            for (const auto& [code, w] : d.decompq)
                terms.push_back(json{{"code", code}, {"weight", rat_to_string(w)}});
        } else {
            for (const auto& [code, w] : d.decompd)
                terms.push_back(json{{"code", code}, {"weight", w}});
        }
        out["decomposition"] = std::move(terms);
    } else {
        out["separating"] = rational ? rat_vector_to_json(d.sepq) : json(d.sepd);
    }
    return out;
}

json to_json(const RunReport& r) {
    json out{{"command", r.command},
             {"arguments", r.arguments},
             {"mode", r.mode},
             {"result", r.result}};
    if (r.elapsed_ms) out["elapsed_ms"] = *r.elapsed_ms;
    return out;
}

}  // namespace antinomy
