// Classical processes without assumed causal order: deterministic
// quasi-process functions (maps from the parties' outputs to their inputs),
// stochastic processes, local interventions, the fixed-point criterion that
// singles out the logically consistent deterministic ones, and the polytope
// spanned by them.
#pragma once

#include "antinomy/digraph.hpp"
#include "antinomy/hull.hpp"
#include "antinomy/numeric.hpp"
#include "antinomy/scenario.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace antinomy {

// Dimensions of the process wiring: party k emits o_k (sizes dims_o) into
// the environment and receives i_k (sizes dims_i) back.
struct ProcessDims {
    std::vector<int> dims_i;
    std::vector<int> dims_o;

    ProcessDims() = default;
    ProcessDims(std::vector<int> di, std::vector<int> dob);
    static ProcessDims uniform(int parties, int di, int dob);

    int parties() const { return static_cast<int>(dims_i.size()); }
    std::size_t i_tuples() const;
    std::size_t o_tuples() const;
    std::size_t i_index(const std::vector<int>& i) const;
    std::size_t o_index(const std::vector<int>& o) const;
    std::vector<int> i_tuple(std::size_t idx) const;
    std::vector<int> o_tuple(std::size_t idx) const;
    bool operator==(const ProcessDims& other) const {
        return dims_i == other.dims_i && dims_o == other.dims_o;
    }
};

// Deterministic environment map i-vector = omega(o-vector), componentwise
// omega_k. Not presumed consistent: "quasi" until the fixed-point check
// passes.
struct QuasiProcessFunction {
    ProcessDims dims;
    std::vector<std::uint32_t> omega;  // omega[oIndex] = iIndex

    QuasiProcessFunction(ProcessDims d, std::vector<std::uint32_t> table);
    std::size_t component(int party, std::size_t o_idx) const;
};

// P(i-vector | o-vector), columns (one per o-tuple) sum to one.
struct StochasticProcess {
    ProcessDims dims;
    NumTable table;  // rows = i tuples, cols = o tuples

    StochasticProcess(ProcessDims d, NumTable t);
};

// One party's local operation p(x_k, o_k | a_k, i_k). The deterministic
// variant is a pair of tables x_k = phi(a_k, i_k), o_k = psi(a_k, i_k).
struct LocalIntervention {
    int n_x, n_o, n_a, n_i;
    NumTable table;  // rows = (x,o) pairs (x major), cols = (a,i) pairs (a major)

    LocalIntervention(int nx, int no, int na, int ni, NumTable t);
    static LocalIntervention deterministic(int nx, int no, int na, int ni,
                                           const std::vector<int>& phi,   // x = phi[a*n_i + i]
                                           const std::vector<int>& psi);  // o = psi[a*n_i + i]
    // x_k = i_k, o_k = a_k (requires n_x == n_i and n_o == n_a).
    static LocalIntervention pass_through(int n_io, int n_ao);
};

// The outcome of the fixed-point test. For a failing intervention tuple h
// (one map I_k -> O_k per party, encoded componentwise), `fixed_points`
// reports how many fixed points omega.h has (anything but exactly 1 fails).
struct FixedPointWitness {
    std::vector<std::vector<int>> h;  // h[k][i_k] = o_k
    std::size_t fixed_points = 0;
};

// True iff for every tuple of deterministic maps h_k : I_k -> O_k the
// composite i -> omega(h(i)) has exactly one fixed point. Refuses dims with
// more than 2^20 intervention tuples.
bool is_process_function(const QuasiProcessFunction& w,
                         FixedPointWitness* failure = nullptr);

// True iff every deterministic intervention tuple yields total probability
// one: sum_i P(i | h(i)) == 1 for all h (exact in rational mode, within kEps
// in double mode).
bool is_logically_consistent(const StochasticProcess& p,
                             FixedPointWitness* failure = nullptr);

// Edge (k, l), k != l, iff omega_l depends nontrivially on o_k.
Digraph causal_structure(const QuasiProcessFunction& w);

// Normalization report attached to correlations induced by possibly
// inconsistent quasi-processes: correlation_from_process never clamps, it
// returns the raw table and flags every non-unit column sum here.
struct NormalizationReport {
    bool normalized = true;
    std::vector<std::size_t> bad_columns;  // setting-tuple indices
    double worst_deviation = 0.0;
};

// p(x|a) = sum_{i,o} [prod_k p(x_k, o_k | a_k, i_k)] P(i|o). The scenario has
// M_k = n_a and D_k = n_x per party. The returned table is NOT validated as
// a correlation; callers inspect `report`.
NumTable correlation_from_process(const StochasticProcess& p,
                                  const std::vector<LocalIntervention>& ops,
                                  NormalizationReport* report = nullptr);

// Deterministic process realizing a deterministic process function.
StochasticProcess process_of_function(const QuasiProcessFunction& w,
                                      NumericMode mode = NumericMode::rational);

// Rewrites a correlation as a stochastic process (i = x, o = a) together
// with the pass-through interventions that reproduce it.
struct QuasiRealization {
    StochasticProcess process;
    std::vector<LocalIntervention> ops;
};
QuasiRealization quasi_realize(const Correlation& p);

// All process functions with the given dims, by increasing packed code
// (code = sum_o omega(o) * i_tuples^o). Refuses candidate spaces larger
// than 2^25 or intervention spaces larger than 2^20.
std::vector<QuasiProcessFunction> enumerate_process_functions(const ProcessDims& dims,
                                                              int jobs = 0);

std::uint64_t process_function_code(const QuasiProcessFunction& w);
QuasiProcessFunction process_function_from_code(const ProcessDims& dims, std::uint64_t code);

// The three-party binary process function i1 = (1-o2)o3, i2 = (1-o3)o1,
// i3 = (1-o1)o2 and its 64 images under independent bit flips of each i_k
// and each o_k (all distinct, all process functions).
QuasiProcessFunction afbw_function();
std::vector<QuasiProcessFunction> afbw_family();

// The logically consistent three-party binary process that mixes the two
// circular shifts with equal weight: P(i|o) = 1/2 [i = (o3,o1,o2)] +
// 1/2 [i = (1-o3, 1-o1, 1-o2)]. Not an extreme point of the deterministic
// polytope (dep_membership returns INFEASIBLE on it).
StochasticProcess bfw_process();

// Membership of a stochastic process in the convex hull of the process
// functions of its dims (the deterministic-extrema polytope).
struct DEPDecomposition {
    bool member = false;
    NumericMode mode = NumericMode::rational;
    std::vector<std::pair<std::uint64_t, Rat>> decompq;   // process-function codes
    std::vector<std::pair<std::uint64_t, double>> decompd;
    // non-member: Farkas functional over table cells
    std::vector<Rat> sepq;
    std::vector<double> sepd;
};

DEPDecomposition dep_membership(const StochasticProcess& p);

}  // namespace antinomy
