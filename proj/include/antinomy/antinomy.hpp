// Deterministic consistency of vertices: whether a function table can be
// realized by a logically consistent deterministic environment. The
// canonical candidate realization is built from discriminability classes of
// remote settings; a vertex is classical iff that candidate passes the
// fixed-point test, antinomic otherwise. On top: minimum antinomic weight
// over all convex decompositions (robustness), with flag caches for the
// scenario-wide sweeps.
#pragma once

#include "antinomy/causality.hpp"
#include "antinomy/process.hpp"
#include "antinomy/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace antinomy {

// The canonical candidate realization of a vertex f: for each party k,
// remote setting tuples are identified when no own setting discriminates
// them; g_k labels the classes, and f'_k replays f on class representatives.
struct FaithfulRealization {
    Scenario scenario;
    std::vector<int> class_count;               // |B_k|
    std::vector<std::vector<int>> g;            // g[k][remoteIndex] = class label
    std::vector<std::vector<int>> f_prime;      // f'[k][a_k * |B_k| + b] = outcome
    QuasiProcessFunction candidate;             // g as map (a-tuples) -> (b-tuples)

    FaithfulRealization(Scenario sc, std::vector<int> counts,
                        std::vector<std::vector<int>> g_tables,
                        std::vector<std::vector<int>> fp,
                        QuasiProcessFunction cand);
};

FaithfulRealization faithful_candidate(const Vertex& v);

enum class DCVerdict { CLASSICAL, ANTINOMIC };

struct AntinomyVerdict {
    DCVerdict verdict = DCVerdict::CLASSICAL;
    // CLASSICAL: the certified realization.
    std::optional<FaithfulRealization> realization;
    // ANTINOMIC: a concrete intervention tuple on which the candidate's
    // fixed-point count is not one.
    std::optional<FixedPointWitness> witness;
};

AntinomyVerdict is_dc_vertex(const Vertex& v);

// Verdict bits for every vertex code of a scenario (1 = antinomic). Cached
// in memory per scenario; persisted under $ANTINOMY_CACHE_DIR when set.
// Refuses scenarios beyond `cap` vertices.
const std::vector<std::uint64_t>& antinomic_flags(const Scenario& sc, int jobs = 0,
                                                  std::uint64_t cap = (1ull << 25));
bool antinomic_flag(const std::vector<std::uint64_t>& bits, std::uint64_t code);

// Membership in the hull of classical-verdict vertices.
CausalCertificate dc_membership(const Correlation& p, int jobs = 0);

struct RobustnessResult {
    LPStatus status = LPStatus::OPTIMAL;  // INFEASIBLE when p leaves the pool's hull
    NumericMode mode = NumericMode::rational;
    Rat valueq;           // r_a: minimum total weight on antinomic vertices
    double valued = 0.0;
    // optimal decomposition: (vertex code, weight, antinomic?)
    struct Term {
        std::uint64_t code;
        Rat wq;
        double wd;
        bool antinomic;
    };
    std::vector<Term> decomposition;
    // dual certificate y over table cells: y.p = r_a, y.v <= 0 for classical
    // vertices, y.v <= 1 for antinomic ones (within kEps in double mode)
    std::vector<Rat> dualq;
    std::vector<double> duald;

    double value_d() const { return mode == NumericMode::rational ? to_double(valueq) : valued; }
};

// min sum of weights on antinomic vertices over all convex decompositions of
// p into deterministic vertices. Full pool by default; `pool` restricts the
// decomposition to an explicit vertex list (the result is then relative to
// that pool and may be INFEASIBLE).
RobustnessResult robustness_of_antinomy(const Correlation& p, int jobs = 0);
RobustnessResult robustness_of_antinomy(const Correlation& p,
                                        const std::vector<Vertex>& pool);

// Re-derive a result's certificate against the full vertex pool of the
// correlation's scenario: decomposition nonnegative, summing to one,
// reproducing p, with correctly flagged terms, plus the dual inequalities
// over every vertex. Used by tests.
bool verify_robustness_certificate(const Correlation& p, const RobustnessResult& r,
                                   int jobs = 0);

}  // namespace antinomy
