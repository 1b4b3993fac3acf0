// Dense primal simplex for small linear programs in standard equality form:
//     minimize c'x  subject to  Ax = b, x >= 0.
// Two interchangeable backends behind one interface: exact rational pivoting
// and double pivoting with a fixed epsilon. Phase 1 / phase 2 with Bland's
// rule (no cycling). Outcomes carry certificates: optimal primal+dual pair,
// a Farkas witness of infeasibility, or an unbounded ray.
#pragma once

#include "antinomy/numeric.hpp"

#include <cstddef>
#include <vector>

namespace antinomy {

struct LinearProgram {
    std::size_t m = 0, n = 0;      // rows, columns
    std::vector<Rat> aq, bq, cq;   // rational data (row-major A), used in rational mode
    std::vector<double> ad, bd, cd;  // double data, used in double mode
    NumericMode mode = NumericMode::rational;

    static LinearProgram rational(std::size_t m, std::size_t n,
                                  std::vector<Rat> A, std::vector<Rat> b,
                                  std::vector<Rat> c);
    static LinearProgram dense(std::size_t m, std::size_t n,
                               std::vector<double> A, std::vector<double> b,
                               std::vector<double> c);
};

enum class LPStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

struct LPOutcome {
    LPStatus status = LPStatus::OPTIMAL;
    NumericMode mode = NumericMode::rational;

    // OPTIMAL: primal solution x (length n), dual y (length m), objective.
    std::vector<Rat> xq, yq;
    std::vector<double> xd, yd;
    Rat objq;
    double objd = 0.0;

    // INFEASIBLE: Farkas certificate y with y'A <= 0 (componentwise over
    // columns) and y'b > 0.
    std::vector<Rat> farkasq;
    std::vector<double> farkasd;

    // UNBOUNDED: feasible point + improving ray r >= 0 with Ar = 0, c'r < 0.
    std::vector<Rat> rayq;
    std::vector<double> rayd;

    double objective_d() const { return mode == NumericMode::rational ? to_double(objq) : objd; }
};

LPOutcome solve_lp(const LinearProgram& lp);

// Re-derivations used by tests and result verification. They recompute the
// claimed identities from scratch against the LP data.
bool verify_optimal(const LinearProgram& lp, const LPOutcome& out, double eps = kEps);
bool verify_farkas(const LinearProgram& lp, const LPOutcome& out, double eps = kEps);
bool verify_ray(const LinearProgram& lp, const LPOutcome& out, double eps = kEps);

}  // namespace antinomy
