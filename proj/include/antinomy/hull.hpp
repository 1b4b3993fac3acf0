// Convex-hull membership and minimum-weight decompositions over pools of
// deterministic columns (vertices / process functions), by direct LP for
// small pools and by column generation with exact re-pricing for pools far
// too large to materialize (tens of millions of candidates).
#pragma once

#include "antinomy/lp.hpp"
#include "antinomy/numeric.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace antinomy {

// A pool of candidate columns. Each column is identified by an opaque code
// and materializes to a function table (one outcome index per column of the
// target table); its LP column is the corresponding 0/1 indicator table.
class ColumnPool {
  public:
    virtual ~ColumnPool() = default;
    // Number of outcome rows / setting columns of the tables this pool feeds.
    virtual std::size_t table_rows() const = 0;
    virtual std::size_t table_cols() const = 0;
    // Pool size when explicitly enumerable, 0 if scan-only.
    virtual std::size_t size() const = 0;
    // Deterministic seed columns for the restricted master.
    virtual std::vector<std::uint64_t> initial() const = 0;
    // Objective coefficient of a column (e.g. 1 on antinomic vertices).
    virtual int cost(std::uint64_t code) const = 0;
    virtual std::vector<std::uint32_t> table_of(std::uint64_t code) const = 0;
    // Append to `out` up to `cap` codes whose reduced cost under duals `y`
    // (approximate, one entry per table cell, row-major) is below `threshold`,
    // most negative first; `with_cost` false prices pure feasibility (cost
    // treated as zero, used with Farkas duals). `y` has
    // table_rows()*table_cols() entries. Returns true when the scan was
    // truncated at `cap` (more candidates exist).
    virtual bool price(const std::vector<double>& y, bool with_cost, double threshold,
                       std::size_t cap, std::vector<std::uint64_t>& out) const = 0;
    // Full exact scan (rational duals): append up to `cap` codes with exact
    // reduced cost < 0. Fallback when approximate pricing cannot certify
    // termination; must be implemented by scan-only pools.
    virtual void exact_price(const std::vector<Rat>& y, bool with_cost, std::size_t cap,
                             std::vector<std::uint64_t>& out) const;
    // (cost -) y.A_col, exact and approximate.
    Rat exact_reduced_cost(const std::vector<Rat>& y, bool with_cost, std::uint64_t code) const;
    double approx_reduced_cost(const std::vector<double>& y, bool with_cost,
                               std::uint64_t code) const;
};

// Pool given by an explicit list of function tables.
class ExplicitPool : public ColumnPool {
  public:
    ExplicitPool(std::size_t rows, std::size_t cols,
                 std::vector<std::vector<std::uint32_t>> tables,
                 std::vector<int> costs = {});
    std::size_t table_rows() const override { return rows_; }
    std::size_t table_cols() const override { return cols_; }
    std::size_t size() const override { return tables_.size(); }
    std::vector<std::uint64_t> initial() const override;
    int cost(std::uint64_t code) const override;
    std::vector<std::uint32_t> table_of(std::uint64_t code) const override;
    bool price(const std::vector<double>& y, bool with_cost, double threshold, std::size_t cap,
               std::vector<std::uint64_t>& out) const override;
    void exact_price(const std::vector<Rat>& y, bool with_cost, std::size_t cap,
                     std::vector<std::uint64_t>& out) const override;

  private:
    std::size_t rows_, cols_;
    std::vector<std::vector<std::uint32_t>> tables_;
    std::vector<int> costs_;
};

struct HullResult {
    LPStatus status = LPStatus::OPTIMAL;
    NumericMode mode = NumericMode::rational;
    Rat valueq;
    double valued = 0.0;
    // optimal decomposition, support only (code, weight)
    std::vector<std::pair<std::uint64_t, Rat>> decompq;
    std::vector<std::pair<std::uint64_t, double>> decompd;
    // OPTIMAL: dual vector y over table cells with y.target = value and
    // y.A_col <= cost(col) for every pool column (a separating functional
    // whenever value > 0). INFEASIBLE: Farkas vector with y.A_col <= 0 for
    // every pool column and y.target > 0.
    std::vector<Rat> dualq;
    std::vector<double> duald;

    double value_d() const { return mode == NumericMode::rational ? to_double(valueq) : valued; }
};

// min sum_col cost(col) * q_col  s.t.  sum_col q_col * A_col = target, q >= 0.
// `target` entries are read row-major. Pools smaller than `direct_cap` are
// solved as one dense LP; larger pools go through column generation where
// every termination decision in rational mode is certified by exact reduced
// costs.
HullResult hull_decompose(const ColumnPool& pool, const NumTable& target,
                          std::size_t direct_cap = 4096);

// Feasibility only (all costs treated as zero): membership of `target` in the
// convex hull of the pool's columns.
HullResult hull_membership(const ColumnPool& pool, const NumTable& target,
                           std::size_t direct_cap = 4096);

}  // namespace antinomy
