#include "antinomy/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace antinomy {

Rat ColumnPool::exact_reduced_cost(const std::vector<Rat>& y, bool with_cost,
                                   std::uint64_t code) const {
    const auto t = table_of(code);
    const std::size_t cols = table_cols();
    Rat rc(with_cost ? cost(code) : 0);
    for (std::size_t s = 0; s < cols; ++s) rc -= y[t[s] * cols + s];
    return rc;
}

double ColumnPool::approx_reduced_cost(const std::vector<double>& y, bool with_cost,
                                       std::uint64_t code) const {
    const auto t = table_of(code);
    const std::size_t cols = table_cols();
    double rc = with_cost ? cost(code) : 0;
    for (std::size_t s = 0; s < cols; ++s) rc -= y[t[s] * cols + s];
    return rc;
}

void ColumnPool::exact_price(const std::vector<Rat>&, bool, std::size_t,
                             std::vector<std::uint64_t>&) const {
    throw std::logic_error("exact_price not implemented for this pool");
}

// ---------------------------------------------------------- explicit pool --

ExplicitPool::ExplicitPool(std::size_t rows, std::size_t cols,
                           std::vector<std::vector<std::uint32_t>> tables, std::vector<int> costs)
    : rows_(rows), cols_(cols), tables_(std::move(tables)), costs_(std::move(costs)) {
    if (!costs_.empty() && costs_.size() != tables_.size())
        throw std::invalid_argument("ExplicitPool: cost list size mismatch");
    for (const auto& t : tables_) {
        if (t.size() != cols_) throw std::invalid_argument("ExplicitPool: table arity mismatch");
        for (auto v : t)
            if (v >= rows_) throw std::invalid_argument("ExplicitPool: outcome out of range");
    }
}

std::vector<std::uint64_t> ExplicitPool::initial() const {
    // seeding is pointless for pools we can afford to scan; the driver only
    // asks when running column generation, so hand back a spread of columns
    std::vector<std::uint64_t> seed;
    const std::size_t step = std::max<std::size_t>(1, tables_.size() / 16);
    for (std::size_t i = 0; i < tables_.size(); i += step) seed.push_back(i);
    return seed;
}

int ExplicitPool::cost(std::uint64_t code) const {
    return costs_.empty() ? 0 : costs_[static_cast<std::size_t>(code)];
}

std::vector<std::uint32_t> ExplicitPool::table_of(std::uint64_t code) const {
    return tables_[static_cast<std::size_t>(code)];
}

bool ExplicitPool::price(const std::vector<double>& y, bool with_cost, double threshold,
                         std::size_t cap, std::vector<std::uint64_t>& out) const {
    std::vector<std::pair<double, std::uint64_t>> hits;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const double rc = approx_reduced_cost(y, with_cost, i);
        if (rc < threshold) hits.emplace_back(rc, i);
    }
    std::sort(hits.begin(), hits.end());
    const bool truncated = hits.size() > cap;
    if (truncated) hits.resize(cap);
    for (auto& [rc, i] : hits) out.push_back(i);
    return truncated;
}

void ExplicitPool::exact_price(const std::vector<Rat>& y, bool with_cost, std::size_t cap,
                               std::vector<std::uint64_t>& out) const {
    for (std::size_t i = 0; i < tables_.size() && out.size() < cap; ++i)
        if (exact_reduced_cost(y, with_cost, i) < 0) out.push_back(i);
}

// ----------------------------------------------------------------- driver --

namespace {

std::vector<Rat> flatten_rational(const NumTable& t) {
    if (!t.is_rational()) throw std::logic_error("expected rational table");
    return t.rq;
}

std::vector<double> flatten_double(const NumTable& t) {
    std::vector<double> v(t.size());
    for (std::size_t r = 0; r < t.rows; ++r)
        for (std::size_t c = 0; c < t.cols; ++c) v[r * t.cols + c] = t.at_d(r, c);
    return v;
}

// Build the restricted-master LP over the given columns.
LinearProgram master_lp(const ColumnPool& pool, const NumTable& target,
                        const std::vector<std::uint64_t>& cols, bool use_costs) {
    const std::size_t R = pool.table_rows() * pool.table_cols();
    const std::size_t C = pool.table_cols();
    const std::size_t n = cols.size();
    if (target.is_rational()) {
        std::vector<Rat> A(R * n, Rat(0)), c(n, Rat(0));
        for (std::size_t j = 0; j < n; ++j) {
            const auto t = pool.table_of(cols[j]);
            for (std::size_t s = 0; s < C; ++s) A[(t[s] * C + s) * n + j] = 1;
            if (use_costs) c[j] = pool.cost(cols[j]);
        }
        return LinearProgram::rational(R, n, std::move(A), flatten_rational(target), std::move(c));
    }
    std::vector<double> A(R * n, 0.0), c(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto t = pool.table_of(cols[j]);
        for (std::size_t s = 0; s < C; ++s) A[(t[s] * C + s) * n + j] = 1.0;
        if (use_costs) c[j] = pool.cost(cols[j]);
    }
    return LinearProgram::dense(R, n, std::move(A), flatten_double(target), std::move(c));
}

HullResult result_from(const NumTable& target, const std::vector<std::uint64_t>& cols,
                       const LPOutcome& sol) {
    HullResult res;
    res.mode = target.mode;
    res.status = sol.status;
    if (sol.status == LPStatus::INFEASIBLE) {
        res.dualq = sol.farkasq;
        res.duald = sol.farkasd;
        return res;
    }
    if (sol.status != LPStatus::OPTIMAL)
        throw std::logic_error("hull LP cannot be unbounded (costs are nonnegative)");
    if (target.is_rational()) {
        res.valueq = sol.objq;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (sol.xq[j] > 0) res.decompq.emplace_back(cols[j], sol.xq[j]);
        res.dualq = sol.yq;
    } else {
        res.valued = sol.objd;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (sol.xd[j] > 1e-12) res.decompd.emplace_back(cols[j], sol.xd[j]);
        res.duald = sol.yd;
    }
    return res;
}

// scale for pricing thresholds: proportional to the dual magnitude
double dual_scale(const std::vector<double>& y) {
    double s = 1.0;
    for (double v : y) s = std::max(s, std::abs(v));
    return s;
}

// Candidate columns that certifiably improve the master. In rational mode
// approximate pricing only shortlists; exact reduced costs decide, with a
// full exact scan as a last resort when the shortlist overflows undecided.
std::vector<std::uint64_t> improving_columns(const ColumnPool& pool, bool use_costs,
                                             const LPOutcome& sol,
                                             const std::unordered_set<std::uint64_t>& active) {
    constexpr std::size_t kShortlist = 65536;
    constexpr std::size_t kBatch = 64;

    const bool rational = sol.mode == NumericMode::rational;
    std::vector<Rat> yq;
    std::vector<double> yd;
    if (sol.status == LPStatus::INFEASIBLE) {
        yq = sol.farkasq;
        yd = sol.farkasd;
    } else {
        yq = sol.yq;
        yd = sol.yd;
    }
    if (rational) {
        yd.resize(yq.size());
        for (std::size_t i = 0; i < yq.size(); ++i) yd[i] = to_double(yq[i]);
    }
    // Feasibility pricing ranks columns by y.A alone; costs only matter once
    // the master is feasible and we are optimizing.
    const bool with_cost = use_costs && sol.status == LPStatus::OPTIMAL;

    // A column improves iff its reduced cost is negative: cost - y.A_col when
    // costs participate, -y.A_col otherwise. The approx threshold leaves room
    // for conversion error.
    const double band = 1e-9 * dual_scale(yd);

    std::vector<std::uint64_t> shortlist;
    const bool truncated = pool.price(yd, with_cost, rational ? band : -band, kShortlist, shortlist);

    std::vector<std::uint64_t> fresh;
    if (!rational) {
        for (auto code : shortlist) {
            if (active.count(code)) continue;
            fresh.push_back(code);
            if (fresh.size() >= kBatch) break;
        }
        return fresh;
    }
    // exact certification
    for (auto code : shortlist) {
        if (active.count(code)) continue;
        if (pool.exact_reduced_cost(yq, with_cost, code) < 0) {
            fresh.push_back(code);
            if (fresh.size() >= kBatch) break;
        }
    }
    if (fresh.empty() && truncated) {
        // shortlist overflowed with near-zero candidates and none certified
        // negative: settle it exactly
        std::vector<std::uint64_t> exact;
        pool.exact_price(yq, with_cost, kBatch + active.size(), exact);
        for (auto code : exact) {
            if (active.count(code)) continue;
            fresh.push_back(code);
            if (fresh.size() >= kBatch) break;
        }
    }
    return fresh;
}

HullResult solve_hull(const ColumnPool& pool, const NumTable& target, bool use_costs,
                      std::size_t direct_cap) {
    if (target.rows != pool.table_rows() || target.cols != pool.table_cols())
        throw std::invalid_argument("hull: target shape does not match pool");

    // Small explicit pools: one dense LP over everything.
    const std::size_t psize = pool.size();
    if (psize > 0 && psize <= direct_cap) {
        std::vector<std::uint64_t> all(psize);
        for (std::size_t i = 0; i < psize; ++i) all[i] = i;
        const LPOutcome sol = solve_lp(master_lp(pool, target, all, use_costs));
        return result_from(target, all, sol);
    }

    // Column generation with Farkas pricing for feasibility and reduced-cost
    // pricing for optimality.
    std::vector<std::uint64_t> active = pool.initial();
    std::unordered_set<std::uint64_t> seen(active.begin(), active.end());
    active.assign(seen.begin(), seen.end());
    std::sort(active.begin(), active.end());

    for (;;) {
        const LPOutcome sol = solve_lp(master_lp(pool, target, active, use_costs));
        const auto fresh = improving_columns(pool, use_costs, sol, seen);
        if (fresh.empty()) return result_from(target, active, sol);
        for (auto code : fresh) {
            seen.insert(code);
            active.push_back(code);
        }
    }
}

}  // namespace

HullResult hull_decompose(const ColumnPool& pool, const NumTable& target, std::size_t direct_cap) {
    return solve_hull(pool, target, true, direct_cap);
}

HullResult hull_membership(const ColumnPool& pool, const NumTable& target, std::size_t direct_cap) {
    return solve_hull(pool, target, false, direct_cap);
}

}  // namespace antinomy
