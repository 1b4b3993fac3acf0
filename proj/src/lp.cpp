#include "antinomy/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace antinomy {

LinearProgram LinearProgram::rational(std::size_t m, std::size_t n, std::vector<Rat> A,
                                      std::vector<Rat> b, std::vector<Rat> c) {
    if (A.size() != m * n || b.size() != m || c.size() != n)
        throw std::invalid_argument("LinearProgram: inconsistent sizes");
    LinearProgram lp;
    lp.m = m;
    lp.n = n;
    lp.aq = std::move(A);
    lp.bq = std::move(b);
    lp.cq = std::move(c);
    lp.mode = NumericMode::rational;
    return lp;
}

LinearProgram LinearProgram::dense(std::size_t m, std::size_t n, std::vector<double> A,
                                   std::vector<double> b, std::vector<double> c) {
    if (A.size() != m * n || b.size() != m || c.size() != n)
        throw std::invalid_argument("LinearProgram: inconsistent sizes");
    LinearProgram lp;
    lp.m = m;
    lp.n = n;
    lp.ad = std::move(A);
    lp.bd = std::move(b);
    lp.cd = std::move(c);
    lp.mode = NumericMode::dbl;
    return lp;
}

namespace {

// Scalar policies: exact comparisons for rationals, epsilon thresholds for
// doubles. The pivot threshold guards double pivots away from numerical
// noise; rational pivots only need nonzero.
template <class T>
struct Num;

template <>
struct Num<Rat> {
    static bool neg(const Rat& v) { return v < 0; }
    static bool pos(const Rat& v) { return v > 0; }
    static bool zero(const Rat& v) { return v == 0; }
    static bool pivot_ok(const Rat& v) { return v != 0; }
};

template <>
struct Num<double> {
    static bool neg(double v) { return v < -kEps; }
    static bool pos(double v) { return v > kEps; }
    static bool zero(double v) { return std::abs(v) <= kEps; }
    static bool pivot_ok(double v) { return std::abs(v) > kEps; }
};

// Dense two-phase primal simplex over the tableau
//   [ B^{-1}A | B^{-1} | B^{-1}b ]
// with the artificial block doubling as an explicit basis inverse for dual
// recovery. Bland's rule everywhere, hence finite.
template <class T>
struct Simplex {
    std::size_t m, n;                 // constraint rows, real columns
    std::vector<T> A, b, c;           // standard-form data, b >= 0 after row flips
    std::vector<int> row_sign;        // +1 / -1 applied to original row
    std::vector<T> tab;               // m x (n + m + 1)
    std::vector<std::size_t> basis;   // column index per row (real or artificial)
    std::vector<bool> row_alive;      // redundant rows get switched off
    std::size_t width;

    T& at(std::size_t r, std::size_t col) { return tab[r * width + col]; }
    std::size_t art_col(std::size_t row) const { return n + row; }
    std::size_t rhs_col() const { return n + m; }

    explicit Simplex(const LinearProgram& lp, const std::vector<T>& A_, const std::vector<T>& b_,
                     const std::vector<T>& c_)
        : m(lp.m), n(lp.n), A(A_), b(b_), c(c_), row_sign(lp.m, 1), width(lp.n + lp.m + 1) {
        for (std::size_t i = 0; i < m; ++i) {
            if (Num<T>::neg(b[i]) || b[i] < T(0)) {  // exact flip also for tiny negatives
                row_sign[i] = -1;
                b[i] = -b[i];
                for (std::size_t j = 0; j < n; ++j) A[i * n + j] = -A[i * n + j];
            }
        }
        tab.assign(m * width, T(0));
        basis.resize(m);
        row_alive.assign(m, true);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) at(i, j) = A[i * n + j];
            at(i, art_col(i)) = T(1);
            at(i, rhs_col()) = b[i];
            basis[i] = art_col(i);
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        const T pv = at(prow, pcol);
        for (std::size_t j = 0; j < width; ++j) at(prow, j) = at(prow, j) / pv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == prow || !row_alive[r]) continue;
            const T factor = at(r, pcol);
            if (Num<T>::zero(factor) && factor == T(0)) continue;
            for (std::size_t j = 0; j < width; ++j) at(r, j) = at(r, j) - factor * at(prow, j);
        }
        basis[prow] = pcol;
    }

    // reduced cost of column j under cost vector `cost` (indexed over real
    // and artificial columns)
    T reduced_cost(const std::vector<T>& cost, std::size_t j) {
        T d = cost[j];
        for (std::size_t r = 0; r < m; ++r)
            if (row_alive[r]) d = d - cost[basis[r]] * at(r, j);
        return d;
    }

    // One simplex phase with Bland's rule. `allowed(j)` bars columns from
    // entering. Returns false when an unbounded direction is found (column
    // stored in unbounded_col).
    std::size_t unbounded_col = std::numeric_limits<std::size_t>::max();
    bool run(const std::vector<T>& cost, const std::vector<bool>& allowed) {
        for (;;) {
            // Bland: entering column = lowest index with negative reduced cost
            std::size_t enter = width;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (!allowed[j]) continue;
                if (Num<T>::neg(reduced_cost(cost, j))) {
                    enter = j;
                    break;
                }
            }
            if (enter == width) return true;  // optimal
            // ratio test; Bland tie-break on smallest basic variable index
            std::size_t prow = m;
            for (std::size_t r = 0; r < m; ++r) {
                if (!row_alive[r] || !Num<T>::pos(at(r, enter))) continue;
                if (!Num<T>::pivot_ok(at(r, enter))) continue;
                if (prow == m) {
                    prow = r;
                    continue;
                }
                const T lhs = at(r, rhs_col()) * at(prow, enter);
                const T rhs = at(prow, rhs_col()) * at(r, enter);
                if (lhs < rhs || (lhs == rhs && basis[r] < basis[prow])) prow = r;
            }
            if (prow == m) {
                unbounded_col = enter;
                return false;
            }
            pivot(prow, enter);
        }
    }
};

template <class T>
LPOutcome solve_impl(const LinearProgram& lp, const std::vector<T>& A, const std::vector<T>& b,
                     const std::vector<T>& c, NumericMode mode) {
    LPOutcome out;
    out.mode = mode;
    Simplex<T> sx(lp, A, b, c);
    const std::size_t m = sx.m, n = sx.n, width = sx.width;

    // ---- phase 1: minimize the artificial mass
    std::vector<T> cost1(n + m, T(0));
    for (std::size_t i = 0; i < m; ++i) cost1[n + i] = T(1);
    std::vector<bool> allowed(n + m, true);
    sx.run(cost1, allowed);  // bounded by construction (objective >= 0)

    T p1 = T(0);
    for (std::size_t r = 0; r < m; ++r)
        if (sx.row_alive[r] && sx.basis[r] >= n) p1 = p1 + sx.at(r, sx.rhs_col());

    if (Num<T>::pos(p1)) {
        // Farkas vector from the phase-1 duals: y_i = cost1_B . B^{-1} e_i,
        // unflipped back to the original row orientation.
        out.status = LPStatus::INFEASIBLE;
        std::vector<T> y(m, T(0));
        for (std::size_t i = 0; i < m; ++i) {
            T yi = T(0);
            for (std::size_t r = 0; r < m; ++r)
                if (sx.row_alive[r]) yi = yi + cost1[sx.basis[r]] * sx.at(r, sx.art_col(i));
            y[i] = sx.row_sign[i] > 0 ? yi : -yi;
        }
        if constexpr (std::is_same_v<T, Rat>)
            out.farkasq = std::move(y);
        else
            out.farkasd = std::move(y);
        return out;
    }

    // Drive leftover artificials out of the basis; rows that cannot pivot on
    // any real column are redundant and get dropped.
    for (std::size_t r = 0; r < m; ++r) {
        if (!sx.row_alive[r] || sx.basis[r] < n) continue;
        std::size_t pcol = width;
        for (std::size_t j = 0; j < n; ++j) {
            if (Num<T>::pivot_ok(sx.at(r, j))) {
                pcol = j;
                break;
            }
        }
        if (pcol == width) {
            sx.row_alive[r] = false;
        } else {
            sx.pivot(r, pcol);
        }
    }

    // ---- phase 2: real costs, artificials barred
    std::vector<T> cost2(n + m, T(0));
    for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
    for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
    if (!sx.run(cost2, allowed)) {
        out.status = LPStatus::UNBOUNDED;
        std::vector<T> ray(n, T(0));
        ray[sx.unbounded_col] = T(1);
        for (std::size_t r = 0; r < m; ++r)
            if (sx.row_alive[r] && sx.basis[r] < n)
                ray[sx.basis[r]] = -sx.at(r, sx.unbounded_col);
        if constexpr (std::is_same_v<T, Rat>)
            out.rayq = std::move(ray);
        else
            out.rayd = std::move(ray);
        return out;
    }

    out.status = LPStatus::OPTIMAL;
    std::vector<T> x(n, T(0));
    for (std::size_t r = 0; r < m; ++r)
        if (sx.row_alive[r] && sx.basis[r] < n) x[sx.basis[r]] = sx.at(r, sx.rhs_col());
    T obj = T(0);
    for (std::size_t j = 0; j < n; ++j) obj = obj + c[j] * x[j];
    // duals: y = c_B . B^{-1}, read off the artificial block; zero on
    // dropped (redundant) rows
    std::vector<T> y(m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        T yi = T(0);
        for (std::size_t r = 0; r < m; ++r)
            if (sx.row_alive[r]) yi = yi + cost2[sx.basis[r]] * sx.at(r, sx.art_col(i));
        y[i] = sx.row_sign[i] > 0 ? yi : -yi;
    }
    if constexpr (std::is_same_v<T, Rat>) {
        out.xq = std::move(x);
        out.yq = std::move(y);
        out.objq = std::move(obj);
    } else {
        out.xd = std::move(x);
        out.yd = std::move(y);
        out.objd = obj;
    }
    return out;
}

}  // namespace

LPOutcome solve_lp(const LinearProgram& lp) {
    if (lp.mode == NumericMode::rational)
        return solve_impl<Rat>(lp, lp.aq, lp.bq, lp.cq, NumericMode::rational);
    return solve_impl<double>(lp, lp.ad, lp.bd, lp.cd, NumericMode::dbl);
}

namespace {

template <class T>
bool verify_optimal_impl(std::size_t m, std::size_t n, const std::vector<T>& A,
                         const std::vector<T>& b, const std::vector<T>& c,
                         const std::vector<T>& x, const std::vector<T>& y, const T& obj,
                         double eps) {
    auto near = [&](const T& u, const T& v) {
        if constexpr (std::is_same_v<T, Rat>)
            return u == v;
        else
            return std::abs(u - v) <= eps;
    };
    auto geq0 = [&](const T& u) {
        if constexpr (std::is_same_v<T, Rat>)
            return u >= 0;
        else
            return u >= -eps;
    };
    if (x.size() != n || y.size() != m) return false;
    for (std::size_t j = 0; j < n; ++j)
        if (!geq0(x[j])) return false;
    for (std::size_t i = 0; i < m; ++i) {
        T dot = T(0);
        for (std::size_t j = 0; j < n; ++j) dot = dot + A[i * n + j] * x[j];
        if (!near(dot, b[i])) return false;
    }
    T cx = T(0);
    for (std::size_t j = 0; j < n; ++j) cx = cx + c[j] * x[j];
    if (!near(cx, obj)) return false;
    // dual feasibility y'A <= c and strong duality y'b = obj
    for (std::size_t j = 0; j < n; ++j) {
        T ya = T(0);
        for (std::size_t i = 0; i < m; ++i) ya = ya + y[i] * A[i * n + j];
        if (!geq0(c[j] - ya)) return false;
    }
    T yb = T(0);
    for (std::size_t i = 0; i < m; ++i) yb = yb + y[i] * b[i];
    return near(yb, obj);
}

}  // namespace

bool verify_optimal(const LinearProgram& lp, const LPOutcome& out, double eps) {
    if (out.status != LPStatus::OPTIMAL) return false;
    if (lp.mode == NumericMode::rational)
        return verify_optimal_impl<Rat>(lp.m, lp.n, lp.aq, lp.bq, lp.cq, out.xq, out.yq, out.objq,
                                        eps);
    return verify_optimal_impl<double>(lp.m, lp.n, lp.ad, lp.bd, lp.cd, out.xd, out.yd, out.objd,
                                       eps);
}

bool verify_farkas(const LinearProgram& lp, const LPOutcome& out, double eps) {
    if (out.status != LPStatus::INFEASIBLE) return false;
    if (lp.mode == NumericMode::rational) {
        const auto& y = out.farkasq;
        if (y.size() != lp.m) return false;
        for (std::size_t j = 0; j < lp.n; ++j) {
            Rat ya(0);
            for (std::size_t i = 0; i < lp.m; ++i) ya += y[i] * lp.aq[i * lp.n + j];
            if (ya > 0) return false;
        }
        Rat yb(0);
        for (std::size_t i = 0; i < lp.m; ++i) yb += y[i] * lp.bq[i];
        return yb > 0;
    }
    const auto& y = out.farkasd;
    if (y.size() != lp.m) return false;
    for (std::size_t j = 0; j < lp.n; ++j) {
        double ya = 0;
        for (std::size_t i = 0; i < lp.m; ++i) ya += y[i] * lp.ad[i * lp.n + j];
        if (ya > eps) return false;
    }
    double yb = 0;
    for (std::size_t i = 0; i < lp.m; ++i) yb += y[i] * lp.bd[i];
    return yb > eps;
}

bool verify_ray(const LinearProgram& lp, const LPOutcome& out, double eps) {
    if (out.status != LPStatus::UNBOUNDED) return false;
    if (lp.mode == NumericMode::rational) {
        const auto& r = out.rayq;
        if (r.size() != lp.n) return false;
        for (const Rat& v : r)
            if (v < 0) return false;
        for (std::size_t i = 0; i < lp.m; ++i) {
            Rat dot(0);
            for (std::size_t j = 0; j < lp.n; ++j) dot += lp.aq[i * lp.n + j] * r[j];
            if (dot != 0) return false;
        }
        Rat cr(0);
        for (std::size_t j = 0; j < lp.n; ++j) cr += lp.cq[j] * r[j];
        return cr < 0;
    }
    const auto& r = out.rayd;
    if (r.size() != lp.n) return false;
    for (double v : r)
        if (v < -eps) return false;
    for (std::size_t i = 0; i < lp.m; ++i) {
        double dot = 0;
        for (std::size_t j = 0; j < lp.n; ++j) dot += lp.ad[i * lp.n + j] * r[j];
        if (std::abs(dot) > eps) return false;
    }
    double cr = 0;
    for (std::size_t j = 0; j < lp.n; ++j) cr += lp.cd[j] * r[j];
    return cr < -eps;
}

}  // namespace antinomy
