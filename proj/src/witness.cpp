#include "antinomy/witness.hpp"

#include "antinomy/antinomy.hpp"
#include "tri_bits.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace antinomy {

namespace {

using boost::multiprecision::cpp_int;

void check_witness_tables(const Scenario& sc, const NumTable& c, const NumTable& pi) {
    if (c.rows != sc.outcome_tuples() || c.cols != sc.setting_tuples())
        throw std::invalid_argument("witness coefficient table has wrong shape");
    if (pi.rows != 1 || pi.cols != sc.setting_tuples())
        throw std::invalid_argument("witness input weights have wrong shape");
    for (std::size_t r = 0; r < c.rows; ++r)
        for (std::size_t s = 0; s < c.cols; ++s) {
            if (c.is_rational()) {
                if (c.q(r, s) < 0 || c.q(r, s) > 1)
                    throw std::invalid_argument("witness coefficients must lie in [0,1]");
            } else if (c.d(r, s) < -kEps || c.d(r, s) > 1 + kEps) {
                throw std::invalid_argument("witness coefficients must lie in [0,1]");
            }
        }
    if (pi.is_rational()) {
        Rat sum = 0;
        for (std::size_t s = 0; s < pi.cols; ++s) {
            if (pi.q(0, s) < 0) throw std::invalid_argument("witness input weights must be nonnegative");
            sum += pi.q(0, s);
        }
        if (sum != 1) throw std::invalid_argument("witness input weights must sum to one");
    } else {
        double sum = 0;
        for (std::size_t s = 0; s < pi.cols; ++s) {
            if (pi.d(0, s) < -kEps) throw std::invalid_argument("witness input weights must be nonnegative");
            sum += pi.d(0, s);
        }
        if (std::abs(sum - 1) > kEps) throw std::invalid_argument("witness input weights must sum to one");
    }
}

NumTable uniform_pi(const Scenario& sc) {
    NumTable pi = NumTable::zeros(NumericMode::rational, 1, sc.setting_tuples());
    for (std::size_t s = 0; s < pi.cols; ++s) pi.q(0, s) = Rat(1, sc.setting_tuples());
    return pi;
}

void require_rational(const Witness& w, const char* what) {
    if (!w.coeff.is_rational() || !w.pi.is_rational()) {
        std::ostringstream os;
        os << what << " needs a rational-mode witness";
        throw std::invalid_argument(os.str());
    }
}

// Per-(outcome, setting) contribution pi(a) c(x,a), plus an integer image
// n = contribution * denom for exact max scans in machine arithmetic when the
// common denominator is small enough; otherwise scans fall back to rationals.
struct Contrib {
    std::size_t n_out = 0, n_set = 0;
    std::vector<Rat> r;           // [x * n_set + a]
    bool scaled_ok = false;
    cpp_int denom = 1;
    std::vector<std::int64_t> n;  // active when scaled_ok

    Rat value_rat(const std::vector<std::uint32_t>& f) const {
        Rat v = 0;
        for (std::size_t a = 0; a < n_set; ++a) v += r[static_cast<std::size_t>(f[a]) * n_set + a];
        return v;
    }
    std::int64_t value_int(const std::vector<std::uint32_t>& f) const {
        std::int64_t v = 0;
        for (std::size_t a = 0; a < n_set; ++a) v += n[static_cast<std::size_t>(f[a]) * n_set + a];
        return v;
    }
    Rat to_rat(std::int64_t v) const { return Rat(cpp_int(v), denom); }
};

Contrib make_contrib(const Witness& w) {
    Contrib c;
    c.n_out = w.scenario.outcome_tuples();
    c.n_set = w.scenario.setting_tuples();
    c.r.resize(c.n_out * c.n_set);
    cpp_int l = 1;
    for (std::size_t x = 0; x < c.n_out; ++x)
        for (std::size_t a = 0; a < c.n_set; ++a) {
            Rat v = w.pi.q(0, a) * w.coeff.q(x, a);
            l = boost::multiprecision::lcm(l, denominator(v));
            c.r[x * c.n_set + a] = std::move(v);
        }
    if (l <= cpp_int(1) << 40) {
        c.scaled_ok = true;
        c.denom = l;
        c.n.resize(c.r.size());
        for (std::size_t i = 0; i < c.r.size(); ++i)
            c.n[i] = static_cast<std::int64_t>(cpp_int(numerator(c.r[i]) * (l / denominator(c.r[i]))));
    }
    return c;
}

std::uint64_t vertex_count_checked(const Scenario& sc, std::uint64_t cap) {
    const std::uint64_t d = sc.outcome_tuples();
    std::uint64_t v = 1;
    for (std::size_t s = 0; s < sc.setting_tuples(); ++s) {
        if (d != 0 && v > cap / d) throw std::invalid_argument("scenario has too many vertices to scan");
        v *= d;
    }
    return v;
}

// Scan all vertex codes ascending (odometer over the outcome choices, setting
// index 0 least significant), keeping the best value among codes accepted by
// `keep`; ascending order makes strict improvement the lowest-code tie-break.
template <class Keep>
MaxResult scan_vertices(const Witness& w, const Contrib& c, std::uint64_t v_count, Keep keep) {
    const std::size_t n_set = c.n_set;
    const auto d = static_cast<std::uint32_t>(c.n_out);
    std::vector<std::uint32_t> f(n_set, 0);
    bool found = false;
    MaxResult best;
    if (c.scaled_ok) {
        std::int64_t best_v = 0;
        std::uint64_t best_code = 0;
        for (std::uint64_t code = 0; code < v_count; ++code) {
            if (keep(code, f)) {
                const std::int64_t v = c.value_int(f);
                if (!found || v > best_v) {
                    found = true;
                    best_v = v;
                    best_code = code;
                }
            }
            for (std::size_t s = 0; s < n_set; ++s) {
                if (++f[s] < d) break;
                f[s] = 0;
            }
        }
        if (found) best = MaxResult{c.to_rat(best_v), best_code};
    } else {
        Rat best_v;
        std::uint64_t best_code = 0;
        for (std::uint64_t code = 0; code < v_count; ++code) {
            if (keep(code, f)) {
                Rat v = c.value_rat(f);
                if (!found || v > best_v) {
                    found = true;
                    best_v = std::move(v);
                    best_code = code;
                }
            }
            for (std::size_t s = 0; s < n_set; ++s) {
                if (++f[s] < d) break;
                f[s] = 0;
            }
        }
        if (found) best = MaxResult{best_v, best_code};
    }
    if (!found) throw std::invalid_argument("witness maximization over an empty vertex set");
    (void)w;
    return best;
}

bool tri_binary(const Scenario& sc) {
    return sc.parties() == 3 && sc.settings == std::vector<int>{2, 2, 2} &&
           sc.outcomes == std::vector<int>{2, 2, 2};
}

}  // namespace

Witness::Witness(std::string nm, Scenario sc, NumTable c)
    : name(std::move(nm)), scenario(std::move(sc)), coeff(std::move(c)), pi(uniform_pi(scenario)) {
    check_witness_tables(scenario, coeff, pi);
}

Witness::Witness(std::string nm, Scenario sc, NumTable c, NumTable w)
    : name(std::move(nm)), scenario(std::move(sc)), coeff(std::move(c)), pi(std::move(w)) {
    check_witness_tables(scenario, coeff, pi);
}

Rat evaluate_exact(const Witness& w, const Correlation& p) {
    if (!(w.scenario == p.scenario)) throw std::invalid_argument("witness/correlation scenario mismatch");
    require_rational(w, "evaluate_exact");
    if (!p.table.is_rational()) throw std::invalid_argument("evaluate_exact needs a rational correlation");
    Rat v = 0;
    for (std::size_t a = 0; a < p.cols(); ++a) {
        Rat col = 0;
        for (std::size_t x = 0; x < p.rows(); ++x) col += w.coeff.q(x, a) * p.table.q(x, a);
        v += w.pi.q(0, a) * col;
    }
    return v;
}

double evaluate(const Witness& w, const Correlation& p) {
    if (!(w.scenario == p.scenario)) throw std::invalid_argument("witness/correlation scenario mismatch");
    double v = 0;
    for (std::size_t a = 0; a < p.cols(); ++a) {
        double col = 0;
        for (std::size_t x = 0; x < p.rows(); ++x) col += w.coeff.at_d(x, a) * p.table.at_d(x, a);
        v += w.pi.at_d(0, a) * col;
    }
    return v;
}

Rat evaluate_vertex(const Witness& w, const Vertex& v) {
    if (!(w.scenario == v.scenario)) throw std::invalid_argument("witness/vertex scenario mismatch");
    require_rational(w, "evaluate_vertex");
    Rat val = 0;
    for (std::size_t a = 0; a < v.f.size(); ++a) val += w.pi.q(0, a) * w.coeff.q(v.f[a], a);
    return val;
}

MaxResult max_over_vertices(const Witness& w, std::uint64_t cap) {
    require_rational(w, "max_over_vertices");
    const Contrib c = make_contrib(w);
    const std::uint64_t v_count = vertex_count_checked(w.scenario, cap);
    return scan_vertices(w, c, v_count, [](std::uint64_t, const std::vector<std::uint32_t>&) { return true; });
}

MaxResult max_over(const Witness& w, const std::vector<Vertex>& pool) {
    require_rational(w, "max_over");
    if (pool.empty()) throw std::invalid_argument("witness maximization over an empty pool");
    const Contrib c = make_contrib(w);
    bool found = false;
    Rat best_v;
    std::uint64_t best_code = 0;
    for (const Vertex& v : pool) {
        if (!(v.scenario == w.scenario)) throw std::invalid_argument("pool vertex from a different scenario");
        Rat val = c.scaled_ok ? c.to_rat(c.value_int(v.f)) : c.value_rat(v.f);
        const std::uint64_t code = vertex_code(v);
        if (!found || val > best_v || (val == best_v && code < best_code)) {
            found = true;
            best_v = std::move(val);
            best_code = code;
        }
    }
    return MaxResult{best_v, best_code};
}

MaxResult max_over_causal_vertices(const Witness& w, std::uint64_t cap) {
    require_rational(w, "max_over_causal_vertices");
    const Contrib c = make_contrib(w);
    const std::uint64_t v_count = vertex_count_checked(w.scenario, cap);
    if (tri_binary(w.scenario))
        return scan_vertices(w, c, v_count, [](std::uint64_t code, const std::vector<std::uint32_t>&) {
            return tri::causal(tri::masks(static_cast<std::uint32_t>(code)));
        });
    return scan_vertices(w, c, v_count, [&](std::uint64_t, const std::vector<std::uint32_t>& f) {
        return is_causal_vertex(Vertex(w.scenario, f));
    });
}

MaxResult max_over_process_functions(const Witness& w) {
    require_rational(w, "max_over_process_functions");
    const Contrib c = make_contrib(w);
    // party k consumes i_k as its outcome and emits its setting as o_k
    const ProcessDims dims(w.scenario.outcomes, w.scenario.settings);
    const auto fns = enumerate_process_functions(dims);
    bool found = false;
    Rat best_v;
    std::uint64_t best_code = 0;
    for (const auto& fn : fns) {
        Rat val = c.scaled_ok ? c.to_rat(c.value_int(fn.omega)) : c.value_rat(fn.omega);
        const std::uint64_t code = vertex_code(Vertex(w.scenario, fn.omega));
        if (!found || val > best_v || (val == best_v && code < best_code)) {
            found = true;
            best_v = std::move(val);
            best_code = code;
        }
    }
    if (!found) throw std::invalid_argument("no process functions for this scenario");
    return MaxResult{best_v, best_code};
}

std::vector<Vertex> maximal_violators(const Witness& w) {
    if (w.scenario.parties() != 2)
        throw std::invalid_argument("maximal_violators supports two-party scenarios only");
    require_rational(w, "maximal_violators");
    const Contrib c = make_contrib(w);
    const std::uint64_t v_count = vertex_count_checked(w.scenario, 1ull << 25);
    const MaxResult top = scan_vertices(
        w, c, v_count, [](std::uint64_t, const std::vector<std::uint32_t>&) { return true; });

    std::vector<Vertex> out;
    const std::size_t n_set = c.n_set;
    const auto d = static_cast<std::uint32_t>(c.n_out);
    std::vector<std::uint32_t> f(n_set, 0);
    for (std::uint64_t code = 0; code < v_count; ++code) {
        const Rat val = c.scaled_ok ? c.to_rat(c.value_int(f)) : c.value_rat(f);
        if (val == top.value) out.emplace_back(w.scenario, f);
        for (std::size_t s = 0; s < n_set; ++s) {
            if (++f[s] < d) break;
            f[s] = 0;
        }
    }
    return out;
}

namespace {

Scenario two_party_binary() { return Scenario({2, 2}, {2, 2}); }
Scenario three_party_binary() { return Scenario({2, 2, 2}, {2, 2, 2}); }

NumTable win_table(const Scenario& sc, bool (*wins)(const std::vector<int>&, const std::vector<int>&)) {
    NumTable c = NumTable::zeros(NumericMode::rational, sc.outcome_tuples(), sc.setting_tuples());
    for (std::size_t a = 0; a < sc.setting_tuples(); ++a) {
        const auto at = sc.setting_tuple(a);
        for (std::size_t x = 0; x < sc.outcome_tuples(); ++x)
            if (wins(sc.outcome_tuple(x), at)) c.q(x, a) = 1;
    }
    return c;
}

std::string family_name(const char* fam, int a0, int a1, int b0, int b1) {
    std::ostringstream os;
    os << fam << "(" << a0 << "," << a1 << "," << b0 << "," << b1 << ")";
    return os.str();
}

}  // namespace

Witness gyni(const GyniParams& prm) {
    const Scenario sc = two_party_binary();
    NumTable c = NumTable::zeros(NumericMode::rational, 4, 4);
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int x1 = 0; x1 < 2; ++x1)
                for (int x2 = 0; x2 < 2; ++x2) {
                    const bool win = ((x1 ^ (prm.alpha1 & a1) ^ prm.alpha0) == a2) &&
                                     ((x2 ^ (prm.beta1 & a2) ^ prm.beta0) == a1);
                    if (win) c.q(static_cast<std::size_t>(x1 * 2 + x2), static_cast<std::size_t>(a1 * 2 + a2)) = 1;
                }
    Witness w(family_name("gyni", prm.alpha0, prm.alpha1, prm.beta0, prm.beta1), sc, std::move(c));
    w.bounds.causal = max_over_causal_vertices(w).value;
    w.bounds.algebraic = max_over_vertices(w).value;
    return w;
}

Witness lgyni(const LgyniParams& prm) {
    const Scenario sc = two_party_binary();
    NumTable c = NumTable::zeros(NumericMode::rational, 4, 4);
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int x1 = 0; x1 < 2; ++x1)
                for (int x2 = 0; x2 < 2; ++x2) {
                    const bool win = ((a1 ^ prm.alpha1) & (x1 ^ prm.alpha0 ^ a2)) == 0 &&
                                     ((a2 ^ prm.beta1) & (x2 ^ prm.beta0 ^ a1)) == 0;
                    if (win) c.q(static_cast<std::size_t>(x1 * 2 + x2), static_cast<std::size_t>(a1 * 2 + a2)) = 1;
                }
    Witness w(family_name("lgyni", prm.alpha0, prm.alpha1, prm.beta0, prm.beta1), sc, std::move(c));
    w.bounds.causal = max_over_causal_vertices(w).value;
    w.bounds.algebraic = max_over_vertices(w).value;
    return w;
}

Witness gynin() {
    static const Witness cached = [] {
        const Scenario sc = three_party_binary();
        NumTable c = win_table(sc, [](const std::vector<int>& x, const std::vector<int>& a) {
            const bool guess = x[0] == a[2] && x[1] == a[0] && x[2] == a[1];
            const bool negate = x[0] == 1 - a[2] && x[1] == 1 - a[0] && x[2] == 1 - a[1];
            return guess || negate;
        });
        Witness w("gynin", sc, std::move(c));
        w.bounds.causal = max_over_causal_vertices(w).value;
        w.bounds.algebraic = max_over_vertices(w).value;
        const auto& flags = antinomic_flags(sc);
        const Contrib contrib = make_contrib(w);
        const std::uint64_t v_count = vertex_count_checked(sc, 1ull << 25);
        w.bounds.classical =
            scan_vertices(w, contrib, v_count, [&](std::uint64_t code, const std::vector<std::uint32_t>&) {
                return !antinomic_flag(flags, code);
            }).value;
        return w;
    }();
    return cached;
}

Witness afbw_inequality() {
    static const Witness cached = [] {
        const Scenario sc = three_party_binary();
        NumTable c = win_table(sc, [](const std::vector<int>& x, const std::vector<int>& a) {
            const bool maj = a[0] + a[1] + a[2] >= 2;
            if (!maj) return x[0] == a[2] && x[1] == a[0] && x[2] == a[1];
            return x[0] == 1 - a[1] && x[1] == 1 - a[2] && x[2] == 1 - a[0];
        });
        Witness w("afbw", sc, std::move(c));
        w.bounds.causal = max_over_causal_vertices(w).value;
        w.bounds.algebraic = max_over_vertices(w).value;
        return w;
    }();
    return cached;
}

std::vector<LgyniParams> gyni_lgyni_correspondence(const GyniParams& prm) {
    const auto strict = maximal_violators(gyni(prm));
    if (strict.empty()) throw std::logic_error("a strict game without maximal violators");
    const Vertex& v = strict.front();
    std::vector<LgyniParams> out;
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b0 = 0; b0 < 2; ++b0)
                for (int b1 = 0; b1 < 2; ++b1) {
                    const LgyniParams lp{a0, a1, b0, b1};
                    const Witness lw = lgyni(lp);
                    if (evaluate_vertex(lw, v) == max_over_vertices(lw).value) out.push_back(lp);
                }
    return out;
}

}  // namespace antinomy
