#include "antinomy/process.hpp"

#include "tri_bits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace antinomy {

namespace {

std::size_t checked_product(const std::vector<int>& dims) {
    std::size_t p = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("process dimensions must be >= 1");
        p *= static_cast<std::size_t>(d);
    }
    return p;
}

std::size_t tuple_index(const std::vector<int>& t, const std::vector<int>& dims) {
    if (t.size() != dims.size()) throw std::invalid_argument("tuple arity mismatch");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (t[k] < 0 || t[k] >= dims[k]) throw std::out_of_range("tuple entry out of range");
        idx = idx * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(t[k]);
    }
    return idx;
}

std::vector<int> tuple_of_index(std::size_t idx, const std::vector<int>& dims) {
    std::vector<int> t(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        t[k] = static_cast<int>(idx % static_cast<std::size_t>(dims[k]));
        idx /= static_cast<std::size_t>(dims[k]);
    }
    return t;
}

// digit of party k inside a flat tuple index (party 1 most significant)
int digit_of(std::size_t idx, const std::vector<int>& dims, int k) {
    std::size_t stride = 1;
    for (std::size_t j = dims.size(); j-- > static_cast<std::size_t>(k) + 1;)
        stride *= static_cast<std::size_t>(dims[j]);
    return static_cast<int>(idx / stride % static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]));
}

bool is_tri_binary(const ProcessDims& d) {
    return d.dims_i == std::vector<int>{2, 2, 2} && d.dims_o == std::vector<int>{2, 2, 2};
}

// Number of deterministic intervention tuples prod_k |O_k|^|I_k|, guarded.
std::uint64_t intervention_tuples(const ProcessDims& d, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (int k = 0; k < d.parties(); ++k) {
        for (int i = 0; i < d.dims_i[static_cast<std::size_t>(k)]; ++i) {
            n *= static_cast<std::uint64_t>(d.dims_o[static_cast<std::size_t>(k)]);
            if (n > cap) throw std::invalid_argument("process dims: too many intervention tuples");
        }
    }
    return n;
}

// Walks every deterministic tuple h = (h_k : I_k -> O_k); `body` returns
// false to stop early (a failure was found).
template <typename Body>
void for_each_h(const ProcessDims& d, Body&& body) {
    const int n = d.parties();
    std::vector<std::vector<int>> h(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        h[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(d.dims_i[static_cast<std::size_t>(k)]), 0);
    for (;;) {
        if (!body(h)) return;
        // odometer over all slots of all parties
        int k = n - 1;
        for (; k >= 0; --k) {
            auto& hk = h[static_cast<std::size_t>(k)];
            const int no = d.dims_o[static_cast<std::size_t>(k)];
            std::size_t i = hk.size();
            bool carried = true;
            while (i-- > 0) {
                if (++hk[i] < no) {
                    carried = false;
                    break;
                }
                hk[i] = 0;
            }
            if (!carried) break;
        }
        if (k < 0) return;
    }
}

}  // namespace

// ----------------------------------------------------------------- dims --

ProcessDims::ProcessDims(std::vector<int> di, std::vector<int> dob)
    : dims_i(std::move(di)), dims_o(std::move(dob)) {
    if (dims_i.empty() || dims_i.size() != dims_o.size())
        throw std::invalid_argument("process needs matching nonempty i/o dimension lists");
    checked_product(dims_i);
    checked_product(dims_o);
}

ProcessDims ProcessDims::uniform(int parties, int di, int dob) {
    if (parties < 1) throw std::invalid_argument("process needs at least one party");
    return ProcessDims(std::vector<int>(static_cast<std::size_t>(parties), di),
                       std::vector<int>(static_cast<std::size_t>(parties), dob));
}

std::size_t ProcessDims::i_tuples() const { return checked_product(dims_i); }
std::size_t ProcessDims::o_tuples() const { return checked_product(dims_o); }
std::size_t ProcessDims::i_index(const std::vector<int>& i) const { return tuple_index(i, dims_i); }
std::size_t ProcessDims::o_index(const std::vector<int>& o) const { return tuple_index(o, dims_o); }
std::vector<int> ProcessDims::i_tuple(std::size_t idx) const { return tuple_of_index(idx, dims_i); }
std::vector<int> ProcessDims::o_tuple(std::size_t idx) const { return tuple_of_index(idx, dims_o); }

// ------------------------------------------------------------- functions --

QuasiProcessFunction::QuasiProcessFunction(ProcessDims d, std::vector<std::uint32_t> table)
    : dims(std::move(d)), omega(std::move(table)) {
    if (omega.size() != dims.o_tuples())
        throw std::invalid_argument("process function table has wrong arity");
    for (auto v : omega)
        if (v >= dims.i_tuples()) throw std::invalid_argument("process function value out of range");
}

std::size_t QuasiProcessFunction::component(int party, std::size_t o_idx) const {
    return static_cast<std::size_t>(digit_of(omega[o_idx], dims.dims_i, party));
}

StochasticProcess::StochasticProcess(ProcessDims d, NumTable t) : dims(std::move(d)), table(std::move(t)) {
    if (table.rows != dims.i_tuples() || table.cols != dims.o_tuples())
        throw std::invalid_argument("process table has wrong shape");
    for (std::size_t c = 0; c < table.cols; ++c) {
        if (table.is_rational()) {
            Rat s(0);
            for (std::size_t r = 0; r < table.rows; ++r) {
                if (table.q(r, c) < 0) throw std::invalid_argument("process table has a negative entry");
                s += table.q(r, c);
            }
            if (s != 1) throw std::invalid_argument("process table column does not sum to one");
        } else {
            double s = 0;
            for (std::size_t r = 0; r < table.rows; ++r) {
                if (table.d(r, c) < -kEps) throw std::invalid_argument("process table has a negative entry");
                s += table.d(r, c);
            }
            if (std::abs(s - 1.0) > kEps)
                throw std::invalid_argument("process table column does not sum to one");
        }
    }
}

// ----------------------------------------------------------- intervention --

LocalIntervention::LocalIntervention(int nx, int no, int na, int ni, NumTable t)
    : n_x(nx), n_o(no), n_a(na), n_i(ni), table(std::move(t)) {
    if (nx < 1 || no < 1 || na < 1 || ni < 1)
        throw std::invalid_argument("intervention dimensions must be >= 1");
    const auto rows = static_cast<std::size_t>(nx) * static_cast<std::size_t>(no);
    const auto cols = static_cast<std::size_t>(na) * static_cast<std::size_t>(ni);
    if (table.rows != rows || table.cols != cols)
        throw std::invalid_argument("intervention table has wrong shape");
    for (std::size_t c = 0; c < cols; ++c) {
        if (table.is_rational()) {
            Rat s(0);
            for (std::size_t r = 0; r < rows; ++r) {
                if (table.q(r, c) < 0) throw std::invalid_argument("intervention table has a negative entry");
                s += table.q(r, c);
            }
            if (s != 1) throw std::invalid_argument("intervention table column does not sum to one");
        } else {
            double s = 0;
            for (std::size_t r = 0; r < rows; ++r) {
                if (table.d(r, c) < -kEps)
                    throw std::invalid_argument("intervention table has a negative entry");
                s += table.d(r, c);
            }
            if (std::abs(s - 1.0) > kEps)
                throw std::invalid_argument("intervention table column does not sum to one");
        }
    }
}

LocalIntervention LocalIntervention::deterministic(int nx, int no, int na, int ni,
                                                   const std::vector<int>& phi,
                                                   const std::vector<int>& psi) {
    const auto cols = static_cast<std::size_t>(na) * static_cast<std::size_t>(ni);
    if (phi.size() != cols || psi.size() != cols)
        throw std::invalid_argument("deterministic intervention tables have wrong arity");
    NumTable t = NumTable::zeros(NumericMode::rational,
                                 static_cast<std::size_t>(nx) * static_cast<std::size_t>(no), cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const int x = phi[c], o = psi[c];
        if (x < 0 || x >= nx || o < 0 || o >= no)
            throw std::invalid_argument("deterministic intervention value out of range");
        t.q(static_cast<std::size_t>(x) * static_cast<std::size_t>(no) + static_cast<std::size_t>(o), c) = 1;
    }
    return LocalIntervention(nx, no, na, ni, std::move(t));
}

LocalIntervention LocalIntervention::pass_through(int n_io, int n_ao) {
    std::vector<int> phi(static_cast<std::size_t>(n_ao) * static_cast<std::size_t>(n_io));
    std::vector<int> psi(phi.size());
    for (int a = 0; a < n_ao; ++a)
        for (int i = 0; i < n_io; ++i) {
            phi[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_io) + static_cast<std::size_t>(i)] = i;
            psi[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_io) + static_cast<std::size_t>(i)] = a;
        }
    return deterministic(n_io, n_ao, n_ao, n_io, phi, psi);
}

// ------------------------------------------------------------ fixed point --

namespace {

// o-tuple index produced by applying h to the i-tuple index `it`
std::size_t apply_h(const ProcessDims& d, const std::vector<std::vector<int>>& h, std::size_t it) {
    std::size_t o = 0;
    for (int k = 0; k < d.parties(); ++k) {
        const int ik = digit_of(it, d.dims_i, k);
        o = o * static_cast<std::size_t>(d.dims_o[static_cast<std::size_t>(k)]) +
            static_cast<std::size_t>(h[static_cast<std::size_t>(k)][static_cast<std::size_t>(ik)]);
    }
    return o;
}

}  // namespace

bool is_process_function(const QuasiProcessFunction& w, FixedPointWitness* failure) {
    intervention_tuples(w.dims, 1ull << 20);
    const std::size_t I = w.dims.i_tuples();
    bool ok = true;
    for_each_h(w.dims, [&](const std::vector<std::vector<int>>& h) {
        std::size_t fixed = 0;
        for (std::size_t it = 0; it < I; ++it)
            if (w.omega[apply_h(w.dims, h, it)] == it) ++fixed;
        if (fixed == 1) return true;
        ok = false;
        if (failure) {
            failure->h = h;
            failure->fixed_points = fixed;
        }
        return false;
    });
    return ok;
}

bool is_logically_consistent(const StochasticProcess& p, FixedPointWitness* failure) {
    intervention_tuples(p.dims, 1ull << 20);
    const std::size_t I = p.dims.i_tuples();
    bool ok = true;
    for_each_h(p.dims, [&](const std::vector<std::vector<int>>& h) {
        bool pass;
        if (p.table.is_rational()) {
            Rat s(0);
            for (std::size_t it = 0; it < I; ++it) s += p.table.q(it, apply_h(p.dims, h, it));
            pass = s == 1;
        } else {
            double s = 0;
            for (std::size_t it = 0; it < I; ++it) s += p.table.d(it, apply_h(p.dims, h, it));
            pass = std::abs(s - 1.0) <= kEps;
        }
        if (pass) return true;
        ok = false;
        if (failure) {
            failure->h = h;
            failure->fixed_points = 0;
        }
        return false;
    });
    return ok;
}

Digraph causal_structure(const QuasiProcessFunction& w) {
    const ProcessDims& d = w.dims;
    const int n = d.parties();
    Digraph g(n);
    const std::size_t O = d.o_tuples();
    for (int k = 0; k < n; ++k) {
        // stride of party k inside the o index
        std::size_t stride = 1;
        for (std::size_t j = d.dims_o.size(); j-- > static_cast<std::size_t>(k) + 1;)
            stride *= static_cast<std::size_t>(d.dims_o[j]);
        const int nk = d.dims_o[static_cast<std::size_t>(k)];
        for (int l = 0; l < n; ++l) {
            if (l == k || g.has_edge(k, l)) continue;
            for (std::size_t base = 0; base < O && !g.has_edge(k, l); ++base) {
                if (digit_of(base, d.dims_o, k) != 0) continue;
                const std::size_t ref = w.component(l, base);
                for (int c = 1; c < nk; ++c)
                    if (w.component(l, base + static_cast<std::size_t>(c) * stride) != ref) {
                        g.add_edge(k, l);
                        break;
                    }
            }
        }
    }
    return g;
}

// ------------------------------------------------------------ correlation --

NumTable correlation_from_process(const StochasticProcess& p,
                                  const std::vector<LocalIntervention>& ops,
                                  NormalizationReport* report) {
    const ProcessDims& d = p.dims;
    const int n = d.parties();
    if (static_cast<int>(ops.size()) != n)
        throw std::invalid_argument("one intervention per party required");
    for (int k = 0; k < n; ++k) {
        if (ops[static_cast<std::size_t>(k)].n_i != d.dims_i[static_cast<std::size_t>(k)] ||
            ops[static_cast<std::size_t>(k)].n_o != d.dims_o[static_cast<std::size_t>(k)])
            throw std::invalid_argument("intervention wiring does not match process dims");
    }

    NumericMode mode = p.table.mode;
    for (const auto& op : ops) mode = promote(mode, op.table.mode);

    std::vector<int> dim_a(static_cast<std::size_t>(n)), dim_x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        dim_a[static_cast<std::size_t>(k)] = ops[static_cast<std::size_t>(k)].n_a;
        dim_x[static_cast<std::size_t>(k)] = ops[static_cast<std::size_t>(k)].n_x;
    }
    const std::size_t A = checked_product(dim_a), X = checked_product(dim_x);
    const std::size_t I = d.i_tuples(), O = d.o_tuples();

    NumTable out = NumTable::zeros(mode, X, A);
    for (std::size_t a = 0; a < A; ++a) {
        const auto at = tuple_of_index(a, dim_a);
        for (std::size_t x = 0; x < X; ++x) {
            const auto xt = tuple_of_index(x, dim_x);
            if (mode == NumericMode::rational) {
                Rat cell(0);
                for (std::size_t o = 0; o < O; ++o) {
                    const auto ot = d.o_tuple(o);
                    for (std::size_t i = 0; i < I; ++i) {
                        if (p.table.q(i, o) == 0) continue;
                        const auto it = d.i_tuple(i);
                        Rat w = p.table.q(i, o);
                        for (int k = 0; k < n && w != 0; ++k) {
                            const auto& op = ops[static_cast<std::size_t>(k)];
                            w *= op.table.q(static_cast<std::size_t>(xt[static_cast<std::size_t>(k)]) * static_cast<std::size_t>(op.n_o) +
                                                static_cast<std::size_t>(ot[static_cast<std::size_t>(k)]),
                                            static_cast<std::size_t>(at[static_cast<std::size_t>(k)]) * static_cast<std::size_t>(op.n_i) +
                                                static_cast<std::size_t>(it[static_cast<std::size_t>(k)]));
                        }
                        cell += w;
                    }
                }
                out.q(x, a) = cell;
            } else {
                double cell = 0;
                for (std::size_t o = 0; o < O; ++o) {
                    const auto ot = d.o_tuple(o);
                    for (std::size_t i = 0; i < I; ++i) {
                        const auto it = d.i_tuple(i);
                        double w = p.table.at_d(i, o);
                        for (int k = 0; k < n && w != 0; ++k) {
                            const auto& op = ops[static_cast<std::size_t>(k)];
                            w *= op.table.at_d(static_cast<std::size_t>(xt[static_cast<std::size_t>(k)]) * static_cast<std::size_t>(op.n_o) +
                                                   static_cast<std::size_t>(ot[static_cast<std::size_t>(k)]),
                                               static_cast<std::size_t>(at[static_cast<std::size_t>(k)]) * static_cast<std::size_t>(op.n_i) +
                                                   static_cast<std::size_t>(it[static_cast<std::size_t>(k)]));
                        }
                        cell += w;
                    }
                }
                out.d(x, a) = cell;
            }
        }
    }

    if (report) {
        report->normalized = true;
        report->bad_columns.clear();
        report->worst_deviation = 0.0;
        for (std::size_t a = 0; a < A; ++a) {
            bool bad;
            double dev;
            if (mode == NumericMode::rational) {
                Rat s(0);
                for (std::size_t x = 0; x < X; ++x) s += out.q(x, a);
                bad = s != 1;
                dev = std::abs(to_double(s) - 1.0);
            } else {
                double s = 0;
                for (std::size_t x = 0; x < X; ++x) s += out.d(x, a);
                bad = std::abs(s - 1.0) > kEps;
                dev = std::abs(s - 1.0);
            }
            if (bad) {
                report->normalized = false;
                report->bad_columns.push_back(a);
            }
            report->worst_deviation = std::max(report->worst_deviation, dev);
        }
    }
    return out;
}

StochasticProcess process_of_function(const QuasiProcessFunction& w, NumericMode mode) {
    NumTable t = NumTable::zeros(mode, w.dims.i_tuples(), w.dims.o_tuples());
    for (std::size_t o = 0; o < w.omega.size(); ++o) {
        if (mode == NumericMode::rational)
            t.q(w.omega[o], o) = 1;
        else
            t.d(w.omega[o], o) = 1.0;
    }
    return StochasticProcess(w.dims, std::move(t));
}

QuasiRealization quasi_realize(const Correlation& p) {
    const Scenario& sc = p.scenario;
    ProcessDims dims(sc.outcomes, sc.settings);
    std::vector<LocalIntervention> ops;
    for (int k = 0; k < sc.parties(); ++k)
        ops.push_back(LocalIntervention::pass_through(sc.outcomes[static_cast<std::size_t>(k)],
                                                      sc.settings[static_cast<std::size_t>(k)]));
    return QuasiRealization{StochasticProcess(std::move(dims), p.table), std::move(ops)};
}

// ------------------------------------------------------------ enumeration --

std::uint64_t process_function_code(const QuasiProcessFunction& w) {
    const std::uint64_t base = w.dims.i_tuples();
    std::uint64_t code = 0, mult = 1;
    for (std::size_t o = 0; o < w.omega.size(); ++o) {
        const std::uint64_t term = w.omega[o] * mult;
        if (mult != 0 && w.omega[o] != 0 && term / mult != w.omega[o])
            throw std::overflow_error("process function code exceeds 64 bits");
        if (code > std::numeric_limits<std::uint64_t>::max() - term)
            throw std::overflow_error("process function code exceeds 64 bits");
        code += term;
        if (o + 1 < w.omega.size()) {
            if (base != 0 && mult > std::numeric_limits<std::uint64_t>::max() / base)
                throw std::overflow_error("process function code exceeds 64 bits");
            mult *= base;
        }
    }
    return code;
}

QuasiProcessFunction process_function_from_code(const ProcessDims& dims, std::uint64_t code) {
    const std::uint64_t base = dims.i_tuples();
    std::vector<std::uint32_t> omega(dims.o_tuples());
    for (auto& slot : omega) {
        slot = static_cast<std::uint32_t>(code % base);
        code /= base;
    }
    if (code != 0) throw std::out_of_range("process function code out of range for dims");
    return QuasiProcessFunction(dims, std::move(omega));
}

namespace {

// Component k must not depend on the party's own output o_k; otherwise two
// distinct fixed points are constructible and the candidate cannot pass.
bool self_dependent(const QuasiProcessFunction& w, int k) {
    const ProcessDims& d = w.dims;
    std::size_t stride = 1;
    for (std::size_t j = d.dims_o.size(); j-- > static_cast<std::size_t>(k) + 1;)
        stride *= static_cast<std::size_t>(d.dims_o[j]);
    const int nk = d.dims_o[static_cast<std::size_t>(k)];
    for (std::size_t base = 0; base < d.o_tuples(); ++base) {
        if (digit_of(base, d.dims_o, k) != 0) continue;
        const std::size_t ref = w.component(k, base);
        for (int c = 1; c < nk; ++c)
            if (w.component(k, base + static_cast<std::size_t>(c) * stride) != ref) return true;
    }
    return false;
}

// Fixed-point sweep specialized to three binary parties: h_k is one of the
// four maps {0,1} -> {0,1}, h packs into 6 bits, and the composed map is
// evaluated with table lookups only.
bool tri_process_function(std::uint32_t code) {
    // o_of[h6][t]: the o index obtained by feeding i-tuple t through h
    static const auto o_of = [] {
        std::array<std::array<std::uint8_t, 8>, 64> table{};
        for (int h6 = 0; h6 < 64; ++h6)
            for (int t = 0; t < 8; ++t) {
                int o = 0;
                for (int k = 0; k < 3; ++k) {
                    const int ik = (t >> (2 - k)) & 1;
                    const int hk = (h6 >> (2 * (2 - k))) & 3;  // (h(0), h(1)) bit pair
                    const int ok = (hk >> (1 - ik)) & 1;
                    o = o * 2 + ok;
                }
                table[static_cast<std::size_t>(h6)][static_cast<std::size_t>(t)] =
                    static_cast<std::uint8_t>(o);
            }
        return table;
    }();
    for (int h6 = 0; h6 < 64; ++h6) {
        int fixed = 0;
        for (int t = 0; t < 8; ++t) {
            const int o = o_of[static_cast<std::size_t>(h6)][static_cast<std::size_t>(t)];
            if (static_cast<int>((code >> (3 * o)) & 7u) == t && ++fixed > 1) break;
        }
        if (fixed != 1) return false;
    }
    return true;
}

void sweep_tri_codes(std::uint32_t lo, std::uint32_t hi, std::vector<std::uint64_t>& out) {
    for (std::uint32_t code = lo; code < hi; ++code) {
        const tri::Masks M = tri::masks(code);
        if (tri::diff(M, 0, 0) | tri::diff(M, 1, 1) | tri::diff(M, 2, 2)) continue;
        if (tri_process_function(code)) out.push_back(code);
    }
}

}  // namespace

std::vector<QuasiProcessFunction> enumerate_process_functions(const ProcessDims& dims, int jobs) {
    intervention_tuples(dims, 1ull << 20);
    const std::uint64_t base = dims.i_tuples();
    std::uint64_t candidates = 1;
    for (std::size_t o = 0; o < dims.o_tuples(); ++o) {
        if (base != 0 && candidates > (1ull << 25) / base + 1)
            throw std::invalid_argument("process dims: too many candidates");
        candidates *= base;
        if (candidates > (1ull << 25)) throw std::invalid_argument("process dims: too many candidates");
    }

    std::vector<QuasiProcessFunction> out;
    if (is_tri_binary(dims)) {
        const int workers = std::max(1, jobs);
        std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(workers));
        if (workers == 1) {
            sweep_tri_codes(0, static_cast<std::uint32_t>(candidates), parts[0]);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t chunk =
                (candidates + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
            for (int w = 0; w < workers; ++w) {
                const std::uint64_t lo = std::min<std::uint64_t>(candidates, static_cast<std::uint64_t>(w) * chunk);
                const std::uint64_t hi = std::min<std::uint64_t>(candidates, lo + chunk);
                pool.emplace_back(sweep_tri_codes, static_cast<std::uint32_t>(lo),
                                  static_cast<std::uint32_t>(hi), std::ref(parts[static_cast<std::size_t>(w)]));
            }
            for (auto& t : pool) t.join();
        }
        for (const auto& part : parts)
            for (auto code : part) out.push_back(process_function_from_code(dims, code));
        return out;
    }

    std::vector<std::uint32_t> omega(dims.o_tuples(), 0);
    for (std::uint64_t code = 0; code < candidates; ++code) {
        QuasiProcessFunction w(dims, omega);
        bool self = false;
        for (int k = 0; k < dims.parties() && !self; ++k) self = self_dependent(w, k);
        if (!self && is_process_function(w)) out.push_back(std::move(w));
        for (auto& slot : omega) {
            if (++slot < base) break;
            slot = 0;
        }
    }
    return out;
}

// ------------------------------------------------------------ named cases --

QuasiProcessFunction afbw_function() {
    const ProcessDims d = ProcessDims::uniform(3, 2, 2);
    std::vector<std::uint32_t> omega(8);
    for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2)
            for (int o3 = 0; o3 < 2; ++o3) {
                const int i1 = (1 - o2) * o3, i2 = (1 - o3) * o1, i3 = (1 - o1) * o2;
                omega[static_cast<std::size_t>(o1 * 4 + o2 * 2 + o3)] =
                    static_cast<std::uint32_t>(i1 * 4 + i2 * 2 + i3);
            }
    return QuasiProcessFunction(d, std::move(omega));
}

std::vector<QuasiProcessFunction> afbw_family() {
    const QuasiProcessFunction w = afbw_function();
    std::vector<QuasiProcessFunction> out;
    out.reserve(64);
    // flipping a party's bit permutes the packed tuple index by XOR
    for (std::uint32_t fi = 0; fi < 8; ++fi)
        for (std::uint32_t fo = 0; fo < 8; ++fo) {
            std::vector<std::uint32_t> omega(8);
            for (std::uint32_t o = 0; o < 8; ++o) omega[o] = w.omega[o ^ fo] ^ fi;
            out.emplace_back(w.dims, std::move(omega));
        }
    return out;
}

StochasticProcess bfw_process() {
    const ProcessDims d = ProcessDims::uniform(3, 2, 2);
    NumTable t = NumTable::zeros(NumericMode::rational, 8, 8);
    for (std::uint32_t o = 0; o < 8; ++o) {
        const std::uint32_t o1 = (o >> 2) & 1, o2 = (o >> 1) & 1, o3 = o & 1;
        const std::uint32_t shifted = o3 * 4 + o1 * 2 + o2;  // i = (o3, o1, o2)
        t.q(shifted, o) += Rat(1, 2);
        t.q(shifted ^ 7u, o) += Rat(1, 2);  // and its bitwise complement
    }
    return StochasticProcess(d, std::move(t));
}

DEPDecomposition dep_membership(const StochasticProcess& p) {
    const auto funcs = enumerate_process_functions(p.dims);
    std::vector<std::vector<std::uint32_t>> tables;
    std::vector<std::uint64_t> codes;
    tables.reserve(funcs.size());
    for (const auto& w : funcs) {
        tables.push_back(w.omega);
        codes.push_back(process_function_code(w));
    }
    ExplicitPool pool(p.dims.i_tuples(), p.dims.o_tuples(), std::move(tables));
    const HullResult res = hull_membership(pool, p.table);

    DEPDecomposition dep;
    dep.mode = res.mode;
    dep.member = res.status == LPStatus::OPTIMAL;
    if (!dep.member) {
        dep.sepq = res.dualq;
        dep.sepd = res.duald;
        return dep;
    }
    for (const auto& [idx, w] : res.decompq)
        dep.decompq.emplace_back(codes[static_cast<std::size_t>(idx)], w);
    for (const auto& [idx, w] : res.decompd)
        dep.decompd.emplace_back(codes[static_cast<std::size_t>(idx)], w);
    return dep;
}

}  // namespace antinomy
