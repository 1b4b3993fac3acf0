#include "antinomy/causality.hpp"

#include "tri_bits.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace antinomy {

namespace {

// Vertex count D^S with the cap enforced before anything can overflow.
std::uint64_t checked_vertex_count(const Scenario& sc, std::uint64_t cap) {
    const std::uint64_t base = sc.outcome_tuples();
    std::uint64_t v = 1;
    for (std::size_t s = 0; s < sc.setting_tuples(); ++s) {
        if (base != 0 && v > cap / base + 1) throw std::invalid_argument("scenario has too many vertices");
        v *= base;
        if (v > cap) throw std::invalid_argument("scenario has too many vertices");
    }
    return v;
}

bool is_tri_binary(const Scenario& sc) {
    return sc.parties() == 3 && sc.settings == std::vector<int>{2, 2, 2} &&
           sc.outcomes == std::vector<int>{2, 2, 2};
}

// Does party k's outcome stay constant across the other active parties'
// settings, for each of its own settings? Restriction: `assign` pins the
// settings of every party outside `active`.
bool pivot_ok(const Vertex& v, const std::vector<int>& active, std::vector<int>& assign, int k) {
    const Scenario& sc = v.scenario;
    std::vector<int> others;
    for (int p : active)
        if (p != k) others.push_back(p);
    for (int c = 0; c < sc.settings[static_cast<std::size_t>(k)]; ++c) {
        assign[static_cast<std::size_t>(k)] = c;
        for (int p : others) assign[static_cast<std::size_t>(p)] = 0;
        int seen = -1;
        for (;;) {
            const int x = v.outcome_of(k, sc.setting_index(assign));
            if (seen < 0)
                seen = x;
            else if (x != seen)
                return false;
            int i = static_cast<int>(others.size()) - 1;
            for (; i >= 0; --i) {
                auto& slot = assign[static_cast<std::size_t>(others[static_cast<std::size_t>(i)])];
                if (++slot < sc.settings[static_cast<std::size_t>(others[static_cast<std::size_t>(i)])]) break;
                slot = 0;
            }
            if (i < 0) break;
        }
    }
    return true;
}

// Recursive definition: some active party goes first (its outcome a function
// of its own setting alone, given the pinned settings), and for each value
// of that setting the residual table over the remaining parties is causal.
bool causal_sub(const Vertex& v, const std::vector<int>& active, std::vector<int>& assign) {
    if (active.size() <= 1) return true;
    const Scenario& sc = v.scenario;
    for (int k : active) {
        if (!pivot_ok(v, active, assign, k)) continue;
        std::vector<int> rest;
        for (int p : active)
            if (p != k) rest.push_back(p);
        bool ok = true;
        for (int c = 0; c < sc.settings[static_cast<std::size_t>(k)] && ok; ++c) {
            assign[static_cast<std::size_t>(k)] = c;
            ok = causal_sub(v, rest, assign);
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool is_causal_vertex(const Vertex& v) {
    const Scenario& sc = v.scenario;
    const int n = sc.parties();
    if (n <= 1) return true;
    if (n == 2) {
        // one-way signalling at most
        const Digraph g = signalling_graph(v);
        return !(g.has_edge(0, 1) && g.has_edge(1, 0));
    }
    if (is_tri_binary(sc)) return tri::causal(tri::masks(static_cast<std::uint32_t>(vertex_code(v))));
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    return causal_sub(v, active, assign);
}

std::uint64_t vertex_code(const Vertex& v) {
    const std::uint64_t base = v.scenario.outcome_tuples();
    std::uint64_t code = 0, mult = 1;
    for (std::size_t s = 0; s < v.f.size(); ++s) {
        const std::uint64_t term = v.f[s] * mult;
        if (mult != 0 && v.f[s] != 0 && term / mult != v.f[s])
            throw std::overflow_error("vertex code exceeds 64 bits");
        if (code > std::numeric_limits<std::uint64_t>::max() - term)
            throw std::overflow_error("vertex code exceeds 64 bits");
        code += term;
        if (s + 1 < v.f.size()) {
            if (base != 0 && mult > std::numeric_limits<std::uint64_t>::max() / base)
                throw std::overflow_error("vertex code exceeds 64 bits");
            mult *= base;
        }
    }
    return code;
}

Vertex vertex_from_code(const Scenario& sc, std::uint64_t code) {
    const std::uint64_t base = sc.outcome_tuples();
    std::vector<std::uint32_t> f(sc.setting_tuples());
    for (auto& slot : f) {
        slot = static_cast<std::uint32_t>(code % base);
        code /= base;
    }
    if (code != 0) throw std::out_of_range("vertex code out of range for scenario");
    return Vertex(sc, std::move(f));
}

std::vector<Vertex> enumerate_causal_vertices(const Scenario& sc, std::uint64_t cap) {
    const std::uint64_t V = checked_vertex_count(sc, cap);
    std::vector<Vertex> out;
    std::vector<std::uint32_t> f(sc.setting_tuples(), 0);
    const auto base = static_cast<std::uint32_t>(sc.outcome_tuples());
    for (std::uint64_t code = 0; code < V; ++code) {
        Vertex v(sc, f);
        if (is_causal_vertex(v)) out.push_back(std::move(v));
        for (auto& slot : f) {
            if (++slot < base) break;
            slot = 0;
        }
    }
    return out;
}

std::uint64_t Census::total() const {
    std::uint64_t t = 0;
    for (const auto& r : rows) t += r.total;
    return t;
}

const CensusRow* Census::find(const SignallingClass& c) const {
    for (const auto& r : rows)
        if (r.cls == c) return &r;
    return nullptr;
}

namespace {

using Tally = std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>>;

// One pass over a code range of the three-binary-parties scenario; pure bit
// work, no allocation in the loop.
void sweep_tri(std::uint32_t lo, std::uint32_t hi, std::vector<std::pair<std::uint64_t, std::uint64_t>>& flat) {
    for (std::uint32_t code = lo; code < hi; ++code) {
        const tri::Masks M = tri::masks(code);
        auto& slot = flat[tri::adjacency_key(M)];
        slot.first += 1;
        slot.second += tri::causal(M) ? 1 : 0;
    }
}

}  // namespace

Census classify_scenario(const Scenario& sc, int jobs, std::uint64_t cap) {
    const int n = sc.parties();
    if (n < 1 || n > 8) throw std::invalid_argument("census supports 1..8 parties");
    const std::uint64_t V = checked_vertex_count(sc, cap);

    Tally tally;
    if (is_tri_binary(sc)) {
        const int workers = std::max(1, jobs);
        std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> parts(
            static_cast<std::size_t>(workers),
            std::vector<std::pair<std::uint64_t, std::uint64_t>>(512, {0, 0}));
        if (workers == 1) {
            sweep_tri(0, static_cast<std::uint32_t>(V), parts[0]);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t chunk = (V + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
            for (int w = 0; w < workers; ++w) {
                const std::uint64_t lo = std::min<std::uint64_t>(V, static_cast<std::uint64_t>(w) * chunk);
                const std::uint64_t hi = std::min<std::uint64_t>(V, lo + chunk);
                pool.emplace_back(sweep_tri, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi),
                                  std::ref(parts[static_cast<std::size_t>(w)]));
            }
            for (auto& t : pool) t.join();
        }
        for (const auto& part : parts)
            for (std::size_t key = 0; key < part.size(); ++key)
                if (part[key].first) {
                    auto& slot = tally[key];
                    slot.first += part[key].first;
                    slot.second += part[key].second;
                }
    } else {
        std::vector<std::uint32_t> f(sc.setting_tuples(), 0);
        const auto base = static_cast<std::uint32_t>(sc.outcome_tuples());
        for (std::uint64_t code = 0; code < V; ++code) {
            Vertex v(sc, f);
            auto& slot = tally[adjacency_key(signalling_graph(v))];
            slot.first += 1;
            slot.second += is_causal_vertex(v) ? 1 : 0;
            for (auto& s : f) {
                if (++s < base) break;
                s = 0;
            }
        }
    }

    std::map<SignallingClass, CensusRow> grouped;
    for (const auto& [key, counts] : tally) {
        const SignallingClass cls = signalling_class(digraph_from_key(n, key));
        auto& row = grouped[cls];
        row.cls = cls;
        row.total += counts.first;
        row.causal += counts.second;
        row.by_graph[key] = counts;
    }
    Census census;
    census.scenario = sc;
    for (auto& [cls, row] : grouped) {
        row.noncausal = row.total - row.causal;
        census.rows.push_back(std::move(row));
    }
    return census;
}

namespace {

// Scan-only pool over the causal vertices of the three-binary-parties
// scenario; codes are vertex codes.
class TriCausalPool final : public ColumnPool {
  public:
    std::size_t table_rows() const override { return 8; }
    std::size_t table_cols() const override { return 8; }
    std::size_t size() const override { return 0; }
    int cost(std::uint64_t) const override { return 0; }

    std::vector<std::uint32_t> table_of(std::uint64_t code) const override {
        std::vector<std::uint32_t> t(8);
        for (int s = 0; s < 8; ++s) t[static_cast<std::size_t>(s)] = (static_cast<std::uint32_t>(code) >> (3 * s)) & 7u;
        return t;
    }

    std::vector<std::uint64_t> initial() const override {
        // a deterministic spread: from 256 evenly spaced starting points,
        // the next causal code
        std::vector<std::uint64_t> seed;
        for (std::uint64_t start = 0; start < kCount; start += kCount / 256) {
            for (std::uint64_t c = start; c < kCount; ++c) {
                if (tri::causal(tri::masks(static_cast<std::uint32_t>(c)))) {
                    seed.push_back(c);
                    break;
                }
            }
        }
        std::sort(seed.begin(), seed.end());
        seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
        return seed;
    }

    bool price(const std::vector<double>& y, bool with_cost, double threshold, std::size_t cap,
               std::vector<std::uint64_t>& out) const override {
        std::vector<std::pair<double, std::uint64_t>> hits;
        for (std::uint32_t code = 0; code < kCount; ++code) {
            if (!tri::causal(tri::masks(code))) continue;
            const double rc = reduced_cost_d(y, with_cost, code);
            if (rc < threshold) hits.emplace_back(rc, code);
        }
        std::sort(hits.begin(), hits.end());
        const bool truncated = hits.size() > cap;
        if (truncated) hits.resize(cap);
        for (auto& [rc, code] : hits) out.push_back(code);
        return truncated;
    }

    void exact_price(const std::vector<Rat>& y, bool with_cost, std::size_t cap,
                     std::vector<std::uint64_t>& out) const override {
        for (std::uint32_t code = 0; code < kCount && out.size() < cap; ++code) {
            if (!tri::causal(tri::masks(code))) continue;
            if (exact_reduced_cost(y, with_cost, code) < 0) out.push_back(code);
        }
    }

  private:
    static constexpr std::uint64_t kCount = 1ull << 24;

    // inline rebuild of the reduced cost to keep the hot scan allocation-free
    double reduced_cost_d(const std::vector<double>& y, bool, std::uint32_t code) const {
        double rc = 0;
        for (int s = 0; s < 8; ++s) rc -= y[static_cast<std::size_t>(((code >> (3 * s)) & 7u) * 8 + static_cast<std::uint32_t>(s))];
        return rc;
    }
};

CausalCertificate certificate_from(const HullResult& res,
                                   const std::vector<std::uint64_t>* code_map) {
    CausalCertificate cert;
    cert.mode = res.mode;
    cert.member = res.status == LPStatus::OPTIMAL;
    if (!cert.member) {
        cert.sepq = res.dualq;
        cert.sepd = res.duald;
        return cert;
    }
    auto translate = [&](std::uint64_t code) {
        return code_map ? (*code_map)[static_cast<std::size_t>(code)] : code;
    };
    for (const auto& [code, w] : res.decompq) cert.decompq.emplace_back(translate(code), w);
    for (const auto& [code, w] : res.decompd) cert.decompd.emplace_back(translate(code), w);
    return cert;
}

CausalCertificate membership_under_filter(const Correlation& p, bool causal_only) {
    const Scenario& sc = p.scenario;
    const std::uint64_t cap = 1ull << 25;
    if (is_tri_binary(sc) && causal_only) {
        TriCausalPool pool;
        return certificate_from(hull_membership(pool, p.table), nullptr);
    }
    const std::uint64_t V = checked_vertex_count(sc, cap);
    if (V > (1ull << 16))
        throw std::invalid_argument("causal membership: scenario too large to enumerate");
    std::vector<std::vector<std::uint32_t>> tables;
    std::vector<std::uint64_t> codes;
    std::vector<std::uint32_t> f(sc.setting_tuples(), 0);
    const auto base = static_cast<std::uint32_t>(sc.outcome_tuples());
    for (std::uint64_t code = 0; code < V; ++code) {
        if (!causal_only || is_causal_vertex(Vertex(sc, f))) {
            tables.push_back(f);
            codes.push_back(code);
        }
        for (auto& s : f) {
            if (++s < base) break;
            s = 0;
        }
    }
    ExplicitPool pool(sc.outcome_tuples(), sc.setting_tuples(), std::move(tables));
    return certificate_from(hull_membership(pool, p.table), &codes);
}

}  // namespace

CausalCertificate causal_membership(const Correlation& p) {
    return membership_under_filter(p, true);
}

CausalCertificate membership_in_vertices(const Correlation& p, const std::vector<Vertex>& pool) {
    std::vector<std::vector<std::uint32_t>> tables;
    std::vector<std::uint64_t> codes;
    tables.reserve(pool.size());
    codes.reserve(pool.size());
    for (const Vertex& v : pool) {
        if (!(v.scenario == p.scenario))
            throw std::invalid_argument("membership: vertex scenario mismatch");
        tables.push_back(v.f);
        codes.push_back(vertex_code(v));
    }
    ExplicitPool ep(p.scenario.outcome_tuples(), p.scenario.setting_tuples(), std::move(tables));
    return certificate_from(hull_membership(ep, p.table), &codes);
}

}  // namespace antinomy
