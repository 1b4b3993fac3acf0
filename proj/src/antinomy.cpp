#include "antinomy/antinomy.hpp"

#include "tri_bits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace antinomy {

FaithfulRealization::FaithfulRealization(Scenario sc, std::vector<int> counts,
                                         std::vector<std::vector<int>> g_tables,
                                         std::vector<std::vector<int>> fp,
                                         QuasiProcessFunction cand)
    : scenario(std::move(sc)),
      class_count(std::move(counts)),
      g(std::move(g_tables)),
      f_prime(std::move(fp)),
      candidate(std::move(cand)) {}

namespace {

std::size_t product(const std::vector<int>& dims) {
    std::size_t p = 1;
    for (int d : dims) p *= static_cast<std::size_t>(d);
    return p;
}

// settings of everyone but party k, in party order
std::vector<int> remote_dims(const Scenario& sc, int k) {
    std::vector<int> dims;
    for (int j = 0; j < sc.parties(); ++j)
        if (j != k) dims.push_back(sc.settings[static_cast<std::size_t>(j)]);
    return dims;
}

// full setting tuple from own setting + remote tuple index
std::vector<int> splice_setting(const Scenario& sc, int k, int own, std::size_t remote,
                                const std::vector<int>& rdims) {
    std::vector<int> a(static_cast<std::size_t>(sc.parties()));
    for (std::size_t j = rdims.size(); j-- > 0;) {
        a[j + (static_cast<std::size_t>(j) >= static_cast<std::size_t>(k) ? 1 : 0)] =
            static_cast<int>(remote % static_cast<std::size_t>(rdims[j]));
        remote /= static_cast<std::size_t>(rdims[j]);
    }
    a[static_cast<std::size_t>(k)] = own;
    return a;
}

}  // namespace

FaithfulRealization faithful_candidate(const Vertex& v) {
    const Scenario& sc = v.scenario;
    const int n = sc.parties();

    std::vector<int> counts(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> g(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> f_prime(static_cast<std::size_t>(n));
    std::vector<std::vector<std::size_t>> reps(static_cast<std::size_t>(n));

    for (int k = 0; k < n; ++k) {
        const auto rdims = remote_dims(sc, k);
        const std::size_t R = product(rdims);
        const int mk = sc.settings[static_cast<std::size_t>(k)];

        // signature of a remote tuple: the column of outcomes over own settings
        std::vector<std::vector<int>> seen;
        auto& labels = g[static_cast<std::size_t>(k)];
        labels.assign(R, -1);
        for (std::size_t r = 0; r < R; ++r) {
            std::vector<int> sig(static_cast<std::size_t>(mk));
            for (int a = 0; a < mk; ++a)
                sig[static_cast<std::size_t>(a)] =
                    v.outcome_of(k, sc.setting_index(splice_setting(sc, k, a, r, rdims)));
            int label = -1;
            for (std::size_t b = 0; b < seen.size(); ++b)
                if (seen[b] == sig) {
                    label = static_cast<int>(b);
                    break;
                }
            if (label < 0) {
                label = static_cast<int>(seen.size());
                seen.push_back(std::move(sig));
                reps[static_cast<std::size_t>(k)].push_back(r);
            }
            labels[r] = label;
        }
        counts[static_cast<std::size_t>(k)] = static_cast<int>(seen.size());
        auto& fp = f_prime[static_cast<std::size_t>(k)];
        fp.assign(static_cast<std::size_t>(mk) * seen.size(), 0);
        for (int a = 0; a < mk; ++a)
            for (std::size_t b = 0; b < seen.size(); ++b)
                fp[static_cast<std::size_t>(a) * seen.size() + b] = seen[b][static_cast<std::size_t>(a)];
    }

    // the candidate environment: parties emit their settings, receive labels
    ProcessDims dims(counts, sc.settings);
    std::vector<std::uint32_t> omega(sc.setting_tuples());
    for (std::size_t o = 0; o < omega.size(); ++o) {
        const auto a = sc.setting_tuple(o);
        std::size_t idx = 0;
        for (int k = 0; k < n; ++k) {
            const auto rdims = remote_dims(sc, k);
            std::size_t r = 0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    r = r * static_cast<std::size_t>(sc.settings[static_cast<std::size_t>(j)]) +
                        static_cast<std::size_t>(a[static_cast<std::size_t>(j)]);
            idx = idx * static_cast<std::size_t>(counts[static_cast<std::size_t>(k)]) +
                  static_cast<std::size_t>(g[static_cast<std::size_t>(k)][r]);
        }
        omega[o] = static_cast<std::uint32_t>(idx);
    }

    return FaithfulRealization(sc, std::move(counts), std::move(g), std::move(f_prime),
                               QuasiProcessFunction(std::move(dims), std::move(omega)));
}

AntinomyVerdict is_dc_vertex(const Vertex& v) {
    AntinomyVerdict out;
    FaithfulRealization real = faithful_candidate(v);
    FixedPointWitness w;
    if (is_process_function(real.candidate, &w)) {
        out.verdict = DCVerdict::CLASSICAL;
        out.realization = std::move(real);
    } else {
        out.verdict = DCVerdict::ANTINOMIC;
        out.witness = std::move(w);
    }
    return out;
}

// ------------------------------------------------------- tripartite sweep --

namespace {

bool is_tri_binary(const Scenario& sc) {
    return sc.parties() == 3 && sc.settings == std::vector<int>{2, 2, 2} &&
           sc.outcomes == std::vector<int>{2, 2, 2};
}

// A vertex's verdict only depends on how each party partitions its four
// remote setting pairs (15 set partitions each): precompute the verdict of
// all 15^3 canonical candidates, then sweeping is pure table lookup.
struct TriVerdict {
    std::array<std::uint8_t, 256> canon_id{};          // raw base-4 string -> partition id
    std::vector<std::array<int, 4>> labels;            // id -> canonical labels
    std::vector<int> counts;                           // id -> class count
    std::vector<std::uint8_t> antinomic;               // id triple -> verdict

    TriVerdict() {
        std::map<std::array<int, 4>, std::uint8_t> ids;
        for (int raw = 0; raw < 256; ++raw) {
            const std::array<int, 4> sym = {raw >> 6 & 3, raw >> 4 & 3, raw >> 2 & 3, raw & 3};
            std::array<int, 4> lab{};
            int next = 0;
            std::array<int, 4> of_sym = {-1, -1, -1, -1};
            for (int r = 0; r < 4; ++r) {
                if (of_sym[static_cast<std::size_t>(sym[static_cast<std::size_t>(r)])] < 0)
                    of_sym[static_cast<std::size_t>(sym[static_cast<std::size_t>(r)])] = next++;
                lab[static_cast<std::size_t>(r)] = of_sym[static_cast<std::size_t>(sym[static_cast<std::size_t>(r)])];
            }
            auto it = ids.find(lab);
            if (it == ids.end()) {
                it = ids.emplace(lab, static_cast<std::uint8_t>(labels.size())).first;
                labels.push_back(lab);
                counts.push_back(next);
            }
            canon_id[static_cast<std::size_t>(raw)] = it->second;
        }

        const std::size_t P = labels.size();
        antinomic.assign(P * P * P, 0);
        for (std::size_t p0 = 0; p0 < P; ++p0)
            for (std::size_t p1 = 0; p1 < P; ++p1)
                for (std::size_t p2 = 0; p2 < P; ++p2) {
                    const int c0 = counts[p0], c1 = counts[p1], c2 = counts[p2];
                    std::vector<std::uint32_t> omega(8);
                    for (int o = 0; o < 8; ++o) {
                        const int r0 = o & 3;
                        const int r1 = ((o >> 2) & 1) * 2 + (o & 1);
                        const int r2 = (o >> 1) & 3;
                        const int b0 = labels[p0][static_cast<std::size_t>(r0)];
                        const int b1 = labels[p1][static_cast<std::size_t>(r1)];
                        const int b2 = labels[p2][static_cast<std::size_t>(r2)];
                        omega[static_cast<std::size_t>(o)] =
                            static_cast<std::uint32_t>((b0 * c1 + b1) * c2 + b2);
                    }
                    QuasiProcessFunction cand(ProcessDims({c0, c1, c2}, {2, 2, 2}), std::move(omega));
                    antinomic[(p0 * P + p1) * P + p2] = is_process_function(cand) ? 0 : 1;
                }
    }

    // partition ids of the three parties of a packed vertex code
    std::array<std::uint8_t, 3> ids_of(const tri::Masks& M) const {
        // own-setting bit and the two remote bits (party-major) per party
        static constexpr int kOwn[3] = {2, 1, 0};
        static constexpr int kHi[3] = {1, 2, 2};
        static constexpr int kLo[3] = {0, 0, 1};
        std::array<std::uint8_t, 3> out{};
        for (int k = 0; k < 3; ++k) {
            int raw = 0;
            for (int r = 0; r < 4; ++r) {
                const int s0 = ((r >> 1) << kHi[k]) | ((r & 1) << kLo[k]);
                const int s1 = s0 | (1 << kOwn[k]);
                const int sig = (((M.m[k] >> s0) & 1) << 1) | ((M.m[k] >> s1) & 1);
                raw = raw * 4 + sig;
            }
            out[static_cast<std::size_t>(k)] = canon_id[static_cast<std::size_t>(raw)];
        }
        return out;
    }

    bool verdict(std::uint32_t code) const {
        const auto id = ids_of(tri::masks(code));
        const std::size_t P = labels.size();
        return antinomic[(static_cast<std::size_t>(id[0]) * P + id[1]) * P + id[2]] != 0;
    }
};

const TriVerdict& tri_verdict() {
    static const TriVerdict v;
    return v;
}

void sweep_verdicts(std::uint32_t lo, std::uint32_t hi, std::vector<std::uint64_t>& bits) {
    const TriVerdict& tv = tri_verdict();
    for (std::uint32_t code = lo; code < hi; ++code)
        if (tv.verdict(code)) bits[code >> 6] |= 1ull << (code & 63);
}

std::string flags_cache_path(const Scenario& sc) {
    const char* dir = std::getenv("ANTINOMY_CACHE_DIR");
    if (!dir || !*dir) return {};
    std::ostringstream os;
    os << dir << "/flags";
    for (int m : sc.settings) os << '-' << m;
    os << '.';
    for (int d : sc.outcomes) os << '-' << d;
    os << ".bin";
    return os.str();
}

bool load_flags(const std::string& path, std::uint64_t V, std::vector<std::uint64_t>& bits) {
    if (path.empty()) return false;
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[8] = {};
    std::uint64_t count = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(&count), 8);
    if (!in || std::string(magic, 8) != "ANTIFLAG" || count != V) return false;
    std::vector<std::uint64_t> words((V + 63) / 64);
    in.read(reinterpret_cast<char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
    if (!in) return false;
    bits = std::move(words);
    return true;
}

void store_flags(const std::string& path, std::uint64_t V, const std::vector<std::uint64_t>& bits) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return;  // cache is best-effort
    out.write("ANTIFLAG", 8);
    out.write(reinterpret_cast<const char*>(&V), 8);
    out.write(reinterpret_cast<const char*>(bits.data()),
              static_cast<std::streamsize>(bits.size() * sizeof(std::uint64_t)));
}

std::uint64_t checked_vertices(const Scenario& sc, std::uint64_t cap) {
    const std::uint64_t base = sc.outcome_tuples();
    std::uint64_t v = 1;
    for (std::size_t s = 0; s < sc.setting_tuples(); ++s) {
        if (base != 0 && v > cap / base + 1) throw std::invalid_argument("scenario has too many vertices");
        v *= base;
        if (v > cap) throw std::invalid_argument("scenario has too many vertices");
    }
    return v;
}

}  // namespace

bool antinomic_flag(const std::vector<std::uint64_t>& bits, std::uint64_t code) {
    return (bits[code >> 6] >> (code & 63)) & 1;
}

const std::vector<std::uint64_t>& antinomic_flags(const Scenario& sc, int jobs, std::uint64_t cap) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<std::uint64_t>> cache;

    std::scoped_lock lock(mu);
    const auto key = std::make_pair(sc.settings, sc.outcomes);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const std::uint64_t V = checked_vertices(sc, cap);
    std::vector<std::uint64_t> bits((V + 63) / 64, 0);
    const std::string path = flags_cache_path(sc);
    if (!load_flags(path, V, bits)) {
        if (is_tri_binary(sc)) {
            const int workers = std::max(1, jobs);
            if (workers == 1) {
                sweep_verdicts(0, static_cast<std::uint32_t>(V), bits);
            } else {
                // each worker owns a disjoint 64-aligned span of the bitset
                std::vector<std::thread> pool;
                std::uint64_t chunk = (V / 64 + static_cast<std::uint64_t>(workers) - 1) /
                                      static_cast<std::uint64_t>(workers) * 64;
                for (int w = 0; w < workers; ++w) {
                    const std::uint64_t lo = std::min<std::uint64_t>(V, static_cast<std::uint64_t>(w) * chunk);
                    const std::uint64_t hi = std::min<std::uint64_t>(V, lo + chunk);
                    if (lo < hi)
                        pool.emplace_back(sweep_verdicts, static_cast<std::uint32_t>(lo),
                                          static_cast<std::uint32_t>(hi), std::ref(bits));
                }
                for (auto& t : pool) t.join();
            }
        } else {
            std::vector<std::uint32_t> f(sc.setting_tuples(), 0);
            const auto base = static_cast<std::uint32_t>(sc.outcome_tuples());
            for (std::uint64_t code = 0; code < V; ++code) {
                const FaithfulRealization real = faithful_candidate(Vertex(sc, f));
                if (!is_process_function(real.candidate)) bits[code >> 6] |= 1ull << (code & 63);
                for (auto& slot : f) {
                    if (++slot < base) break;
                    slot = 0;
                }
            }
        }
        store_flags(path, V, bits);
    }
    return cache.emplace(key, std::move(bits)).first->second;
}

// ------------------------------------------------------------ memberships --

namespace {

// Scan-only pool over all vertices of the three-binary-parties scenario;
// classical-only restricts to unflagged codes, flag_costs charges 1 for
// flagged ones.
class TriFlagPool final : public ColumnPool {
  public:
    TriFlagPool(const std::vector<std::uint64_t>& flags, bool classical_only, bool flag_costs)
        : flags_(flags), classical_only_(classical_only), flag_costs_(flag_costs) {}

    std::size_t table_rows() const override { return 8; }
    std::size_t table_cols() const override { return 8; }
    std::size_t size() const override { return 0; }

    int cost(std::uint64_t code) const override {
        return flag_costs_ && antinomic_flag(flags_, code) ? 1 : 0;
    }

    std::vector<std::uint32_t> table_of(std::uint64_t code) const override {
        std::vector<std::uint32_t> t(8);
        for (int s = 0; s < 8; ++s)
            t[static_cast<std::size_t>(s)] = (static_cast<std::uint32_t>(code) >> (3 * s)) & 7u;
        return t;
    }

    std::vector<std::uint64_t> initial() const override {
        std::vector<std::uint64_t> seed;
        for (std::uint64_t start = 0; start < kCount; start += kCount / 256) {
            for (std::uint64_t c = start; c < kCount; ++c) {
                if (skip(c)) continue;
                seed.push_back(c);
                break;
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
            if (skip(code)) continue;
            double rc = with_cost ? cost(code) : 0.0;
            for (int s = 0; s < 8; ++s)
                rc -= y[static_cast<std::size_t>(((code >> (3 * s)) & 7u) * 8 +
                                                 static_cast<std::uint32_t>(s))];
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
            if (skip(code)) continue;
            if (exact_reduced_cost(y, with_cost, code) < 0) out.push_back(code);
        }
    }

  private:
    static constexpr std::uint64_t kCount = 1ull << 24;
    bool skip(std::uint64_t code) const { return classical_only_ && antinomic_flag(flags_, code); }

    const std::vector<std::uint64_t>& flags_;
    bool classical_only_, flag_costs_;
};

CausalCertificate certificate_from(const HullResult& res, const std::vector<std::uint64_t>* code_map) {
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

}  // namespace

CausalCertificate dc_membership(const Correlation& p, int jobs) {
    const Scenario& sc = p.scenario;
    if (is_tri_binary(sc)) {
        TriFlagPool pool(antinomic_flags(sc, jobs), true, false);
        return certificate_from(hull_membership(pool, p.table), nullptr);
    }
    const std::uint64_t V = checked_vertices(sc, 1ull << 25);
    if (V > (1ull << 16))
        throw std::invalid_argument("classical membership: scenario too large to enumerate");
    std::vector<std::vector<std::uint32_t>> tables;
    std::vector<std::uint64_t> codes;
    std::vector<std::uint32_t> f(sc.setting_tuples(), 0);
    const auto base = static_cast<std::uint32_t>(sc.outcome_tuples());
    for (std::uint64_t code = 0; code < V; ++code) {
        const FaithfulRealization real = faithful_candidate(Vertex(sc, f));
        if (is_process_function(real.candidate)) {
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

// -------------------------------------------------------------- robustness --

namespace {

RobustnessResult robustness_from(const HullResult& res, const std::vector<std::uint64_t>* code_map,
                                 const std::function<bool(std::uint64_t)>& flag_of) {
    RobustnessResult r;
    r.status = res.status;
    r.mode = res.mode;
    if (res.status != LPStatus::OPTIMAL) {
        r.dualq = res.dualq;
        r.duald = res.duald;
        return r;
    }
    r.valueq = res.valueq;
    r.valued = res.valued;
    r.dualq = res.dualq;
    r.duald = res.duald;
    auto translate = [&](std::uint64_t code) {
        return code_map ? (*code_map)[static_cast<std::size_t>(code)] : code;
    };
    for (const auto& [code, w] : res.decompq) {
        const std::uint64_t ext = translate(code);
        r.decomposition.push_back({ext, w, to_double(w), flag_of(ext)});
    }
    for (const auto& [code, w] : res.decompd) {
        const std::uint64_t ext = translate(code);
        r.decomposition.push_back({ext, Rat(0), w, flag_of(ext)});
    }
    return r;
}

}  // namespace

RobustnessResult robustness_of_antinomy(const Correlation& p, int jobs) {
    const Scenario& sc = p.scenario;
    if (is_tri_binary(sc)) {
        const auto& flags = antinomic_flags(sc, jobs);
        TriFlagPool pool(flags, false, true);
        return robustness_from(hull_decompose(pool, p.table), nullptr,
                               [&](std::uint64_t code) { return antinomic_flag(flags, code); });
    }
    const std::uint64_t V = checked_vertices(sc, 1ull << 25);
    if (V > (1ull << 16))
        throw std::invalid_argument("robustness: scenario too large to enumerate");
    std::vector<std::vector<std::uint32_t>> tables;
    std::vector<int> costs;
    std::vector<std::uint32_t> f(sc.setting_tuples(), 0);
    const auto base = static_cast<std::uint32_t>(sc.outcome_tuples());
    std::vector<bool> flagged(V, false);
    for (std::uint64_t code = 0; code < V; ++code) {
        const FaithfulRealization real = faithful_candidate(Vertex(sc, f));
        flagged[code] = !is_process_function(real.candidate);
        tables.push_back(f);
        costs.push_back(flagged[code] ? 1 : 0);
        for (auto& s : f) {
            if (++s < base) break;
            s = 0;
        }
    }
    ExplicitPool pool(sc.outcome_tuples(), sc.setting_tuples(), std::move(tables), std::move(costs));
    return robustness_from(hull_decompose(pool, p.table), nullptr,
                           [&](std::uint64_t code) { return flagged[code]; });
}

RobustnessResult robustness_of_antinomy(const Correlation& p, const std::vector<Vertex>& pool) {
    std::vector<std::vector<std::uint32_t>> tables;
    std::vector<int> costs;
    std::vector<std::uint64_t> codes;
    std::map<std::uint64_t, bool> flag_by_code;
    for (const Vertex& v : pool) {
        if (!(v.scenario == p.scenario))
            throw std::invalid_argument("robustness: vertex scenario mismatch");
        const bool bad = is_dc_vertex(v).verdict == DCVerdict::ANTINOMIC;
        tables.push_back(v.f);
        costs.push_back(bad ? 1 : 0);
        codes.push_back(vertex_code(v));
        flag_by_code[codes.back()] = bad;
    }
    ExplicitPool ep(p.scenario.outcome_tuples(), p.scenario.setting_tuples(), std::move(tables),
                    std::move(costs));
    return robustness_from(hull_decompose(ep, p.table), &codes,
                           [&](std::uint64_t code) { return flag_by_code.at(code); });
}

// ------------------------------------------------------------ verification --

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

bool verify_robustness_certificate(const Correlation& p, const RobustnessResult& r, int jobs) {
    if (r.status != LPStatus::OPTIMAL) return false;
    const Scenario& sc = p.scenario;
    const std::size_t rows = sc.outcome_tuples(), cols = sc.setting_tuples();
    const bool rational = r.mode == NumericMode::rational;
    constexpr double tol = 1e-7;

    // decomposition: nonnegative, sums to one, reproduces p, value matches
    if (rational) {
        Rat total(0), bad(0);
        NumTable mixq = NumTable::zeros(NumericMode::rational, rows, cols);
        for (const auto& t : r.decomposition) {
            if (t.wq < 0) return false;
            total += t.wq;
            if (t.antinomic) bad += t.wq;
            const Vertex v = vertex_from_code(sc, t.code);
            for (std::size_t s = 0; s < cols; ++s) mixq.q(v.f[s], s) += t.wq;
        }
        if (total != 1 || bad != r.valueq) return false;
        if (!p.table.is_rational() || mixq.rq != p.table.rq) return false;
    } else {
        double total = 0, bad = 0;
        NumTable mixd = NumTable::zeros(NumericMode::dbl, rows, cols);
        for (const auto& t : r.decomposition) {
            if (t.wd < -tol) return false;
            total += t.wd;
            if (t.antinomic) bad += t.wd;
            const Vertex v = vertex_from_code(sc, t.code);
            for (std::size_t s = 0; s < cols; ++s) mixd.d(v.f[s], s) += t.wd;
        }
        if (!near(total, 1.0, tol) || !near(bad, r.valued, tol)) return false;
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t s = 0; s < cols; ++s)
                if (!near(mixd.d(x, s), p.table.at_d(x, s), tol)) return false;
    }

    // the terms' flags must agree with the verdicts
    for (const auto& t : r.decomposition)
        if ((is_dc_vertex(vertex_from_code(sc, t.code)).verdict == DCVerdict::ANTINOMIC) != t.antinomic)
            return false;

    // dual: y.p = value, y.A_v <= cost(v) over the full pool
    if (r.dualq.empty() && r.duald.empty()) return false;
    if (rational) {
        if (r.dualq.size() != rows * cols) return false;
        Rat obj(0);
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t s = 0; s < cols; ++s) obj += r.dualq[x * cols + s] * p.table.q(x, s);
        if (obj != r.valueq) return false;
    } else {
        if (r.duald.size() != rows * cols) return false;
        double obj = 0;
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t s = 0; s < cols; ++s) obj += r.duald[x * cols + s] * p.table.at_d(x, s);
        if (!near(obj, r.valued, tol)) return false;
    }

    const std::uint64_t V = checked_vertices(sc, 1ull << 25);
    const bool tri = is_tri_binary(sc);
    const std::vector<std::uint64_t>* flags = tri ? &antinomic_flags(sc, jobs) : nullptr;

    std::vector<double> yd;
    if (rational) {
        yd.resize(r.dualq.size());
        for (std::size_t i = 0; i < yd.size(); ++i) yd[i] = to_double(r.dualq[i]);
    } else {
        yd = r.duald;
    }
    double scale = 1.0;
    for (double v : yd) scale = std::max(scale, std::abs(v));
    const double band = 1e-9 * scale;

    std::vector<std::uint32_t> f(cols, 0);
    const auto base = static_cast<std::uint32_t>(rows);
    std::vector<std::uint32_t> cur(cols);
    for (std::uint64_t code = 0; code < V; ++code) {
        bool bad;
        double ya = 0;
        if (tri) {
            bad = antinomic_flag(*flags, code);
            for (std::size_t s = 0; s < 8; ++s) cur[s] = (static_cast<std::uint32_t>(code) >> (3 * s)) & 7u;
        } else {
            cur = f;
            bad = is_dc_vertex(Vertex(sc, cur)).verdict == DCVerdict::ANTINOMIC;
            for (auto& slot : f) {
                if (++slot < base) break;
                slot = 0;
            }
        }
        for (std::size_t s = 0; s < cols; ++s) ya += yd[cur[s] * cols + s];
        const double limit = bad ? 1.0 : 0.0;
        if (rational) {
            if (ya > limit - band) {
                // near or past the boundary: settle exactly
                Rat exact(0);
                for (std::size_t s = 0; s < cols; ++s) exact += r.dualq[cur[s] * cols + s];
                if (exact > (bad ? Rat(1) : Rat(0))) return false;
            }
        } else if (ya > limit + tol) {
            return false;
        }
    }
    return true;
}

}  // namespace antinomy
