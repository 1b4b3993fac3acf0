// Acceptance gate: one check per release criterion, each printing a PASS or
// FAIL line with expected-versus-actual detail. Exit status is the number of
// failed criteria (capped), so the suite stays honest about known gaps.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "antinomy/antinomy.hpp"
#include "antinomy/causality.hpp"
#include "antinomy/digraph.hpp"
#include "antinomy/json_io.hpp"
#include "antinomy/lp.hpp"
#include "antinomy/process.hpp"
#include "antinomy/quantum.hpp"
#include "antinomy/scenario.hpp"
#include "antinomy/witness.hpp"

using namespace antinomy;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, bool pass, const std::string& name, const std::string& detail,
            double seconds) {
    std::printf("[%2d] %s  %s: %s (%.2f s)\n", number, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int number, const std::string& name, Fn&& fn) {
    auto t0 = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(number, pass, name, detail, secs);
}

Scenario bi() { return Scenario::uniform(2, 2, 2); }
Scenario tri() { return Scenario::uniform(3, 2, 2); }

const double kQStar = 0.5 * (1.0 + 1.0 / std::sqrt(2.0));

// The closed-form correlation of the one-parameter process-matrix family,
// at rational q, as an exact table. Rows = (x1,x2), cols = (a1,a2).
Correlation family_correlation_rational(const Rat& q) {
    NumTable t = NumTable::zeros(NumericMode::rational, 4, 4);
    t.q(3, 0) = 1;
    t.q(2, 1) = q;
    t.q(3, 1) = 1 - q;
    t.q(1, 2) = q;
    t.q(3, 2) = 1 - q;
    t.q(0, 3) = q / 2;
    t.q(1, 3) = (1 - q) / 2;
    t.q(2, 3) = (1 - q) / 2;
    t.q(3, 3) = q / 2;
    return Correlation{bi(), t};
}

double family_entry(double q, std::size_t row, std::size_t col) {
    NumTable t = NumTable::zeros(NumericMode::dbl, 4, 4);
    t.d(3, 0) = 1;
    t.d(2, 1) = q;
    t.d(3, 1) = 1 - q;
    t.d(1, 2) = q;
    t.d(3, 2) = 1 - q;
    t.d(0, 3) = q / 2;
    t.d(1, 3) = (1 - q) / 2;
    t.d(2, 3) = (1 - q) / 2;
    t.d(3, 3) = q / 2;
    return t.d(row, col);
}

Correlation bfw_correlation() {
    std::vector<LocalIntervention> ops(3, LocalIntervention::pass_through(2, 2));
    return Correlation{tri(), correlation_from_process(bfw_process(), ops)};
}

std::string rat_str(const Rat& r) { return rat_to_string(r); }

}  // namespace

// ---------------------------------------------------------------------------

static void check_bipartite_census() {
    criterion(1, "two-party vertex census", [](std::string& detail) {
        Census c = classify_scenario(bi());
        std::map<std::uint64_t, std::uint64_t> totals, causals;
        for (const auto& r : c.rows) {
            totals[r.cls.canon] = r.total;
            causals[r.cls.canon] = r.causal;
        }
        std::uint64_t oneway_a = 0, oneway_b = 0;
        for (const auto& r : c.rows)
            if (r.cls.canon == 2) {
                auto it = r.by_graph.begin();
                oneway_a = it->second.first;
                oneway_b = std::next(it)->second.first;
            }
        std::uint64_t causal_total = 0;
        for (const auto& r : c.rows) causal_total += r.causal;
        bool pass = c.rows.size() == 3 && totals[0] == 16 && totals[2] == 96 &&
                    oneway_a == 48 && oneway_b == 48 && totals[6] == 144 &&
                    causals[6] == 0 && causal_total == 112 && c.total() == 256;
        std::ostringstream os;
        os << "no-signalling " << totals[0] << ", one-way " << oneway_a << "+" << oneway_b
           << ", two-way " << totals[6] << ", causal total " << causal_total
           << " (expected 16, 48+48, 144, 112)";
        detail = os.str();
        return pass;
    });
}

static void check_tripartite_census() {
    criterion(2, "three-party vertex census", [](std::string& detail) {
        auto t0 = Clock::now();
        Census c = classify_scenario(tri(), 8);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();

        const std::map<std::uint64_t, std::uint64_t> expect = {
            {0, 64},      {2, 1152},     {6, 1728},     {10, 1728},
            {12, 3456},   {14, 10368},   {36, 10944},   {38, 65664},
            {46, 98496},  {74, 65664},   {78, 98496},   {98, 3456},
            {102, 196992},{108, 623808}, {110, 3742848},{238, 11852352},
        };
        // The published list of per-class sizes, as a multiset.
        std::multiset<std::uint64_t> published = {
            64,     1152,   1728,    3456,   1728,    10944,   65664,    623808,
            196992, 98496,  65664,   10368,  98496,   3742848, 11852352, 3456};
        std::multiset<std::uint64_t> got;
        bool keyed_ok = c.rows.size() == expect.size();
        for (const auto& r : c.rows) {
            got.insert(r.total);
            auto it = expect.find(r.cls.canon);
            keyed_ok = keyed_ok && it != expect.end() && it->second == r.total;
        }
        bool pass = keyed_ok && got == published && c.total() == 16777216ull && secs < 300.0;
        std::ostringstream os;
        os << c.rows.size() << " classes, " << c.total() << " vertices"
           << (keyed_ok ? ", every per-class count exact" : ", per-class counts WRONG");
        detail = os.str();
        return pass;
    });
}

static void check_process_function_sweep() {
    criterion(3, "process-function sweep", [](std::string& detail) {
        auto t0 = Clock::now();
        auto pfs = enumerate_process_functions(ProcessDims::uniform(3, 2, 2), 8);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();

        bool soc_ok = true;
        std::set<std::uint64_t> noncausal;
        for (const auto& w : pfs) {
            if (!has_siblings_on_cycles(causal_structure(w))) soc_ok = false;
            if (!is_causal_vertex(Vertex{tri(), w.omega}))
                noncausal.insert(process_function_code(w));
        }
        std::set<std::uint64_t> family;
        for (const auto& w : afbw_family()) family.insert(process_function_code(w));

        bool pass = pfs.size() == 744 && soc_ok && noncausal == family &&
                    family.size() == 64 && secs < 900.0;
        std::ostringstream os;
        os << pfs.size() << " functions (expected 744), siblings-on-cycles "
           << (soc_ok ? "all pass" : "VIOLATED") << ", " << noncausal.size()
           << " noncausal under pass-through "
           << (noncausal == family ? "= the 64 crossing-family codes"
                                   : "NOT the crossing family");
        detail = os.str();
        return pass;
    });
}

static void check_afbw() {
    criterion(4, "crossing-function game values", [](std::string& detail) {
        QuasiProcessFunction w = afbw_function();
        bool is_pf = is_process_function(w);
        Vertex v{tri(), w.omega};
        Rat value = evaluate_vertex(afbw_inequality(), v);
        Rat bound = max_over_causal_vertices(afbw_inequality()).value;
        Rat cyc = evaluate_vertex(gynin(), v);
        bool pass = is_pf && value == 1 && bound == Rat(3, 4) && cyc == Rat(5, 8);
        std::ostringstream os;
        os << "process function " << (is_pf ? "yes" : "NO") << ", majority game "
           << rat_str(value) << " vs causal bound " << rat_str(bound)
           << " (expected 1 vs 3/4), cyclic game " << rat_str(cyc) << " (expected 5/8)";
        detail = os.str();
        return pass;
    });
}

static void check_bfw() {
    criterion(5, "shift-mixture separation", [](std::string& detail) {
        StochasticProcess p = bfw_process();
        bool consistent = is_logically_consistent(p);
        DEPDecomposition dec = dep_membership(p);
        bool infeasible = !dec.member;

        // Re-verify the Farkas functional against all 744 columns.
        bool farkas_ok = infeasible && dec.sepq.size() == 64;
        if (farkas_ok) {
            Rat at_p = 0;
            for (std::size_t r = 0; r < 8; ++r)
                for (std::size_t c = 0; c < 8; ++c) at_p += dec.sepq[r * 8 + c] * p.table.q(r, c);
            farkas_ok = at_p > 0;
            for (const auto& w : enumerate_process_functions(ProcessDims::uniform(3, 2, 2))) {
                Rat at_w = 0;
                for (std::size_t c = 0; c < 8; ++c) at_w += dec.sepq[w.omega[c] * 8 + c];
                if (at_w > 0) farkas_ok = false;
            }
        }
        Rat value = evaluate_exact(gynin(), bfw_correlation());
        bool pass = consistent && infeasible && farkas_ok && value == 1;
        std::ostringstream os;
        os << "consistent " << (consistent ? "yes" : "NO") << ", outside deterministic polytope "
           << (infeasible ? "yes" : "NO") << ", certificate "
           << (farkas_ok ? "re-verified on all 744 columns" : "BROKEN") << ", cyclic game "
           << rat_str(value) << " (expected 1)";
        detail = os.str();
        return pass;
    });
}

static void check_gynin_separation() {
    criterion(6, "cyclic-game exceeders are all antinomic", [](std::string& detail) {
        auto t0 = Clock::now();
        Rat causal_max = max_over_causal_vertices(gynin()).value;

        // Winning-row bitmask per setting column of the cyclic game.
        Witness g = gynin();
        std::array<std::uint8_t, 8> winmask{};
        for (std::size_t col = 0; col < 8; ++col)
            for (std::size_t row = 0; row < 8; ++row)
                if (g.coeff.q(row, col) == 1)
                    winmask[col] |= static_cast<std::uint8_t>(1u << row);

        // Every vertex whose value exceeds 5/8 (i.e. wins at 6+ of the 8
        // settings), checked individually for antinomicity.
        std::vector<std::uint64_t> exceed;
        for (std::uint64_t code = 0; code < (1ull << 24); ++code) {
            int wins = 0;
            for (std::size_t col = 0; col < 8; ++col)
                wins += (winmask[col] >> ((code >> (3 * col)) & 7u)) & 1u;
            if (wins >= 6) exceed.push_back(code);
        }
        std::size_t antinomic = 0;
        for (std::uint64_t code : exceed)
            if (is_dc_vertex(vertex_from_code(tri(), code)).verdict == DCVerdict::ANTINOMIC)
                ++antinomic;
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();

        bool pass = causal_max == Rat(1, 2) && antinomic == exceed.size() && secs < 60.0;
        std::ostringstream os;
        os << "causal max " << rat_str(causal_max) << " (expected 1/2); " << exceed.size()
           << " vertices above 5/8, " << antinomic << " antinomic (expected all)";
        detail = os.str();
        return pass;
    });
}

static void check_quantum_reproduction() {
    criterion(7, "process-matrix correlation family", [](std::string& detail) {
        auto ins = gyni_instruments();
        NumTable got = pm_correlation(w_of_q(kQStar), ins);
        double worst = 0;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                worst = std::max(worst, std::abs(got.d(r, c) - family_entry(kQStar, r, c)));

        Correlation pq{bi(), got};
        double gyni_val = evaluate(gyni({}), pq);
        double lgyni_val = evaluate(lgyni({}), pq);

        bool member_07 = causal_membership(family_correlation_rational(Rat(7, 10))).member;

        std::vector<Vertex> products;
        for (const auto& v : enumerate_causal_vertices(bi()))
            if (signalling_graph(v).edge_count() == 0) products.push_back(v);
        bool bell_half =
            membership_in_vertices(family_correlation_rational(Rat(1, 2)), products).member;

        bool pass = worst <= 1e-9 && std::abs(gyni_val - 0.533470) <= 1e-5 &&
                    std::abs(lgyni_val - 0.783470) <= 1e-5 && member_07 && bell_half;
        std::ostringstream os;
        os << "table deviation " << worst << " (<=1e-9), strict game " << gyni_val
           << " (0.533470+-1e-5), lazy game " << lgyni_val
           << " (0.783470+-1e-5), q=7/10 causal member " << (member_07 ? "yes" : "NO")
           << ", q=1/2 over product vertices " << (bell_half ? "yes" : "NO");
        detail = os.str();
        return pass;
    });
}

static void check_robustness() {
    criterion(8, "robustness of the boundary correlation", [](std::string& detail) {
        auto ins = gyni_instruments();
        Correlation p{bi(), pm_correlation(w_of_q(kQStar), ins)};
        RobustnessResult r = robustness_of_antinomy(p);
        if (r.status != LPStatus::OPTIMAL) {
            detail = "robustness solve not optimal";
            return false;
        }
        const double q = kQStar;
        const double expect_r = (5 * q - 4) / 2;
        const std::map<std::uint64_t, double> expect_w = {
            {27, q / 2},          {91, (1 - q) / 2}, {155, (1 - q) / 2},
            {219, (5 * q - 4) / 2}, {223, 1 - q},    {251, 1 - q},
        };
        bool support_ok = r.decomposition.size() == expect_w.size();
        double worst_w = 0;
        std::uint64_t antinomic_code = 0;
        std::size_t antinomic_terms = 0;
        for (const auto& term : r.decomposition) {
            auto it = expect_w.find(term.code);
            if (it == expect_w.end()) {
                support_ok = false;
                continue;
            }
            worst_w = std::max(worst_w, std::abs(term.wd - it->second));
            if (term.antinomic) {
                ++antinomic_terms;
                antinomic_code = term.code;
            }
        }
        bool lgyni_winner = false;
        if (antinomic_terms == 1) {
            Vertex v = vertex_from_code(bi(), antinomic_code);
            lgyni_winner = evaluate_vertex(lgyni({}), v) == 1;
        }
        bool pass = support_ok && std::abs(r.value_d() - expect_r) <= 1e-6 && worst_w <= 1e-6 &&
                    antinomic_terms == 1 && antinomic_code == 219 && lgyni_winner;
        std::ostringstream os;
        os << "value " << r.value_d() << " (expected " << expect_r
           << " +-1e-6), six-term support " << (support_ok ? "exact" : "WRONG")
           << ", worst weight deviation " << worst_w << ", antinomic term = vertex "
           << antinomic_code << (lgyni_winner ? " winning the lazy game outright" : " NOT a lazy winner");
        detail = os.str();
        return pass;
    });
}

static void check_bipartite_classical_causal() {
    criterion(9, "two-party classical equals causal", [](std::string& detail) {
        int mismatches = 0, classical = 0;
        for (std::uint64_t code = 0; code < 256; ++code) {
            Vertex v = vertex_from_code(bi(), code);
            bool cls = is_dc_vertex(v).verdict == DCVerdict::CLASSICAL;
            bool cau = is_causal_vertex(v);
            if (cls != cau) ++mismatches;
            if (cls) ++classical;
        }
        bool pass = mismatches == 0 && classical == 112;
        std::ostringstream os;
        os << mismatches << " mismatches over 256 vertices, " << classical
           << " classical (expected 0 and 112)";
        detail = os.str();
        return pass;
    });
}

static void check_violator_structure() {
    criterion(10, "guess-game violator structure", [](std::string& detail) {
        bool strict_ok = true, lazy_ok = true, shared_ok = true;
        int nonempty = 0;
        std::vector<std::array<int, 4>> nonempty_outside;
        for (int a0 = 0; a0 < 2; ++a0)
            for (int a1 = 0; a1 < 2; ++a1)
                for (int b0 = 0; b0 < 2; ++b0)
                    for (int b1 = 0; b1 < 2; ++b1) {
                        GyniParams prm{a0, a1, b0, b1};
                        auto strict = maximal_violators(gyni(prm));
                        if (strict.size() != 1) strict_ok = false;
                        auto lazy = maximal_violators(lgyni({a0, a1, b0, b1}));
                        if (lazy.size() != 16) lazy_ok = false;
                        int shared = 0;
                        for (const auto& v : lazy)
                            if (!strict.empty() && v.f == strict[0].f) ++shared;
                        if (shared != 1) shared_ok = false;
                        if (!gyni_lgyni_correspondence(prm).empty()) {
                            ++nonempty;
                            if (a1 != 0 || b1 != 0) nonempty_outside.push_back({a0, a1, b0, b1});
                        }
                    }
        // The published structure claim: the correspondence should be
        // nonempty exactly for the four parameter tuples with
        // alpha1 = beta1 = 0. Constructively it is nonempty for all 16;
        // the claim's only-if direction is false.
        bool published_claim = nonempty == 4 && nonempty_outside.empty();
        bool pass = strict_ok && lazy_ok && shared_ok && published_claim;
        std::ostringstream os;
        os << "strict violators 16x1 " << (strict_ok ? "yes" : "NO") << ", lazy 16x16 "
           << (lazy_ok ? "yes" : "NO") << ", one shared each "
           << (shared_ok ? "yes" : "NO") << "; correspondence nonempty for " << nonempty
           << "/16 tuples, published form expects 4 (only alpha1=beta1=0).";
        if (!published_claim && !nonempty_outside.empty()) {
            const auto& t = nonempty_outside.front();
            os << " Counterexample: the strict (" << t[0] << "," << t[1] << "," << t[2] << ","
               << t[3] << ") violator also wins the lazy game with the same signs at every"
               << " setting, so the only-if direction of the published claim fails.";
        }
        detail = os.str();
        return pass;
    });
}

static void check_embedding_equivalence() {
    criterion(11, "classical embeddings agree with direct composition", [](std::string& detail) {
        std::mt19937_64 rng(193707212);
        std::uniform_int_distribution<int> wgt(0, 9), bit(0, 1), coin(0, 1);
        ProcessDims d = ProcessDims::uniform(2, 2, 2);
        double worst = 0;
        for (int trial = 0; trial < 100; ++trial) {
            NumTable t = NumTable::zeros(NumericMode::rational, 4, 4);
            for (std::size_t c = 0; c < 4; ++c) {
                Rat sum = 0;
                for (std::size_t r = 0; r < 4; ++r) {
                    t.q(r, c) = wgt(rng);
                    sum += t.q(r, c);
                }
                if (sum == 0) {
                    t.q(0, c) = 1;
                    sum = 1;
                }
                for (std::size_t r = 0; r < 4; ++r) t.q(r, c) /= sum;
            }
            StochasticProcess p{d, t};
            std::vector<LocalIntervention> ops;
            for (int k = 0; k < 2; ++k) {
                if (coin(rng)) {
                    std::vector<int> phi(4), psi(4);
                    for (auto& v : phi) v = bit(rng);
                    for (auto& v : psi) v = bit(rng);
                    ops.push_back(LocalIntervention::deterministic(2, 2, 2, 2, phi, psi));
                } else {
                    NumTable op = NumTable::zeros(NumericMode::rational, 4, 4);
                    for (std::size_t c = 0; c < 4; ++c) {
                        Rat sum = 0;
                        for (std::size_t r = 0; r < 4; ++r) {
                            op.q(r, c) = wgt(rng);
                            sum += op.q(r, c);
                        }
                        if (sum == 0) {
                            op.q(0, c) = 1;
                            sum = 1;
                        }
                        for (std::size_t r = 0; r < 4; ++r) op.q(r, c) /= sum;
                    }
                    ops.push_back(LocalIntervention(2, 2, 2, 2, op));
                }
            }
            NumTable classical = correlation_from_process(p, ops);
            NumTable quantum =
                pm_correlation(embed_classical_process(p), embed_classical_interventions(ops));
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    worst = std::max(worst, std::abs(quantum.d(r, c) - classical.at_d(r, c)));
        }
        bool pass = worst <= 1e-9;
        std::ostringstream os;
        os << "worst entry deviation over 100 random processes " << worst << " (<=1e-9)";
        detail = os.str();
        return pass;
    });
}

static void check_lp_soundness() {
    criterion(12, "linear-program certificates", [](std::string& detail) {
        std::mt19937_64 rng(271828182);
        std::uniform_int_distribution<int> dim_m(1, 3), dim_n(1, 5), entry(-3, 3), weight(0, 3);
        int optimal = 0, infeasible = 0, unbounded = 0, bad = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::size_t m = dim_m(rng), n = dim_n(rng);
            std::vector<Rat> A(m * n), b(m), c(n);
            for (auto& a : A) a = entry(rng);
            for (auto& ci : c) ci = entry(rng);
            if (rng() & 1) {
                std::vector<Rat> x0(n);
                for (auto& x : x0) x = weight(rng);
                for (std::size_t i = 0; i < m; ++i) {
                    b[i] = 0;
                    for (std::size_t j = 0; j < n; ++j) b[i] += A[i * n + j] * x0[j];
                }
            } else {
                for (auto& bi : b) bi = entry(rng);
            }
            LinearProgram lp = LinearProgram::rational(m, n, A, b, c);
            LPOutcome out = solve_lp(lp);
            switch (out.status) {
                case LPStatus::OPTIMAL: {
                    ++optimal;
                    Rat primal = 0, dual = 0;
                    for (std::size_t j = 0; j < n; ++j) primal += lp.cq[j] * out.xq[j];
                    for (std::size_t i = 0; i < m; ++i) dual += out.yq[i] * lp.bq[i];
                    if (!(verify_optimal(lp, out) && primal == dual && primal == out.objq)) ++bad;
                    break;
                }
                case LPStatus::INFEASIBLE:
                    ++infeasible;
                    if (!verify_farkas(lp, out)) ++bad;
                    break;
                case LPStatus::UNBOUNDED:
                    ++unbounded;
                    if (!verify_ray(lp, out)) ++bad;
                    break;
            }
        }
        bool pass = bad == 0 && optimal > 0 && infeasible > 0 && unbounded > 0;
        std::ostringstream os;
        os << optimal << " optimal / " << infeasible << " infeasible / " << unbounded
           << " unbounded over 1000 programs, " << bad
           << " certificate failures (expected 0; strong duality exact throughout)";
        detail = os.str();
        return pass;
    });
}

int main() {
    std::printf("acceptance checks\n=================\n");
    check_bipartite_census();
    check_tripartite_census();
    check_process_function_sweep();
    check_afbw();
    check_bfw();
    check_gynin_separation();
    check_quantum_reproduction();
    check_robustness();
    check_bipartite_classical_causal();
    check_violator_structure();
    check_embedding_equivalence();
    check_lp_soundness();
    std::printf("=================\n%d of 12 criteria passed\n", 12 - g_failures);
    if (g_failures > 0)
        std::printf("known gap: the strict-to-lazy correspondence holds for all 16 parameter\n"
                    "tuples, not only the four with alpha1=beta1=0; see README notes.\n");
    return g_failures == 0 ? 0 : 1;
}
