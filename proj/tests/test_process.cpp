#include "antinomy/process.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "antinomy/causality.hpp"
#include "test_util.hpp"

using namespace antinomy;

namespace {

ProcessDims tri_dims() { return ProcessDims::uniform(3, 2, 2); }

// Count fixed points of i -> omega(h(i)) by brute force.
std::size_t fixed_points_of(const QuasiProcessFunction& w, const std::vector<std::vector<int>>& h) {
    std::size_t count = 0;
    for (std::size_t i_idx = 0; i_idx < w.dims.i_tuples(); ++i_idx) {
        auto i = w.dims.i_tuple(i_idx);
        std::vector<int> o(i.size());
        for (std::size_t k = 0; k < i.size(); ++k) o[k] = h[k][static_cast<std::size_t>(i[k])];
        if (w.omega[w.dims.o_index(o)] == i_idx) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("process dims index round-trips") {
    ProcessDims d = tri_dims();
    CHECK(d.parties() == 3);
    CHECK(d.i_tuples() == 8);
    CHECK(d.o_tuples() == 8);
    CHECK(d.o_index({1, 0, 1}) == 5);  // party 1 most significant
    CHECK(d.i_tuple(6) == std::vector<int>{1, 1, 0});
    for (std::size_t idx = 0; idx < d.o_tuples(); ++idx)
        CHECK(d.o_index(d.o_tuple(idx)) == idx);

    ProcessDims mixed({2, 3}, {2, 2});
    CHECK(mixed.i_tuples() == 6);
    CHECK(mixed.o_tuples() == 4);
    CHECK(mixed.i_index({1, 2}) == 5);
    for (std::size_t idx = 0; idx < mixed.i_tuples(); ++idx)
        CHECK(mixed.i_index(mixed.i_tuple(idx)) == idx);
}

TEST_CASE("the three-party crossing function is a process function") {
    QuasiProcessFunction w = afbw_function();
    REQUIRE(w.dims == tri_dims());

    // Re-derive the table from i1 = (1-o2)o3, i2 = (1-o3)o1, i3 = (1-o1)o2.
    std::vector<std::uint32_t> expect(8);
    for (std::size_t o_idx = 0; o_idx < 8; ++o_idx) {
        auto o = w.dims.o_tuple(o_idx);
        int i1 = (1 - o[1]) * o[2];
        int i2 = (1 - o[2]) * o[0];
        int i3 = (1 - o[0]) * o[1];
        expect[o_idx] = static_cast<std::uint32_t>(w.dims.i_index({i1, i2, i3}));
    }
    CHECK(w.omega == expect);
    CHECK(w.omega == std::vector<std::uint32_t>{0, 4, 1, 1, 2, 4, 2, 0});
    CHECK(process_function_code(w) == 664160u);
    CHECK(process_function_from_code(w.dims, 664160u).omega == w.omega);

    CHECK(is_process_function(w));
    for (std::size_t o_idx = 0; o_idx < 8; ++o_idx) {
        auto i = w.dims.i_tuple(w.omega[o_idx]);
        CHECK(w.component(0, o_idx) == static_cast<std::size_t>(i[0]));
        CHECK(w.component(2, o_idx) == static_cast<std::size_t>(i[2]));
    }

    // Every party signals to every other: the complete graph on 3 nodes.
    Digraph g = causal_structure(w);
    CHECK(g.edge_count() == 6);
}

TEST_CASE("the bit-flip family has 64 distinct process functions") {
    auto fam = afbw_family();
    REQUIRE(fam.size() == 64);
    std::set<std::uint64_t> codes;
    for (const auto& w : fam) {
        CHECK(is_process_function(w));
        codes.insert(process_function_code(w));
    }
    CHECK(codes.size() == 64);
    CHECK(codes.count(664160u) == 1);
}

TEST_CASE("fixed-point criterion accepts and rejects correctly") {
    ProcessDims d1 = ProcessDims::uniform(1, 2, 2);

    // Identity loop i = o: the identity intervention has two fixed points.
    QuasiProcessFunction idw{d1, {0, 1}};
    FixedPointWitness fail;
    CHECK_FALSE(is_process_function(idw, &fail));
    CHECK(fail.fixed_points != 1);
    CHECK(fixed_points_of(idw, fail.h) == fail.fixed_points);

    // Constant environment: exactly one fixed point for every intervention.
    QuasiProcessFunction constw{d1, {0, 0}};
    CHECK(is_process_function(constw));

    // Tripartite identity also fails, and the witness is self-consistent.
    ProcessDims d3 = tri_dims();
    std::vector<std::uint32_t> ident(8);
    for (std::uint32_t i = 0; i < 8; ++i) ident[i] = i;
    QuasiProcessFunction idw3{d3, ident};
    FixedPointWitness fail3;
    CHECK_FALSE(is_process_function(idw3, &fail3));
    CHECK(fail3.fixed_points != 1);
    CHECK(fixed_points_of(idw3, fail3.h) == fail3.fixed_points);
}

TEST_CASE("process function enumeration") {
    // Two parties, binary wires: 12 process functions, and each one acts as
    // a constant toward at least one party (no two-way signalling without a
    // third party to break the loop).
    ProcessDims d2 = ProcessDims::uniform(2, 2, 2);
    auto two = enumerate_process_functions(d2);
    CHECK(two.size() == 12);
    for (const auto& w : two) {
        CHECK(is_process_function(w));
        bool w1_const = true, w2_const = true;
        for (std::size_t o = 0; o < 4; ++o) {
            w1_const = w1_const && w.component(0, o) == w.component(0, 0);
            w2_const = w2_const && w.component(1, o) == w.component(1, 0);
        }
        CHECK((w1_const || w2_const));
    }

    // Three parties: 744, in strictly ascending code order, stable across
    // worker counts, with round-tripping codes.
    auto pf1 = enumerate_process_functions(tri_dims(), 1);
    auto pf3 = enumerate_process_functions(tri_dims(), 3);
    REQUIRE(pf1.size() == 744);
    REQUIRE(pf3.size() == 744);
    for (std::size_t i = 0; i < pf1.size(); ++i) {
        CHECK(pf1[i].omega == pf3[i].omega);
        if (i > 0) CHECK(process_function_code(pf1[i - 1]) < process_function_code(pf1[i]));
        std::uint64_t code = process_function_code(pf1[i]);
        CHECK(process_function_from_code(tri_dims(), code).omega == pf1[i].omega);
    }
}

TEST_CASE("logical consistency of stochastic processes") {
    // Deterministic process functions induce consistent processes.
    CHECK(is_logically_consistent(process_of_function(afbw_function())));

    // The shift mixture is consistent without being deterministic.
    CHECK(is_logically_consistent(bfw_process()));

    // The identity loop is not; the witness counts its fixed points.
    QuasiProcessFunction idw{ProcessDims::uniform(1, 2, 2), {0, 1}};
    FixedPointWitness fail;
    CHECK_FALSE(is_logically_consistent(process_of_function(idw), &fail));
    CHECK(fail.fixed_points != 1);
}

TEST_CASE("the shift-mixture process table matches its formula") {
    StochasticProcess p = bfw_process();
    REQUIRE(p.table.rows == 8);
    REQUIRE(p.table.cols == 8);
    for (std::size_t o_idx = 0; o_idx < 8; ++o_idx) {
        auto o = p.dims.o_tuple(o_idx);
        std::size_t shift = p.dims.i_index({o[2], o[0], o[1]});
        std::size_t flipped = p.dims.i_index({1 - o[2], 1 - o[0], 1 - o[1]});
        for (std::size_t i_idx = 0; i_idx < 8; ++i_idx) {
            Rat expect = (i_idx == shift || i_idx == flipped) ? Rat(1, 2) : Rat(0);
            CHECK(p.table.q(i_idx, o_idx) == expect);
        }
    }
}

TEST_CASE("correlations from processes") {
    SUBCASE("pass-through interventions turn a process function into its vertex") {
        QuasiProcessFunction w = afbw_function();
        StochasticProcess p = process_of_function(w);
        std::vector<LocalIntervention> ops(3, LocalIntervention::pass_through(2, 2));
        NormalizationReport rep;
        NumTable t = correlation_from_process(p, ops, &rep);
        CHECK(rep.normalized);
        Scenario sc = Scenario::uniform(3, 2, 2);
        Vertex v{sc, w.omega};
        CHECK(t.entry_equal(vertex_to_correlation(v, NumericMode::rational).table));
    }

    SUBCASE("inconsistent quasi-processes are reported, not clamped") {
        // Identity loop with the intervention o = i: every column doubles.
        ProcessDims d1 = ProcessDims::uniform(1, 2, 2);
        StochasticProcess ident = process_of_function(QuasiProcessFunction{d1, {0, 1}});
        LocalIntervention feedback =
            LocalIntervention::deterministic(2, 2, 2, 2, {0, 0, 0, 0}, {0, 1, 0, 1});
        NormalizationReport rep;
        NumTable t = correlation_from_process(ident, {feedback}, &rep);
        CHECK_FALSE(rep.normalized);
        CHECK(rep.bad_columns == std::vector<std::size_t>{0, 1});
        CHECK(rep.worst_deviation == doctest::Approx(1.0));
        CHECK(t.q(0, 0) == 2);  // the raw, unclamped sum

        // Anti-identity with the same feedback: columns vanish instead.
        StochasticProcess anti = process_of_function(QuasiProcessFunction{d1, {1, 0}});
        NormalizationReport rep2;
        NumTable t2 = correlation_from_process(anti, {feedback}, &rep2);
        CHECK_FALSE(rep2.normalized);
        CHECK(t2.q(0, 0) == 0);
        CHECK(t2.q(1, 0) == 0);
    }
}

TEST_CASE("every correlation is realized by its quasi-process rewrite") {
    Scenario sc = Scenario::uniform(2, 2, 2);
    testutil::Rng rng(550291);
    for (int trial = 0; trial < 5; ++trial) {
        Correlation p = testutil::random_rational_correlation(sc, rng);
        QuasiRealization qr = quasi_realize(p);
        NormalizationReport rep;
        NumTable t = correlation_from_process(qr.process, qr.ops, &rep);
        CHECK(rep.normalized);
        REQUIRE(t.rows == p.table.rows);
        REQUIRE(t.cols == p.table.cols);
        for (std::size_t r = 0; r < t.rows; ++r)
            for (std::size_t c = 0; c < t.cols; ++c) CHECK(t.q(r, c) == p.table.q(r, c));
    }
}

TEST_CASE("membership in the deterministic-extrema polytope") {
    // Two-party dims keep the LPs small; the three-party non-member case
    // gets its own test below.
    ProcessDims d2 = ProcessDims::uniform(2, 2, 2);
    auto pfs = enumerate_process_functions(d2);
    REQUIRE(pfs.size() == 12);

    SUBCASE("a process function is its own decomposition") {
        DEPDecomposition dec = dep_membership(process_of_function(pfs[7]));
        REQUIRE(dec.member);
        REQUIRE(dec.decompq.size() == 1);
        CHECK(dec.decompq[0].first == process_function_code(pfs[7]));
        CHECK(dec.decompq[0].second == 1);
    }

    SUBCASE("a two-point mixture is recognized and rebuilt exactly") {
        StochasticProcess a = process_of_function(pfs[2]);
        StochasticProcess b = process_of_function(pfs[9]);
        NumTable t = NumTable::zeros(NumericMode::rational, 4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                t.q(r, c) = Rat(1, 3) * a.table.q(r, c) + Rat(2, 3) * b.table.q(r, c);
        StochasticProcess mixed{d2, t};
        DEPDecomposition dec = dep_membership(mixed);
        REQUIRE(dec.member);
        NumTable acc = NumTable::zeros(NumericMode::rational, 4, 4);
        Rat wsum = 0;
        for (const auto& [code, wt] : dec.decompq) {
            CHECK(wt >= 0);
            wsum += wt;
            QuasiProcessFunction w = process_function_from_code(d2, code);
            CHECK(is_process_function(w));
            for (std::size_t c = 0; c < 4; ++c) acc.q(w.omega[c], c) += wt;
        }
        CHECK(wsum == 1);
        CHECK(acc.entry_equal(t));
    }
}

TEST_CASE("the shift mixture lies outside the deterministic polytope") {
    StochasticProcess bfw = bfw_process();
    DEPDecomposition dec = dep_membership(bfw);
    REQUIRE_FALSE(dec.member);
    REQUIRE(dec.sepq.size() == 64);
    // The Farkas functional separates: positive on the process, nonpositive
    // on every one of the 744 process-function columns.
    Rat at_p = 0;
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) at_p += dec.sepq[r * 8 + c] * bfw.table.q(r, c);
    CHECK(at_p > 0);
    for (const auto& w : enumerate_process_functions(tri_dims())) {
        Rat at_w = 0;
        for (std::size_t c = 0; c < 8; ++c) at_w += dec.sepq[w.omega[c] * 8 + c];
        CHECK(at_w <= 0);
    }
}

TEST_CASE("local interventions") {
    // Pass-through: x = i, o = a.
    LocalIntervention pt = LocalIntervention::pass_through(2, 3);
    CHECK(pt.n_x == 2);
    CHECK(pt.n_i == 2);
    CHECK(pt.n_o == 3);
    CHECK(pt.n_a == 3);
    for (int x = 0; x < 2; ++x)
        for (int o = 0; o < 3; ++o)
            for (int a = 0; a < 3; ++a)
                for (int i = 0; i < 2; ++i) {
                    Rat expect = (x == i && o == a) ? 1 : 0;
                    CHECK(pt.table.q(static_cast<std::size_t>(x * 3 + o),
                                     static_cast<std::size_t>(a * 2 + i)) == expect);
                }

    // Deterministic tables place unit mass at (phi, psi).
    LocalIntervention det =
        LocalIntervention::deterministic(2, 2, 2, 2, {0, 1, 1, 0}, {1, 1, 0, 0});
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i) {
            int x = (a == i) ? 0 : 1;  // phi = a xor i
            int o = 1 - a;             // psi = not a
            CHECK(det.table.q(static_cast<std::size_t>(x * 2 + o),
                              static_cast<std::size_t>(a * 2 + i)) == 1);
        }
}
