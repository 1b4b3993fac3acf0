#include "antinomy/causality.hpp"

#include <doctest.h>

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "antinomy/digraph.hpp"
#include "test_util.hpp"

using namespace antinomy;

namespace {

Scenario bi() { return Scenario::uniform(2, 2, 2); }
Scenario tri() { return Scenario::uniform(3, 2, 2); }

// Expected tripartite census, keyed by the canonical adjacency key of the
// signalling class: {total vertices, causal vertices, labelled graphs}.
const std::map<std::uint64_t, std::array<std::uint64_t, 3>> kTriCensus = {
    {0, {64, 64, 1}},        {2, {1152, 1152, 6}},
    {6, {1728, 1728, 3}},    {10, {1728, 0, 3}},
    {12, {3456, 3456, 6}},   {14, {10368, 0, 6}},
    {36, {10944, 10944, 3}}, {38, {65664, 65664, 6}},
    {46, {98496, 0, 3}},     {74, {65664, 0, 6}},
    {78, {98496, 0, 3}},     {98, {3456, 0, 2}},
    {102, {196992, 0, 6}},   {108, {623808, 55296, 3}},
    {110, {3742848, 0, 6}},  {238, {11852352, 0, 1}},
};

const CensusRow& row_of(const Census& c, std::uint64_t canon) {
    for (const auto& r : c.rows)
        if (r.cls.canon == canon) return r;
    throw std::logic_error("class not present");
}

Rat dot_table(const std::vector<Rat>& y, const NumTable& t) {
    Rat acc = 0;
    for (std::size_t r = 0; r < t.rows; ++r)
        for (std::size_t c = 0; c < t.cols; ++c) acc += y[r * t.cols + c] * t.q(r, c);
    return acc;
}

}  // namespace

TEST_CASE("vertex causality matches hand analysis") {
    Scenario s = bi();
    // Constant outputs: causal (no signalling at all).
    CHECK(is_causal_vertex(Vertex(s, {0, 0, 0, 0})));
    // One-way signalling x2 = a1: causal (party 1 first).
    CHECK(is_causal_vertex(Vertex(s, {0, 0, 1, 1})));
    // Swap x1 = a2, x2 = a1: two-way signalling, not causal.
    CHECK_FALSE(is_causal_vertex(Vertex(s, {0, 2, 1, 3})));

    // Tripartite classical switch: x1 = a2 a3, x3 = (1-a2) a1, x2 = 0.
    // Party 2 acts first and routes the signal, so this is causal even
    // though parties 1 and 3 influence each other across its two settings.
    Scenario t = tri();
    std::vector<std::uint32_t> f(8);
    for (std::size_t idx = 0; idx < 8; ++idx) {
        auto a = t.setting_tuple(idx);
        int x1 = a[1] & a[2];
        int x3 = (1 - a[1]) & a[0];
        f[idx] = static_cast<std::uint32_t>(t.outcome_index({x1, 0, x3}));
    }
    Vertex sw{t, f};
    CHECK(is_causal_vertex(sw));
    // It lives in the ambiguous signalling class: both directions between
    // parties 1 and 3, plus arrows out of party 2.
    CHECK(signalling_class(signalling_graph(sw)).canon == 108u);
}

TEST_CASE("causal vertex enumeration for two parties") {
    Scenario s = bi();
    auto vs = enumerate_causal_vertices(s);
    CHECK(vs.size() == 112);
    for (const auto& v : vs) CHECK(is_causal_vertex(v));
    // Codes are strictly ascending, so the list is duplicate-free.
    for (std::size_t i = 1; i < vs.size(); ++i)
        CHECK(vertex_code(vs[i - 1]) < vertex_code(vs[i]));
}

TEST_CASE("vertex codes round-trip and pin known functions") {
    Scenario s = bi();
    Vertex swap{s, {0, 2, 1, 3}};
    CHECK(vertex_code(swap) == 216u);
    CHECK(vertex_from_code(s, 216u).f == swap.f);
    Vertex allcols{s, {3, 2, 1, 3}};
    CHECK(vertex_code(allcols) == 219u);
    testutil::Rng rng(1234);
    for (int i = 0; i < 50; ++i) {
        Vertex v = testutil::random_vertex(s, rng);
        CHECK(vertex_from_code(s, vertex_code(v)).f == v.f);
    }
}

TEST_CASE("two-party census is exact") {
    Census c = classify_scenario(bi());
    REQUIRE(c.rows.size() == 3);
    CHECK(c.total() == 256);

    // No signalling: 16 product vertices, all causal.
    const CensusRow& empty = row_of(c, 0);
    CHECK(empty.total == 16);
    CHECK(empty.causal == 16);
    CHECK(empty.noncausal == 0);

    // One-way signalling: 96 vertices split evenly over the two directions.
    const CensusRow& oneway = row_of(c, 2);
    CHECK(oneway.total == 96);
    CHECK(oneway.causal == 96);
    REQUIRE(oneway.by_graph.size() == 2);
    for (const auto& [key, counts] : oneway.by_graph) {
        CHECK(counts.first == 48);
        CHECK(counts.second == 48);
    }

    // Two-way signalling: 144 vertices, none causal.
    const CensusRow& twoway = row_of(c, 6);
    CHECK(twoway.total == 144);
    CHECK(twoway.causal == 0);
    CHECK(twoway.noncausal == 144);

    std::uint64_t causal_total = 0;
    for (const auto& r : c.rows) causal_total += r.causal;
    CHECK(causal_total == 112);
}

TEST_CASE("three-party census matches the class table") {
    Census c = classify_scenario(tri(), 1);
    REQUIRE(c.rows.size() == kTriCensus.size());
    CHECK(c.total() == (1ull << 24));

    std::uint64_t sum_total = 0, sum_causal = 0;
    for (const auto& r : c.rows) {
        auto it = kTriCensus.find(r.cls.canon);
        REQUIRE_MESSAGE(it != kTriCensus.end(), "unexpected class " << r.cls.canon);
        CHECK(r.total == it->second[0]);
        CHECK(r.causal == it->second[1]);
        CHECK(r.noncausal == r.total - r.causal);
        CHECK(r.by_graph.size() == it->second[2]);
        sum_total += r.total;
        sum_causal += r.causal;
        std::uint64_t g_total = 0, g_causal = 0;
        for (const auto& [key, counts] : r.by_graph) {
            g_total += counts.first;
            g_causal += counts.second;
        }
        CHECK(g_total == r.total);
        CHECK(g_causal == r.causal);
    }
    CHECK(sum_total == (1ull << 24));
    CHECK(sum_causal == 138304);
}

TEST_CASE("labelled graphs within a class share the same count") {
    Census c = classify_scenario(tri(), 1);
    // Single edge: six labelled graphs, 192 vertices each.
    for (const auto& [key, counts] : row_of(c, 2).by_graph) CHECK(counts.first == 192);
    // Mutual pair: three labelled graphs, 576 each, none causal.
    for (const auto& [key, counts] : row_of(c, 10).by_graph) {
        CHECK(counts.first == 576);
        CHECK(counts.second == 0);
    }
    // Chain: six labelled graphs, 576 each, all causal.
    for (const auto& [key, counts] : row_of(c, 12).by_graph) {
        CHECK(counts.first == 576);
        CHECK(counts.second == 576);
    }
    // Directed 3-cycle: two orientations, 1728 each.
    REQUIRE(row_of(c, 98).by_graph.size() == 2);
    for (const auto& [key, counts] : row_of(c, 98).by_graph) CHECK(counts.first == 1728);
    // The ambiguous class holds both causal and noncausal vertices.
    CHECK(row_of(c, 108).causal == 55296);
    CHECK(row_of(c, 108).total > row_of(c, 108).causal);
}

TEST_CASE("census is independent of the worker count") {
    Census c1 = classify_scenario(tri(), 1);
    Census c3 = classify_scenario(tri(), 3);
    REQUIRE(c1.rows.size() == c3.rows.size());
    for (std::size_t i = 0; i < c1.rows.size(); ++i) {
        CHECK(c1.rows[i].cls.canon == c3.rows[i].cls.canon);
        CHECK(c1.rows[i].total == c3.rows[i].total);
        CHECK(c1.rows[i].causal == c3.rows[i].causal);
        CHECK(c1.rows[i].by_graph == c3.rows[i].by_graph);
    }
}

TEST_CASE("causal membership produces checkable certificates") {
    Scenario s = bi();

    SUBCASE("the swap vertex is outside the causal polytope") {
        Correlation p = vertex_to_correlation(Vertex{s, {0, 2, 1, 3}}, NumericMode::rational);
        CausalCertificate cert = causal_membership(p);
        REQUIRE_FALSE(cert.member);
        REQUIRE(cert.sepq.size() == p.rows() * p.cols());
        // The separating functional must actually separate: positive on p,
        // nonpositive on every causal vertex.
        CHECK(dot_table(cert.sepq, p.table) > 0);
        for (const auto& v : enumerate_causal_vertices(s)) {
            Correlation pv = vertex_to_correlation(v, NumericMode::rational);
            CHECK(dot_table(cert.sepq, pv.table) <= 0);
        }
    }

    SUBCASE("a mixture of causal vertices is recognized with an exact decomposition") {
        auto vs = enumerate_causal_vertices(s);
        testutil::Rng rng(777);
        std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
        Correlation c0 = vertex_to_correlation(vs[pick(rng)], NumericMode::rational);
        Correlation c1 = vertex_to_correlation(vs[pick(rng)], NumericMode::rational);
        Correlation c2 = vertex_to_correlation(vs[pick(rng)], NumericMode::rational);
        Correlation p = mix({{Rat(1, 2), c0}, {Rat(1, 3), c1}, {Rat(1, 6), c2}});
        CausalCertificate cert = causal_membership(p);
        REQUIRE(cert.member);
        // Rebuild p from the decomposition, exactly.
        NumTable acc = NumTable::zeros(NumericMode::rational, p.rows(), p.cols());
        Rat wsum = 0;
        for (const auto& [code, w] : cert.decompq) {
            Vertex v = vertex_from_code(s, code);
            CHECK(is_causal_vertex(v));
            CHECK(w >= 0);
            wsum += w;
            for (std::size_t col = 0; col < acc.cols; ++col) acc.q(v.f[col], col) += w;
        }
        CHECK(wsum == 1);
        CHECK(acc.entry_equal(p.table));
    }
}

TEST_CASE("membership in an explicit vertex list") {
    Scenario s = bi();
    // A vertex belongs to the hull of a pool containing it.
    Vertex v{s, {0, 0, 1, 1}};
    std::vector<Vertex> pool = {v, Vertex{s, {0, 0, 0, 0}}};
    Correlation p = vertex_to_correlation(v, NumericMode::rational);
    CHECK(membership_in_vertices(p, pool).member);

    // The swap vertex is not a mixture of the 16 product vertices.
    std::vector<Vertex> products;
    for (const auto& u : enumerate_causal_vertices(s))
        if (signalling_graph(u).edge_count() == 0) products.push_back(u);
    CHECK(products.size() == 16);
    Correlation sw = vertex_to_correlation(Vertex{s, {0, 2, 1, 3}}, NumericMode::rational);
    CausalCertificate cert = membership_in_vertices(sw, products);
    REQUIRE_FALSE(cert.member);
    CHECK(dot_table(cert.sepq, sw.table) > 0);
    for (const auto& u : products)
        CHECK(dot_table(cert.sepq, vertex_to_correlation(u, NumericMode::rational).table) <= 0);
}
