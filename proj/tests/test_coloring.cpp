#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "uphocore/coloring.hpp"
#include "uphocore/constructions.hpp"
#include "uphocore/element_table.hpp"
#include "uphocore/io.hpp"
#include "uphocore/iso.hpp"

using namespace upho;

namespace {

TruncatedPoset poset_of(const Presentation& p, int depth) {
    auto t = build_element_table(p, depth);
    return divisibility_covers(p, t);
}

// the left lattice of the core-inflation figure: atoms a,b,c; d over {a,b},
// e over {c}; a single top over {d,e}
TruncatedPoset inflation_input_lattice() {
    auto P = make_poset({1, 3, 2, 1},
                        {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 6}, {5, 6}});
    P.labels = {"0", "a", "b", "c", "d", "e", "1"};
    return P;
}

}  // namespace

TEST_CASE("check_upho_coloring") {
    SUBCASE("the free commutative divisibility coloring passes") {
        auto P = poset_of(monoid_free_commutative(2), 4);
        REQUIRE(P.colored);
        CHECK(check_upho_coloring(P, coloring_of_poset(P), 2).pass);
    }
    SUBCASE("the shifted divisibility coloring passes") {
        auto P = poset_of(monoid_shifted(2), 4);
        CHECK(check_upho_coloring(P, coloring_of_poset(P), 2).pass);
    }
    SUBCASE("recoloring both private edges of D_2 with the hub's atom fails") {
        auto P = poset_of(monoid_shifted(2), 4);  // aa = ba: hub edges colored a
        auto c = coloring_of_poset(P);
        // private covers above the atoms are the b-colored edges; flip them to a
        for (NodeId v : P.ranks[1])
            for (NodeId w : P.up[static_cast<size_t>(v)])
                if (c.at(v, w) == 1) c.edges[edge_key(v, w)] = 0;
        auto verdict = check_upho_coloring(P, c, 2);
        CHECK_FALSE(verdict.pass);
    }
}

TEST_CASE("check_pre_upho") {
    SUBCASE("every coloring of B_2 passes") {
        auto B2 = build_Bn(2);
        auto colorings = enumerate_pre_upho_colorings(B2);
        REQUIRE(colorings.size() == 4);
        for (const auto& c : colorings) CHECK(check_pre_upho(B2, c).pass);
    }
    SUBCASE("f-induced colorings of M_n pass for every function, n <= 4") {
        for (int n = 2; n <= 4; ++n) {
            auto Mn = build_Mn(n);
            NodeId top = Mn.ranks[2][0];
            std::uint64_t total = 1;
            for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(n);
            for (std::uint64_t code = 0; code < total; ++code) {
                Coloring c;
                std::uint64_t k = code;
                for (int i = 0; i < n; ++i) {
                    c.edges[edge_key(0, 1 + i)] = i;
                    c.edges[edge_key(1 + i, top)] = static_cast<int>(k % n);
                    k /= static_cast<std::uint64_t>(n);
                }
                CHECK(check_pre_upho(Mn, c).pass);
            }
        }
    }
    SUBCASE("B_3 with its maximum removed is rejected at the precondition") {
        // rank sizes 1,3,3: three maximal elements, not a lattice with 1
        auto P = make_poset({1, 3, 3},
                            {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {1, 5}, {3, 5}, {2, 6}, {3, 6}});
        Coloring c;
        CHECK_THROWS_AS(check_pre_upho(P, c), std::invalid_argument);
    }
    SUBCASE("a coloring breaking the forced bottom edges is rejected") {
        auto B2 = build_Bn(2);
        Coloring c;
        c.edges[edge_key(0, 1)] = 1;
        c.edges[edge_key(0, 2)] = 0;
        c.edges[edge_key(1, 3)] = 0;
        c.edges[edge_key(2, 3)] = 0;
        CHECK_THROWS_AS(check_pre_upho(B2, c), std::invalid_argument);
    }
}

TEST_CASE("enumerate_pre_upho_colorings") {
    CHECK(enumerate_pre_upho_colorings(build_Bn(2)).size() == 4);
    CHECK(enumerate_pre_upho_colorings(build_Mn(3)).size() == 27);
    CHECK(enumerate_pre_upho_colorings(build_chain(1)).size() == 1);
    SUBCASE("the forced-edge law holds in every enumerated coloring") {
        auto L = build_Mn(3);
        for (const auto& c : enumerate_pre_upho_colorings(L))
            for (int i = 0; i < 3; ++i) CHECK(c.at(0, 1 + i) == i);
    }
    SUBCASE("the coloring/function bijection on M_n gives n^n colorings") {
        CHECK(enumerate_pre_upho_colorings(build_Mn(2)).size() == 4);
        CHECK(enumerate_pre_upho_colorings(build_Mn(4)).size() == 256);
    }
}

TEST_CASE("monoid_of_coloring") {
    SUBCASE("the commuting coloring of B_2 yields the free commutative monoid") {
        auto B2 = build_Bn(2);
        Coloring c;
        c.edges[edge_key(0, 1)] = 0;
        c.edges[edge_key(0, 2)] = 1;
        c.edges[edge_key(1, 3)] = 1;
        c.edges[edge_key(2, 3)] = 0;
        auto p = monoid_of_coloring(B2, c);
        REQUIRE(p.relations.size() == 1);
        CHECK(p.relations[0] == std::make_pair(word_of({0, 1}), word_of({1, 0})));
    }
    SUBCASE("f-induced colorings of M_n compile to M(f), relations and all") {
        for (int n = 2; n <= 3; ++n) {
            auto Mn = build_Mn(n);
            NodeId top = Mn.ranks[2][0];
            std::uint64_t total = 1;
            for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(n);
            for (std::uint64_t code = 0; code < total; ++code) {
                Coloring c;
                FiberFunction f{n, {}};
                std::uint64_t k = code;
                for (int i = 0; i < n; ++i) {
                    c.edges[edge_key(0, 1 + i)] = i;
                    int fi = static_cast<int>(k % n);
                    k /= static_cast<std::uint64_t>(n);
                    c.edges[edge_key(1 + i, top)] = fi;
                    f.values.push_back(fi);
                }
                auto compiled = monoid_of_coloring(Mn, c);
                auto direct = monoid_Mf(f);
                CHECK(compiled.relations == direct.relations);
                // certificate-level soundness of the compilation
                CHECK(canonical_form(poset_of(compiled, 4), IsoMode::ColoredCanonical) ==
                      canonical_form(poset_of(direct, 4), IsoMode::ColoredCanonical));
            }
        }
    }
    SUBCASE("the figure coloring of the inflation lattice compiles to aa=ba, aaa=caa") {
        auto L = inflation_input_lattice();
        Coloring c;
        for (NodeId v = 0; v < L.node_count(); ++v)
            for (NodeId w : L.up[static_cast<size_t>(v)])
                c.edges[edge_key(v, w)] = v == 0 ? static_cast<int>(w - 1) : 0;
        auto compiled = monoid_of_coloring(L, c);
        CHECK(compiled.gen_names == std::vector<std::string>{"a", "b", "c"});
        auto reference = parse_presentation("gens: a b c\nrel: aa = ba\nrel: aaa = caa\n");
        // congruence-equal: identical truncations as colored posets
        CHECK(canonical_form(poset_of(compiled, 4), IsoMode::ColoredExact) ==
              canonical_form(poset_of(reference, 4), IsoMode::ColoredExact));
    }
    SUBCASE("chain caps abort pathological colorings with a diagnostic") {
        auto B3 = build_Bn(3);
        auto colorings = enumerate_pre_upho_colorings(B3);
        REQUIRE(!colorings.empty());
        CHECK_THROWS_AS(monoid_of_coloring(B3, colorings.front(), 1), ChainCapExceeded);
    }
}

TEST_CASE("realize_core") {
    SUBCASE("B_2 has exactly the two known realizations") {
        auto rep = realize_core(build_Bn(2), {5, 2, 5'000'000, 1'000'000, 2}, "B2");
        CHECK(rep.colorings_enumerated == 4);
        REQUIRE(rep.survivor_classes.size() == 2);
        std::set<std::string> got, want;
        for (auto i : rep.survivor_classes) got.insert(rep.candidates[i].form.bytes);
        want.insert(canonical_form(build_Dn(2, 5)).bytes);
        want.insert(canonical_form(build_Fn(2, 5)).bytes);
        CHECK(got == want);
    }
    SUBCASE("M_3 has exactly four distinct classes at depth 4") {
        auto rep = realize_core(build_Mn(3), {4, 2, 5'000'000, 1'000'000, 2}, "M3");
        CHECK(rep.colorings_enumerated == 27);
        CHECK(rep.survivor_classes.size() == 4);
        CHECK(rep.undecided.empty());
    }
    SUBCASE("the figure coloring of the inflation lattice is rejected at core equality") {
        auto L = inflation_input_lattice();
        auto rep = realize_core(L, {5, 2, 5'000'000, 1'000'000, 4}, "inflation");
        // the all-a coloring is enumerated first (atom colors ascend from 0)
        const auto& cand = rep.candidates.at(0);
        CHECK(cand.status.find("core mismatch") != std::string::npos);
        CHECK(cand.presentation.gen_names == std::vector<std::string>{"a", "b", "c"});
    }
    SUBCASE("reports are deterministic byte for byte") {
        auto rep1 = realize_core(build_Mn(2), {4, 2, 5'000'000, 1'000'000, 1}, "M2");
        auto rep2 = realize_core(build_Mn(2), {4, 2, 5'000'000, 1'000'000, 3}, "M2");
        CHECK(report_to_json(rep1) == report_to_json(rep2));
    }
    SUBCASE("depth below rank(L)+1 is rejected") {
        CHECK_THROWS_AS(realize_core(build_Bn(2), {2, 1, 5'000'000, 1'000'000, 1}, "B2"),
                        std::invalid_argument);
    }
}

TEST_CASE("realization report serialization") {
    auto rep = realize_core(build_Bn(2), {5, 2, 5'000'000, 1'000'000, 2}, "B2");
    auto json = report_to_json(rep);
    CHECK(json.find("\"colorings_enumerated\": 4") != std::string::npos);
    CHECK(json.find("survivor_classes") != std::string::npos);
    CHECK(json.find("gens: s1 s2") != std::string::npos);
    auto summary = report_summary(rep, 0.5);
    CHECK(summary.find("distinct classes     : 2") != std::string::npos);
    CHECK(summary.find("wall time") != std::string::npos);
}
