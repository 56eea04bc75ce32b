#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "uphocore/constructions.hpp"
#include "uphocore/element_table.hpp"
#include "uphocore/oracle.hpp"
#include "uphocore/presentation.hpp"

using namespace upho;

TEST_CASE("parse: free commutative on two generators") {
    auto p = parse_presentation("gens: a b\nrel: ab = ba\n");
    CHECK(p.rank() == 2);
    REQUIRE(p.relations.size() == 1);
    CHECK(p.relations[0].first.size() == 2);
    CHECK(p.word_to_string(p.relations[0].first) == "ab");
    CHECK(p.word_to_string(p.relations[0].second) == "ba");
}

TEST_CASE("parse: the three-generator two-relation example") {
    auto p = parse_presentation("gens: a b c\nrel: aa = ba\nrel: aaa = caa\n");
    CHECK(p.rank() == 3);
    CHECK(p.relations.size() == 2);
    CHECK(p.relations[1].first.size() == 3);
}

TEST_CASE("parse: errors carry positions and reasons") {
    CHECK_THROWS_AS(parse_presentation("gens: a\nrel: aa = a\n"), ParseError);  // inhomogeneous
    CHECK_THROWS_WITH_AS(parse_presentation("gens: a b\nrel: ax = ba\n"),
                         doctest::Contains("unknown generator token"), ParseError);
    CHECK_THROWS_AS(parse_presentation("rel: ab = ba\n"), ParseError);          // gens not first
    CHECK_THROWS_AS(parse_presentation("gens: a b\ngens: c\n"), ParseError);    // duplicate gens
    CHECK_THROWS_AS(parse_presentation("gens: a a\n"), std::invalid_argument);  // duplicate name
    CHECK_THROWS_AS(parse_presentation("gens: a b\nrel: ab = ab\n"), ParseError);  // w = w
    CHECK_THROWS_AS(parse_presentation("gens: a b\nrel: ab ba\n"), ParseError);    // missing '='
    CHECK_THROWS_AS(parse_presentation(""), ParseError);
}

TEST_CASE("parse: comments, blank lines, multi-character tokens") {
    auto p = parse_presentation("# a comment\n\ngens: s1 s2   # trailing\n rel: s1 s2 = s2 s1\n");
    CHECK(p.rank() == 2);
    CHECK(p.relations.size() == 1);
    CHECK(p.word_to_string(p.relations[0].first) == "s1 s2");
    auto q = parse_presentation(p.to_mono());
    CHECK(q.gen_names == p.gen_names);
    CHECK(q.relations == p.relations);
}

TEST_CASE("class_of identifies congruent words") {
    SUBCASE("the defining relation of the free commutative monoid") {
        auto p = monoid_free_commutative(2);
        auto t = build_element_table(p, 2);
        CHECK(class_of(p, word_of({0, 1}), t) == class_of(p, word_of({1, 0}), t));
    }
    SUBCASE("abb = baa") {
        auto p = parse_presentation("gens: a b\nrel: abb = baa\n");
        auto t = build_element_table(p, 3);
        CHECK(class_of(p, word_of({0, 1, 1}), t) == class_of(p, word_of({1, 0, 0}), t));
    }
    SUBCASE("caa = cca through the seven-step chain") {
        auto p = parse_presentation("gens: a b c\nrel: aa = ba\nrel: bb = cb\nrel: ab = cc\n");
        auto t = build_element_table(p, 3);
        CHECK(class_of(p, word_of({2, 0, 0}), t) == class_of(p, word_of({2, 2, 0}), t));
    }
    SUBCASE("word longer than the table depth") {
        auto p = monoid_free_commutative(2);
        auto t = build_element_table(p, 2);
        CHECK_THROWS_AS(class_of(p, word_of({0, 1, 0}), t), std::invalid_argument);
    }
}

TEST_CASE("build_element_table: class counts") {
    SUBCASE("free commutative on 2, depth 3") {
        auto t = build_element_table(monoid_free_commutative(2), 3);
        CHECK(t.counts() == std::vector<std::size_t>{1, 2, 3, 4});
    }
    SUBCASE("free monoid on 2, depth 3") {
        auto t = build_element_table(parse_presentation("gens: a b\n"), 3);
        CHECK(t.counts() == std::vector<std::size_t>{1, 2, 4, 8});
    }
    SUBCASE("M(f) for constant f on [3], depth 4: brute-force oracle and recurrence") {
        FiberFunction f{3, {2, 2, 2}};
        auto p = monoid_Mf(f);
        auto t = build_element_table(p, 4);
        auto counts = t.counts();
        CHECK(counts == std::vector<std::size_t>{1, 3, 7, 15, 31});
        CHECK(counts == oracle::brute_congruence(p, 4).counts);
        for (size_t i = 2; i < counts.size(); ++i)
            CHECK(counts[i] == 3 * counts[i - 1] - 2 * counts[i - 2]);
    }
}

TEST_CASE("build_element_table: safety cap") {
    auto p = parse_presentation("gens: a b\n");
    CHECK_THROWS_AS(build_element_table(p, 10, {100}), CapExceeded);
}

TEST_CASE("canonical representatives are lexicographic minima and idempotent") {
    auto p = parse_presentation("gens: a b c\nrel: aa = ba\nrel: aaa = caa\n");
    auto t = build_element_table(p, 4);
    for (const auto& [word, id] : t.word_to_class) {
        CHECK(t.rep(id) <= word);
        CHECK(t.word_to_class.at(t.rep(id)) == id);
        CHECK(static_cast<int>(word.size()) == t.classes[static_cast<size_t>(id)].length);
    }
}

TEST_CASE("monotone consistency across depths") {
    auto p = parse_presentation("gens: a b\nrel: abb = baa\n");
    auto t4 = build_element_table(p, 4);
    auto t5 = build_element_table(p, 5);
    REQUIRE(t4.counts().size() == 5);
    for (int l = 0; l <= 4; ++l) {
        REQUIRE(t4.by_length[static_cast<size_t>(l)].size() ==
                t5.by_length[static_cast<size_t>(l)].size());
        for (size_t i = 0; i < t4.by_length[static_cast<size_t>(l)].size(); ++i)
            CHECK(t4.rep(t4.by_length[static_cast<size_t>(l)][i]) ==
                  t5.rep(t5.by_length[static_cast<size_t>(l)][i]));
    }
}

TEST_CASE("class counts are independent of generator order") {
    auto base = parse_presentation("gens: a b c\nrel: aa = ba\nrel: bb = cb\nrel: ab = cc\n");
    auto counts = build_element_table(base, 4).counts();
    std::vector<int> sig{0, 1, 2};
    do {
        std::vector<std::pair<Word, Word>> rels;
        for (auto [lhs, rhs] : base.relations) {
            for (auto& ch : lhs) ch = static_cast<char>(sig[static_cast<size_t>(ch)]);
            for (auto& ch : rhs) ch = static_cast<char>(sig[static_cast<size_t>(ch)]);
            rels.emplace_back(lhs, rhs);
        }
        auto p = make_presentation(base.gen_names, rels);
        CHECK(build_element_table(p, 4).counts() == counts);
    } while (std::next_permutation(sig.begin(), sig.end()));
}

TEST_CASE("check_left_cancellative") {
    SUBCASE("M(f) presentations satisfy the syntactic condition") {
        for (int n = 2; n <= 4; ++n) {
            FiberFunction f{n, {}};
            for (int i = 0; i < n; ++i) f.values.push_back((i + 1) % n);
            auto p = monoid_Mf(f);
            auto t = build_element_table(p, 3);
            CHECK(check_left_cancellative(p, t).kind == CancellativityVerdict::SyntacticPass);
        }
    }
    SUBCASE("free monoid") {
        auto p = parse_presentation("gens: a b\n");
        auto t = build_element_table(p, 3);
        CHECK(check_left_cancellative(p, t).kind == CancellativityVerdict::SyntacticPass);
    }
    SUBCASE("free commutative on 3 is only empirically certifiable") {
        auto p = monoid_free_commutative(3);
        auto t = build_element_table(p, 4);
        auto v = check_left_cancellative(p, t);
        CHECK(v.kind == CancellativityVerdict::EmpiricalPass);
        CHECK(v.depth == 4);
    }
    SUBCASE("the non-cancellative counterexample, with its exact witness") {
        auto p = parse_presentation("gens: a b c\nrel: aa = ba\nrel: bb = cb\nrel: ab = cc\n");
        auto t = build_element_table(p, 3);
        auto v = check_left_cancellative(p, t);
        REQUIRE(v.kind == CancellativityVerdict::Violation);
        CHECK(p.gen_names[static_cast<size_t>(v.gen)] == "c");
        CHECK(p.word_to_string(t.rep(v.b)) == "aa");
        CHECK(p.word_to_string(t.rep(v.c)) == "ca");
        CHECK(v.to_string(p, t) == "Violation(c, aa, ca)");
    }
    SUBCASE("a syntactic pass is also an empirical pass") {
        FiberFunction f{3, {2, 2, 2}};
        auto p = monoid_Mf(f);
        auto t = build_element_table(p, 4);
        for (int s = 0; s < 3; ++s) {
            std::set<ClassId> images;
            std::size_t domain = 0;
            for (int l = 0; l <= 3; ++l)
                for (ClassId b : t.by_length[static_cast<size_t>(l)]) {
                    Word w;
                    w.push_back(static_cast<char>(s));
                    w += t.rep(b);
                    images.insert(class_of(p, w, t));
                    ++domain;
                }
            CHECK(images.size() == domain);
        }
    }
}

TEST_CASE("divisibility_covers") {
    SUBCASE("free commutative on 2 at depth 2 is the B_2-shaped grid start") {
        auto p = monoid_free_commutative(2);
        auto t = build_element_table(p, 2);
        auto P = divisibility_covers(p, t);
        CHECK(P.node_count() == 6);
        CHECK(P.rank_sizes() == std::vector<std::size_t>{1, 2, 3});
        CHECK(P.colored);
        CHECK(P.color_of(0, 1) == 0);
        CHECK(P.color_of(0, 2) == 1);
    }
    SUBCASE("aa = ba at depth 2 is the D_2 start: one shared cover plus privates") {
        auto p = parse_presentation("gens: a b\nrel: aa = ba\n");
        auto t = build_element_table(p, 2);
        auto P = divisibility_covers(p, t);
        CHECK(P.rank_sizes() == std::vector<std::size_t>{1, 2, 3});
        int shared = 0;
        for (NodeId v : P.ranks[2])
            if (P.down[static_cast<size_t>(v)].size() == 2) ++shared;
        CHECK(shared == 1);
    }
    SUBCASE("covers agree with the brute-force oracle poset") {
        auto p = parse_presentation("gens: a b c\nrel: aa = bb\nrel: ba = ca\n");
        auto t = build_element_table(p, 3);
        auto P = divisibility_covers(p, t);
        auto Q = oracle::brute_divisibility(p, 3);
        CHECK(P.rank_sizes() == Q.rank_sizes());
        CHECK(P.edge_count() == Q.edge_count());
        CHECK(oracle::brute_isomorphic(truncate(P, 2), truncate(Q, 2)));
    }
}
