#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "uphocore/constructions.hpp"
#include "uphocore/element_table.hpp"
#include "uphocore/iso.hpp"

using namespace upho;

namespace {
TruncatedPoset poset_of(const Presentation& p, int depth) {
    auto t = build_element_table(p, depth);
    return divisibility_covers(p, t);
}
std::size_t binom(int n, int k) {
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}
}  // namespace

TEST_CASE("partitions") {
    auto parts = all_partitions(4);
    REQUIRE(parts.size() == 5);
    CHECK(parts[0].parts == std::vector<int>{4});
    CHECK(parts[1].parts == std::vector<int>{3, 1});
    CHECK(parts[2].parts == std::vector<int>{2, 2});
    CHECK(parts[3].parts == std::vector<int>{2, 1, 1});
    CHECK(parts[4].parts == std::vector<int>{1, 1, 1, 1});
    CHECK(partition_count(7) == 15);
    CHECK(partition_count(0) == 1);
    Partition increasing{{1, 2}};
    CHECK_THROWS_AS(increasing.validate(), std::invalid_argument);
    Partition zero_part{{0}};
    CHECK_THROWS_AS(zero_part.validate(), std::invalid_argument);
}

TEST_CASE("fiber_function_of_partition") {
    SUBCASE("lambda = (2,1) gives f = (2,2,3)") {
        auto f = fiber_function_of_partition(Partition{{2, 1}});
        CHECK(f.values == std::vector<int>{1, 1, 2});
    }
    SUBCASE("single block gives the constant function") {
        auto f = fiber_function_of_partition(Partition{{4}});
        CHECK(f.values == std::vector<int>(4, 3));
        CHECK(f.is_constant());
    }
    SUBCASE("all-ones gives the identity") {
        auto f = fiber_function_of_partition(Partition{{1, 1, 1}});
        CHECK(f.values == std::vector<int>{0, 1, 2});
        CHECK(f.is_bijective());
    }
    SUBCASE("f_lambda is idempotent") {
        for (const auto& lam : all_partitions(5)) {
            auto f = fiber_function_of_partition(lam);
            for (int i = 0; i < f.n; ++i)
                CHECK(f.values[static_cast<size_t>(f.values[static_cast<size_t>(i)])] ==
                      f.values[static_cast<size_t>(i)]);
        }
    }
}

TEST_CASE("monoid_Mf spells out the chained relations") {
    SUBCASE("f constant 3 on [3]") {
        FiberFunction f{3, {2, 2, 2}};
        auto p = monoid_Mf(f);
        REQUIRE(p.relations.size() == 2);
        CHECK(p.word_to_string(p.relations[0].first) == "s1 s3");
        CHECK(p.word_to_string(p.relations[0].second) == "s2 s3");
        CHECK(p.word_to_string(p.relations[1].first) == "s2 s3");
        CHECK(p.word_to_string(p.relations[1].second) == "s3 s3");
    }
    SUBCASE("identity on [2]") {
        FiberFunction f{2, {0, 1}};
        auto p = monoid_Mf(f);
        REQUIRE(p.relations.size() == 1);
        CHECK(p.word_to_string(p.relations[0].first) == "s1 s1");
        CHECK(p.word_to_string(p.relations[0].second) == "s2 s2");
    }
}

TEST_CASE("build_Dn") {
    CHECK(build_Dn(3, 4).rank_sizes() == std::vector<std::size_t>{1, 3, 7, 15, 31});
    SUBCASE("D_2 at depth 3 is the divisibility poset of aa = ba") {
        auto P = poset_of(parse_presentation("gens: a b\nrel: aa = ba\n"), 3);
        CHECK(find_isomorphism(build_Dn(2, 3), P).has_value());
    }
    SUBCASE("the core of D_n at depth 2 is M_n") {
        for (int n = 2; n <= 5; ++n) {
            auto cr = core(build_Dn(n, 2));
            REQUIRE(cr.determined);
            CHECK(find_isomorphism(cr.core, build_Mn(n)).has_value());
        }
    }
    SUBCASE("dominance: every rank has a node covering the entire previous rank") {
        auto D = build_Dn(4, 4);
        for (int r = 1; r <= 4; ++r) {
            bool found = false;
            for (NodeId v : D.ranks[static_cast<size_t>(r)])
                if (D.down[static_cast<size_t>(v)].size() == D.ranks[static_cast<size_t>(r - 1)].size())
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("build_Fn") {
    CHECK(build_Fn(3, 4).rank_sizes() == std::vector<std::size_t>{1, 3, 7, 15, 31});
    SUBCASE("F_2 is the N^2 grid") {
        CHECK(find_isomorphism(build_Fn(2, 5), poset_of(monoid_free_commutative(2), 5)).has_value());
    }
    SUBCASE("up-degree regularity and down-degrees n or 1") {
        auto F = build_Fn(3, 4);
        for (NodeId v = 0; v < F.node_count(); ++v) {
            int r = F.rank_of[static_cast<size_t>(v)];
            if (r <= 3) CHECK(F.up[static_cast<size_t>(v)].size() == 3);
            if (r >= 1) {
                auto d = F.down[static_cast<size_t>(v)].size();
                CHECK((d == 3 || d == 1));
            }
        }
    }
}

TEST_CASE("build_Mn, build_Bn, build_chain") {
    CHECK(find_isomorphism(build_Mn(2), build_Bn(2)).has_value());
    CHECK(build_Bn(3).rank_sizes() == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(build_Mn(5).rank_sizes() == std::vector<std::size_t>{1, 5, 1});
    CHECK(build_chain(4).rank_sizes() == std::vector<std::size_t>(5, 1));
}

TEST_CASE("free commutative and shifted monoids") {
    SUBCASE("both have binomial rank sizes and core B_n") {
        for (int n : {2, 3}) {
            for (auto* make : {&monoid_free_commutative, &monoid_shifted}) {
                auto P = poset_of((*make)(n), 4);
                for (int i = 0; i <= 4; ++i)
                    CHECK(P.ranks[static_cast<size_t>(i)].size() == binom(i + n - 1, n - 1));
                auto cr = core(P);
                REQUIRE(cr.determined);
                CHECK(find_isomorphism(cr.core, build_Bn(n)).has_value());
            }
        }
    }
    SUBCASE("shifted(2) is the dominating vertex lattice") {
        CHECK(find_isomorphism(poset_of(monoid_shifted(2), 5), build_Dn(2, 5)).has_value());
    }
    SUBCASE("shifted relations are s_i s_(j-1) = s_j s_i") {
        auto p = monoid_shifted(3);
        REQUIRE(p.relations.size() == 3);
        CHECK(p.word_to_string(p.relations[0].first) == "s1 s1");
        CHECK(p.word_to_string(p.relations[0].second) == "s2 s1");
        CHECK(p.word_to_string(p.relations[1].first) == "s1 s2");
        CHECK(p.word_to_string(p.relations[1].second) == "s3 s1");
        CHECK(p.word_to_string(p.relations[2].first) == "s2 s2");
        CHECK(p.word_to_string(p.relations[2].second) == "s3 s2");
    }
}

TEST_CASE("rank-three lower-cover multisets follow the partition") {
    for (int n : {3, 4, 5}) {
        for (const auto& lam : all_partitions(n)) {
            auto P = poset_of(monoid_Mf(fiber_function_of_partition(lam)), 3);
            std::multiset<int> got, want;
            for (NodeId v : P.ranks[3])
                if (P.down[static_cast<size_t>(v)].size() > 1)
                    got.insert(static_cast<int>(P.down[static_cast<size_t>(v)].size()));
            for (int part : lam.parts) want.insert(part * (n - 1) + 1);
            CHECK(got == want);
        }
    }
}

TEST_CASE("D/F extremality over all functions at depth 4") {
    // Constant f always yields D_n and bijective f always yields F_n. The
    // converse direction is exactly characterized (verified independently by
    // witness search): the D_n class is realized by every f with f(f(.))
    // constant, not just constant f; the F_n class by bijections only.
    for (int n = 2; n <= 4; ++n) {
        auto dform = canonical_form(build_Dn(n, 4));
        auto fform = canonical_form(build_Fn(n, 4));
        std::uint64_t total = 1;
        for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(n);
        for (std::uint64_t code = 0; code < total; ++code) {
            FiberFunction f{n, std::vector<int>(static_cast<size_t>(n), 0)};
            std::uint64_t c = code;
            for (int i = 0; i < n; ++i) {
                f.values[static_cast<size_t>(i)] = static_cast<int>(c % n);
                c /= static_cast<std::uint64_t>(n);
            }
            bool f2_constant = true;
            for (int i = 1; i < n; ++i)
                if (f.values[static_cast<size_t>(f.values[static_cast<size_t>(i)])] !=
                    f.values[static_cast<size_t>(f.values[0])])
                    f2_constant = false;
            auto form = canonical_form(poset_of(monoid_Mf(f), 4));
            if (f.is_constant()) CHECK(form == dform);
            CHECK((form == dform) == f2_constant);
            CHECK((form == fform) == f.is_bijective());
        }
    }
}

TEST_CASE("rank recurrence for every M_n-cored construction") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& P : {build_Dn(n, 5), build_Fn(n, 5)}) {
            auto sizes = P.rank_sizes();
            for (size_t i = 2; i < sizes.size(); ++i)
                CHECK(static_cast<long long>(sizes[i]) ==
                      static_cast<long long>(n) * static_cast<long long>(sizes[i - 1]) -
                          static_cast<long long>(n - 1) * static_cast<long long>(sizes[i - 2]));
        }
    }
}

TEST_CASE("construction argument validation") {
    CHECK_THROWS_AS(build_Dn(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_Fn(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(build_Mn(0), std::invalid_argument);
    FiberFunction out_of_range{2, {0, 5}};
    CHECK_THROWS_AS(monoid_Mf(out_of_range), std::invalid_argument);
    Partition not_decreasing{{2, 3}};
    CHECK_THROWS_AS(fiber_function_of_partition(not_decreasing), std::invalid_argument);
}
