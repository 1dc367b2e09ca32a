#include <doctest.h>

#include <numeric>
#include <set>

#include "gwl/construct.hpp"
#include "gwl/expressions.hpp"
#include "gwl/group.hpp"
#include "test_helpers.hpp"

using namespace gwl;
using namespace gwl::test;

TEST_CASE("validate accepts the trivial group and C2") {
    group t = group::validate({{0}});
    CHECK(t.order() == 1);
    group c2 = group::validate({{0, 1}, {1, 0}});
    CHECK(c2.order() == 2);
    CHECK(c2.element_order(1) == 2);
}

TEST_CASE("validate rejects broken tables with named cells") {
    CHECK_THROWS_WITH_AS(group::validate({{0, 1}, {1, 1}}), doctest::Contains("row 1"), error);
    CHECK_THROWS_AS(group::validate({{1, 0}, {0, 1}}), error);
    // associativity violation: order-3 latin square that is not a group
    // rows: this is the "anti-cyclic" square with identity row/col fixed up
    std::vector<std::vector<int>> latin = {{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 4, 0, 1, 3},
                                           {3, 2, 4, 0, 1},
                                           {4, 3, 1, 2, 0}};
    try {
        group::validate(latin);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_associative);
    }
}

TEST_CASE("element operations on D4") {
    group d4 = make_dihedral(4);
    CHECK(d4.element_order(0) == 1);
    // commutator of the rotation with any reflection is r^2
    for (elem s = 4; s < 8; ++s) CHECK(d4.commutator(d4_r, s) == d4_r2);
    for (int g = 0; g < 8; ++g) {
        CHECK(d4.power(g, d4.element_order(g)) == 0);
        CHECK(d4.mul(g, d4.inv(g)) == 0);
    }
    CHECK(d4.power(d4_r, -1) == d4.inv(d4_r));
}

TEST_CASE("element orders divide the group order") {
    for (const group& g : {make_dihedral(4), make_symmetric(4), make_cyclic(12)})
        for (int x = 0; x < g.order(); ++x) CHECK(g.order() % g.element_order(x) == 0);
}

TEST_CASE("generated subgroup matches the naive closure oracle") {
    group s3 = make_symmetric(3);
    CHECK(generated_subgroup(s3, element_set(6)).size() == 1);
    CHECK(generated_subgroup(s3, element_set::all(6)) == element_set::all(6));

    elem three_cycle = -1;
    for (int x = 0; x < 6; ++x)
        if (s3.element_order(x) == 3) {
            three_cycle = x;
            break;
        }
    element_set a3 = generated_subgroup(s3, element_set::single(6, three_cycle));
    CHECK(a3.size() == 3);
    std::set<elem> oracle = naive_closure(s3, {three_cycle});
    std::vector<elem> members = a3.elements();
    CHECK(std::set<elem>(members.begin(), members.end()) == oracle);
}

TEST_CASE("normal closures in D4 and S4") {
    group d4 = make_dihedral(4);
    // r^2 is central, its closure is just <r^2>
    CHECK(normal_closure(d4, element_set::single(8, d4_r2)) == set_of(8, {0, d4_r2}));

    group s4 = make_symmetric(4);
    elem transposition = -1, double_transposition = -1;
    for (int x = 0; x < 24; ++x) {
        if (s4.element_order(x) != 2) continue;
        if (perm_parity(4, x) == 1 && transposition < 0) transposition = x;
        if (perm_parity(4, x) == 0 && double_transposition < 0) double_transposition = x;
    }
    REQUIRE(transposition >= 0);
    REQUIRE(double_transposition >= 0);
    CHECK(normal_closure(s4, element_set::single(24, transposition)).size() == 24);
    element_set v4 = normal_closure(s4, element_set::single(24, double_transposition));
    CHECK(v4.size() == 4);

    // conjugation by every element fixes the closure setwise
    for (int h = 0; h < 24; ++h)
        for (elem x : v4.elements()) CHECK(v4.contains(s4.conjugate(x, h)));
}

TEST_CASE("centralizer, normalizer and center") {
    group c12 = make_cyclic(12);
    CHECK(center(c12) == element_set::all(12));

    group d4 = make_dihedral(4);
    // oracle: exhaustive commuting check
    element_set expected(8);
    for (int x = 0; x < 8; ++x) {
        bool commutes_all = true;
        for (int y = 0; y < 8; ++y)
            if (d4.mul(x, y) != d4.mul(y, x)) commutes_all = false;
        if (commutes_all) expected.add(x);
    }
    CHECK(center(d4) == expected);
    CHECK(center(d4) == set_of(8, {0, d4_r2}));

    group s3 = make_symmetric(3);
    element_set sylow3(6);
    for (int x = 0; x < 6; ++x)
        if (s3.element_order(x) % 2 == 1) sylow3.add(x); // identity + both 3-cycles
    CHECK(normalizer(s3, sylow3) == element_set::all(6));
    CHECK(centralizer(s3, sylow3) == sylow3);
}

TEST_CASE("conjugacy classes") {
    group c6 = make_cyclic(6);
    CHECK(conjugacy_classes(c6).size() == 6);

    group s3 = make_symmetric(3);
    CHECK(sorted_sizes(conjugacy_classes(s3)) == std::multiset<int>{1, 2, 3});

    group s4 = make_symmetric(4);
    auto classes = conjugacy_classes(s4);
    CHECK(sorted_sizes(classes) == std::multiset<int>{1, 3, 6, 6, 8});
    // class size equals n / |centralizer| of a member
    for (const auto& cls : classes) {
        elem rep = cls.elements().front();
        CHECK(cls.size() * centralizer(s4, element_set::single(24, rep)).size() == 24);
    }
}

TEST_CASE("normal subgroups of S4, C6 and A5") {
    group s4 = make_symmetric(4);
    auto ns = normal_subgroups(s4);
    CHECK(sorted_sizes(ns) == std::multiset<int>{1, 4, 12, 24});

    group c6 = make_cyclic(6);
    CHECK(normal_subgroups(c6).size() == 4);

    group s5 = make_symmetric(5);
    element_set all5 = element_set::all(120);
    group a5 = as_group(s5, commutator_subgroup(s5, all5, all5));
    CHECK(a5.order() == 60);
    CHECK(normal_subgroups(a5).size() == 2); // simple
}

TEST_CASE("normal subgroups match the naive subgroup filter at small order") {
    for (const group& g : {make_symmetric(4), make_dihedral(6), make_cyclic(16)}) {
        auto fast = normal_subgroups(g);
        std::vector<element_set> naive;
        for (const auto& s : all_subgroups(g))
            if (is_normal(g, s)) naive.push_back(s);
        CHECK(fast.size() == naive.size());
        for (const auto& s : fast)
            CHECK(std::find(naive.begin(), naive.end(), s) != naive.end());
    }
}

TEST_CASE("quotient groups") {
    group s4 = make_symmetric(4);
    auto ns = normal_subgroups(s4);
    element_set v4(24);
    for (auto& s : ns)
        if (s.size() == 4) v4 = s;

    quotient q = quotient_group(s4, v4);
    CHECK(q.grp.order() == 6);
    CHECK(is_isomorphic(q.grp, make_symmetric(3)).isomorphic);
    for (int x = 0; x < 24; ++x) CHECK(q.coset_of[x] < 6);
    CHECK(q.coset_of[0] == 0);

    // G/{1} is G again up to relabeling, G/G is trivial
    quotient full = quotient_group(s4, element_set::single(24, 0));
    CHECK(full.grp.order() == 24);
    CHECK(is_isomorphic(full.grp, s4).isomorphic);
    CHECK(quotient_group(s4, element_set::all(24)).grp.order() == 1);

    element_set not_normal(24);
    not_normal.add(0);
    not_normal.add(1);
    CHECK_THROWS_AS(quotient_group(s4, not_normal), error);
}

TEST_CASE("isomorphism testing") {
    group d4 = make_dihedral(4);
    iso_result self = is_isomorphic(d4, d4);
    CHECK(self.isomorphic);
    CHECK(verify_isomorphism(d4, d4, self.mapping));

    // C4 vs C2 x C2: order spectra differ
    group c4 = make_cyclic(4);
    group v4 = make_elementary_abelian(2, 2);
    CHECK(element_order_histogram(c4) != element_order_histogram(v4));
    CHECK_FALSE(is_isomorphic(c4, v4).isomorphic);

    group d6 = make_dihedral(6);
    group c2s3 = direct_product(make_cyclic(2), make_symmetric(3));
    iso_result r = is_isomorphic(d6, c2s3);
    CHECK(r.isomorphic);
    CHECK(verify_isomorphism(d6, c2s3, r.mapping));

    CHECK_FALSE(is_isomorphic(make_dihedral(4), make_quaternion8()).isomorphic);
    CHECK_FALSE(is_isomorphic(make_cyclic(8), make_dihedral(4)).isomorphic);
}

TEST_CASE("isomorphism is reflexive and symmetric on catalog samples") {
    std::vector<group> samples = {make_cyclic(9), make_dihedral(5), make_quaternion8(),
                                  direct_product(make_symmetric(3), make_cyclic(3))};
    for (const auto& g : samples) CHECK(is_isomorphic(g, g).isomorphic);
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j) {
            bool ij = is_isomorphic(samples[i], samples[j]).isomorphic;
            bool ji = is_isomorphic(samples[j], samples[i]).isomorphic;
            CHECK(ij == ji);
        }
}

TEST_CASE("as_group relabels subgroups") {
    group s4 = make_symmetric(4);
    element_set all = element_set::all(24);
    element_set a4set = commutator_subgroup(s4, all, all);
    std::vector<elem> relabel;
    group a4 = as_group(s4, a4set, &relabel);
    CHECK(a4.order() == 12);
    CHECK(relabel[0] == 0);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            CHECK(relabel[a4.mul(i, j)] == s4.mul(relabel[i], relabel[j]));
}

TEST_CASE("word parsing and evaluation") {
    group c4 = make_cyclic(4);
    word w = word::parse("x1 x2^-1 x1");
    CHECK(w.arity() == 2);
    std::vector<elem> assignment = {1, 2};
    CHECK(eval_word(c4, w, assignment) == 0); // 1 - 2 + 1 = 0 mod 4

    word empty;
    CHECK(eval_word(c4, empty, assignment) == 0);

    word square = word::parse("x1^2");
    std::vector<elem> gen = {1};
    CHECK(eval_word(c4, square, gen) == 2);

    CHECK_THROWS_AS(word::parse("y1"), error);
    CHECK_THROWS_AS(word::parse("x0"), error);
}
