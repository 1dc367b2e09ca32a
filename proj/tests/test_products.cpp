#include <doctest.h>

#include <set>

#include "gwl/construct.hpp"
#include "gwl/expressions.hpp"
#include "gwl/invariants.hpp"
#include "gwl/products.hpp"
#include "test_helpers.hpp"

using namespace gwl;
using namespace gwl::test;

namespace {

// exhaustive complement oracle: a central z splits iff some normal
// subgroup complements <z>
bool splits_oracle(const group& g, elem z) {
    if (z == 0) return true;
    if (!center(g).contains(z)) return false;
    element_set cyclic = generated_subgroup(g, element_set::single(g.order(), z));
    for (const auto& b : normal_subgroups(g)) {
        if (int(b.size()) * cyclic.size() != g.order()) continue;
        if ((b & cyclic).size() == 1) return true;
    }
    return false;
}

} // namespace

TEST_CASE("splitting in abelian groups") {
    // generators of cyclic groups split
    group c12 = make_cyclic(12);
    CHECK(splits_abelian(c12, 1));
    CHECK(splits_abelian(c12, 0));

    group c2c4 = direct_product(make_cyclic(2), make_cyclic(4)); // (a,b) -> a*4+b
    const elem a = 4, b = 1;
    CHECK(splits_abelian(c2c4, a));
    CHECK_FALSE(splits_abelian(c2c4, c2c4.mul(b, b))); // b^2 has a p-th-root shift

    // criterion agrees with the complement oracle on whole groups
    for (const group& g : {direct_product(make_cyclic(2), make_cyclic(4)),
                           direct_product(make_cyclic(4), make_cyclic(4)), make_cyclic(8),
                           make_elementary_abelian(2, 3),
                           direct_product(make_cyclic(6), make_cyclic(2))}) {
        for (int x = 0; x < g.order(); ++x) CHECK(splits_abelian(g, x) == splits_oracle(g, x));
    }

    CHECK_THROWS_AS(splits_abelian(make_dihedral(4), 1), error);
}

TEST_CASE("splitting in general groups") {
    group d4 = make_dihedral(4);
    CHECK(splits_general(d4, 0)); // identity splits by convention
    CHECK_FALSE(splits_general(d4, d4_r2)); // r^2 lies in the derived subgroup
    CHECK_FALSE(splits_general(d4, d4_r));  // non-central elements never split

    group d4c3 = direct_product(make_dihedral(4), make_cyclic(3));
    // (1, c) with c of order three: complement D4 x {1}
    CHECK(splits_general(d4c3, 1));

    // oracle equivalence for all central elements in small groups
    for (const group& g :
         {make_dihedral(4), make_quaternion8(), direct_product(make_dihedral(4), make_cyclic(2)),
          direct_product(make_quaternion8(), make_cyclic(4)), make_symmetric(4),
          direct_product(make_cyclic(2), make_cyclic(4))}) {
        for (elem z : center(g).elements()) CHECK(splits_general(g, z) == splits_oracle(g, z));
    }
}

TEST_CASE("splitting restricts to subgroups") {
    for (const group& g : {direct_product(make_cyclic(2), make_cyclic(4)),
                           direct_product(make_dihedral(4), make_cyclic(2))}) {
        element_set z = center(g);
        for (const auto& u : all_subgroups(g)) {
            group ug = as_group(g, u);
            std::vector<elem> relabel;
            as_group(g, u, &relabel);
            for (int i = 0; i < ug.order(); ++i) {
                elem x = relabel[i];
                if (!z.contains(x) || !splits_general(g, x)) continue;
                CHECK(splits_general(ug, i) == true);
            }
        }
    }
}

TEST_CASE("splitting of p-elements is componentwise") {
    group d4 = make_dihedral(4);
    group c4 = make_cyclic(4);
    product_maps maps;
    group g = direct_product(d4, c4, &maps);
    for (elem z : center(g).elements()) {
        int ord = g.element_order(z);
        if (ord == 1 || prime_divisors(ord).size() != 1) continue;
        elem z1 = maps.proj_left[z], z2 = maps.proj_right[z];
        bool lhs = splits_general(g, z);
        bool rhs = (d4.element_order(z1) == ord && splits_general(d4, z1)) ||
                   (c4.element_order(z2) == ord && splits_general(c4, z2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("noncommuting graph") {
    group c6 = make_cyclic(6);
    noncommuting_graph edgeless = make_noncommuting_graph(c6);
    for (const auto& adj : edgeless.adj) CHECK(adj.size() == 0);

    group s3 = make_symmetric(3);
    noncommuting_graph gs3 = make_noncommuting_graph(s3);
    element_set noncentral = center(s3).complement();
    std::vector<int> labels = components_on(gs3, noncentral);
    std::set<int> distinct;
    int covered = 0;
    for (int x = 0; x < 6; ++x)
        if (labels[x] >= 0) {
            distinct.insert(labels[x]);
            ++covered;
        }
    CHECK(distinct.size() == 1);
    CHECK(covered == 5);

    // pure left and right non-central elements of S3 x S3 fall apart
    product_maps maps;
    group s3s3 = direct_product(s3, s3, &maps);
    element_set pure(36);
    for (int x = 0; x < 36; ++x) {
        bool left_pure = maps.proj_right[x] == 0 && maps.proj_left[x] != 0;
        bool right_pure = maps.proj_left[x] == 0 && maps.proj_right[x] != 0;
        if (left_pure || right_pure) pure.add(x);
    }
    std::vector<int> pure_labels = components_on(make_noncommuting_graph(s3s3), pure);
    std::set<int> pure_components;
    for (int x = 0; x < 36; ++x)
        if (pure_labels[x] >= 0) pure_components.insert(pure_labels[x]);
    CHECK(pure_components.size() == 2);
}

TEST_CASE("nonabelian components") {
    CHECK_THROWS_AS(nonabelian_components(make_cyclic(6)), error);

    group s3 = make_symmetric(3);
    component_decomposition d = nonabelian_components(s3);
    REQUIRE(d.subgroups.size() == 1);
    CHECK(d.subgroups[0] == element_set::all(6));
    CHECK(generated_subgroup(s3, d.m) == element_set::all(6));

    product_maps maps;
    group s3s3 = direct_product(s3, s3, &maps);
    component_decomposition ds = nonabelian_components(s3s3);
    REQUIRE(ds.subgroups.size() == 2);
    // the two components are exactly the factor copies
    element_set left(36), right(36);
    for (int x = 0; x < 36; ++x) {
        if (maps.proj_right[x] == 0) left.add(x);
        if (maps.proj_left[x] == 0) right.add(x);
    }
    CHECK(((ds.subgroups[0] == left && ds.subgroups[1] == right) ||
           (ds.subgroups[0] == right && ds.subgroups[1] == left)));

    // decomposition properties: center inside every component, components
    // non-abelian and pairwise commuting, product covers the group
    for (const group& g :
         {make_dihedral(4), direct_product(make_dihedral(4), make_quaternion8()), make_symmetric(4),
          direct_product(make_symmetric(3), make_cyclic(4))}) {
        component_decomposition dd = nonabelian_components(g);
        element_set z = center(g);
        element_set all(g.order());
        all.add(0);
        for (const auto& ni : dd.subgroups) {
            CHECK(z.is_subset_of(ni));
            CHECK_FALSE(is_abelian_subset(g, ni));
            all = generated_subgroup(g, all | ni);
        }
        CHECK(all == element_set::all(g.order()));
        for (size_t i = 0; i < dd.subgroups.size(); ++i)
            for (size_t j = i + 1; j < dd.subgroups.size(); ++j)
                for (elem x : dd.subgroups[i].elements())
                    for (elem y : dd.subgroups[j].elements())
                        CHECK(g.mul(x, y) == g.mul(y, x));
        // trace is increasing and M is fixed under multiplication by the center
        for (size_t i = 1; i < dd.trace.size(); ++i)
            CHECK(dd.trace[i - 1].is_subset_of(dd.trace[i]));
        for (elem m : dd.m.elements())
            for (elem zz : z.elements()) CHECK(dd.m.contains(g.mul(m, zz)));
    }
}

TEST_CASE("component grouping matches direct factors") {
    group d4q8 = direct_product(make_dihedral(4), make_quaternion8());
    component_decomposition d = nonabelian_components(d4q8);
    direct_decomposition ref = direct_factorization(d4q8);
    std::vector<int> owner = component_owner(d4q8, d, ref);

    element_set z = center(d4q8);
    for (size_t j = 0; j < ref.factors.size(); ++j) {
        element_set grouped(d4q8.order());
        grouped.add(0);
        bool any = false;
        for (size_t i = 0; i < owner.size(); ++i)
            if (owner[i] == int(j)) {
                grouped = generated_subgroup(d4q8, grouped | d.subgroups[i]);
                any = true;
            }
        if (!any) continue;
        element_set factor_z = generated_subgroup(d4q8, ref.factors[j] | z);
        CHECK(grouped == factor_z);
    }
}

TEST_CASE("cx, nx and fullness") {
    group s3 = make_symmetric(3);
    product_maps maps;
    group g = direct_product(s3, s3, &maps);
    component_decomposition d = nonabelian_components(g);
    direct_decomposition ref = direct_factorization(g);

    // central x: everything commutes, full for the empty collection
    auto [c0, n0] = cx_nx(g, d, 0);
    CHECK(c0 == element_set::all(36));
    CHECK(n0 == center(g));
    fullness_report f0 = is_full(g, d, ref, 0);
    CHECK(f0.full);
    CHECK(f0.factor_indices.empty());

    // pure non-central left element: full for the left factor only
    elem left = -1;
    for (int x = 1; x < 36; ++x)
        if (maps.proj_right[x] == 0 && maps.proj_left[x] != 0) {
            left = x;
            break;
        }
    auto [cl, nl] = cx_nx(g, d, left);
    CHECK(nl.size() == 6);
    CHECK(cl.size() == 6);
    fullness_report fl = is_full(g, d, ref, left);
    CHECK(fl.full);
    CHECK(fl.factor_indices.size() == 1);

    // both coordinates non-central: full for both factors
    elem both = -1;
    for (int x = 0; x < 36; ++x)
        if (maps.proj_left[x] != 0 && maps.proj_right[x] != 0) {
            both = x;
            break;
        }
    fullness_report fb = is_full(g, d, ref, both);
    CHECK(fb.full);
    CHECK(fb.factor_indices.size() == 2);
    auto [cb, nb] = cx_nx(g, d, both);
    CHECK(nb == element_set::all(36));
    CHECK(cb == center(g));
}

TEST_CASE("direct factorization") {
    direct_decomposition c6 = direct_factorization(make_cyclic(6));
    REQUIRE(c6.factors.size() == 2);
    CHECK(sorted_sizes(c6.factors) == std::multiset<int>{2, 3});

    direct_decomposition s4 = direct_factorization(make_symmetric(4));
    CHECK(s4.factors.size() == 1); // indecomposable

    group d4c3 = direct_product(make_dihedral(4), make_cyclic(3));
    direct_decomposition dec = direct_factorization(d4c3);
    REQUIRE(dec.factors.size() == 2);
    CHECK(sorted_sizes(dec.factors) == std::multiset<int>{3, 8});
    CHECK(dec.maximal_abelian_factor.size() == 3);
    CHECK(is_isomorphic(as_group(d4c3, dec.nonabelian_part), make_dihedral(4)).isomorphic);

    // factors pairwise commute, intersect trivially and generate the group
    for (const group& g : {make_cyclic(12), direct_product(make_quaternion8(), make_cyclic(2))}) {
        direct_decomposition d = direct_factorization(g);
        element_set span(g.order());
        span.add(0);
        int64_t product_order = 1;
        for (const auto& f : d.factors) {
            CHECK(is_normal(g, f));
            product_order *= f.size();
            span = generated_subgroup(g, span | f);
        }
        CHECK(product_order == g.order());
        CHECK(span == element_set::all(g.order()));
    }
}

TEST_CASE("factor type multisets are search-order independent") {
    std::vector<group> groups = {make_cyclic(6),
                                 direct_product(make_dihedral(4), make_cyclic(3)),
                                 direct_product(make_cyclic(2), make_cyclic(4)),
                                 direct_product(make_symmetric(3), make_symmetric(3)),
                                 direct_product(make_quaternion8(), make_cyclic(6)),
                                 make_elementary_abelian(2, 4)};
    for (const group& g : groups) {
        direct_decomposition a = direct_factorization(g, factor_search::canonical);
        direct_decomposition b = direct_factorization(g, factor_search::alternate);
        REQUIRE(a.factors.size() == b.factors.size());
        // match factors pairwise by isomorphism
        std::vector<bool> used(b.factors.size(), false);
        for (const auto& fa : a.factors) {
            bool matched = false;
            for (size_t j = 0; j < b.factors.size() && !matched; ++j) {
                if (used[j] || b.factors[j].size() != fa.size()) continue;
                if (is_isomorphic(as_group(g, fa), as_group(g, b.factors[j])).isomorphic) {
                    used[j] = true;
                    matched = true;
                }
            }
            CHECK(matched);
        }
        // the G_i Z(G) collections coincide
        element_set z = center(g);
        std::set<std::vector<uint64_t>> za, zb;
        for (const auto& f : a.factors) za.insert(generated_subgroup(g, f | z).words());
        for (const auto& f : b.factors) zb.insert(generated_subgroup(g, f | z).words());
        CHECK(za == zb);
    }
}

TEST_CASE("component-wise filtrations") {
    // abelian group: the whole center ascends on the abelian side
    group c2c4 = direct_product(make_cyclic(2), make_cyclic(4));
    filtration fa = build_filtration(c2c4, direct_factorization(c2c4));
    CHECK(fa.chain.back() == element_set::all(8));
    for (char s : fa.side) CHECK(s == 'R');

    // Q8 x C4
    group q8c4 = direct_product(make_quaternion8(), make_cyclic(4));
    filtration fq = build_filtration(q8c4, direct_factorization(q8c4));
    CHECK(fq.chain.front().size() == 1);
    CHECK(fq.chain.back() == center(q8c4));
    CHECK(fq.side.size() == fq.chain.size() - 1);
    for (size_t i = 1; i < fq.chain.size(); ++i) {
        CHECK(fq.chain[i - 1].is_subset_of(fq.chain[i]));
        CHECK(fq.chain[i - 1].size() < fq.chain[i].size());
        CHECK(is_subgroup(q8c4, fq.chain[i]));
    }

    // D4 x C2
    group d4c2 = direct_product(make_dihedral(4), make_cyclic(2));
    filtration fd = build_filtration(d4c2, direct_factorization(d4c2));
    CHECK(fd.chain.back() == center(d4c2));
    CHECK(center(d4c2).size() == 4);

    // a purely non-abelian group ascends on the left side only
    group q8 = make_quaternion8();
    filtration fn = build_filtration(q8, direct_factorization(q8));
    CHECK(fn.chain.back() == center(q8));
    for (char s : fn.side) CHECK(s == 'L');
}
