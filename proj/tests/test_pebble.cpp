#include <doctest.h>

#include <numeric>
#include <set>

#include "gwl/construct.hpp"
#include "gwl/expressions.hpp"
#include "gwl/pebble.hpp"
#include "gwl/wl.hpp"
#include "test_helpers.hpp"

using namespace gwl;
using namespace gwl::test;

TEST_CASE("winning condition basics") {
    colored_group c4 = colored_group::uncolored(make_cyclic(4));
    colored_group v4 = colored_group::uncolored(make_elementary_abelian(2, 2));

    pebble_config empty = pebble_config::empty(3);
    CHECK_FALSE(winning_condition(c4, v4, empty, 0, wl_version::I));
    CHECK_FALSE(winning_condition(c4, v4, empty, 0, wl_version::II));

    // a pebble pair on elements of different orders loses under Version II
    pebble_config mismatch = pebble_config::empty(3);
    mismatch.slots[1] = {1, 1}; // order 4 in c4 vs order 2 in v4
    CHECK(winning_condition(c4, v4, mismatch, 0, wl_version::II));
    // Version I stays silent while another slot is off the board
    CHECK_FALSE(winning_condition(c4, v4, mismatch, 0, wl_version::I));

    // identity pairing on identical groups is fine for both versions
    colored_group d4 = colored_group::uncolored(make_dihedral(4));
    pebble_config full = pebble_config::empty(3);
    full.slots = {{1, 1}, {2, 2}, {4, 4}};
    CHECK_FALSE(winning_condition(d4, d4, full, 2, wl_version::I));
    CHECK_FALSE(winning_condition(d4, d4, full, 2, wl_version::II));
}

TEST_CASE("solved games on standard pairs") {
    colored_group c4 = colored_group::uncolored(make_cyclic(4));
    colored_group v4 = colored_group::uncolored(make_elementary_abelian(2, 2));
    colored_group c6 = colored_group::uncolored(make_cyclic(6));
    colored_group s3 = colored_group::uncolored(make_symmetric(3));

    // identical groups: Duplicator survives via the identity bijection
    CHECK(solve_game(c4, c4, 3, wl_version::I, pebble_config::empty(3)) == player::duplicator);
    CHECK(solve_game(s3, s3, 3, wl_version::II, pebble_config::empty(3)) == player::duplicator);

    // C4 vs C2^2 with three pebbles, Version I: Spoiler wins, matching the
    // 2-WL_I verdict
    CHECK(solve_game(c4, v4, 3, wl_version::I, pebble_config::empty(3)) == player::spoiler);
    CHECK_FALSE(joint_compare(c4, v4, 2, wl_version::I).equivalent);

    // C6 vs S3, Version II
    CHECK(solve_game(c6, s3, 3, wl_version::II, pebble_config::empty(3)) == player::spoiler);

    colored_group triv = colored_group::uncolored(make_cyclic(1));
    CHECK(solve_game(triv, triv, 2, wl_version::I, pebble_config::empty(2)) == player::duplicator);
}

TEST_CASE("caps are enforced") {
    colored_group big = colored_group::uncolored(make_cyclic(16));
    CHECK_THROWS_AS(solve_game(big, big, 3, wl_version::I, pebble_config::empty(3)), error);
    colored_group c4 = colored_group::uncolored(make_cyclic(4));
    colored_group c2 = colored_group::uncolored(make_cyclic(2));
    CHECK_THROWS_AS(solve_game(c4, c2, 2, wl_version::I, pebble_config::empty(2)), error);
}

TEST_CASE("game agrees with WL on all tuple pairs for small groups") {
    std::vector<std::pair<colored_group, colored_group>> pairs;
    pairs.emplace_back(colored_group::uncolored(make_cyclic(4)),
                       colored_group::uncolored(make_elementary_abelian(2, 2)));
    pairs.emplace_back(colored_group::uncolored(make_cyclic(6)),
                       colored_group::uncolored(make_symmetric(3)));
    pairs.emplace_back(colored_group::uncolored(make_cyclic(4)),
                       colored_group::uncolored(make_cyclic(4)));
    for (auto& [a, b] : pairs) {
        for (wl_version v : {wl_version::I, wl_version::II}) {
            equivalence_report rep = check_game_wl_equivalence(a, b, 2, v);
            CHECK(rep.mismatches == 0);
            CHECK(rep.pairs_checked ==
                  uint64_t(a.g.order()) * a.g.order() * b.g.order() * b.g.order());
        }
    }
}

TEST_CASE("the empty configuration mirrors the group-level verdict") {
    std::vector<std::pair<group, group>> pairs;
    pairs.emplace_back(make_cyclic(4), make_elementary_abelian(2, 2));
    pairs.emplace_back(make_cyclic(6), make_symmetric(3));
    pairs.emplace_back(make_dihedral(4), make_quaternion8());
    pairs.emplace_back(make_cyclic(8), make_cyclic(8));
    for (auto& [a, b] : pairs) {
        colored_group ca = colored_group::uncolored(a), cb = colored_group::uncolored(b);
        for (wl_version v : {wl_version::I, wl_version::II}) {
            bool equivalent = joint_compare(ca, cb, 2, v).equivalent;
            bool duplicator =
                solve_game(ca, cb, 3, v, pebble_config::empty(3)) == player::duplicator;
            CHECK(equivalent == duplicator);
        }
    }
}

TEST_CASE("a corrupted coloring is flagged by the game comparison") {
    colored_group c4 = colored_group::uncolored(make_cyclic(4));
    colored_group v4 = colored_group::uncolored(make_elementary_abelian(2, 2));
    joint_result jr = joint_compare(c4, v4, 2, wl_version::I);
    game_solver solver(c4, v4, 3, wl_version::I);

    std::vector<uint32_t> corrupted = jr.left.colors;
    corrupted[5] = jr.right.colors[5]; // force one spurious cross-group match

    tuple_indexer ti(4, 2);
    std::vector<elem> tg(2), th(2);
    uint64_t mismatches = 0;
    for (uint64_t a = 0; a < ti.size; ++a)
        for (uint64_t b = 0; b < ti.size; ++b) {
            ti.decode(a, tg);
            ti.decode(b, th);
            pebble_config cfg = pebble_config::empty(3);
            for (int i = 0; i < 2; ++i) cfg.slots[i] = {tg[i], th[i]};
            bool same = corrupted[a] == jr.right.colors[b];
            bool dup = solver.winner(cfg) == player::duplicator;
            if (same != dup) ++mismatches;
        }
    CHECK(mismatches > 0);
}

TEST_CASE("chain-respecting play") {
    colored_group c4 = colored_group::uncolored(make_cyclic(4));
    element_set c2_in_c4 = set_of(4, {0, 2});
    element_set triv4 = set_of(4, {0});

    // a trivial chain changes nothing
    {
        game_solver plain(c4, c4, 3, wl_version::I);
        game_solver chained(c4, c4, 3, wl_version::I);
        chained.restrict_to_chains({triv4}, {triv4});
        pebble_config cfg = pebble_config::empty(3);
        CHECK(plain.winner(cfg) == chained.winner(cfg));
    }

    // matched chains {1} <= C2 <= C4 on identical groups keep Duplicator alive
    {
        game_solver chained(c4, c4, 2, wl_version::I);
        chained.restrict_to_chains({triv4, c2_in_c4}, {triv4, c2_in_c4});
        CHECK(chained.winner(pebble_config::empty(2)) == player::duplicator);
        game_solver chained3(c4, c4, 3, wl_version::II);
        chained3.restrict_to_chains({c2_in_c4}, {c2_in_c4});
        CHECK(chained3.winner(pebble_config::empty(3)) == player::duplicator);
    }

    // squares of C4 against a mismatched C2 inside C2^2
    {
        colored_group v4 = colored_group::uncolored(make_elementary_abelian(2, 2));
        game_solver chained(c4, v4, 3, wl_version::I);
        chained.restrict_to_chains({c2_in_c4}, {set_of(4, {0, 1})});
        CHECK(chained.winner(pebble_config::empty(3)) == player::spoiler);
    }
}

TEST_CASE("chain restrictions never rescue Duplicator") {
    std::vector<std::pair<colored_group, colored_group>> pairs;
    pairs.emplace_back(colored_group::uncolored(make_cyclic(4)),
                       colored_group::uncolored(make_elementary_abelian(2, 2)));
    pairs.emplace_back(colored_group::uncolored(make_cyclic(6)),
                       colored_group::uncolored(make_symmetric(3)));
    for (auto& [a, b] : pairs) {
        const int n = a.g.order();
        game_solver plain(a, b, 3, wl_version::II);
        game_solver chained(a, b, 3, wl_version::II);
        // derived subgroups as a one-level chain
        element_set all = element_set::all(n);
        chained.restrict_to_chains({commutator_subgroup(a.g, all, all)},
                                   {commutator_subgroup(b.g, all, all)});
        tuple_indexer ti(n, 2);
        std::vector<elem> tg(2), th(2);
        for (uint64_t x = 0; x < ti.size; x += 3)
            for (uint64_t y = 0; y < ti.size; y += 3) {
                ti.decode(x, tg);
                ti.decode(y, th);
                pebble_config cfg = pebble_config::empty(3);
                cfg.slots[0] = {tg[0], th[0]};
                cfg.slots[1] = {tg[1], th[1]};
                if (plain.winner(cfg) == player::spoiler)
                    CHECK(chained.winner(cfg) == player::spoiler);
            }
    }
}

TEST_CASE("lemma instance: duplicator wins the chained smaller game on matched chains") {
    // D4 against itself: Duplicator wins the 3-pebble game, so with the
    // center chain matched on both sides Duplicator wins the chained
    // 2-pebble game as well
    colored_group d4 = colored_group::uncolored(make_dihedral(4));
    game_solver plain(d4, d4, 3, wl_version::II);
    CHECK(plain.winner(pebble_config::empty(3)) == player::duplicator);

    game_solver chained(d4, d4, 2, wl_version::II);
    chained.restrict_to_chains({center(d4.g)}, {center(d4.g)});
    CHECK(chained.winner(pebble_config::empty(2)) == player::duplicator);
}

TEST_CASE("forced edges: pebbled pairs map to themselves in surviving matchings") {
    // on identical groups, any configuration pairing an element with a
    // different-order partner is Spoiler-won once enough pebbles exist
    colored_group d4 = colored_group::uncolored(make_dihedral(4));
    game_solver solver(d4, d4, 3, wl_version::II);
    pebble_config cfg = pebble_config::empty(3);
    cfg.slots[0] = {d4_r, d4_s}; // order 4 paired with order 2
    CHECK(solver.winner(cfg) == player::spoiler);
    cfg.slots[0] = {d4_r, d4.g.inv(d4_r)}; // order-preserving pairing survives
    CHECK(solver.winner(cfg) == player::duplicator);
}

TEST_CASE("representative decompositions") {
    // singleton classes: one system containing everything
    std::vector<int> f4 = {2, 0, 3, 1};
    std::vector<std::vector<int>> singletons = {{0}, {1}, {2}, {3}};
    auto systems = representative_decomposition(f4, singletons, singletons);
    REQUIRE(systems.size() == 1);
    CHECK(systems[0] == std::vector<int>{0, 1, 2, 3});

    // |A| = 4, two classes of size two, identity bijection
    std::vector<int> id4 = {0, 1, 2, 3};
    std::vector<std::vector<int>> halves = {{0, 1}, {2, 3}};
    systems = representative_decomposition(id4, halves, halves);
    REQUIRE(systems.size() == 2);
    for (const auto& sys : systems) {
        CHECK(sys.size() == 2);
        CHECK((sys[0] < 2) != (sys[1] < 2));
    }

    // 12 points, 3 classes of 4, a scrambled bijection; validate post hoc
    std::vector<int> f12 = {7, 3, 11, 0, 5, 9, 2, 6, 10, 1, 4, 8};
    std::vector<std::vector<int>> p = {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}};
    std::vector<std::vector<int>> q = {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}};
    systems = representative_decomposition(f12, p, q);
    REQUIRE(systems.size() == 4);

    auto class_of = [](const std::vector<std::vector<int>>& classes, int x) {
        for (size_t c = 0; c < classes.size(); ++c)
            for (int y : classes[c])
                if (y == x) return int(c);
        return -1;
    };
    std::set<int> covered;
    for (const auto& sys : systems) {
        CHECK(sys.size() == 3);
        std::set<int> pc, qc;
        for (int x : sys) {
            covered.insert(x);
            pc.insert(class_of(p, x));
            qc.insert(class_of(q, f12[x]));
        }
        CHECK(pc.size() == 3); // full system modulo p
        CHECK(qc.size() == 3); // image: full system modulo q
    }
    CHECK(covered.size() == 12); // systems partition the domain

    std::vector<std::vector<int>> unequal = {{0, 1, 2}, {3}};
    CHECK_THROWS_AS(representative_decomposition(id4, unequal, halves), error);
}
