#pragma once

#include <cstdint>
#include <vector>

#include "gwl/group.hpp"
#include "gwl/wl.hpp"

namespace gwl {

enum class player { spoiler, duplicator };

/// Board state of the bijective pebble game: slot i holds the pair
/// (g_i, h_i) or is off the board.
struct pebble_config {
    static constexpr int off = -1;
    std::vector<std::pair<int, int>> slots; // (off, off) = pebble pair not placed

    static pebble_config empty(int pebbles) {
        pebble_config c;
        c.slots.assign(pebbles, {off, off});
        return c;
    }
};

struct game_options {
    int max_order = 12;
    int max_pebbles = 4;
};

/// Exact backward-fixpoint solver for the bijective pebble game on a pair
/// of equal-order colored groups. Duplicator's bijection choice at each
/// pickup is decided by bipartite perfect matching on the pairs that do
/// not hand Spoiler a winning configuration. Single-threaded per
/// instance; separate instances may run concurrently.
class game_solver {
public:
    game_solver(const colored_group& g, const colored_group& h, int pebbles, wl_version version,
                const game_options& opt = {});

    /// Duplicator's bijections must additionally map cosets of the i-th
    /// chain subgroup of g onto cosets of the i-th chain subgroup of h,
    /// for every level. Must be called before the first winner() query.
    void restrict_to_chains(std::vector<element_set> g_chain, std::vector<element_set> h_chain);

    player winner(const pebble_config& cfg);

    uint64_t total_states() const { return state_count_; }
    uint64_t spoiler_states() const;

private:
    void solve();
    uint64_t encode(const pebble_config& cfg) const;
    bool winning_after_pickup(uint64_t code, int lifted);
    bool duplicator_feasible(uint64_t code, int lifted);
    bool chain_feasible(const std::vector<char>& allowed);

    const colored_group& g_;
    const colored_group& h_;
    int pebbles_;
    wl_version version_;
    int n_;
    uint64_t slot_values_; // n^2 + 1
    uint64_t state_count_;
    std::vector<uint64_t> pow_;
    std::vector<char> win_;
    bool solved_ = false;
    std::vector<signed char> wincond_memo_; // -1 unknown, keyed on (residual, lifted slot)

    std::vector<element_set> g_chain_, h_chain_; // outermost level first
};

player solve_game(const colored_group& g, const colored_group& h, int pebbles, wl_version version,
                  const pebble_config& cfg, const game_options& opt = {});

/// Spoiler already won in the given configuration? Checked directly after
/// a pickup: compares initial-coloring keys of the remaining pebbles per
/// version (Version I requires a fully placed residue).
bool winning_condition(const colored_group& g, const colored_group& h, const pebble_config& cfg,
                       int lifted, wl_version version);

struct equivalence_report {
    uint64_t pairs_checked = 0;
    uint64_t mismatches = 0;
};

/// Exhaustive check of the game characterization: equal stable k-WL colors
/// in the joint run iff Duplicator wins the (k+1)-pebble game from the
/// pebbled tuple pair.
equivalence_report check_game_wl_equivalence(const colored_group& g, const colored_group& h, int k,
                                             wl_version version, const game_options& opt = {});

/// Splits the domain of the bijection f into m full systems of
/// representatives modulo p whose images are systems of representatives
/// modulo q. p and q must be equipartitions with equal class size m.
std::vector<std::vector<int>> representative_decomposition(const std::vector<int>& f,
                                                           const std::vector<std::vector<int>>& p,
                                                           const std::vector<std::vector<int>>& q);

} // namespace gwl
