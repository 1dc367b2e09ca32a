#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gwl/group.hpp"

namespace gwl {

enum class wl_version { I, II };

const char* wl_version_name(wl_version v); // "I" / "II"
wl_version parse_wl_version(const std::string& s);

struct wl_options {
    uint64_t max_tuple_cells = uint64_t(1) << 31; // budget on n^k per group
    int threads = 0;                              // 0 = hardware concurrency
    // joint runs may stop once the verdict is settled (refinement never
    // merges classes, so a distinguished pair stays distinguished); the
    // returned colorings are then pre-stable
    bool stop_when_distinguished = false;
};

/// Bijection between [0, n^k) and k-tuples; tuple (g_1,...,g_k) maps to
/// g_1*n^(k-1) + ... + g_k.
struct tuple_indexer {
    int n = 0;
    int k = 0;
    uint64_t size = 0;

    tuple_indexer() = default;
    tuple_indexer(int n_, int k_);

    uint64_t index(std::span<const elem> tuple) const;
    void decode(uint64_t idx, std::span<elem> out) const;
};

/// Dense coloring of the k-tuple space of one group. In joint runs the
/// color ids of the two per-group colorings live in one shared space and
/// are directly comparable.
struct coloring {
    int k = 0;
    wl_version version = wl_version::I;
    int n = 0;
    std::vector<uint32_t> colors; // n^k entries, row-major tuple index
    int rounds = 0;               // proper refinement rounds to stability
    uint32_t class_count = 0;     // classes in the run's color space
    std::vector<uint32_t> class_counts_per_round; // [initial, after round 1, ...]
};

struct joint_result {
    bool equivalent = false;
    coloring left, right;                // shared color space
    int first_distinguishing_round = -1; // 0 = initial coloring, -1 = never
    int rounds = 0;
    uint32_t class_count = 0;
};

coloring initial_coloring(const colored_group& cg, int k, wl_version version,
                          const wl_options& opt = {});

/// Iterates refinement until the partition stabilizes. An already-stable
/// input is returned unchanged with rounds = 0.
coloring refine_to_stable(const colored_group& cg, coloring initial, const wl_options& opt = {});

coloring stable_coloring(const colored_group& cg, int k, wl_version version,
                         const wl_options& opt = {});

/// Runs both groups through one shared color space (one signature
/// dictionary); equivalent iff the stable color multisets over G^(k) and
/// H^(k) coincide. Groups of different orders are distinguished
/// immediately and no colorings are produced.
joint_result joint_compare(const colored_group& g, const colored_group& h, int k,
                           wl_version version, const wl_options& opt = {});

/// Restriction to m-tuples by identity padding, colors re-densified.
std::vector<uint32_t> induced_coloring(const coloring& c, int m);
std::vector<uint32_t> element_coloring(const coloring& c);

/// Induced colorings of a joint run, re-densified through one shared map
/// so the two sides stay comparable.
std::pair<std::vector<uint32_t>, std::vector<uint32_t>> joint_induced_coloring(const joint_result& r,
                                                                               int m);
std::pair<std::vector<uint32_t>, std::vector<uint32_t>> joint_element_coloring(const joint_result& r);

/// Quotient group colored by interned member-color multisets.
colored_group quotient_coloring(const colored_group& cg, const element_set& n);

/// Quotient colorings of two groups with one shared multiset dictionary,
/// so coset colors are comparable across the pair.
std::pair<colored_group, colored_group> quotient_coloring_pair(const colored_group& cg,
                                                               const element_set& ng,
                                                               const colored_group& ch,
                                                               const element_set& nh);

/// Cross-group detectability: no stable element color may occur both
/// inside the set on one side and outside it on the other.
bool is_detected(const std::vector<uint32_t>& colors_g, const element_set& sg,
                 const std::vector<uint32_t>& colors_h, const element_set& sh);

/// Single-group form: s is a union of color classes.
bool is_detected_single(const std::vector<uint32_t>& colors, const element_set& s);

namespace keys {

/// Canonical initial-coloring key of one tuple; keys are equal iff the
/// tuples receive the same initial color (comparable across groups).
/// Works for any tuple arity, including the sub-tuples used by the pebble
/// game winning conditions.
std::vector<int32_t> initial_key(const group& g, const std::vector<int>& colors,
                                 std::span<const elem> tuple, wl_version version);

} // namespace keys

} // namespace gwl
