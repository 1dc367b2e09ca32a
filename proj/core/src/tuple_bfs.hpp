#pragma once

#include <span>
#include <vector>

#include "gwl/group.hpp"

namespace gwl::detail {

/// Canonical transition structure of the subgroup generated by `tuple`:
/// elements are labeled by BFS discovery rank starting from the identity,
/// scanning generators in tuple order under right multiplication. The key
/// is the flattened rank transition table; two tuples have equal keys iff
/// g_i -> h_i extends to an isomorphism of the generated subgroups.
inline void bfs_transition_key(const group& g, std::span<const elem> tuple,
                               std::vector<int32_t>& key, std::vector<elem>& rank_to_elem,
                               std::vector<int32_t>& rank_scratch) {
    const int k = int(tuple.size());
    rank_scratch.assign(g.order(), -1);
    rank_to_elem.clear();
    rank_scratch[0] = 0;
    rank_to_elem.push_back(0);
    key.clear();
    for (size_t head = 0; head < rank_to_elem.size(); ++head) {
        elem x = rank_to_elem[head];
        for (int a = 0; a < k; ++a) {
            elem y = g.mul(x, tuple[a]);
            if (rank_scratch[y] < 0) {
                rank_scratch[y] = int32_t(rank_to_elem.size());
                rank_to_elem.push_back(y);
            }
            key.push_back(rank_scratch[y]);
        }
    }
}

} // namespace gwl::detail
