#include "gwl/pebble.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace gwl {

namespace {

// Kuhn's augmenting-path matching; adjacency given as a flat boolean
// matrix, deterministic ascending vertex order.
class bipartite_matcher {
public:
    explicit bipartite_matcher(int n) : n_(n), match_left_(n), match_right_(n), seen_(n) {}

    bool perfect(const std::vector<char>& allowed) {
        std::fill(match_left_.begin(), match_left_.end(), -1);
        std::fill(match_right_.begin(), match_right_.end(), -1);
        for (int x = 0; x < n_; ++x) {
            std::fill(seen_.begin(), seen_.end(), 0);
            if (!augment(allowed, x)) return false;
        }
        return true;
    }

private:
    bool augment(const std::vector<char>& allowed, int x) {
        for (int y = 0; y < n_; ++y) {
            if (!allowed[size_t(x) * n_ + y] || seen_[y]) continue;
            seen_[y] = 1;
            if (match_right_[y] < 0 || augment(allowed, match_right_[y])) {
                match_left_[x] = y;
                match_right_[y] = x;
                return true;
            }
        }
        return false;
    }

    int n_;
    std::vector<int> match_left_, match_right_;
    std::vector<char> seen_;
};

} // namespace

bool winning_condition(const colored_group& g, const colored_group& h, const pebble_config& cfg,
                       int lifted, wl_version version) {
    const int k = int(cfg.slots.size());
    std::vector<elem> left, right;
    bool any_off = false;
    for (int i = 0; i < k; ++i) {
        if (i == lifted) continue;
        if (cfg.slots[i].first == pebble_config::off) {
            any_off = true;
            continue;
        }
        left.push_back(cfg.slots[i].first);
        right.push_back(cfg.slots[i].second);
    }
    if (version == wl_version::I) {
        // the Version I check is only defined on fully placed residues
        if (any_off) return false;
        return keys::initial_key(g.g, g.colors, left, wl_version::I) !=
               keys::initial_key(h.g, h.colors, right, wl_version::I);
    }
    return keys::initial_key(g.g, g.colors, left, wl_version::II) !=
           keys::initial_key(h.g, h.colors, right, wl_version::II);
}

game_solver::game_solver(const colored_group& g, const colored_group& h, int pebbles,
                         wl_version version, const game_options& opt)
    : g_(g), h_(h), pebbles_(pebbles), version_(version), n_(g.g.order()) {
    if (g.g.order() != h.g.order())
        throw error(errc::cap_exceeded, "the pebble game requires equal group orders");
    if (n_ > opt.max_order)
        throw error(errc::cap_exceeded, "group order " + std::to_string(n_) +
                                            " exceeds the game cap " + std::to_string(opt.max_order));
    if (pebbles < 2 || pebbles > opt.max_pebbles)
        throw error(errc::cap_exceeded, "pebble count " + std::to_string(pebbles) +
                                            " outside [2," + std::to_string(opt.max_pebbles) + "]");
    slot_values_ = uint64_t(n_) * n_ + 1;
    state_count_ = 1;
    pow_.resize(pebbles_);
    for (int i = 0; i < pebbles_; ++i) {
        pow_[i] = state_count_;
        state_count_ *= slot_values_;
    }
    if (state_count_ > (uint64_t(1) << 26))
        throw error(errc::cap_exceeded, "game state space too large (" +
                                            std::to_string(state_count_) + " configurations)");
}

void game_solver::restrict_to_chains(std::vector<element_set> g_chain,
                                     std::vector<element_set> h_chain) {
    if (solved_) throw error(errc::internal, "chain restriction must precede solving");
    if (g_chain.size() != h_chain.size())
        throw error(errc::decomposition_mismatch, "chains have different lengths");
    for (size_t i = 0; i < g_chain.size(); ++i) {
        if (!is_subgroup(g_.g, g_chain[i]) || !is_subgroup(h_.g, h_chain[i]))
            throw error(errc::decomposition_mismatch, "chain levels must be subgroups");
    }
    // outermost (largest) level first
    auto by_size_desc = [](const element_set& a, const element_set& b) {
        return a.size() > b.size();
    };
    std::sort(g_chain.begin(), g_chain.end(), by_size_desc);
    std::sort(h_chain.begin(), h_chain.end(), by_size_desc);
    for (size_t i = 1; i < g_chain.size(); ++i) {
        if (!g_chain[i].is_subset_of(g_chain[i - 1]) || !h_chain[i].is_subset_of(h_chain[i - 1]))
            throw error(errc::decomposition_mismatch, "chain levels must be nested");
    }
    g_chain_ = std::move(g_chain);
    h_chain_ = std::move(h_chain);
}

uint64_t game_solver::encode(const pebble_config& cfg) const {
    if (int(cfg.slots.size()) != pebbles_)
        throw error(errc::cap_exceeded, "configuration has the wrong number of slots");
    uint64_t code = 0;
    for (int i = 0; i < pebbles_; ++i) {
        auto [x, y] = cfg.slots[i];
        uint64_t v;
        if (x == pebble_config::off) {
            v = slot_values_ - 1;
        } else {
            if (x < 0 || x >= n_ || y < 0 || y >= n_)
                throw error(errc::cap_exceeded, "pebble position out of range");
            v = uint64_t(x) * n_ + uint64_t(y);
        }
        code += v * pow_[i];
    }
    return code;
}

bool game_solver::winning_after_pickup(uint64_t code, int lifted) {
    // the lifted slot's content is irrelevant: memoize on the residual
    const uint64_t v = (code / pow_[lifted]) % slot_values_;
    const uint64_t residual = code - v * pow_[lifted] + (slot_values_ - 1) * pow_[lifted];
    if (wincond_memo_.empty()) wincond_memo_.assign(state_count_ * pebbles_, -1);
    signed char& memo = wincond_memo_[residual * pebbles_ + lifted];
    if (memo >= 0) return memo != 0;

    pebble_config cfg;
    cfg.slots.resize(pebbles_);
    for (int i = 0; i < pebbles_; ++i) {
        uint64_t w = (residual / pow_[i]) % slot_values_;
        if (w == slot_values_ - 1)
            cfg.slots[i] = {pebble_config::off, pebble_config::off};
        else
            cfg.slots[i] = {int(w / n_), int(w % n_)};
    }
    bool result = winning_condition(g_, h_, cfg, lifted, version_);
    memo = result ? 1 : 0;
    return result;
}

bool game_solver::chain_feasible(const std::vector<char>& allowed) {
    const size_t levels = g_chain_.size();
    // feasible(level, block of g, block of h) via recursive matching
    auto rec = [&](auto&& self, size_t level, const std::vector<int>& ga,
                   const std::vector<int>& hb) -> bool {
        if (ga.size() != hb.size()) return false;
        if (level == levels) {
            // deepest level: any bijection on allowed pairs within the block
            const int m = int(ga.size());
            std::vector<char> sub(size_t(m) * m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    sub[size_t(i) * m + j] = allowed[size_t(ga[i]) * n_ + hb[j]];
            bipartite_matcher bm(m);
            return bm.perfect(sub);
        }
        // split the blocks into cosets of the level subgroups
        auto split = [&](const group& gr, const element_set& sub, const std::vector<int>& block) {
            std::unordered_map<int, std::vector<int>> cosets; // min member -> elements
            std::vector<elem> members = sub.elements();
            for (int x : block) {
                int rep = gr.order();
                for (elem s : members) rep = std::min(rep, gr.mul(x, s));
                cosets[rep].push_back(x);
            }
            std::vector<std::vector<int>> out;
            std::vector<int> reps;
            for (auto& [rep, v] : cosets) reps.push_back(rep);
            std::sort(reps.begin(), reps.end());
            for (int rep : reps) out.push_back(std::move(cosets[rep]));
            return out;
        };
        auto gblocks = split(g_.g, g_chain_[level], ga);
        auto hblocks = split(h_.g, h_chain_[level], hb);
        if (gblocks.size() != hblocks.size()) return false;
        const int m = int(gblocks.size());
        std::vector<char> edges(size_t(m) * m, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                edges[size_t(i) * m + j] = self(self, level + 1, gblocks[i], hblocks[j]) ? 1 : 0;
        bipartite_matcher bm(m);
        return bm.perfect(edges);
    };

    std::vector<int> all_g(n_), all_h(n_);
    for (int i = 0; i < n_; ++i) all_g[i] = all_h[i] = i;
    return rec(rec, 0, all_g, all_h);
}

bool game_solver::duplicator_feasible(uint64_t code, int lifted) {
    const uint64_t old_v = (code / pow_[lifted]) % slot_values_;
    const uint64_t base = code - old_v * pow_[lifted];
    std::vector<char> allowed(size_t(n_) * n_);
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y) {
            uint64_t succ = base + (uint64_t(x) * n_ + y) * pow_[lifted];
            allowed[size_t(x) * n_ + y] = win_[succ] ? 0 : 1;
        }
    if (!g_chain_.empty()) return chain_feasible(allowed);
    bipartite_matcher bm(n_);
    return bm.perfect(allowed);
}

void game_solver::solve() {
    win_.assign(state_count_, 0);

    // states that satisfy a winning condition after some pickup
    for (uint64_t c = 0; c < state_count_; ++c)
        for (int i = 0; i < pebbles_; ++i)
            if (winning_after_pickup(c, i)) {
                win_[c] = 1;
                break;
            }

    std::deque<uint64_t> queue;
    std::vector<char> queued(state_count_, 0);
    for (uint64_t c = 0; c < state_count_; ++c)
        if (!win_[c]) {
            queue.push_back(c);
            queued[c] = 1;
        }

    while (!queue.empty()) {
        uint64_t c = queue.front();
        queue.pop_front();
        queued[c] = 0;
        if (win_[c]) continue;
        bool spoiler_wins = false;
        for (int i = 0; i < pebbles_ && !spoiler_wins; ++i)
            if (!duplicator_feasible(c, i)) spoiler_wins = true;
        if (!spoiler_wins) continue;
        win_[c] = 1;
        // a pickup at slot i from any state agreeing off slot i reaches c
        for (int i = 0; i < pebbles_; ++i) {
            const uint64_t ci = (c / pow_[i]) % slot_values_;
            if (ci == slot_values_ - 1) continue; // placements never produce an off slot
            const uint64_t base = c - ci * pow_[i];
            for (uint64_t v = 0; v < slot_values_; ++v) {
                uint64_t pred = base + v * pow_[i];
                if (!win_[pred] && !queued[pred]) {
                    queue.push_back(pred);
                    queued[pred] = 1;
                }
            }
        }
    }
    solved_ = true;
}

player game_solver::winner(const pebble_config& cfg) {
    uint64_t code = encode(cfg);
    if (!solved_) solve();
    return win_[code] ? player::spoiler : player::duplicator;
}

uint64_t game_solver::spoiler_states() const {
    uint64_t c = 0;
    for (char w : win_) c += w;
    return c;
}

player solve_game(const colored_group& g, const colored_group& h, int pebbles, wl_version version,
                  const pebble_config& cfg, const game_options& opt) {
    game_solver solver(g, h, pebbles, version, opt);
    return solver.winner(cfg);
}

equivalence_report check_game_wl_equivalence(const colored_group& g, const colored_group& h, int k,
                                             wl_version version, const game_options& opt) {
    equivalence_report report;
    joint_result jr = joint_compare(g, h, k, version);
    game_solver solver(g, h, k + 1, version, opt);

    tuple_indexer ti(g.g.order(), k);
    std::vector<elem> tg(k), th(k);
    for (uint64_t a = 0; a < ti.size; ++a) {
        ti.decode(a, tg);
        for (uint64_t b = 0; b < ti.size; ++b) {
            ti.decode(b, th);
            pebble_config cfg = pebble_config::empty(k + 1);
            for (int i = 0; i < k; ++i) cfg.slots[i] = {tg[i], th[i]};
            bool same_color = jr.left.colors[a] == jr.right.colors[b];
            bool duplicator_wins = solver.winner(cfg) == player::duplicator;
            ++report.pairs_checked;
            if (same_color != duplicator_wins) ++report.mismatches;
        }
    }
    return report;
}

std::vector<std::vector<int>> representative_decomposition(const std::vector<int>& f,
                                                           const std::vector<std::vector<int>>& p,
                                                           const std::vector<std::vector<int>>& q) {
    const int total = int(f.size());
    const int t = int(p.size());
    if (t == 0 || int(q.size()) != t)
        throw error(errc::decomposition_mismatch, "partitions must be nonempty and equal length");
    const int m = int(p[0].size());
    for (const auto& cls : p)
        if (int(cls.size()) != m) throw error(errc::decomposition_mismatch, "p is not an equipartition");
    for (const auto& cls : q)
        if (int(cls.size()) != m) throw error(errc::decomposition_mismatch, "q is not an equipartition");
    if (t * m != total) throw error(errc::decomposition_mismatch, "partitions do not cover the domain");

    std::vector<int> q_class(total, -1);
    for (int j = 0; j < t; ++j)
        for (int y : q[j]) q_class[y] = j;

    // one bucket of elements per (p-class, q-class) pair; the bucket
    // multigraph is m-regular, so it decomposes into m perfect matchings
    std::vector<std::vector<std::vector<int>>> bucket(t, std::vector<std::vector<int>>(t));
    for (int i = 0; i < t; ++i)
        for (int x : p[i]) bucket[i][q_class[f[x]]].push_back(x);
    for (auto& row : bucket)
        for (auto& b : row) std::sort(b.begin(), b.end(), std::greater<int>()); // pop smallest last

    std::vector<std::vector<int>> systems;
    for (int round = 0; round < m; ++round) {
        std::vector<char> edges(size_t(t) * t, 0);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) edges[size_t(i) * t + j] = bucket[i][j].empty() ? 0 : 1;
        // Kuhn with explicit state to extract the matching itself
        std::vector<int> chosen(t, -1);
        {
            std::vector<int> match_right(t, -1);
            std::vector<char> seen(t);
            auto augment = [&](auto&& self, int x) -> bool {
                for (int y = 0; y < t; ++y) {
                    if (!edges[size_t(x) * t + y] || seen[y]) continue;
                    seen[y] = 1;
                    if (match_right[y] < 0 || self(self, match_right[y])) {
                        match_right[y] = x;
                        return true;
                    }
                }
                return false;
            };
            for (int x = 0; x < t; ++x) {
                std::fill(seen.begin(), seen.end(), 0);
                if (!augment(augment, x))
                    throw error(errc::internal, "regular bipartite multigraph failed to decompose");
            }
            for (int y = 0; y < t; ++y) chosen[match_right[y]] = y;
        }
        std::vector<int> system;
        for (int i = 0; i < t; ++i) {
            auto& b = bucket[i][chosen[i]];
            system.push_back(b.back());
            b.pop_back();
        }
        std::sort(system.begin(), system.end());
        systems.push_back(std::move(system));
    }
    return systems;
}

} // namespace gwl
