#include "gwl/group.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <sstream>
#include <unordered_set>

namespace gwl {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_closed: return "NotClosed";
        case errc::no_identity_at_zero: return "NoIdentityAtZero";
        case errc::not_associative: return "NotAssociative";
        case errc::missing_inverse: return "MissingInverse";
        case errc::not_normal: return "NotNormal";
        case errc::not_central: return "NotCentral";
        case errc::not_isomorphism: return "NotIsomorphism";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::budget: return "Budget";
        case errc::timeout: return "Timeout";
        case errc::too_large: return "TooLarge";
        case errc::parse_error: return "ParseError";
        case errc::arity_too_large: return "ArityTooLarge";
        case errc::dimension_too_small: return "DimensionTooSmall";
        case errc::abelian_input: return "AbelianInput";
        case errc::decomposition_mismatch: return "DecompositionMismatch";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

// -- element_set -------------------------------------------------------------

element_set element_set::all(int universe) {
    element_set s(universe);
    for (int i = 0; i < universe; ++i) s.add(i);
    return s;
}

element_set element_set::single(int universe, elem g) {
    element_set s(universe);
    s.add(g);
    return s;
}

element_set element_set::of(int universe, std::span<const elem> members) {
    element_set s(universe);
    for (elem g : members) s.add(g);
    return s;
}

int element_set::size() const {
    int c = 0;
    for (uint64_t w : bits_) c += std::popcount(w);
    return c;
}

std::vector<elem> element_set::elements() const {
    std::vector<elem> out;
    out.reserve(size());
    for (int i = 0; i < n_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

element_set& element_set::operator|=(const element_set& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
}

element_set& element_set::operator&=(const element_set& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
}

element_set element_set::complement() const {
    element_set s(n_);
    for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = ~bits_[i];
    if (n_ & 63) s.bits_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
    return s;
}

bool element_set::is_subset_of(const element_set& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~o.bits_[i]) return false;
    return true;
}

bool element_set::lex_less(const element_set& o) const {
    for (size_t i = 0; i < bits_.size(); ++i) {
        uint64_t d = bits_[i] ^ o.bits_[i];
        if (d) {
            int bit = std::countr_zero(d);
            return !((bits_[i] >> bit) & 1); // absent-first ordering
        }
    }
    return false;
}

// -- group -------------------------------------------------------------------

namespace {

void check_table_structure(const std::vector<std::vector<int>>& table) {
    const int n = int(table.size());
    if (n == 0) throw error(errc::not_closed, "empty table");
    for (int i = 0; i < n; ++i) {
        if (int(table[i].size()) != n)
            throw error(errc::not_closed, "row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n)
                throw error(errc::not_closed, "cell (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") out of range");
    }
    for (int j = 0; j < n; ++j)
        if (table[0][j] != j)
            throw error(errc::no_identity_at_zero, "cell (0," + std::to_string(j) + ")");
    for (int i = 0; i < n; ++i)
        if (table[i][0] != i)
            throw error(errc::no_identity_at_zero, "cell (" + std::to_string(i) + ",0)");
    std::vector<char> seen(n);
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            if (seen[table[i][j]])
                throw error(errc::not_closed, "row " + std::to_string(i) + " repeats value at column " +
                                                  std::to_string(j));
            seen[table[i][j]] = 1;
        }
    }
    for (int j = 0; j < n; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int i = 0; i < n; ++i) {
            if (seen[table[i][j]])
                throw error(errc::not_closed, "column " + std::to_string(j) + " repeats value at row " +
                                                  std::to_string(i));
            seen[table[i][j]] = 1;
        }
    }
}

} // namespace

group group::trusted(const std::vector<std::vector<int>>& table, std::string name) {
    check_table_structure(table);
    const int n = int(table.size());

    group g;
    g.n_ = n;
    g.name_ = std::move(name);
    g.table_.resize(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table_[size_t(i) * n + j] = table[i][j];

    g.inv_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (g.mul(i, j) == 0 && g.mul(j, i) == 0) {
                g.inv_[i] = j;
                break;
            }
        if (g.inv_[i] < 0) throw error(errc::missing_inverse, "element " + std::to_string(i));
    }

    g.elem_order_.assign(n, 1);
    for (int i = 0; i < n; ++i) {
        int ord = 1;
        elem x = i;
        while (x != 0) {
            x = g.mul(x, i);
            ++ord;
        }
        g.elem_order_[i] = ord;
    }
    return g;
}

group group::validate(const std::vector<std::vector<int>>& table, std::string name) {
    check_table_structure(table);
    const int n = int(table.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int ij = table[i][j];
            for (int m = 0; m < n; ++m)
                if (table[ij][m] != table[i][table[j][m]])
                    throw error(errc::not_associative,
                                "cells (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(m) + ")");
        }
    return trusted(table, std::move(name));
}

elem group::power(elem g, long long e) const {
    const int ord = elem_order_[g];
    long long r = e % ord;
    if (r < 0) r += ord;
    elem acc = 0;
    for (long long i = 0; i < r; ++i) acc = mul(acc, g);
    return acc;
}

elem group::commutator(elem g, elem h) const { return mul(mul(g, h), mul(inv_[g], inv_[h])); }

elem group::conjugate(elem g, elem h) const { return mul(mul(h, g), inv_[h]); }

bool group::is_abelian() const {
    for (int i = 1; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (mul(i, j) != mul(j, i)) return false;
    return true;
}

std::vector<std::vector<int>> group::table_rows() const {
    std::vector<std::vector<int>> rows(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) rows[i][j] = table_[size_t(i) * n_ + j];
    return rows;
}

colored_group colored_group::uncolored(group g) {
    colored_group cg;
    cg.colors.assign(g.order(), 0);
    cg.g = std::move(g);
    return cg;
}

// -- words -------------------------------------------------------------------

word word::parse(const std::string& text) {
    word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || tok[0] != 'x')
            throw error(errc::parse_error, "bad word literal '" + tok + "'");
        size_t caret = tok.find('^');
        int var = 0, exp = 1;
        try {
            var = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            if (caret != std::string::npos) exp = std::stoi(tok.substr(caret + 1));
        } catch (const std::exception&) {
            throw error(errc::parse_error, "bad word literal '" + tok + "'");
        }
        if (var < 1) throw error(errc::parse_error, "variables are 1-based in '" + tok + "'");
        int sign = exp < 0 ? -1 : 1;
        for (int i = 0; i < std::abs(exp); ++i) w.literals.emplace_back(var - 1, sign);
    }
    return w;
}

int word::arity() const {
    int a = 0;
    for (auto& [v, s] : literals) a = std::max(a, v + 1);
    return a;
}

std::string word::str() const {
    std::string out;
    for (auto& [v, s] : literals) {
        if (!out.empty()) out += ' ';
        out += "x" + std::to_string(v + 1);
        if (s < 0) out += "^-1";
    }
    return out;
}

elem eval_word(const group& g, const word& w, std::span<const elem> assignment) {
    elem acc = 0;
    for (auto& [v, s] : w.literals) {
        elem x = assignment[v];
        acc = g.mul(acc, s > 0 ? x : g.inv(x));
    }
    return acc;
}

// -- subgroup machinery ------------------------------------------------------

element_set generated_subgroup(const group& g, const element_set& gens) {
    const int n = g.order();
    element_set s(n);
    s.add(0);
    std::vector<elem> genlist = gens.elements();
    if (genlist.empty()) return s;
    std::vector<elem> queue{0};
    size_t head = 0;
    while (head < queue.size()) {
        elem x = queue[head++];
        for (elem a : genlist) {
            elem y = g.mul(x, a);
            if (!s.contains(y)) {
                s.add(y);
                queue.push_back(y);
            }
        }
    }
    return s;
}

element_set normal_closure(const group& g, const element_set& m) {
    const int n = g.order();
    element_set conj(n);
    for (elem x : m.elements())
        for (int h = 0; h < n; ++h) conj.add(g.conjugate(x, h));
    return generated_subgroup(g, conj);
}

element_set centralizer(const group& g, const element_set& m) {
    const int n = g.order();
    element_set s(n);
    std::vector<elem> mm = m.elements();
    for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (elem y : mm)
            if (g.mul(x, y) != g.mul(y, x)) {
                ok = false;
                break;
            }
        if (ok) s.add(x);
    }
    return s;
}

element_set normalizer(const group& g, const element_set& m) {
    const int n = g.order();
    element_set s(n);
    std::vector<elem> mm = m.elements();
    for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (elem y : mm)
            if (!m.contains(g.conjugate(y, x))) {
                ok = false;
                break;
            }
        if (ok) s.add(x);
    }
    return s;
}

element_set center(const group& g) { return centralizer(g, element_set::all(g.order())); }

bool is_subgroup(const group& g, const element_set& s) {
    if (!s.contains(0)) return false;
    std::vector<elem> mm = s.elements();
    for (elem a : mm)
        for (elem b : mm)
            if (!s.contains(g.mul(a, b))) return false;
    return true;
}

bool is_normal(const group& g, const element_set& s) {
    if (!is_subgroup(g, s)) return false;
    const int n = g.order();
    for (elem a : s.elements())
        for (int h = 0; h < n; ++h)
            if (!s.contains(g.conjugate(a, h))) return false;
    return true;
}

bool is_abelian_subset(const group& g, const element_set& s) {
    std::vector<elem> mm = s.elements();
    for (size_t i = 0; i < mm.size(); ++i)
        for (size_t j = i + 1; j < mm.size(); ++j)
            if (g.mul(mm[i], mm[j]) != g.mul(mm[j], mm[i])) return false;
    return true;
}

std::vector<element_set> conjugacy_classes(const group& g) {
    const int n = g.order();
    std::vector<element_set> classes;
    std::vector<char> done(n, 0);
    for (int x = 0; x < n; ++x) {
        if (done[x]) continue;
        element_set cls(n);
        for (int h = 0; h < n; ++h) {
            elem y = g.conjugate(x, h);
            cls.add(y);
            done[y] = 1;
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

namespace {

struct set_hash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        size_t h = v.size();
        for (uint64_t w : v) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

} // namespace

std::vector<element_set> normal_subgroups(const group& g, size_t cap) {
    const int n = g.order();
    auto classes = conjugacy_classes(g);
    std::vector<element_set> result;
    std::unordered_set<std::vector<uint64_t>, set_hash> seen;

    element_set trivial(n);
    trivial.add(0);
    result.push_back(trivial);
    seen.insert(trivial.words());

    std::vector<element_set> queue{trivial};
    while (!queue.empty()) {
        element_set cur = queue.back();
        queue.pop_back();
        for (const auto& cls : classes) {
            if (cls.is_subset_of(cur)) continue;
            element_set closure = generated_subgroup(g, cur | cls);
            if (seen.insert(closure.words()).second) {
                if (result.size() >= cap)
                    throw error(errc::cap_exceeded, "more than " + std::to_string(cap) + " normal subgroups");
                result.push_back(closure);
                queue.push_back(closure);
            }
        }
    }
    std::sort(result.begin(), result.end(), [](const element_set& a, const element_set& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.lex_less(b);
    });
    return result;
}

std::vector<element_set> all_subgroups(const group& g, size_t cap) {
    const int n = g.order();
    element_set trivial(n);
    trivial.add(0);
    std::vector<element_set> result{trivial};
    std::unordered_set<std::vector<uint64_t>, set_hash> seen{trivial.words()};
    std::vector<element_set> queue{trivial};
    while (!queue.empty()) {
        element_set cur = queue.back();
        queue.pop_back();
        for (int x = 1; x < n; ++x) {
            if (cur.contains(x)) continue;
            element_set ext = cur;
            ext.add(x);
            element_set closure = generated_subgroup(g, ext);
            if (seen.insert(closure.words()).second) {
                if (result.size() >= cap)
                    throw error(errc::cap_exceeded, "more than " + std::to_string(cap) + " subgroups");
                result.push_back(closure);
                queue.push_back(closure);
            }
        }
    }
    std::sort(result.begin(), result.end(), [](const element_set& a, const element_set& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.lex_less(b);
    });
    return result;
}

quotient quotient_group(const group& g, const element_set& nset) {
    if (!is_normal(g, nset)) throw error(errc::not_normal, "quotient by a non-normal subset");
    const int n = g.order();
    const std::vector<elem> members = nset.elements();

    // coset representative = minimal member, identity coset first
    std::vector<int> rep(n, -1);
    for (int x = 0; x < n; ++x) {
        if (rep[x] >= 0) continue;
        int r = n;
        for (elem m : members) r = std::min(r, g.mul(x, m));
        for (elem m : members) rep[g.mul(x, m)] = r;
    }
    std::vector<int> reps;
    for (int x = 0; x < n; ++x)
        if (rep[x] == x) reps.push_back(x);
    std::sort(reps.begin(), reps.end());

    std::vector<int> index_of(n, -1);
    for (size_t i = 0; i < reps.size(); ++i) index_of[reps[i]] = int(i);

    const int m = int(reps.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) table[i][j] = index_of[rep[g.mul(reps[i], reps[j])]];

    quotient q;
    q.grp = group::validate(table, g.name().empty() ? "" : g.name() + "/N");
    q.coset_of.resize(n);
    for (int x = 0; x < n; ++x) q.coset_of[x] = index_of[rep[x]];
    return q;
}

group as_group(const group& g, const element_set& u, std::vector<elem>* relabel) {
    std::vector<elem> members = u.elements();
    if (members.empty() || members[0] != 0)
        throw error(errc::not_closed, "subgroup must contain the identity");
    std::vector<int> index_of(g.order(), -1);
    for (size_t i = 0; i < members.size(); ++i) index_of[members[i]] = int(i);
    const int m = int(members.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            elem prod = g.mul(members[i], members[j]);
            if (index_of[prod] < 0) throw error(errc::not_closed, "set is not closed under products");
            table[i][j] = index_of[prod];
        }
    if (relabel) *relabel = members;
    return group::validate(table);
}

std::vector<int> element_order_histogram(const group& g) {
    std::vector<int> h(g.order() + 1, 0);
    for (int i = 0; i < g.order(); ++i) ++h[g.element_order(i)];
    return h;
}

// -- isomorphism testing -----------------------------------------------------

namespace {

// Canonical transition structure of <tuple>: elements are labeled by BFS
// discovery rank (identity = 0, right multiplication by generators in
// order), the key is the flattened rank transition table. Two tuples have
// equal keys iff mapping generator i to generator i extends to an
// isomorphism of the generated subgroups.
std::vector<int32_t> bfs_transition_key(const group& g, std::span<const elem> tuple,
                                        std::vector<elem>* rank_to_elem) {
    const int n = g.order();
    const int k = int(tuple.size());
    std::vector<int32_t> rank(n, -1);
    std::vector<elem> order;
    order.reserve(n);
    rank[0] = 0;
    order.push_back(0);
    std::vector<int32_t> key;
    key.reserve(16 + size_t(k) * 8);
    for (size_t head = 0; head < order.size(); ++head) {
        elem x = order[head];
        for (int a = 0; a < k; ++a) {
            elem y = g.mul(x, tuple[a]);
            if (rank[y] < 0) {
                rank[y] = int32_t(order.size());
                order.push_back(y);
            }
            key.push_back(rank[y]);
        }
    }
    if (rank_to_elem) *rank_to_elem = order;
    return key;
}

std::vector<elem> greedy_generators(const group& g) {
    const int n = g.order();
    std::vector<elem> gens;
    if (n == 1) return gens;
    // start from an element of maximal order, then extend by the smallest
    // element outside the closure
    int best = 1;
    for (int i = 2; i < n; ++i)
        if (g.element_order(i) > g.element_order(best)) best = i;
    gens.push_back(best);
    element_set closure = generated_subgroup(g, element_set::single(n, best));
    while (closure.size() < n) {
        int next = -1;
        for (int i = 1; i < n; ++i)
            if (!closure.contains(i)) {
                next = i;
                break;
            }
        gens.push_back(next);
        element_set gset(n);
        for (elem x : gens) gset.add(x);
        closure = generated_subgroup(g, gset);
    }
    return gens;
}

std::vector<int> conjugacy_size_profile(const group& g) {
    std::vector<int> sizes;
    for (auto& c : conjugacy_classes(g)) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

} // namespace

iso_result is_isomorphic(const group& g, const group& h, const iso_options& opt) {
    iso_result res;
    if (g.order() != h.order()) return res;
    const int n = g.order();
    if (n == 1) {
        res.isomorphic = true;
        res.mapping = {0};
        return res;
    }
    if (element_order_histogram(g) != element_order_histogram(h)) return res;
    if (conjugacy_size_profile(g) != conjugacy_size_profile(h)) return res;
    if (center(g).size() != center(h).size()) return res;

    const std::vector<elem> gens = greedy_generators(g);
    const int t = int(gens.size());
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(opt.time_budget_seconds));

    std::vector<elem> images(t, -1);
    std::vector<elem> g_rank_order, h_rank_order;

    // precomputed prefix keys for the fixed generator tuple of g
    std::vector<std::vector<int32_t>> g_prefix_keys(t);
    for (int i = 0; i < t; ++i)
        g_prefix_keys[i] =
            bfs_transition_key(g, std::span<const elem>(gens.data(), size_t(i) + 1), &g_rank_order);

    size_t nodes = 0;
    auto backtrack = [&](auto&& self, int depth) -> bool {
        // equal keys at depth t-1 give an ordered isomorphism of the full
        // groups, key length equality forces |<images>| = n
        if (depth == t) return true;
        for (int cand = 0; cand < n; ++cand) {
            if (h.element_order(cand) != g.element_order(gens[depth])) continue;
            if ((++nodes & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline)
                throw error(errc::timeout, "isomorphism search exceeded the time budget");
            images[depth] = cand;
            auto hk = bfs_transition_key(h, std::span<const elem>(images.data(), size_t(depth) + 1),
                                         nullptr);
            if (hk == g_prefix_keys[depth] && self(self, depth + 1)) return true;
        }
        images[depth] = -1;
        return false;
    };

    if (!backtrack(backtrack, 0)) return res;

    // reconstruct the witness from matching BFS rank orders
    bfs_transition_key(g, std::span<const elem>(gens.data(), gens.size()), &g_rank_order);
    bfs_transition_key(h, std::span<const elem>(images.data(), images.size()), &h_rank_order);
    res.isomorphic = true;
    res.mapping.assign(n, -1);
    for (int r = 0; r < n; ++r) res.mapping[g_rank_order[r]] = h_rank_order[r];
    return res;
}

} // namespace gwl
