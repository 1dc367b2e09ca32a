#include "gwl/wl.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "tuple_bfs.hpp"

namespace gwl {

const char* wl_version_name(wl_version v) { return v == wl_version::I ? "I" : "II"; }

wl_version parse_wl_version(const std::string& s) {
    if (s == "I" || s == "i" || s == "1") return wl_version::I;
    if (s == "II" || s == "ii" || s == "2") return wl_version::II;
    throw error(errc::parse_error, "unknown WL version '" + s + "'");
}

// -- tuple indexing -----------------------------------------------------------

tuple_indexer::tuple_indexer(int n_, int k_) : n(n_), k(k_) {
    size = 1;
    for (int i = 0; i < k; ++i) {
        if (size > (uint64_t(1) << 62) / uint64_t(n)) throw error(errc::budget, "n^k overflows");
        size *= uint64_t(n);
    }
}

uint64_t tuple_indexer::index(std::span<const elem> tuple) const {
    uint64_t idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * n + uint64_t(tuple[i]);
    return idx;
}

void tuple_indexer::decode(uint64_t idx, std::span<elem> out) const {
    for (int i = k - 1; i >= 0; --i) {
        out[i] = elem(idx % n);
        idx /= n;
    }
}

// -- hashing ------------------------------------------------------------------

namespace {

inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

struct h128 {
    uint64_t lo = 0;
    uint64_t hi = 0;

    friend bool operator==(const h128&, const h128&) = default;
};

struct h128_hasher {
    size_t operator()(const h128& h) const { return size_t(h.lo ^ (h.hi * 0x9E3779B97F4A7C15ULL)); }
};

struct hash_stream {
    uint64_t a, b;

    explicit hash_stream(uint64_t seed)
        : a(mix64(seed ^ 0x243F6A8885A308D3ULL)), b(mix64(seed ^ 0x13198A2E03707344ULL)) {}

    void mix(uint64_t v) {
        a = mix64(a ^ (v * 0x9E3779B97F4A7C15ULL));
        b = mix64(b + v + 0xC2B2AE3D27D4EB4FULL);
    }

    h128 digest(uint64_t length) {
        mix(length);
        return {mix64(a + b), mix64(b ^ (a >> 7))};
    }
};

h128 hash_words(const uint64_t* data, size_t len, uint64_t seed) {
    hash_stream s(seed);
    for (size_t i = 0; i < len; ++i) s.mix(data[i]);
    return s.digest(len);
}

// -- threading ----------------------------------------------------------------

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

template <class Fn>
void parallel_chunks(uint64_t total, int threads, Fn&& fn) {
    if (total == 0) return;
    if (threads <= 1 || total < 4096) {
        fn(uint64_t(0), total, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    const uint64_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        uint64_t lo = std::min(total, uint64_t(t) * chunk);
        uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, t]() {
            try {
                fn(lo, hi, t);
            } catch (...) {
                std::scoped_lock lk(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

// -- initial keys ---------------------------------------------------------------

namespace keys {

std::vector<int32_t> initial_key(const group& g, const std::vector<int>& colors,
                                 std::span<const elem> tuple, wl_version version) {
    const int k = int(tuple.size());
    std::vector<int32_t> key;
    if (version == wl_version::I) {
        key.reserve(size_t(k) * (k + 2));
        for (int i = 0; i < k; ++i) key.push_back(colors[tuple[i]]);
        for (int i = 0; i < k; ++i) {
            int first = i;
            for (int j = 0; j < i; ++j)
                if (tuple[j] == tuple[i]) {
                    first = j;
                    break;
                }
            key.push_back(first);
        }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                elem prod = g.mul(tuple[i], tuple[j]);
                int code = k; // sentinel: product not on the tuple
                for (int m = 0; m < k; ++m)
                    if (tuple[m] == prod) {
                        code = m;
                        break;
                    }
                key.push_back(code);
            }
        return key;
    }
    std::vector<elem> rank_order;
    std::vector<int32_t> rank_scratch;
    detail::bfs_transition_key(g, tuple, key, rank_order, rank_scratch);
    for (elem x : rank_order) key.push_back(colors[x]);
    return key;
}

} // namespace keys

// -- refinement engine ----------------------------------------------------------

namespace {

using u128 = unsigned __int128;

struct universe_ref {
    const group* g;
    const std::vector<int>* input_colors;
};

struct bfs_buffers {
    std::vector<int32_t> key;
    std::vector<elem> rank_order;
    std::vector<int32_t> rank_scratch;
};

/// Shared-dictionary refinement over one or two equally-sized tuple
/// universes. Signatures are hashed (128 bit) and every tuple is verified
/// against its class representative by exact key comparison; a verified
/// hash collision restarts the pass with a fresh seed.
class wl_engine {
public:
    wl_engine(std::vector<universe_ref> universes, int k, wl_version version, wl_options opt)
        : us_(std::move(universes)), k_(k), version_(version), opt_(opt) {
        if (k < 2) throw error(errc::dimension_too_small, "k must be at least 2");
        if (k > 8) throw error(errc::budget, "k beyond the supported range");
        n_ = us_[0].g->order();
        for (auto& u : us_)
            if (u.g->order() != n_) throw error(errc::internal, "joint run requires equal orders");
        indexer_ = tuple_indexer(n_, k_);
        if (indexer_.size > opt_.max_tuple_cells)
            throw error(errc::budget, "n^k = " + std::to_string(indexer_.size) +
                                          " exceeds the tuple budget");
        per_ = indexer_.size;
        total_ = per_ * us_.size();
        threads_ = resolve_threads(opt_.threads);
        strides_.resize(k_);
        strides_[k_ - 1] = 1;
        for (int i = k_ - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * n_;
        colors_.assign(total_, 0);
    }

    uint32_t run_initial() {
        std::vector<bfs_buffers> scratch(threads_);
        class_count_ = intern_pass([&](uint64_t idx, int tid, std::vector<uint64_t>& out) {
            initial_key_words(idx, scratch[tid], out);
        });
        return class_count_;
    }

    // one refinement round; updates colors when the partition got finer
    uint32_t run_round() {
        const uint32_t width = std::max(uint32_t(1), uint32_t(std::bit_width(
                                                         std::max(class_count_, uint32_t(1)) - 1)));
        if (width * uint32_t(k_) > 120)
            throw error(errc::budget, "color space too wide for packed signatures");
        std::vector<std::vector<u128>> scratch(threads_, std::vector<u128>(n_));
        uint32_t fresh = intern_pass([&](uint64_t idx, int tid, std::vector<uint64_t>& out) {
            round_key_words(idx, width, scratch[tid], out);
        });
        class_count_ = fresh;
        return fresh;
    }

    void seed_colors(const std::vector<uint32_t>& dense, uint32_t count) {
        if (dense.size() != total_) throw error(errc::internal, "seed coloring has wrong size");
        colors_ = dense;
        class_count_ = count;
    }

    uint32_t class_count() const { return class_count_; }
    const std::vector<uint32_t>& colors() const { return colors_; }
    uint64_t per_universe() const { return per_; }
    size_t universes() const { return us_.size(); }

    // multiset of current colors per universe; equal multisets compare equal
    bool universes_match() const {
        std::vector<uint32_t> count_a(class_count_, 0), count_b(class_count_, 0);
        for (uint64_t i = 0; i < per_; ++i) ++count_a[colors_[i]];
        for (uint64_t i = 0; i < per_; ++i) ++count_b[colors_[per_ + i]];
        return count_a == count_b;
    }

private:
    // signature of the current round for one tuple: (old color, sorted
    // multiset over x in the own group of packed substitution colors)
    void round_key_words(uint64_t idx, uint32_t width, std::vector<u128>& codes,
                         std::vector<uint64_t>& out) const {
        const uint64_t local = idx % per_;
        const uint64_t base = idx - local;
        const group& g = *us_[idx / per_].g;

        uint64_t bases[8];
        uint64_t rem = local;
        for (int j = 0; j < k_; ++j) {
            const uint64_t coord = rem / strides_[j];
            rem -= coord * strides_[j];
            bases[j] = local - coord * strides_[j];
        }
        for (int x = 0; x < n_; ++x) {
            u128 code = 0;
            const uint64_t xs = uint64_t(x);
            for (int j = 0; j < k_; ++j)
                code = (code << width) | u128(colors_[base + bases[j] + xs * strides_[j]]);
            codes[x] = code;
        }
        std::sort(codes.begin(), codes.end());
        out.clear();
        out.push_back(colors_[idx]);
        for (int x = 0; x < n_; ++x) {
            out.push_back(uint64_t(codes[x] >> 64));
            out.push_back(uint64_t(codes[x]));
        }
    }

    void initial_key_words(uint64_t idx, bfs_buffers& buf, std::vector<uint64_t>& out) const {
        const universe_ref& u = us_[idx / per_];
        const group& g = *u.g;
        const std::vector<int>& gamma = *u.input_colors;
        elem tuple[8];
        indexer_.decode(idx % per_, std::span<elem>(tuple, size_t(k_)));
        out.clear();
        if (version_ == wl_version::I) {
            for (int i = 0; i < k_; ++i) out.push_back(uint64_t(uint32_t(gamma[tuple[i]])));
            for (int i = 0; i < k_; ++i) {
                int first = i;
                for (int j = 0; j < i; ++j)
                    if (tuple[j] == tuple[i]) {
                        first = j;
                        break;
                    }
                out.push_back(uint64_t(first));
            }
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) {
                    const elem prod = g.mul(tuple[i], tuple[j]);
                    int code = k_;
                    for (int m = 0; m < k_; ++m)
                        if (tuple[m] == prod) {
                            code = m;
                            break;
                        }
                    out.push_back(uint64_t(code));
                }
            return;
        }
        detail::bfs_transition_key(g, std::span<const elem>(tuple, size_t(k_)), buf.key,
                                   buf.rank_order, buf.rank_scratch);
        for (int32_t w : buf.key) out.push_back(uint64_t(uint32_t(w)));
        for (elem x : buf.rank_order) out.push_back(uint64_t(uint32_t(gamma[x])));
    }

    // KeyFn: void(uint64_t idx, int tid, std::vector<uint64_t>& out)
    template <class KeyFn>
    uint32_t intern_pass(KeyFn&& key_of) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 4) throw error(errc::internal, "persistent hash collisions");
            const uint64_t seed = seed_base_ + uint64_t(attempt) * 0x9E3779B97F4A7C15ULL;

            std::vector<h128> hashes(total_);
            std::vector<std::vector<uint64_t>> keybuf(threads_);
            parallel_chunks(total_, threads_, [&](uint64_t lo, uint64_t hi, int tid) {
                auto& buf = keybuf[tid];
                for (uint64_t i = lo; i < hi; ++i) {
                    key_of(i, tid, buf);
                    hashes[i] = hash_words(buf.data(), buf.size(), seed);
                }
            });

            // first-occurrence interning: class ids follow tuple scan order
            std::unordered_map<h128, uint32_t, h128_hasher> ids;
            ids.reserve(size_t(std::min<uint64_t>(total_, 1 << 20)));
            std::vector<uint64_t> rep;     // class id -> representative tuple
            std::vector<uint32_t> members; // class id -> member count
            std::vector<uint32_t> next(total_ ? total_ : 1);
            for (uint64_t i = 0; i < total_; ++i) {
                auto [it, inserted] = ids.try_emplace(hashes[i], uint32_t(rep.size()));
                if (inserted) {
                    rep.push_back(i);
                    members.push_back(1);
                } else {
                    ++members[it->second];
                }
                next[i] = it->second;
            }

            // exact verification against the class representative
            std::atomic<bool> collision{false};
            parallel_chunks(total_, threads_, [&](uint64_t lo, uint64_t hi, int tid) {
                std::vector<uint64_t> mine, theirs;
                for (uint64_t i = lo; i < hi; ++i) {
                    const uint64_t r = rep[next[i]];
                    if (r == i || members[next[i]] == 1) continue;
                    key_of(i, tid, mine);
                    key_of(r, tid, theirs);
                    if (mine != theirs) {
                        collision.store(true, std::memory_order_relaxed);
                        return;
                    }
                }
            });
            if (collision.load()) continue; // deterministic retry with the next seed

            for (uint64_t i = 0; i < total_; ++i) colors_[i] = next[i];
            return uint32_t(rep.size());
        }
    }

    std::vector<universe_ref> us_;
    int k_;
    wl_version version_;
    wl_options opt_;
    int n_ = 0;
    tuple_indexer indexer_;
    uint64_t per_ = 0;
    uint64_t total_ = 0;
    int threads_ = 1;
    std::vector<uint64_t> strides_;
    std::vector<uint32_t> colors_;
    uint32_t class_count_ = 0;
    uint64_t seed_base_ = 0x5851F42D4C957F2DULL;
};

coloring make_coloring(int k, wl_version v, int n, std::vector<uint32_t> colors, int rounds,
                       uint32_t class_count, std::vector<uint32_t> per_round) {
    coloring c;
    c.k = k;
    c.version = v;
    c.n = n;
    c.colors = std::move(colors);
    c.rounds = rounds;
    c.class_count = class_count;
    c.class_counts_per_round = std::move(per_round);
    return c;
}

} // namespace

// -- public API -------------------------------------------------------------------

coloring initial_coloring(const colored_group& cg, int k, wl_version version, const wl_options& opt) {
    wl_engine eng({{&cg.g, &cg.colors}}, k, version, opt);
    uint32_t c = eng.run_initial();
    return make_coloring(k, version, cg.g.order(), eng.colors(), 0, c, {c});
}

coloring refine_to_stable(const colored_group& cg, coloring initial, const wl_options& opt) {
    wl_engine eng({{&cg.g, &cg.colors}}, initial.k, initial.version, opt);
    // seed the engine with a defensive re-densification of the input
    std::vector<uint32_t> dense(initial.colors.size());
    {
        std::unordered_map<uint32_t, uint32_t> remap;
        for (size_t i = 0; i < initial.colors.size(); ++i) {
            auto [it, inserted] = remap.try_emplace(initial.colors[i], uint32_t(remap.size()));
            dense[i] = it->second;
        }
        eng.seed_colors(dense, uint32_t(remap.size()));
    }
    std::vector<uint32_t> per_round{eng.class_count()};
    int rounds = 0;
    for (;;) {
        uint32_t before = eng.class_count();
        uint32_t after = eng.run_round();
        if (after == before) break;
        per_round.push_back(after);
        ++rounds;
    }
    coloring out = make_coloring(initial.k, initial.version, cg.g.order(), eng.colors(), rounds,
                                 eng.class_count(), std::move(per_round));
    return out;
}

coloring stable_coloring(const colored_group& cg, int k, wl_version version, const wl_options& opt) {
    return refine_to_stable(cg, initial_coloring(cg, k, version, opt), opt);
}

joint_result joint_compare(const colored_group& g, const colored_group& h, int k, wl_version version,
                           const wl_options& opt) {
    joint_result r;
    if (g.g.order() != h.g.order()) {
        r.equivalent = false;
        r.first_distinguishing_round = 0;
        return r;
    }
    wl_engine eng({{&g.g, &g.colors}, {&h.g, &h.colors}}, k, version, opt);
    std::vector<uint32_t> per_round;
    eng.run_initial();
    per_round.push_back(eng.class_count());
    int first_diff = eng.universes_match() ? -1 : 0;
    int rounds = 0;
    while (!(opt.stop_when_distinguished && first_diff >= 0)) {
        uint32_t before = eng.class_count();
        uint32_t after = eng.run_round();
        if (after == before) break;
        per_round.push_back(after);
        ++rounds;
        if (first_diff < 0 && !eng.universes_match()) first_diff = rounds;
    }
    const uint64_t per = eng.per_universe();
    std::vector<uint32_t> left(eng.colors().begin(), eng.colors().begin() + long(per));
    std::vector<uint32_t> right(eng.colors().begin() + long(per), eng.colors().end());
    r.left = make_coloring(k, version, g.g.order(), std::move(left), rounds, eng.class_count(),
                           per_round);
    r.right = make_coloring(k, version, h.g.order(), std::move(right), rounds, eng.class_count(),
                            std::move(per_round));
    r.rounds = rounds;
    r.class_count = eng.class_count();
    r.first_distinguishing_round = first_diff;
    r.equivalent = first_diff < 0;
    return r;
}

// -- induced colorings ----------------------------------------------------------

namespace {

std::vector<uint32_t> slice_induced(const coloring& c, int m) {
    if (m < 1 || m > c.k) throw error(errc::dimension_too_small, "induced dimension out of range");
    uint64_t stride = 1;
    for (int i = 0; i < c.k - m; ++i) stride *= uint64_t(c.n);
    uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= uint64_t(c.n);
    std::vector<uint32_t> out(count);
    for (uint64_t j = 0; j < count; ++j) out[j] = c.colors[j * stride];
    return out;
}

void densify(std::vector<uint32_t>& a) {
    std::unordered_map<uint32_t, uint32_t> remap;
    for (auto& v : a) {
        auto [it, inserted] = remap.try_emplace(v, uint32_t(remap.size()));
        v = it->second;
    }
}

void densify_pair(std::vector<uint32_t>& a, std::vector<uint32_t>& b) {
    std::unordered_map<uint32_t, uint32_t> remap;
    for (auto* vec : {&a, &b})
        for (auto& v : *vec) {
            auto [it, inserted] = remap.try_emplace(v, uint32_t(remap.size()));
            v = it->second;
        }
}

} // namespace

std::vector<uint32_t> induced_coloring(const coloring& c, int m) {
    auto out = slice_induced(c, m);
    densify(out);
    return out;
}

std::vector<uint32_t> element_coloring(const coloring& c) { return induced_coloring(c, 1); }

std::pair<std::vector<uint32_t>, std::vector<uint32_t>> joint_induced_coloring(const joint_result& r,
                                                                               int m) {
    auto a = slice_induced(r.left, m);
    auto b = slice_induced(r.right, m);
    densify_pair(a, b);
    return {std::move(a), std::move(b)};
}

std::pair<std::vector<uint32_t>, std::vector<uint32_t>> joint_element_coloring(const joint_result& r) {
    return joint_induced_coloring(r, 1);
}

// -- quotient colorings -----------------------------------------------------------

namespace {

colored_group quotient_colored_with(const colored_group& cg, const element_set& n,
                                    std::map<std::vector<int>, int>& dict) {
    quotient q = quotient_group(cg.g, n);
    const int m = q.grp.order();
    std::vector<std::vector<int>> multisets(m);
    for (int x = 0; x < cg.g.order(); ++x) multisets[q.coset_of[x]].push_back(cg.colors[x]);
    colored_group out;
    out.colors.assign(m, 0);
    for (int c = 0; c < m; ++c) {
        std::sort(multisets[c].begin(), multisets[c].end());
        auto [it, inserted] = dict.try_emplace(multisets[c], int(dict.size()));
        out.colors[c] = it->second;
    }
    out.g = std::move(q.grp);
    return out;
}

} // namespace

colored_group quotient_coloring(const colored_group& cg, const element_set& n) {
    std::map<std::vector<int>, int> dict;
    return quotient_colored_with(cg, n, dict);
}

std::pair<colored_group, colored_group> quotient_coloring_pair(const colored_group& cg,
                                                               const element_set& ng,
                                                               const colored_group& ch,
                                                               const element_set& nh) {
    std::map<std::vector<int>, int> dict;
    colored_group a = quotient_colored_with(cg, ng, dict);
    colored_group b = quotient_colored_with(ch, nh, dict);
    return {std::move(a), std::move(b)};
}

// -- detectability ------------------------------------------------------------------

bool is_detected(const std::vector<uint32_t>& colors_g, const element_set& sg,
                 const std::vector<uint32_t>& colors_h, const element_set& sh) {
    // bits: 1 in S(G), 2 in G\S(G), 4 in S(H), 8 in H\S(H)
    std::unordered_map<uint32_t, char> role;
    for (size_t x = 0; x < colors_g.size(); ++x)
        role[colors_g[x]] |= sg.contains(int(x)) ? 1 : 2;
    for (size_t y = 0; y < colors_h.size(); ++y)
        role[colors_h[y]] |= sh.contains(int(y)) ? 4 : 8;
    for (auto& [color, bits] : role)
        if (((bits & 1) && (bits & 8)) || ((bits & 4) && (bits & 2))) return false;
    return true;
}

bool is_detected_single(const std::vector<uint32_t>& colors, const element_set& s) {
    return is_detected(colors, s, colors, s);
}

} // namespace gwl
