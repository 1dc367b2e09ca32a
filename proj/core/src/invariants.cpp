#include "gwl/invariants.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "gwl/construct.hpp"
#include "gwl/expressions.hpp"

namespace gwl {

bool is_pi_number(int n, const std::vector<int>& primes) {
    for (int p : primes)
        while (n % p == 0) n /= p;
    return n == 1;
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::string abelian_type(const group& g) {
    const int n = g.order();
    if (n == 1) return "1";
    if (!g.is_abelian()) throw error(errc::internal, "abelian_type on a non-abelian group");

    std::map<int, std::vector<int>> exps_by_prime; // prime -> descending exponent list
    for (int p : prime_divisors(n)) {
        // s_j = #elements of order dividing p^j; the quotients s_j/s_{j-1}
        // count cyclic p-factors of exponent >= j
        std::vector<int> c;
        long long prev = 1;
        for (long long pj = p;; pj *= p) {
            long long s = 0;
            for (int x = 0; x < n; ++x)
                if (pj % g.element_order(x) == 0) ++s;
            if (s == prev) break;
            long long ratio = s / prev;
            int log = 0;
            while (ratio > 1) {
                if (ratio % p != 0) throw error(errc::internal, "non-p-power layer ratio");
                ratio /= p;
                ++log;
            }
            c.push_back(log);
            prev = s;
        }
        std::vector<int> exps;
        for (size_t j = 0; j < c.size(); ++j) {
            int exactly = c[j] - (j + 1 < c.size() ? c[j + 1] : 0);
            for (int r = 0; r < exactly; ++r) exps.push_back(int(j) + 1);
        }
        std::sort(exps.rbegin(), exps.rend());
        exps_by_prime[p] = std::move(exps);
    }

    size_t len = 0;
    for (auto& [p, e] : exps_by_prime) len = std::max(len, e.size());
    std::vector<long long> factors(len, 1);
    for (auto& [p, e] : exps_by_prime)
        for (size_t i = 0; i < e.size(); ++i) {
            long long pw = 1;
            for (int r = 0; r < e[i]; ++r) pw *= p;
            factors[i] *= pw;
        }
    std::sort(factors.begin(), factors.end());
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i)
        out += (i ? "x" : "") + std::string("C") + std::to_string(factors[i]);
    return out;
}

namespace {

// index map of a subgroup relabeling
std::string quotient_abelian_label(const group& g, const element_set& u, const element_set& v) {
    std::vector<elem> relabel;
    group gu = as_group(g, u, &relabel);
    std::vector<int> index_of(g.order(), -1);
    for (size_t i = 0; i < relabel.size(); ++i) index_of[relabel[i]] = int(i);
    element_set vv(gu.order());
    for (elem x : v.elements()) vv.add(index_of[x]);
    return abelian_type(quotient_group(gu, vv).grp);
}

element_set trivial_subgroup(int n) { return element_set::single(n, 0); }

} // namespace

series_report derived_series(const group& g) {
    series_report r;
    element_set cur = element_set::all(g.order());
    r.terms.push_back(cur);
    for (;;) {
        element_set next = commutator_subgroup(g, cur, cur);
        if (next == cur) break;
        r.quotient_labels.push_back(quotient_abelian_label(g, cur, next));
        r.terms.push_back(next);
        cur = next;
    }
    return r;
}

series_report lower_central_series(const group& g) {
    series_report r;
    element_set all = element_set::all(g.order());
    element_set cur = all;
    r.terms.push_back(cur);
    for (;;) {
        element_set next = commutator_subgroup(g, cur, all);
        if (next == cur) break;
        r.quotient_labels.push_back(quotient_abelian_label(g, cur, next));
        r.terms.push_back(next);
        cur = next;
    }
    return r;
}

series_report upper_central_series(const group& g) {
    series_report r;
    r.ascending = true;
    const int n = g.order();
    element_set cur = trivial_subgroup(n);
    r.terms.push_back(cur);
    for (;;) {
        quotient q = quotient_group(g, cur);
        element_set qz = center(q.grp);
        element_set next(n);
        for (int x = 0; x < n; ++x)
            if (qz.contains(q.coset_of[x])) next.add(x);
        if (next == cur) break;
        r.quotient_labels.push_back(quotient_abelian_label(g, next, cur));
        r.terms.push_back(next);
        cur = next;
    }
    return r;
}

std::optional<int> nilpotency_class(const group& g) {
    series_report lc = lower_central_series(g);
    if (lc.terms.back().size() != 1) return std::nullopt;
    return int(lc.terms.size()) - 1;
}

bool is_nilpotent(const group& g) { return nilpotency_class(g).has_value(); }

bool is_solvable_subgroup(const group& g, const element_set& u) {
    element_set cur = u;
    for (;;) {
        element_set next = commutator_subgroup(g, cur, cur);
        if (next == cur) return cur.size() == 1;
        cur = next;
    }
}

bool is_solvable(const group& g) { return is_solvable_subgroup(g, element_set::all(g.order())); }

element_set solvable_radical(const group& g) {
    const int n = g.order();

    struct set_hash {
        size_t operator()(const std::vector<uint64_t>& v) const {
            size_t h = v.size();
            for (uint64_t w : v) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };
    std::unordered_map<std::vector<uint64_t>, bool, set_hash> solvable_memo;

    element_set radical(n);
    for (int x = 0; x < n; ++x) {
        bool in_radical = true;
        for (int y = 0; y < n && in_radical; ++y) {
            element_set gens(n);
            gens.add(x);
            gens.add(y);
            element_set sub = generated_subgroup(g, gens);
            auto [it, inserted] = solvable_memo.try_emplace(sub.words(), false);
            if (inserted) it->second = is_solvable_subgroup(g, sub);
            in_radical = it->second;
        }
        if (in_radical) radical.add(x);
    }

    if (!is_normal(g, radical) || !is_solvable_subgroup(g, radical))
        throw error(errc::internal, "solvable radical failed its own verification");
    return radical;
}

namespace {

bool is_nilpotent_subgroup(const group& g, const element_set& u) {
    element_set cur = u;
    for (;;) {
        element_set next = commutator_subgroup(g, cur, u);
        if (next == cur) return cur.size() == 1;
        cur = next;
    }
}

} // namespace

element_set pi_radical(const group& g, const std::vector<int>& primes) {
    const int n = g.order();
    element_set out(n);
    for (int x = 0; x < n; ++x) {
        if (!is_pi_number(g.element_order(x), primes)) continue;
        element_set closure = normal_closure(g, element_set::single(n, x));
        if (is_pi_number(closure.size(), primes)) out.add(x);
    }
    if (!is_normal(g, out)) throw error(errc::internal, "pi-radical is not normal");
    return out;
}

element_set fitting_subgroup(const group& g) {
    const int n = g.order();
    element_set out(n);
    for (int x = 0; x < n; ++x) {
        element_set closure = normal_closure(g, element_set::single(n, x));
        if (is_nilpotent_subgroup(g, closure)) out.add(x);
    }
    if (!is_normal(g, out)) throw error(errc::internal, "fitting subgroup is not normal");
    return out;
}

element_set abelian_radical_elements(const group& g) {
    const int n = g.order();
    element_set out(n);
    for (int x = 0; x < n; ++x) {
        element_set closure = normal_closure(g, element_set::single(n, x));
        if (is_abelian_subset(g, closure)) out.add(x);
    }
    return out;
}

std::vector<element_set> max_normal_abelian(const group& g) {
    std::vector<element_set> abelian;
    for (const auto& s : normal_subgroups(g))
        if (is_abelian_subset(g, s)) abelian.push_back(s);
    std::vector<element_set> maximal;
    for (const auto& a : abelian) {
        bool dominated = false;
        for (const auto& b : abelian)
            if (!(a == b) && a.is_subset_of(b)) dominated = true;
        if (!dominated) maximal.push_back(a);
    }
    return maximal;
}

std::vector<element_set> maximal_pi_subgroups(const group& g, const std::vector<int>& primes,
                                              size_t cap) {
    const int n = g.order();

    struct set_hash {
        size_t operator()(const std::vector<uint64_t>& v) const {
            size_t h = v.size();
            for (uint64_t w : v) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    std::vector<elem> pi_elements;
    for (int x = 0; x < n; ++x)
        if (is_pi_number(g.element_order(x), primes)) pi_elements.push_back(x);

    element_set triv = trivial_subgroup(n);
    std::vector<element_set> all_pi{triv};
    std::unordered_map<std::vector<uint64_t>, char, set_hash> seen;
    seen.emplace(triv.words(), 1);
    std::vector<element_set> queue{triv};
    while (!queue.empty()) {
        element_set cur = queue.back();
        queue.pop_back();
        for (elem x : pi_elements) {
            if (cur.contains(x)) continue;
            element_set ext = cur;
            ext.add(x);
            element_set closure = generated_subgroup(g, ext);
            auto [it, inserted] = seen.try_emplace(closure.words(), 0);
            if (!inserted) continue;
            if (seen.size() > cap)
                throw error(errc::cap_exceeded, "pi-subgroup enumeration exceeded the cap");
            if (!is_pi_number(closure.size(), primes)) continue;
            it->second = 1;
            all_pi.push_back(closure);
            queue.push_back(closure);
        }
    }

    std::vector<element_set> maximal;
    for (const auto& a : all_pi) {
        bool dominated = false;
        for (const auto& b : all_pi)
            if (!(a == b) && a.is_subset_of(b)) dominated = true;
        if (!dominated) maximal.push_back(a);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const element_set& a, const element_set& b) { return a.lex_less(b); });
    return maximal;
}

element_set max_pi_intersection(const group& g, const std::vector<int>& primes, elem x) {
    if (!is_pi_number(g.element_order(x), primes))
        throw error(errc::internal, "max_pi_intersection requires a pi-element");
    element_set out = element_set::all(g.order());
    bool found = false;
    for (const auto& p : maximal_pi_subgroups(g, primes))
        if (p.contains(x)) {
            out &= p;
            found = true;
        }
    if (!found) throw error(errc::internal, "pi-element missing from every maximal pi-subgroup");
    return out;
}

std::vector<element_set> minimal_normal_subgroups(const group& g) {
    auto normals = normal_subgroups(g);
    std::vector<element_set> minimal;
    for (const auto& a : normals) {
        if (a.size() == 1) continue;
        bool has_smaller = false;
        for (const auto& b : normals)
            if (b.size() > 1 && !(b == a) && b.is_subset_of(a)) has_smaller = true;
        if (!has_smaller) minimal.push_back(a);
    }
    return minimal;
}

element_set socle(const group& g) {
    element_set gens(g.order());
    gens.add(0);
    for (const auto& m : minimal_normal_subgroups(g)) gens |= m;
    return generated_subgroup(g, gens);
}

std::string simple_label(const group& g) {
    const int n = g.order();
    auto divisors = prime_divisors(n);
    if (divisors.size() == 1 && n == divisors[0]) return "C" + std::to_string(n);
    if (n == 60) {
        // check against the alternating group of degree 5
        static const group a5 = [] {
            group s5 = make_symmetric(5);
            element_set all = element_set::all(120);
            return as_group(s5, commutator_subgroup(s5, all, all));
        }();
        if (is_isomorphic(g, a5).isomorphic) return "A5";
    }
    auto hist = element_order_histogram(g);
    std::string spec;
    for (size_t o = 1; o < hist.size(); ++o)
        if (hist[o]) spec += std::to_string(o) + "^" + std::to_string(hist[o]) + ",";
    if (!spec.empty()) spec.pop_back();
    return "simple(o=" + std::to_string(n) + ";spec=" + spec + ")";
}

std::vector<std::string> composition_report::sorted_factors() const {
    std::vector<std::string> s = factors;
    std::sort(s.begin(), s.end());
    return s;
}

composition_report composition_factors(const group& g, jh_choice choice) {
    composition_report report;
    report.series.push_back(element_set::all(g.order()));

    // recursion state: the current term as a standalone group plus the map
    // back into g's element indices
    group cur = g;
    std::vector<elem> embed(g.order());
    for (int i = 0; i < g.order(); ++i) embed[i] = i;

    while (cur.order() > 1) {
        auto normals = normal_subgroups(cur);
        std::vector<element_set> maximal;
        for (const auto& a : normals) {
            if (a.size() == cur.order()) continue;
            bool covered = false;
            for (const auto& b : normals)
                if (b.size() < size_t(cur.order()) && a.is_subset_of(b) && !(a == b)) covered = true;
            if (!covered) maximal.push_back(a);
        }
        element_set pick = maximal.front();
        for (const auto& m : maximal) {
            if (choice == jh_choice::largest_first) {
                if (m.size() > pick.size() || (m.size() == pick.size() && m.lex_less(pick))) pick = m;
            } else {
                if (m.size() < pick.size() || (m.size() == pick.size() && pick.lex_less(m))) pick = m;
            }
        }

        quotient q = quotient_group(cur, pick);
        if (normal_subgroups(q.grp).size() != 2 && q.grp.order() > 1)
            throw error(errc::internal, "quotient by a maximal normal subgroup is not simple");
        report.factors.push_back(simple_label(q.grp));

        std::vector<elem> relabel;
        group next = as_group(cur, pick, &relabel);
        std::vector<elem> next_embed(next.order());
        for (int i = 0; i < next.order(); ++i) next_embed[i] = embed[relabel[i]];
        element_set term(g.order());
        for (elem x : next_embed) term.add(x);
        report.series.push_back(term);
        cur = std::move(next);
        embed = std::move(next_embed);
    }
    return report;
}

special_flags classify_special(const group& g) {
    special_flags flags;
    const int n = g.order();
    if (n == 1) return flags;

    auto normals = normal_subgroups(g);
    flags.simple = normals.size() == 2;

    auto minimal = minimal_normal_subgroups(g);
    element_set soc = socle(g);

    // greedy internal direct product of minimal normal subgroups
    element_set u = trivial_subgroup(n);
    std::vector<element_set> chosen;
    bool extended = true;
    while (extended) {
        extended = false;
        for (const auto& m : minimal) {
            element_set inter = m & u;
            if (inter.size() != 1) continue;
            chosen.push_back(m);
            u = generated_subgroup(g, u | m);
            extended = true;
            break;
        }
    }

    if (u == element_set::all(n)) {
        bool all_simple = true;
        std::vector<group> factor_groups;
        for (const auto& m : chosen) {
            group fg = as_group(g, m);
            if (normal_subgroups(fg).size() != 2) all_simple = false;
            factor_groups.push_back(std::move(fg));
        }
        if (all_simple) {
            flags.product_of_simples = true;
            flags.simple_factors = chosen;
            bool all_iso = true;
            for (size_t i = 1; i < factor_groups.size(); ++i)
                if (!is_isomorphic(factor_groups[0], factor_groups[i]).isomorphic) all_iso = false;
            flags.characteristically_simple = all_iso;
        }
    }

    if (minimal.size() == 1) {
        const element_set& m = minimal.front();
        group mg = as_group(g, m);
        bool m_simple = normal_subgroups(mg).size() == 2;
        bool m_nonabelian = !mg.is_abelian();
        if (m_simple && m_nonabelian && centralizer(g, m).size() == 1)
            flags.almost_simple_candidate = true;
    }
    return flags;
}

} // namespace gwl
