#include "gwl/products.hpp"

#include <algorithm>
#include <numeric>

#include "gwl/expressions.hpp"
#include "gwl/invariants.hpp"

namespace gwl {

namespace {

element_set central_product_set(const group& g, const element_set& a, const element_set& b) {
    element_set out(g.order());
    for (elem x : a.elements())
        for (elem y : b.elements()) out.add(g.mul(x, y));
    return out;
}

} // namespace

bool splits_abelian(const group& a, elem x) {
    if (!a.is_abelian()) throw error(errc::abelian_input, "splits_abelian requires an abelian group");
    if (x == 0) return true;
    for (int p : prime_divisors(a.element_order(x))) {
        // project to the p-part
        int ord = a.element_order(x);
        long long ppart = 1;
        while (ord % p == 0) {
            ord /= p;
            ppart *= p;
        }
        elem xp = a.power(x, a.element_order(x) / ppart);
        // scan the Sylow p-subgroup for an order-lowering p-th power shift
        bool splits_p = true;
        for (int y = 0; y < a.order() && splits_p; ++y) {
            if (!is_pi_number(a.element_order(y), {p})) continue;
            elem shifted = a.mul(xp, a.power(y, p));
            if (a.element_order(shifted) < a.element_order(xp)) splits_p = false;
        }
        if (!splits_p) return false;
    }
    return true;
}

bool splits_general(const group& g, elem z) {
    if (z == 0) return true;
    if (!center(g).contains(z)) return false;
    element_set all = element_set::all(g.order());
    element_set derived = commutator_subgroup(g, all, all);
    element_set cyclic = generated_subgroup(g, element_set::single(g.order(), z));
    if ((cyclic & derived).size() != 1) return false;
    quotient q = quotient_group(g, derived);
    return splits_abelian(q.grp, q.coset_of[z]);
}

element_set splitting_elements(const group& g) {
    element_set out(g.order());
    for (elem z : center(g).elements())
        if (splits_general(g, z)) out.add(z);
    return out;
}

noncommuting_graph make_noncommuting_graph(const group& g) {
    const int n = g.order();
    noncommuting_graph graph;
    graph.n = n;
    graph.adj.assign(n, element_set(n));
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (g.mul(x, y) != g.mul(y, x)) {
                graph.adj[x].add(y);
                graph.adj[y].add(x);
            }
    return graph;
}

std::vector<int> components_on(const noncommuting_graph& graph, const element_set& s) {
    std::vector<int> label(graph.n, -1);
    int next = 0;
    for (int start = 0; start < graph.n; ++start) {
        if (!s.contains(start) || label[start] >= 0) continue;
        std::vector<int> stack{start};
        label[start] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (elem y : (graph.adj[x] & s).elements())
                if (label[y] < 0) {
                    label[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return label;
}

component_decomposition nonabelian_components(const group& g) {
    if (g.is_abelian()) throw error(errc::abelian_input, "the group has no non-abelian components");
    const int n = g.order();
    element_set z = center(g);

    std::vector<int> centralizer_order(n);
    for (int x = 0; x < n; ++x) centralizer_order[x] = centralizer(g, element_set::single(n, x)).size();

    component_decomposition d;
    d.m = element_set(n);
    element_set span = generated_subgroup(g, d.m); // = {1}
    while (span != element_set::all(n)) {
        int best = 0;
        for (int x = 0; x < n; ++x) {
            if (span.contains(x) || z.contains(x)) continue;
            best = std::max(best, centralizer_order[x]);
        }
        if (best == 0) throw error(errc::internal, "stalled before generating the group");
        for (int x = 0; x < n; ++x)
            if (!span.contains(x) && !z.contains(x) && centralizer_order[x] == best) d.m.add(x);
        d.trace.push_back(d.m);
        span = generated_subgroup(g, d.m);
    }

    noncommuting_graph graph = make_noncommuting_graph(g);
    std::vector<int> label = components_on(graph, d.m);
    int count = 0;
    for (int x = 0; x < n; ++x) count = std::max(count, label[x] + 1);
    d.components.assign(count, element_set(n));
    for (int x = 0; x < n; ++x)
        if (label[x] >= 0) d.components[label[x]].add(x);
    for (const auto& k : d.components) d.subgroups.push_back(generated_subgroup(g, k));
    return d;
}

std::pair<element_set, element_set> cx_nx(const group& g, const component_decomposition& d, elem x) {
    element_set z = center(g);
    element_set cx = z, nx = z;
    for (const auto& ni : d.subgroups) {
        bool commutes = true;
        for (elem y : ni.elements())
            if (g.mul(x, y) != g.mul(y, x)) {
                commutes = false;
                break;
            }
        if (commutes)
            cx = central_product_set(g, cx, ni);
        else
            nx = central_product_set(g, nx, ni);
    }
    return {cx, nx};
}

namespace {

// complementary normal pair inside the subgroup "scope" of g, mapped to
// parent indices; returns factor pair or empty
struct split_candidate {
    element_set left, right;
    bool found = false;
};

split_candidate find_split(const group& sub) {
    const int m = sub.order();
    auto normals = normal_subgroups(sub);
    split_candidate best;
    for (const auto& a : normals) {
        if (a.size() == 1 || a.size() == size_t(m)) continue;
        for (const auto& b : normals) {
            if (b.size() == 1 || b.size() == size_t(m)) continue;
            if (int(a.size()) > int(b.size())) continue;
            if (int64_t(a.size()) * b.size() != m) continue;
            if ((a & b).size() != 1) continue;
            if (!best.found || a.size() > best.left.size() ||
                (a.size() == best.left.size() &&
                 (a.lex_less(best.left) ||
                  (a == best.left && b.lex_less(best.right))))) {
                best.left = a;
                best.right = b;
                best.found = true;
            }
        }
    }
    return best;
}

void factorize_rec(const group& g, const group& sub, const std::vector<elem>& embed,
                   factor_search order, std::vector<element_set>& out) {
    split_candidate s = find_split(sub);
    if (!s.found) {
        element_set factor(g.order());
        for (elem x : embed) factor.add(x);
        out.push_back(factor);
        return;
    }
    element_set first = s.left, second = s.right;
    if (order == factor_search::alternate) std::swap(first, second);
    for (const element_set* part : {&first, &second}) {
        std::vector<elem> relabel;
        group pg = as_group(sub, *part, &relabel);
        std::vector<elem> pembed(pg.order());
        for (int i = 0; i < pg.order(); ++i) pembed[i] = embed[relabel[i]];
        factorize_rec(g, pg, pembed, order, out);
    }
}

} // namespace

direct_decomposition direct_factorization(const group& g, factor_search order) {
    direct_decomposition dec;
    std::vector<elem> embed(g.order());
    std::iota(embed.begin(), embed.end(), 0);
    factorize_rec(g, g, embed, order, dec.factors);
    std::sort(dec.factors.begin(), dec.factors.end(), [](const element_set& a, const element_set& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.lex_less(b);
    });

    dec.maximal_abelian_factor = element_set::single(g.order(), 0);
    dec.nonabelian_part = element_set::single(g.order(), 0);
    for (const auto& f : dec.factors) {
        dec.indecomposable.push_back(1);
        bool ab = is_abelian_subset(g, f);
        dec.abelian.push_back(ab ? 1 : 0);
        if (ab)
            dec.maximal_abelian_factor = central_product_set(g, dec.maximal_abelian_factor, f);
        else
            dec.nonabelian_part = generated_subgroup(g, dec.nonabelian_part | f);
    }
    return dec;
}

std::vector<int> component_owner(const group& g, const component_decomposition& d,
                                 const direct_decomposition& ref) {
    element_set z = center(g);
    std::vector<element_set> factor_z;
    for (const auto& f : ref.factors) factor_z.push_back(central_product_set(g, f, z));

    std::vector<int> owner(d.subgroups.size(), -1);
    for (size_t i = 0; i < d.subgroups.size(); ++i) {
        for (size_t j = 0; j < factor_z.size(); ++j) {
            if (!d.subgroups[i].is_subset_of(factor_z[j])) continue;
            if (ref.abelian[j]) continue; // non-abelian components never sit in abelian factors
            if (owner[i] >= 0)
                throw error(errc::internal, "component contained in two direct factors");
            owner[i] = int(j);
        }
        if (owner[i] < 0) throw error(errc::internal, "component not contained in any factor");
    }
    return owner;
}

fullness_report is_full(const group& g, const component_decomposition& d,
                        const direct_decomposition& ref, elem x) {
    std::vector<int> owner = component_owner(g, d, ref);
    std::vector<char> active(d.subgroups.size(), 0);
    for (size_t i = 0; i < d.subgroups.size(); ++i)
        for (elem y : d.subgroups[i].elements())
            if (g.mul(x, y) != g.mul(y, x)) {
                active[i] = 1;
                break;
            }

    fullness_report rep;
    rep.full = true;
    for (size_t j = 0; j < ref.factors.size(); ++j) {
        int total = 0, hit = 0;
        for (size_t i = 0; i < owner.size(); ++i)
            if (owner[i] == int(j)) {
                ++total;
                hit += active[i];
            }
        if (hit > 0 && hit < total) rep.full = false;
        if (total > 0 && hit == total) rep.factor_indices.push_back(int(j));
    }
    return rep;
}

filtration build_filtration(const group& g, const direct_decomposition& dec) {
    const int n = g.order();
    const element_set left = dec.nonabelian_part;
    const element_set right = dec.maximal_abelian_factor;
    element_set z = center(g);

    auto contained_in_step = [&](const element_set& bigger, const element_set& smaller,
                                 const element_set& side_subgroup) {
        // bigger <= smaller * side
        for (elem w : bigger.elements()) {
            bool ok = false;
            for (elem u : smaller.elements())
                if (side_subgroup.contains(g.mul(g.inv(u), w))) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    };

    filtration out;
    element_set u = element_set::single(n, 0);
    out.chain.push_back(u);

    auto push_step = [&](const element_set& next, char side, const element_set& side_subgroup) {
        if (next == out.chain.back()) return;
        if (!contained_in_step(next, out.chain.back(), side_subgroup))
            throw error(errc::decomposition_mismatch,
                        std::string("filtration step does not ascend on the ") +
                            (side == 'L' ? "non-abelian" : "abelian") + " side");
        out.chain.push_back(next);
        out.side.push_back(side);
    };

    for (int p : prime_divisors(z.size() == 1 ? 1 : z.size())) {
        element_set zp(n); // Sylow p-part of the center
        for (elem x : z.elements())
            if (is_pi_number(g.element_order(x), {p})) zp.add(x);

        int cap = 1, big_n = 0;
        {
            int zsize = z.size();
            while (zsize % p == 0) {
                zsize /= p;
                ++big_n;
            }
        }
        int max_m = 0;
        for (elem x : zp.elements()) {
            int ord = g.element_order(x), e = 0;
            while (ord > 1) {
                ord /= p;
                ++e;
            }
            max_m = std::max(max_m, e);
        }
        (void)cap;

        for (int m = 1; m <= max_m; ++m) {
            long long pm = 1;
            for (int i = 0; i < m; ++i) pm *= p;

            // v_0: central p-elements of order below p^m
            element_set v_prev(n);
            for (elem x : zp.elements())
                if (g.element_order(x) < pm) v_prev.add(x);
            v_prev = generated_subgroup(g, v_prev);

            for (int j = 1; j <= big_n; ++j) {
                long long shift = 1;
                for (int i = 0; i < big_n - j; ++i) shift *= p;

                element_set w_gens(n);
                for (elem x : zp.elements()) {
                    if (g.element_order(x) > shift * pm) continue;
                    if (splits_general(g, x)) continue;
                    w_gens.add(g.power(x, shift));
                }
                element_set w = generated_subgroup(g, w_gens | v_prev);
                push_step(central_product_set(g, u, w), 'L', left);

                element_set v_gens(n);
                for (elem x : zp.elements()) {
                    elem px = g.power(x, shift);
                    if (g.element_order(px) <= pm) v_gens.add(px);
                }
                element_set v = generated_subgroup(g, v_gens | v_prev);
                push_step(central_product_set(g, u, v), 'R', right);
                v_prev = v;
            }
            u = central_product_set(g, u, v_prev);
        }
    }

    if (!(out.chain.back() == z))
        throw error(errc::decomposition_mismatch, "filtration did not reach the center");
    return out;
}

} // namespace gwl
