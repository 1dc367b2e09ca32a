#include "gwl/expressions.hpp"

#include <algorithm>

namespace gwl {

void group_expression::check(int max_arity) const {
    if (arity() > max_arity)
        throw error(errc::arity_too_large,
                    "expression arity " + std::to_string(arity()) + " exceeds limit " +
                        std::to_string(max_arity));
    for (const word& w : relators)
        if (w.arity() > arity())
            throw error(errc::parse_error,
                        "relator '" + w.str() + "' uses a variable beyond arity " +
                            std::to_string(arity()));
}

namespace {

// enumerate selector products with early relator pruning: a relator is
// evaluated as soon as all its variables are assigned
void enumerate(const group& g, const std::vector<std::vector<elem>>& domains,
               const std::vector<word>& relators, const std::function<void(std::span<const elem>)>& emit) {
    const int t = int(domains.size());
    std::vector<int> ready_at(relators.size(), 0);
    for (size_t r = 0; r < relators.size(); ++r)
        ready_at[r] = relators[r].arity(); // check once this many coordinates are set

    std::vector<elem> tuple(t, 0);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == t) {
            emit(std::span<const elem>(tuple.data(), tuple.size()));
            return;
        }
        for (elem x : domains[depth]) {
            tuple[depth] = x;
            bool ok = true;
            for (size_t r = 0; r < relators.size() && ok; ++r)
                if (ready_at[r] == depth + 1)
                    ok = eval_word(g, relators[r], tuple) == 0;
            if (ok) self(self, depth + 1);
        }
    };
    rec(rec, 0);
}

} // namespace

std::vector<std::vector<elem>> solutions(const group_expression& e, const colored_group& cg,
                                         int max_arity) {
    e.check(max_arity);
    std::vector<std::vector<elem>> domains;
    for (const auto& sel : e.selectors) domains.push_back(sel(cg).elements());
    std::vector<std::vector<elem>> out;
    enumerate(cg.g, domains, e.relators,
              [&](std::span<const elem> t) { out.emplace_back(t.begin(), t.end()); });
    return out;
}

element_set sol_exists(const group_expression& e, const colored_group& cg, int j, int max_arity) {
    e.check(max_arity);
    std::vector<std::vector<elem>> domains;
    for (const auto& sel : e.selectors) domains.push_back(sel(cg).elements());
    element_set out(cg.g.order());
    enumerate(cg.g, domains, e.relators, [&](std::span<const elem> t) { out.add(t[j]); });
    return out;
}

element_set sol_forall(const group_expression& e, const colored_group& cg, int j, int max_arity) {
    e.check(max_arity);
    const int n = cg.g.order();
    const int t = e.arity();
    std::vector<element_set> sets;
    std::vector<std::vector<elem>> others(t);
    for (int i = 0; i < t; ++i) {
        sets.push_back(e.selectors[i](cg));
        others[i] = sets[i].elements();
    }
    // vacuous when some other coordinate has an empty selector
    for (int i = 0; i < t; ++i)
        if (i != j && others[i].empty()) return element_set::all(n);

    element_set out(n);
    std::vector<elem> tuple(t, 0);
    for (int x = 0; x < n; ++x) {
        if (!sets[j].contains(x)) continue; // tuple membership requires x in S_j
        tuple[j] = x;
        bool all_ok = true;
        auto rec = [&](auto&& self, int pos) -> void {
            if (!all_ok) return;
            if (pos == t) {
                for (const word& w : e.relators)
                    if (eval_word(cg.g, w, tuple) != 0) {
                        all_ok = false;
                        return;
                    }
                return;
            }
            if (pos == j) {
                self(self, pos + 1);
                return;
            }
            for (elem y : others[pos]) {
                tuple[pos] = y;
                self(self, pos + 1);
                if (!all_ok) return;
            }
        };
        rec(rec, 0);
        if (all_ok) out.add(x);
    }
    return out;
}

// -- closure operations -------------------------------------------------

element_set power_set(const group& g, const element_set& s, long long e) {
    element_set out(g.order());
    for (elem x : s.elements()) out.add(g.power(x, e));
    return out;
}

element_set product_set(const group& g, const element_set& s, int e) {
    element_set out(g.order());
    if (e <= 0) {
        out.add(0);
        return out;
    }
    out = s;
    std::vector<elem> gens = s.elements();
    for (int step = 1; step < e; ++step) {
        element_set next(g.order());
        for (elem a : out.elements())
            for (elem b : gens) next.add(g.mul(a, b));
        out = next;
    }
    return out;
}

element_set conjugate_set(const group& g, const element_set& s, const element_set& t)  {
    element_set out(g.order());
    for (elem x : s.elements())
        for (elem y : t.elements()) out.add(g.conjugate(x, y));
    return out;
}

element_set commutator_subgroup(const group& g, const element_set& s, const element_set& t) {
    element_set comms(g.order());
    for (elem x : s.elements())
        for (elem y : t.elements()) comms.add(g.commutator(x, y));
    return generated_subgroup(g, comms);
}

element_set centralizer_in(const group& g, const element_set& s, const element_set& t) {
    return centralizer(g, t) & s;
}

element_set normalizer_in(const group& g, const element_set& s, const element_set& t) {
    return normalizer(g, t) & s;
}

// -- selector library -----------------------------------------------------

subset_selector sel_id() {
    return {"Id", [](const colored_group& cg) { return element_set::all(cg.g.order()); }};
}

subset_selector sel_center() {
    return {"center", [](const colored_group& cg) { return center(cg.g); }};
}

subset_selector sel_derived() {
    return {"derived", [](const colored_group& cg) {
                element_set all = element_set::all(cg.g.order());
                return commutator_subgroup(cg.g, all, all);
            }};
}

namespace {

bool is_pi_number(int n, const std::vector<int>& primes) {
    for (int p : primes)
        while (n % p == 0) n /= p;
    return n == 1;
}

} // namespace

subset_selector sel_pi_elements(std::vector<int> primes) {
    std::string name = "pi_elements{";
    for (size_t i = 0; i < primes.size(); ++i) name += (i ? "," : "") + std::to_string(primes[i]);
    name += "}";
    return {name, [primes = std::move(primes)](const colored_group& cg) {
                element_set out(cg.g.order());
                for (int x = 0; x < cg.g.order(); ++x)
                    if (is_pi_number(cg.g.element_order(x), primes)) out.add(x);
                return out;
            }};
}

subset_selector sel_order_d(int d) {
    return {"order_" + std::to_string(d), [d](const colored_group& cg) {
                element_set out(cg.g.order());
                for (int x = 0; x < cg.g.order(); ++x)
                    if (cg.g.element_order(x) == d) out.add(x);
                return out;
            }};
}

subset_selector sel_color_class(std::vector<int> colors) {
    std::string name = "color_class{";
    for (size_t i = 0; i < colors.size(); ++i) name += (i ? "," : "") + std::to_string(colors[i]);
    name += "}";
    return {name, [colors = std::move(colors)](const colored_group& cg) {
                element_set out(cg.g.order());
                for (int x = 0; x < cg.g.order(); ++x)
                    if (std::find(colors.begin(), colors.end(), cg.colors[x]) != colors.end())
                        out.add(x);
                return out;
            }};
}

subset_selector sel_constant(element_set s, std::string name) {
    return {std::move(name), [s = std::move(s)](const colored_group&) { return s; }};
}

subset_selector sel_complement(subset_selector s) {
    return {"not(" + s.name + ")",
            [s = std::move(s)](const colored_group& cg) { return s(cg).complement(); }};
}

subset_selector sel_union(subset_selector a, subset_selector b) {
    return {"or(" + a.name + "," + b.name + ")",
            [a = std::move(a), b = std::move(b)](const colored_group& cg) { return a(cg) | b(cg); }};
}

subset_selector sel_intersection(subset_selector a, subset_selector b) {
    return {"and(" + a.name + "," + b.name + ")",
            [a = std::move(a), b = std::move(b)](const colored_group& cg) { return a(cg) & b(cg); }};
}

} // namespace gwl
