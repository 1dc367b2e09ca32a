#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gwl/group.hpp"

namespace gwl {

/// Named pure map from a colored group to a subset of its elements.
struct subset_selector {
    std::string name;
    std::function<element_set(const colored_group&)> fn;

    element_set operator()(const colored_group& cg) const { return fn(cg); }
};

/// Selector constraints on t coordinates plus relator words; a t-tuple is
/// a solution when every coordinate lies in its selector's set and every
/// relator evaluates to the identity.
struct group_expression {
    std::vector<subset_selector> selectors;
    std::vector<word> relators;

    int arity() const { return int(selectors.size()); }
    void check(int max_arity = 4) const; // throws arity_too_large / parse_error
};

std::vector<std::vector<elem>> solutions(const group_expression& e, const colored_group& cg,
                                         int max_arity = 4);

/// Coordinates that occur in some solution at position j (0-based).
element_set sol_exists(const group_expression& e, const colored_group& cg, int j, int max_arity = 4);

/// Elements x such that every choice of the other coordinates from their
/// selectors completes x at position j to a solution (x must also lie in
/// the j-th selector's set unless some other selector is empty).
element_set sol_forall(const group_expression& e, const colored_group& cg, int j, int max_arity = 4);

// -- set-level closure operations ---------------------------------------

element_set power_set(const group& g, const element_set& s, long long e); // { s^e }
element_set product_set(const group& g, const element_set& s, int e);     // { s1...se }
element_set conjugate_set(const group& g, const element_set& s, const element_set& t); // { s^t }
element_set commutator_subgroup(const group& g, const element_set& s, const element_set& t);
element_set centralizer_in(const group& g, const element_set& s, const element_set& t); // C_S(T)
element_set normalizer_in(const group& g, const element_set& s, const element_set& t);  // N_S(T)

// -- the stock selector library -------------------------------------------

subset_selector sel_id();
subset_selector sel_center();
subset_selector sel_derived();
subset_selector sel_pi_elements(std::vector<int> primes);
subset_selector sel_order_d(int d);
subset_selector sel_color_class(std::vector<int> colors);
subset_selector sel_constant(element_set s, std::string name);
subset_selector sel_complement(subset_selector s);
subset_selector sel_union(subset_selector a, subset_selector b);
subset_selector sel_intersection(subset_selector a, subset_selector b);

} // namespace gwl
