#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwl/group.hpp"

namespace gwl {

/// A subgroup series together with isomorphism-type labels of the
/// consecutive quotients (all such quotients here are abelian).
struct series_report {
    std::vector<element_set> terms;
    std::vector<std::string> quotient_labels; // terms[i]/terms[i+1] (or reversed for ascending)
    bool ascending = false;
};

series_report derived_series(const group& g);
series_report lower_central_series(const group& g);
series_report upper_central_series(const group& g);

std::optional<int> nilpotency_class(const group& g); // nullopt when not nilpotent
bool is_nilpotent(const group& g);
bool is_solvable(const group& g);
bool is_solvable_subgroup(const group& g, const element_set& u);
bool is_pi_number(int n, const std::vector<int>& primes);
std::vector<int> prime_divisors(int n);

/// Isomorphism-type label of an abelian group: its invariant-factor
/// decomposition, e.g. "C2xC6".
std::string abelian_type(const group& g);

element_set solvable_radical(const group& g);
element_set pi_radical(const group& g, const std::vector<int>& primes);
element_set fitting_subgroup(const group& g);

/// Elements whose normal closure is abelian. This set is exactly what the
/// closure machinery detects; it generates the whole group in general
/// (normal products of abelian subgroups need not be abelian), so callers
/// who want a subgroup should combine it with max_normal_abelian.
element_set abelian_radical_elements(const group& g);

/// All maximal normal abelian subgroups (not unique in general).
std::vector<element_set> max_normal_abelian(const group& g);

/// Maximal pi-subgroups of g (maximal by inclusion among pi-subgroups).
std::vector<element_set> maximal_pi_subgroups(const group& g, const std::vector<int>& primes,
                                              size_t cap = 100000);

/// Intersection of all maximal pi-subgroups containing the pi-element x.
element_set max_pi_intersection(const group& g, const std::vector<int>& primes, elem x);

std::vector<element_set> minimal_normal_subgroups(const group& g);
element_set socle(const group& g);

enum class jh_choice {
    largest_first,  // largest maximal normal subgroup, lex-least tie break
    smallest_first, // smallest maximal normal subgroup, lex-greatest tie break
};

struct composition_report {
    std::vector<std::string> factors;      // labels, outermost quotient first
    std::vector<element_set> series;       // G = series[0] > ... > series.back() = 1, in g's indices
    std::vector<std::string> sorted_factors() const;
};

composition_report composition_factors(const group& g, jh_choice choice = jh_choice::largest_first);

/// Label of a simple group: order plus element-order spectrum (simple
/// groups are determined by these), with friendly names for cyclic and
/// alternating cases.
std::string simple_label(const group& g);

struct special_flags {
    bool simple = false;
    bool characteristically_simple = false;
    bool almost_simple_candidate = false;
    bool product_of_simples = false;
    std::vector<element_set> simple_factors; // internal factors when product_of_simples
};

special_flags classify_special(const group& g);

} // namespace gwl
