#pragma once

#include <vector>

#include "gwl/group.hpp"

namespace gwl {

/// Does x generate a direct factor of the abelian group a? Decided per
/// prime by the power criterion: the p-part of x splits iff no y makes
/// |x_p y^p| smaller than |x_p|.
bool splits_abelian(const group& a, elem x);

/// Central z splits from g iff zG' splits from G/G' and <z> meets G'
/// trivially. Identity: splits with complement g. Non-central elements
/// never split (the generated cyclic factor would be central).
bool splits_general(const group& g, elem z);

element_set splitting_elements(const group& g); // the central z with a complement

struct noncommuting_graph {
    int n = 0;
    std::vector<element_set> adj; // edge iff [g,h] != 1
};

noncommuting_graph make_noncommuting_graph(const group& g);

/// Connected-component labels of the subgraph induced on s; -1 outside s.
/// Components are numbered by their smallest member.
std::vector<int> components_on(const noncommuting_graph& graph, const element_set& s);

struct component_decomposition {
    element_set m;                       // stabilized max-centralizer set M
    std::vector<element_set> trace;      // M_1 within M_2 within ...
    std::vector<element_set> components; // connected components K_i of the graph on M
    std::vector<element_set> subgroups;  // N_i = <K_i>, the non-abelian components
};

/// The canonical central decomposition through the non-commuting graph;
/// input must be non-abelian.
component_decomposition nonabelian_components(const group& g);

/// C_x = product of the components centralizing x, N_x = product of the
/// rest; empty products are Z(G).
std::pair<element_set, element_set> cx_nx(const group& g, const component_decomposition& d, elem x);

struct direct_decomposition {
    std::vector<element_set> factors; // internal direct factors of g
    std::vector<char> indecomposable;
    std::vector<char> abelian;
    element_set maximal_abelian_factor; // product of the abelian factors
    element_set nonabelian_part;        // product of the remaining factors
};

enum class factor_search { canonical, alternate };

/// Brute-force factorization into indecomposable internal direct factors
/// by recursive complementary-normal-pair search.
direct_decomposition direct_factorization(const group& g,
                                          factor_search order = factor_search::canonical);

/// Owning direct factor of each non-abelian component: the unique j with
/// N_i contained in factors[j] * Z(G).
std::vector<int> component_owner(const group& g, const component_decomposition& d,
                                 const direct_decomposition& ref);

struct fullness_report {
    bool full = false;
    std::vector<int> factor_indices; // the collection x is full for
};

fullness_report is_full(const group& g, const component_decomposition& d,
                        const direct_decomposition& ref, elem x);

struct filtration {
    std::vector<element_set> chain; // {1} = chain[0] <= ... <= Z(G), strictly increasing
    std::vector<char> side;         // per step: 'L' or 'R'
};

/// Component-wise filtration of Z(G) with respect to the non-abelian part
/// and the maximal abelian factor of the given decomposition, built
/// prime-by-prime and order-by-order. Side tags are verified against the
/// decomposition; a failed step raises decomposition_mismatch.
filtration build_filtration(const group& g, const direct_decomposition& dec);

} // namespace gwl
