#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwl/error.hpp"

namespace gwl {

using elem = int;

/// Subset of the elements of a fixed parent group, stored as a bitset
/// over indices [0,n).
class element_set {
public:
    element_set() = default;
    explicit element_set(int universe) : n_(universe), bits_((universe + 63) / 64, 0) {}

    static element_set all(int universe);
    static element_set single(int universe, elem g);
    static element_set of(int universe, std::span<const elem> members);

    int universe() const { return n_; }
    bool contains(elem g) const { return (bits_[g >> 6] >> (g & 63)) & 1; }
    void add(elem g) { bits_[g >> 6] |= uint64_t(1) << (g & 63); }
    void remove(elem g) { bits_[g >> 6] &= ~(uint64_t(1) << (g & 63)); }
    int size() const;
    bool empty() const { return size() == 0; }
    std::vector<elem> elements() const;

    element_set& operator|=(const element_set& o);
    element_set& operator&=(const element_set& o);
    element_set complement() const;

    friend element_set operator|(element_set a, const element_set& b) { return a |= b; }
    friend element_set operator&(element_set a, const element_set& b) { return a &= b; }
    friend bool operator==(const element_set&, const element_set&) = default;

    bool is_subset_of(const element_set& o) const;

    /// Lexicographic order on membership bitstrings (element 0 first);
    /// used for deterministic tie-breaking.
    bool lex_less(const element_set& o) const;

    const std::vector<uint64_t>& words() const { return bits_; }

private:
    int n_ = 0;
    std::vector<uint64_t> bits_;
};

/// Finite group given by its full multiplication table. Index 0 is the
/// identity, rows and columns are permutations of [0,n), the table is
/// associative and every element has an inverse. Instances are immutable
/// after construction and safe to share across threads.
class group {
public:
    group() = default; // empty placeholder; construct real groups via validate/trusted

    /// Checks all group axioms on a raw table. Throws gwl::error naming
    /// the first violated cell on failure.
    static group validate(const std::vector<std::vector<int>>& table, std::string name = "");

    /// Constructor path for tables that are valid by construction (group
    /// family builders, products). Skips the cubic associativity check;
    /// identity placement and row/column permutations are still verified.
    static group trusted(const std::vector<std::vector<int>>& table, std::string name = "");

    int order() const { return n_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    elem mul(elem a, elem b) const { return table_[size_t(a) * n_ + b]; }
    elem inv(elem a) const { return inv_[a]; }
    elem power(elem g, long long e) const;
    int element_order(elem g) const { return elem_order_[g]; }
    elem commutator(elem g, elem h) const; // g h g^-1 h^-1
    elem conjugate(elem g, elem h) const;  // g^h = h g h^-1

    bool is_abelian() const;

    const std::vector<int>& table() const { return table_; }
    std::vector<std::vector<int>> table_rows() const;

private:
    int n_ = 0;
    std::vector<int> table_; // row-major, table_[a*n+b] = a*b
    std::vector<int> inv_;
    std::vector<int> elem_order_;
    std::string name_;
};

struct colored_group {
    group g;
    std::vector<int> colors; // one dense nonnegative color per element

    static colored_group uncolored(group g);
};

/// Word over t variables; literals are (variable, +1/-1) after
/// normalization.
struct word {
    std::vector<std::pair<int, int>> literals;

    static word parse(const std::string& text); // "x1 x2^-1 x1^3"
    int arity() const;                          // 1 + max variable index, 0 if empty
    std::string str() const;
};

elem eval_word(const group& g, const word& w, std::span<const elem> assignment);

// -- subgroup machinery -----------------------------------------------------

element_set generated_subgroup(const group& g, const element_set& gens);
element_set normal_closure(const group& g, const element_set& m);
element_set centralizer(const group& g, const element_set& m);
element_set normalizer(const group& g, const element_set& m);
element_set center(const group& g);

bool is_subgroup(const group& g, const element_set& s);
bool is_normal(const group& g, const element_set& s);
bool is_abelian_subset(const group& g, const element_set& s);

std::vector<element_set> conjugacy_classes(const group& g);

/// All normal subgroups, found as closures of unions of conjugacy classes.
/// Throws cap_exceeded if more than `cap` distinct subgroups appear.
std::vector<element_set> normal_subgroups(const group& g, size_t cap = 100000);

/// All subgroups (desk scale only). Throws cap_exceeded beyond `cap`.
std::vector<element_set> all_subgroups(const group& g, size_t cap = 100000);

struct quotient {
    group grp;
    std::vector<int> coset_of; // element index -> coset index, identity coset = 0
};

quotient quotient_group(const group& g, const element_set& n);

/// The subgroup u relabeled as a standalone group. relabel[i] (optional
/// out) is the parent index of the new element i; identity stays at 0.
group as_group(const group& g, const element_set& u, std::vector<elem>* relabel = nullptr);

struct iso_result {
    bool isomorphic = false;
    std::vector<int> mapping; // g -> h element map when isomorphic
};

struct iso_options {
    double time_budget_seconds = 30.0;
};

/// Backtracking isomorphism test over generator images, pruned by element
/// order profiles. Returns an explicit isomorphism on success. Throws
/// gwl::error(timeout) when the budget is exhausted.
iso_result is_isomorphic(const group& g, const group& h, const iso_options& opt = {});

std::vector<int> element_order_histogram(const group& g); // histogram over [0,n]

} // namespace gwl
