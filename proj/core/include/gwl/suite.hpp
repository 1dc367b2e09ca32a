#pragma once

#include <map>
#include <string>
#include <vector>

#include "gwl/group.hpp"
#include "gwl/wl.hpp"

namespace gwl {

struct suite_config {
    std::string catalog_dir;
    std::map<int, int> max_order_for_k = {{2, 128}, {3, 64}, {4, 32}, {5, 16}};
    int series_max_order = 64; // the series rows run 4-WL_I up to this order
    int threads = 0;
    bool run_pairs = true;
    bool verbose = false; // one stderr progress line per group
    std::vector<std::string> invariants; // empty = every row
};

struct detectability_record {
    std::string group_name;
    std::string invariant; // theorem-row key, e.g. "center@2-II"
    int k = 0;
    wl_version version = wl_version::II;
    bool applicable = true; // false when capped out or not meaningful for the group
    bool detected = false;
    bool passed = true; // applicable rows pass iff detected
    uint32_t class_count = 0;
    int rounds = 0;
    double wall_ms = 0;
    std::string note;
};

struct pair_record {
    std::string left, right;
    int order = 0;
    bool distinct_factors = false; // composition-factor multisets differ
    int distinguished_k = -1;      // minimal k in [2,5] with k-WL_I distinguishing, -1 = none found
    bool passed = true;            // distinct factors within the strict cap must be distinguished
    bool strict = false;           // inside the order cap where the theorem is asserted
    std::string note;
};

std::vector<detectability_record> run_detectability_suite(const std::vector<colored_group>& groups,
                                                          const suite_config& cfg);
std::vector<detectability_record> run_detectability_suite(const suite_config& cfg);

std::vector<pair_record> run_pair_suite(const std::vector<colored_group>& groups,
                                        const suite_config& cfg);
std::vector<pair_record> run_pair_suite(const suite_config& cfg);

struct suite_summary {
    int passed = 0;
    int failed = 0;
    std::map<std::string, std::pair<int, int>> per_row; // row -> (pass, fail)
    std::map<int, int> minimal_k_histogram;             // k -> pair count
};

suite_summary summarize(const std::vector<detectability_record>& records,
                        const std::vector<pair_record>& pairs);

/// Writes the full JSON report; deterministic field and record order.
void write_report(const std::vector<detectability_record>& records,
                  const std::vector<pair_record>& pairs, const std::string& path);

/// The standard constructed battery: families, products and central
/// products up to max_order. Deterministic list, identity color 0.
std::vector<colored_group> standard_catalog(int max_order = 64);

} // namespace gwl
