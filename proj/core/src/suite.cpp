#include "gwl/suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "gwl/construct.hpp"
#include "gwl/expressions.hpp"
#include "gwl/invariants.hpp"
#include "gwl/io.hpp"
#include "gwl/products.hpp"

namespace gwl {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

// stable element colorings shared across the rows of one group
class run_cache {
public:
    run_cache(const colored_group& cg, int threads) : cg_(cg) { opt_.threads = threads; }

    const std::vector<uint32_t>& elements(int k, wl_version v) {
        auto key = std::make_pair(k, int(v));
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            coloring c = stable_coloring(cg_, k, v, opt_);
            entry e;
            e.elem_colors = element_coloring(c);
            e.class_count = c.class_count;
            e.rounds = c.rounds;
            it = cache_.emplace(key, std::move(e)).first;
        }
        return it->second.elem_colors;
    }

    std::pair<uint32_t, int> stats(int k, wl_version v) const {
        auto it = cache_.find(std::make_pair(k, int(v)));
        if (it == cache_.end()) return {0, 0};
        return {it->second.class_count, it->second.rounds};
    }

private:
    struct entry {
        std::vector<uint32_t> elem_colors;
        uint32_t class_count = 0;
        int rounds = 0;
    };
    const colored_group& cg_;
    wl_options opt_;
    std::map<std::pair<int, int>, entry> cache_;
};

struct row_spec {
    std::string name;
    int k;
    wl_version version;
};

bool row_selected(const suite_config& cfg, const std::string& name) {
    if (cfg.invariants.empty()) return true;
    for (const auto& want : cfg.invariants)
        if (name.rfind(want, 0) == 0) return true;
    return false;
}

} // namespace

std::vector<detectability_record> run_detectability_suite(const std::vector<colored_group>& groups,
                                                          const suite_config& cfg) {
    std::vector<detectability_record> records;

    for (const auto& cg : groups) {
        const int n = cg.g.order();
        if (cfg.verbose)
            std::fprintf(stderr, "  suite: %s (order %d)\n",
                         cg.g.name().empty() ? "<unnamed>" : cg.g.name().c_str(), n);
        run_cache cache(cg, cfg.threads);

        auto emit_set_row = [&](const row_spec& row, int cap, bool meaningful,
                                const std::function<element_set()>& oracle) {
            if (!row_selected(cfg, row.name)) return;
            detectability_record rec;
            rec.group_name = cg.g.name();
            rec.invariant = row.name;
            rec.k = row.k;
            rec.version = row.version;
            auto start = clock_type::now();
            if (!meaningful || n > cap) {
                rec.applicable = false;
                rec.note = !meaningful ? "not applicable" : "order beyond cap";
                records.push_back(std::move(rec));
                return;
            }
            try {
                element_set target = oracle();
                const auto& colors = cache.elements(row.k, row.version);
                rec.detected = is_detected_single(colors, target);
                rec.passed = rec.detected;
                auto [cc, rounds] = cache.stats(row.k, row.version);
                rec.class_count = cc;
                rec.rounds = rounds;
            } catch (const std::exception& e) {
                rec.passed = false;
                rec.note = e.what();
            }
            rec.wall_ms = ms_since(start);
            records.push_back(std::move(rec));
        };

        const int cap2 = cfg.max_order_for_k.count(2) ? cfg.max_order_for_k.at(2) : 128;
        const int cap3 = cfg.max_order_for_k.count(3) ? cfg.max_order_for_k.at(3) : 64;
        const int cap4 = cfg.max_order_for_k.count(4) ? cfg.max_order_for_k.at(4) : 32;

        element_set all = element_set::all(n);

        emit_set_row({"center@2-II", 2, wl_version::II}, cap2, true, [&] { return center(cg.g); });
        emit_set_row({"derived@3-II", 3, wl_version::II}, cap3, true,
                     [&] { return commutator_subgroup(cg.g, all, all); });
        emit_set_row({"solvable_radical@2-II", 2, wl_version::II}, cap2, true,
                     [&] { return solvable_radical(cg.g); });
        emit_set_row({"abelian_radical@3-II", 3, wl_version::II}, cap3, true,
                     [&] { return abelian_radical_elements(cg.g); });
        emit_set_row({"pi_radical{2}@3-II", 3, wl_version::II}, cap3, true,
                     [&] { return pi_radical(cg.g, {2}); });
        emit_set_row({"pi_radical{3}@3-II", 3, wl_version::II}, cap3, true,
                     [&] { return pi_radical(cg.g, {3}); });
        emit_set_row({"fitting@3-II", 3, wl_version::II}, cap3, true,
                     [&] { return fitting_subgroup(cg.g); });
        emit_set_row({"splitting@4-I", 4, wl_version::I}, cap4, true,
                     [&] { return splitting_elements(cg.g); });
        emit_set_row({"socle@4-II", 4, wl_version::II}, cap4, true, [&] { return socle(cg.g); });
        emit_set_row({"min_normal_closure@4-II", 4, wl_version::II}, cap4, true, [&] {
            element_set out(n);
            auto minimal = minimal_normal_subgroups(cg.g);
            for (int x = 1; x < n; ++x) {
                element_set cl = normal_closure(cg.g, element_set::single(n, x));
                for (const auto& m : minimal)
                    if (cl == m) out.add(x);
            }
            return out;
        });
        emit_set_row({"nonabelian_M@3-II", 3, wl_version::II}, cap3, !cg.g.is_abelian(),
                     [&] { return nonabelian_components(cg.g).m; });

        // series rows: every term a union of stable 4-WL_I classes and the
        // quotient labels reproduced from the terms
        auto emit_series_row = [&](const std::string& name,
                                   const std::function<series_report()>& build) {
            if (!row_selected(cfg, name)) return;
            detectability_record rec;
            rec.group_name = cg.g.name();
            rec.invariant = name;
            rec.k = 4;
            rec.version = wl_version::I;
            auto start = clock_type::now();
            if (n > cfg.series_max_order) {
                rec.applicable = false;
                rec.note = "order beyond cap";
                records.push_back(std::move(rec));
                return;
            }
            try {
                series_report series = build();
                const auto& colors = cache.elements(4, wl_version::I);
                bool ok = true;
                for (const auto& term : series.terms)
                    if (!is_detected_single(colors, term)) {
                        ok = false;
                        rec.note = "series term is not a union of classes";
                    }
                // labels re-derived from the terms must match the report
                for (size_t i = 0; ok && i + 1 < series.terms.size(); ++i) {
                    const element_set& big =
                        series.ascending ? series.terms[i + 1] : series.terms[i];
                    const element_set& small =
                        series.ascending ? series.terms[i] : series.terms[i + 1];
                    std::vector<elem> relabel;
                    group bg = as_group(cg.g, big, &relabel);
                    std::vector<int> index_of(n, -1);
                    for (size_t r = 0; r < relabel.size(); ++r) index_of[relabel[r]] = int(r);
                    element_set sm(bg.order());
                    for (elem x : small.elements()) sm.add(index_of[x]);
                    group quo = quotient_group(bg, sm).grp;
                    if (!quo.is_abelian() || abelian_type(quo) != series.quotient_labels[i]) {
                        ok = false;
                        rec.note = "quotient label mismatch at step " + std::to_string(i);
                    }
                }
                rec.detected = ok;
                rec.passed = ok;
                auto [cc, rounds] = cache.stats(4, wl_version::I);
                rec.class_count = cc;
                rec.rounds = rounds;
            } catch (const std::exception& e) {
                rec.passed = false;
                rec.note = e.what();
            }
            rec.wall_ms = ms_since(start);
            records.push_back(std::move(rec));
        };

        emit_series_row("derived_series@4-I", [&] { return derived_series(cg.g); });
        emit_series_row("lower_central@4-I", [&] { return lower_central_series(cg.g); });
        emit_series_row("upper_central@4-I", [&] { return upper_central_series(cg.g); });
    }
    return records;
}

std::vector<detectability_record> run_detectability_suite(const suite_config& cfg) {
    std::vector<colored_group> groups;
    for (const auto& entry : scan_catalog(cfg.catalog_dir)) {
        colored_group cg = parse_group_file(entry.path);
        if (cg.g.name().empty()) cg.g.set_name(entry.name);
        groups.push_back(std::move(cg));
    }
    return run_detectability_suite(groups, cfg);
}

std::vector<pair_record> run_pair_suite(const std::vector<colored_group>& groups,
                                        const suite_config& cfg) {
    std::vector<pair_record> out;
    wl_options opt;
    opt.threads = cfg.threads;
    opt.stop_when_distinguished = true; // only verdicts are recorded here

    std::vector<std::vector<std::string>> factors(groups.size());
    for (size_t i = 0; i < groups.size(); ++i)
        factors[i] = composition_factors(groups[i].g).sorted_factors();

    auto cap_of = [&](int k) {
        auto it = cfg.max_order_for_k.find(k);
        return it == cfg.max_order_for_k.end() ? 0 : it->second;
    };

    for (size_t i = 0; i < groups.size(); ++i) {
        for (size_t j = i; j < groups.size(); ++j) {
            const int n = groups[i].g.order();
            if (groups[j].g.order() != n) continue;
            if (n > cap_of(2)) continue;
            pair_record rec;
            rec.left = groups[i].g.name();
            rec.right = groups[j].g.name();
            rec.order = n;
            rec.distinct_factors = factors[i] != factors[j];
            rec.strict = n <= 16;

            if (i == j) {
                // identical groups stay equivalent
                joint_result r = joint_compare(groups[i], groups[j], 2, wl_version::I, opt);
                rec.passed = r.equivalent;
                if (!r.equivalent) rec.note = "self pair distinguished";
                out.push_back(std::move(rec));
                continue;
            }

            int max_k = rec.distinct_factors ? 5 : 2;
            for (int k = 2; k <= max_k; ++k) {
                if (n > cap_of(k)) break;
                joint_result r = joint_compare(groups[i], groups[j], k, wl_version::I, opt);
                if (!r.equivalent) {
                    rec.distinguished_k = k;
                    break;
                }
            }
            if (rec.distinct_factors && rec.strict && rec.distinguished_k < 0) {
                rec.passed = false;
                rec.note = "distinct composition factors but not distinguished";
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<pair_record> run_pair_suite(const suite_config& cfg) {
    std::vector<colored_group> groups;
    for (const auto& entry : scan_catalog(cfg.catalog_dir)) {
        colored_group cg = parse_group_file(entry.path);
        if (cg.g.name().empty()) cg.g.set_name(entry.name);
        groups.push_back(std::move(cg));
    }
    return run_pair_suite(groups, cfg);
}

suite_summary summarize(const std::vector<detectability_record>& records,
                        const std::vector<pair_record>& pairs) {
    suite_summary s;
    for (const auto& r : records) {
        auto& [pass, fail] = s.per_row[r.invariant];
        if (r.passed)
            ++pass;
        else
            ++fail;
        if (r.passed)
            ++s.passed;
        else
            ++s.failed;
    }
    for (const auto& p : pairs) {
        if (p.passed)
            ++s.passed;
        else
            ++s.failed;
        if (p.distinguished_k >= 2 && p.left != p.right) ++s.minimal_k_histogram[p.distinguished_k];
    }
    return s;
}

void write_report(const std::vector<detectability_record>& records,
                  const std::vector<pair_record>& pairs, const std::string& path) {
    nlohmann::ordered_json j;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json rec;
        rec["group"] = r.group_name;
        rec["invariant"] = r.invariant;
        rec["k"] = r.k;
        rec["version"] = wl_version_name(r.version);
        rec["applicable"] = r.applicable;
        rec["detected"] = r.detected;
        rec["passed"] = r.passed;
        rec["classCount"] = r.class_count;
        rec["rounds"] = r.rounds;
        rec["wallMs"] = r.wall_ms;
        if (!r.note.empty()) rec["note"] = r.note;
        j["records"].push_back(std::move(rec));
    }
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
        nlohmann::ordered_json rec;
        rec["left"] = p.left;
        rec["right"] = p.right;
        rec["order"] = p.order;
        rec["distinctFactors"] = p.distinct_factors;
        rec["distinguishedK"] = p.distinguished_k;
        rec["strict"] = p.strict;
        rec["passed"] = p.passed;
        if (!p.note.empty()) rec["note"] = p.note;
        j["pairs"].push_back(std::move(rec));
    }
    suite_summary s = summarize(records, pairs);
    j["summary"]["passed"] = s.passed;
    j["summary"]["failed"] = s.failed;
    for (auto& [row, counts] : s.per_row) {
        j["summary"]["rows"][row]["pass"] = counts.first;
        j["summary"]["rows"][row]["fail"] = counts.second;
    }
    for (auto& [k, count] : s.minimal_k_histogram)
        j["summary"]["minimalKHistogram"][std::to_string(k)] = count;

    std::ofstream out(path);
    if (!out) throw error(errc::parse_error, path + ": cannot open for writing");
    out << j.dump(2) << "\n";
}

std::vector<colored_group> standard_catalog(int max_order) {
    std::vector<group> gs;
    auto add = [&](group g) {
        if (g.order() <= max_order) gs.push_back(std::move(g));
    };

    for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 20, 21, 24, 27, 30,
                  32, 36, 48, 60, 64})
        add(make_cyclic(n));
    add(make_elementary_abelian(2, 2));
    add(make_elementary_abelian(2, 3));
    add(make_elementary_abelian(2, 4));
    add(make_elementary_abelian(2, 5));
    add(make_elementary_abelian(2, 6));
    add(make_elementary_abelian(3, 2));
    add(make_elementary_abelian(3, 3));
    add(make_elementary_abelian(5, 2));
    add(direct_product(make_cyclic(2), make_cyclic(4)));
    add(direct_product(make_cyclic(2), make_cyclic(6)));
    add(direct_product(make_cyclic(2), make_cyclic(8)));
    add(direct_product(make_cyclic(4), make_cyclic(4)));
    add(direct_product(make_elementary_abelian(2, 2), make_cyclic(4)));
    add(direct_product(make_cyclic(3), make_cyclic(9)));
    add(direct_product(make_cyclic(2), make_cyclic(16)));
    add(direct_product(make_cyclic(4), make_cyclic(8)));
    add(direct_product(make_cyclic(6), make_cyclic(6)));
    add(direct_product(make_cyclic(8), make_cyclic(8)));
    add(direct_product(make_cyclic(2), make_cyclic(32)));

    for (int n : {3, 4, 5, 6, 7, 8, 10, 12, 14, 16, 24, 30, 32}) add(make_dihedral(n));
    add(make_quaternion8());
    add(make_symmetric(4));

    group s4 = make_symmetric(4);
    element_set all24 = element_set::all(24);
    group a4 = as_group(s4, commutator_subgroup(s4, all24, all24));
    a4.set_name("A4");
    add(a4);
    if (max_order >= 60) {
        group s5 = make_symmetric(5);
        element_set all120 = element_set::all(120);
        group a5 = as_group(s5, commutator_subgroup(s5, all120, all120));
        a5.set_name("A5");
        add(a5);
    }

    group d4 = make_dihedral(4);
    group q8 = make_quaternion8();
    group s3 = make_symmetric(3);
    s3.set_name("S3");
    add(direct_product(d4, make_cyclic(2)));
    add(direct_product(q8, make_cyclic(2)));
    add(direct_product(d4, make_cyclic(3)));
    add(direct_product(q8, make_cyclic(3)));
    add(direct_product(a4, make_cyclic(2)));
    add(direct_product(d4, make_cyclic(4)));
    add(direct_product(q8, make_cyclic(4)));
    add(direct_product(d4, make_elementary_abelian(2, 2)));
    add(direct_product(s3, s3));
    add(direct_product(s3, make_cyclic(4)));
    add(direct_product(s4, make_cyclic(2)));
    add(direct_product(d4, d4));
    add(direct_product(q8, q8));
    add(direct_product(d4, q8));

    // central products over the shared order-2 centers
    {
        std::vector<int> phi_q8(8, 0);
        phi_q8[4] = 2;
        add(central_product(q8, make_cyclic(4), element_set::of(8, std::array<elem, 2>{0, 4}),
                            element_set::of(4, std::array<elem, 2>{0, 2}), phi_q8));
        std::vector<int> phi_d4(8, 0);
        phi_d4[2] = 2;
        add(central_product(d4, d4, element_set::of(8, std::array<elem, 2>{0, 2}),
                            element_set::of(8, std::array<elem, 2>{0, 2}), phi_d4));
        std::vector<int> phi_dq(8, 0);
        phi_dq[2] = 4;
        add(central_product(d4, q8, element_set::of(8, std::array<elem, 2>{0, 2}),
                            element_set::of(8, std::array<elem, 2>{0, 4}), phi_dq));
        std::vector<int> phi_qq(8, 0);
        phi_qq[4] = 4;
        add(central_product(q8, q8, element_set::of(8, std::array<elem, 2>{0, 4}),
                            element_set::of(8, std::array<elem, 2>{0, 4}), phi_qq));
    }

    std::vector<colored_group> out;
    out.reserve(gs.size());
    for (auto& g : gs) out.push_back(colored_group::uncolored(std::move(g)));
    std::sort(out.begin(), out.end(), [](const colored_group& a, const colored_group& b) {
        if (a.g.order() != b.g.order()) return a.g.order() < b.g.order();
        return a.g.name() < b.g.name();
    });
    return out;
}

} // namespace gwl
