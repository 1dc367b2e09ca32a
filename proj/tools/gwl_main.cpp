#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "gwl/construct.hpp"
#include "gwl/expressions.hpp"
#include "gwl/invariants.hpp"
#include "gwl/io.hpp"
#include "gwl/pebble.hpp"
#include "gwl/products.hpp"
#include "gwl/suite.hpp"
#include "gwl/wl.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

gwl::element_set parse_element_list(int n, const std::string& text) {
    gwl::element_set out(n);
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int v = std::stoi(tok);
        if (v < 0 || v >= n) throw gwl::error(gwl::errc::parse_error, "element out of range: " + tok);
        out.add(v);
    }
    return out;
}

json set_to_json(const gwl::element_set& s) { return json(s.elements()); }

int run_make(const std::string& family, int n, int m, int p, int e, const std::string& left,
             const std::string& right, const std::string& z1, const std::string& z2,
             const std::string& phi_text, const std::string& out) {
    gwl::group g;
    if (family == "cyclic") {
        g = gwl::make_cyclic(n);
    } else if (family == "dihedral") {
        g = gwl::make_dihedral(n);
    } else if (family == "quaternion8") {
        g = gwl::make_quaternion8();
    } else if (family == "symmetric") {
        g = gwl::make_symmetric(m);
    } else if (family == "elementary_abelian") {
        g = gwl::make_elementary_abelian(p, e);
    } else if (family == "product" || family == "central_product") {
        gwl::colored_group a = gwl::parse_group_file(left);
        gwl::colored_group b = gwl::parse_group_file(right);
        if (family == "product") {
            g = gwl::direct_product(a.g, b.g);
        } else {
            std::vector<int> phi(a.g.order(), 0);
            std::stringstream ss(phi_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw gwl::error(gwl::errc::parse_error, "phi entries look like from:to");
                phi[std::stoi(tok.substr(0, colon))] = std::stoi(tok.substr(colon + 1));
            }
            g = gwl::central_product(a.g, b.g, parse_element_list(a.g.order(), z1),
                                     parse_element_list(b.g.order(), z2), phi);
        }
    } else {
        std::cerr << "unknown family: " << family << "\n";
        return 1;
    }
    gwl::write_group_file(gwl::colored_group::uncolored(g), out);
    std::cout << "wrote " << out << " (order " << g.order() << ")\n";
    return 0;
}

int run_refine(const std::string& path, int k, const std::string& version, const std::string& out,
               int threads) {
    gwl::colored_group cg = gwl::parse_group_file(path);
    gwl::wl_options opt;
    opt.threads = threads;
    gwl::coloring c = gwl::stable_coloring(cg, k, gwl::parse_wl_version(version), opt);
    ordered_json j;
    j["k"] = c.k;
    j["version"] = gwl::wl_version_name(c.version);
    j["rounds"] = c.rounds;
    j["classCount"] = c.class_count;
    j["elementColors"] = gwl::element_coloring(c);
    j["classCountsPerRound"] = c.class_counts_per_round;
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        f << j.dump(2) << "\n";
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int run_compare(const std::string& a_path, const std::string& b_path, int k,
                const std::string& version, int threads) {
    gwl::colored_group a = gwl::parse_group_file(a_path);
    gwl::colored_group b = gwl::parse_group_file(b_path);
    gwl::wl_options opt;
    opt.threads = threads;
    gwl::joint_result r = gwl::joint_compare(a, b, k, gwl::parse_wl_version(version), opt);
    ordered_json j;
    j["k"] = k;
    j["version"] = version;
    j["verdict"] = r.equivalent ? "equivalent" : "distinguished";
    j["rounds"] = r.rounds;
    j["classCount"] = r.class_count;
    if (!r.equivalent) j["firstDistinguishingRound"] = r.first_distinguishing_round;
    std::cout << j.dump(2) << "\n";
    return r.equivalent ? 0 : 3;
}

int run_game(const std::string& a_path, const std::string& b_path, int pebbles,
             const std::string& version, const std::string& config, const std::string& chain_path,
             int max_order) {
    gwl::colored_group a = gwl::parse_group_file(a_path);
    gwl::colored_group b = gwl::parse_group_file(b_path);
    gwl::game_options opt;
    opt.max_order = max_order;
    opt.max_pebbles = std::max(opt.max_pebbles, pebbles);
    gwl::game_solver solver(a, b, pebbles, gwl::parse_wl_version(version), opt);

    if (!chain_path.empty()) {
        std::ifstream in(chain_path);
        if (!in) throw gwl::error(gwl::errc::parse_error, chain_path + ": cannot open");
        json j = json::parse(in);
        std::vector<gwl::element_set> gc, hc;
        for (const auto& level : j.at("g_chain")) {
            gwl::element_set s(a.g.order());
            for (int x : level.get<std::vector<int>>()) s.add(x);
            gc.push_back(s);
        }
        for (const auto& level : j.at("h_chain")) {
            gwl::element_set s(b.g.order());
            for (int x : level.get<std::vector<int>>()) s.add(x);
            hc.push_back(s);
        }
        solver.restrict_to_chains(std::move(gc), std::move(hc));
    }

    gwl::pebble_config cfg = gwl::pebble_config::empty(pebbles);
    if (!config.empty()) {
        std::stringstream ss(config);
        std::string pair;
        int slot = 0;
        while (std::getline(ss, pair, ';')) {
            if (slot >= pebbles) throw gwl::error(gwl::errc::parse_error, "too many config pairs");
            auto comma = pair.find(',');
            if (comma == std::string::npos)
                throw gwl::error(gwl::errc::parse_error, "config pairs look like g,h");
            cfg.slots[slot++] = {std::stoi(pair.substr(0, comma)), std::stoi(pair.substr(comma + 1))};
        }
    }

    gwl::player w = solver.winner(cfg);
    std::cout << "winner: " << (w == gwl::player::spoiler ? "Spoiler" : "Duplicator") << "\n";
    std::cout << "states: " << solver.total_states() << " solved, " << solver.spoiler_states()
              << " Spoiler-winning\n";
    return 0;
}

int run_invariants(const std::string& path, bool all, const std::string& select) {
    gwl::colored_group cg = gwl::parse_group_file(path);
    const gwl::group& g = cg.g;
    const int n = g.order();

    std::vector<std::string> want;
    {
        std::stringstream ss(select);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            // glue numeric continuation onto a radical:pi=... prefix
            if (!want.empty() && want.back().rfind("radical:pi=", 0) == 0 &&
                tok.find_first_not_of("0123456789") == std::string::npos)
                want.back() += "," + tok;
            else
                want.push_back(tok);
        }
    }
    auto selected = [&](const std::string& name) {
        if (all || want.empty()) return true;
        for (const auto& w : want)
            if (w == name) return true;
        return false;
    };

    ordered_json j;
    j["name"] = g.name();
    j["order"] = n;
    j["abelian"] = g.is_abelian();
    if (selected("center")) j["center"] = set_to_json(gwl::center(g));
    if (selected("derived")) {
        gwl::element_set all_set = gwl::element_set::all(n);
        j["derived"] = set_to_json(gwl::commutator_subgroup(g, all_set, all_set));
    }
    if (selected("series")) {
        auto fill = [&](const char* key, const gwl::series_report& s) {
            ordered_json out;
            for (const auto& t : s.terms) out["terms"].push_back(t.elements());
            out["quotients"] = s.quotient_labels;
            j[key] = std::move(out);
        };
        fill("derivedSeries", gwl::derived_series(g));
        fill("lowerCentralSeries", gwl::lower_central_series(g));
        fill("upperCentralSeries", gwl::upper_central_series(g));
        auto nc = gwl::nilpotency_class(g);
        j["nilpotencyClass"] = nc ? json(*nc) : json(nullptr);
    }
    if (selected("solvable")) j["solvableRadical"] = set_to_json(gwl::solvable_radical(g));
    if (selected("fitting")) j["fitting"] = set_to_json(gwl::fitting_subgroup(g));
    if (selected("abelian_radical"))
        j["abelianClosureElements"] = set_to_json(gwl::abelian_radical_elements(g));
    if (all) {
        for (int p : gwl::prime_divisors(n))
            j["piRadical{" + std::to_string(p) + "}"] = set_to_json(gwl::pi_radical(g, {p}));
    } else {
        for (const auto& w : want) {
            if (w.rfind("radical:pi=", 0) != 0) continue;
            std::vector<int> primes;
            std::stringstream ss(w.substr(11));
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) primes.push_back(std::stoi(tok));
            j["piRadical{" + w.substr(11) + "}"] = set_to_json(gwl::pi_radical(g, primes));
        }
    }
    if (selected("socle")) {
        j["socle"] = set_to_json(gwl::socle(g));
        json minimal = json::array();
        for (const auto& m : gwl::minimal_normal_subgroups(g)) minimal.push_back(m.elements());
        j["minimalNormalSubgroups"] = std::move(minimal);
    }
    if (selected("factors")) {
        auto report = gwl::composition_factors(g);
        j["compositionFactors"] = report.factors;
    }
    if (selected("special")) {
        auto flags = gwl::classify_special(g);
        j["special"] = {{"simple", flags.simple},
                        {"characteristicallySimple", flags.characteristically_simple},
                        {"almostSimpleCandidate", flags.almost_simple_candidate},
                        {"productOfSimples", flags.product_of_simples}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

gwl::subset_selector selector_by_name(const std::string& name) {
    if (name == "Id") return gwl::sel_id();
    if (name == "center") return gwl::sel_center();
    if (name == "derived") return gwl::sel_derived();
    if (name.rfind("pi=", 0) == 0) {
        std::vector<int> primes;
        std::stringstream ss(name.substr(3));
        std::string tok;
        while (std::getline(ss, tok, '+'))
            if (!tok.empty()) primes.push_back(std::stoi(tok));
        return gwl::sel_pi_elements(primes);
    }
    if (name.rfind("order=", 0) == 0) return gwl::sel_order_d(std::stoi(name.substr(6)));
    if (name.rfind("color=", 0) == 0) {
        std::vector<int> colors;
        std::stringstream ss(name.substr(6));
        std::string tok;
        while (std::getline(ss, tok, '+'))
            if (!tok.empty()) colors.push_back(std::stoi(tok));
        return gwl::sel_color_class(colors);
    }
    if (name.rfind("not:", 0) == 0) return gwl::sel_complement(selector_by_name(name.substr(4)));
    throw gwl::error(gwl::errc::parse_error, "unknown selector '" + name + "'");
}

int run_expr(const std::string& path, const std::vector<std::string>& selector_names,
             const std::vector<std::string>& relators, int exists_at, int forall_at,
             size_t max_listed) {
    gwl::colored_group cg = gwl::parse_group_file(path);
    gwl::group_expression e;
    for (const auto& name : selector_names) e.selectors.push_back(selector_by_name(name));
    for (const auto& text : relators) e.relators.push_back(gwl::word::parse(text));

    ordered_json j;
    j["group"] = cg.g.name();
    j["arity"] = e.arity();
    if (exists_at >= 0) {
        j["solExists"] = set_to_json(gwl::sol_exists(e, cg, exists_at - 1));
    } else if (forall_at >= 0) {
        j["solForall"] = set_to_json(gwl::sol_forall(e, cg, forall_at - 1));
    } else {
        auto sols = gwl::solutions(e, cg);
        j["solutionCount"] = sols.size();
        json listed = json::array();
        for (size_t i = 0; i < sols.size() && i < max_listed; ++i) listed.push_back(sols[i]);
        j["solutions"] = std::move(listed);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_decompose(const std::string& path, bool components, bool factors, bool filtration_flag) {
    gwl::colored_group cg = gwl::parse_group_file(path);
    const gwl::group& g = cg.g;
    bool everything = !components && !factors && !filtration_flag;

    ordered_json j;
    j["name"] = g.name();
    j["order"] = g.order();
    if ((components || everything) && !g.is_abelian()) {
        auto d = gwl::nonabelian_components(g);
        ordered_json out;
        out["m"] = d.m.elements();
        for (const auto& k : d.components) out["components"].push_back(k.elements());
        for (const auto& s : d.subgroups) out["subgroups"].push_back(s.elements());
        j["nonabelianComponents"] = std::move(out);
    }
    gwl::direct_decomposition dec = gwl::direct_factorization(g);
    if (factors || everything || filtration_flag) {
        ordered_json out = ordered_json::array();
        for (size_t i = 0; i < dec.factors.size(); ++i) {
            ordered_json f;
            f["elements"] = dec.factors[i].elements();
            f["order"] = dec.factors[i].size();
            f["abelian"] = bool(dec.abelian[i]);
            gwl::group fg = gwl::as_group(g, dec.factors[i]);
            f["table"] = fg.table_rows();
            out.push_back(std::move(f));
        }
        j["factors"] = std::move(out);
        j["maximalAbelianFactor"] = dec.maximal_abelian_factor.elements();
    }
    if (filtration_flag || everything) {
        gwl::filtration f = gwl::build_filtration(g, dec);
        ordered_json out;
        out["chain"] = ordered_json::array();
        for (const auto& term : f.chain) out["chain"].push_back(term.elements());
        out["sides"] = std::string(f.side.begin(), f.side.end());
        j["filtration"] = std::move(out);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_suite(const std::string& dir, const std::string& config_path, const std::string& out) {
    gwl::suite_config cfg;
    cfg.catalog_dir = dir;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw gwl::error(gwl::errc::parse_error, config_path + ": cannot open");
        json j = json::parse(in);
        if (j.contains("maxOrderForK")) {
            cfg.max_order_for_k.clear();
            for (auto& [k, v] : j.at("maxOrderForK").items())
                cfg.max_order_for_k[std::stoi(k)] = v.get<int>();
        }
        cfg.series_max_order = j.value("seriesMaxOrder", cfg.series_max_order);
        cfg.threads = j.value("threads", cfg.threads);
        cfg.run_pairs = j.value("runPairs", cfg.run_pairs);
        if (j.contains("invariants"))
            cfg.invariants = j.at("invariants").get<std::vector<std::string>>();
    }
    auto records = gwl::run_detectability_suite(cfg);
    std::vector<gwl::pair_record> pairs;
    if (cfg.run_pairs) pairs = gwl::run_pair_suite(cfg);
    if (!out.empty()) gwl::write_report(records, pairs, out);

    gwl::suite_summary sum = gwl::summarize(records, pairs);
    std::cout << "suite: " << sum.passed << " passed, " << sum.failed << " failed\n";
    for (auto& [row, counts] : sum.per_row)
        std::cout << "  " << row << ": " << counts.first << " pass, " << counts.second << " fail\n";
    return sum.failed == 0 ? 0 : 2;
}

int run_catalog(const std::string& out_dir, int max_order) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto battery = gwl::standard_catalog(max_order);
    for (const auto& cg : battery) {
        std::string stem = cg.g.name();
        for (char& c : stem)
            if (c == '(' || c == ')' || c == ',' || c == '^') c = '_';
        gwl::write_group_file(cg, (fs::path(out_dir) / (stem + ".mt")).string());
    }
    std::cout << "wrote " << battery.size() << " groups to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-WL refinement and exact invariants on multiplication-table groups"};
    app.require_subcommand(1);

    auto* mk = app.add_subcommand("make", "construct a group and write it to a file");
    std::string family, mk_out = "group.mt", mk_left, mk_right, mk_z1, mk_z2, mk_phi;
    int mk_n = 1, mk_m = 1, mk_p = 2, mk_e = 1;
    mk->add_option("family", family,
                   "cyclic|dihedral|quaternion8|symmetric|elementary_abelian|product|central_product")
        ->required();
    mk->add_option("--n", mk_n, "cyclic/dihedral parameter");
    mk->add_option("--m", mk_m, "symmetric degree");
    mk->add_option("--p", mk_p, "elementary abelian prime");
    mk->add_option("--e", mk_e, "elementary abelian exponent");
    mk->add_option("--left", mk_left, "left factor file (products)");
    mk->add_option("--right", mk_right, "right factor file (products)");
    mk->add_option("--z1", mk_z1, "amalgamated central subgroup of the left factor, e.g. 0,4");
    mk->add_option("--z2", mk_z2, "amalgamated central subgroup of the right factor");
    mk->add_option("--phi", mk_phi, "isomorphism z1->z2 as from:to pairs, e.g. 0:0,4:2");
    mk->add_option("--out", mk_out, "output path (.mt or .json)");

    auto* rf = app.add_subcommand("refine", "stable k-WL coloring of one group");
    std::string rf_group, rf_version = "II", rf_out;
    int rf_k = 2, rf_threads = 0;
    rf->add_option("--group", rf_group)->required();
    rf->add_option("--k", rf_k)->required();
    rf->add_option("--version", rf_version, "I or II");
    rf->add_option("--out", rf_out, "write the JSON result here instead of stdout");
    rf->add_option("--threads", rf_threads);

    auto* cp = app.add_subcommand("compare", "joint k-WL run on two groups");
    std::string cp_a, cp_b, cp_version = "II";
    int cp_k = 2, cp_threads = 0;
    cp->add_option("a", cp_a)->required();
    cp->add_option("b", cp_b)->required();
    cp->add_option("--k", cp_k)->required();
    cp->add_option("--version", cp_version);
    cp->add_option("--threads", cp_threads);

    auto* gm = app.add_subcommand("game", "solve the bijective pebble game");
    std::string gm_a, gm_b, gm_version = "II", gm_config, gm_chain;
    int gm_pebbles = 3, gm_max_order = 12;
    gm->add_option("a", gm_a)->required();
    gm->add_option("b", gm_b)->required();
    gm->add_option("--pebbles", gm_pebbles)->required();
    gm->add_option("--version", gm_version);
    gm->add_option("--config", gm_config, "initial configuration g1,h1;g2,h2;...");
    gm->add_option("--chain", gm_chain, "JSON file with g_chain / h_chain level lists");
    gm->add_option("--max-order", gm_max_order);

    auto* iv = app.add_subcommand("invariants", "exact invariant profile of one group");
    std::string iv_file, iv_select;
    bool iv_all = false;
    iv->add_option("file", iv_file)->required();
    iv->add_flag("--all", iv_all);
    iv->add_option("--select", iv_select, "e.g. center,derived,radical:pi=2,3,socle,factors");

    auto* dc = app.add_subcommand("decompose", "non-abelian components, factors, filtration");
    std::string dc_file;
    bool dc_components = false, dc_factors = false, dc_filtration = false;
    dc->add_option("file", dc_file)->required();
    dc->add_flag("--components", dc_components);
    dc->add_flag("--factors", dc_factors);
    dc->add_flag("--filtration", dc_filtration);

    auto* ex = app.add_subcommand("expr", "evaluate a group expression");
    std::string ex_file;
    std::vector<std::string> ex_selectors, ex_relators;
    int ex_exists = -1, ex_forall = -1;
    size_t ex_max = 100;
    ex->add_option("file", ex_file)->required();
    ex->add_option("--selector", ex_selectors,
                   "Id|center|derived|pi=2+3|order=d|color=c+d|not:<sel>, one per coordinate")
        ->required();
    ex->add_option("--relator", ex_relators, "word over x1..xt, e.g. 'x1 x2 x1^-1 x2^-1'");
    ex->add_option("--exists", ex_exists, "project: coordinates occurring in some solution (1-based)");
    ex->add_option("--forall", ex_forall, "project: the universal coordinate set (1-based)");
    ex->add_option("--max-listed", ex_max);

    auto* st = app.add_subcommand("suite", "detectability suite over a catalog directory");
    std::string st_dir, st_config, st_out;
    st->add_option("--dir", st_dir)->required();
    st->add_option("--config", st_config, "suite.json");
    st->add_option("--out", st_out, "report.json");

    auto* ct = app.add_subcommand("catalog", "emit the standard constructed battery");
    std::string ct_out = "catalog";
    int ct_max = 64;
    ct->add_option("--out", ct_out);
    ct->add_option("--max-order", ct_max);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mk->parsed())
            return run_make(family, mk_n, mk_m, mk_p, mk_e, mk_left, mk_right, mk_z1, mk_z2, mk_phi,
                            mk_out);
        if (rf->parsed()) return run_refine(rf_group, rf_k, rf_version, rf_out, rf_threads);
        if (cp->parsed()) return run_compare(cp_a, cp_b, cp_k, cp_version, cp_threads);
        if (gm->parsed())
            return run_game(gm_a, gm_b, gm_pebbles, gm_version, gm_config, gm_chain, gm_max_order);
        if (iv->parsed()) return run_invariants(iv_file, iv_all, iv_select);
        if (dc->parsed()) return run_decompose(dc_file, dc_components, dc_factors, dc_filtration);
        if (ex->parsed())
            return run_expr(ex_file, ex_selectors, ex_relators, ex_exists, ex_forall, ex_max);
        if (st->parsed()) return run_suite(st_dir, st_config, st_out);
        if (ct->parsed()) return run_catalog(ct_out, ct_max);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
