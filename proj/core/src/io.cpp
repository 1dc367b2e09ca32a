#include "gwl/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gwl {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
    throw error(errc::parse_error, origin + ":" + std::to_string(line) + ": " + msg);
}

colored_group from_json(const json& j, const std::string& origin) {
    if (!j.contains("order") || !j.contains("table"))
        throw error(errc::parse_error, origin + ": missing 'order' or 'table'");
    int n = j.at("order").get<int>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (int(table.size()) != n) throw error(errc::parse_error, origin + ": table size != order");
    std::string name = j.value("name", "");
    group g = group::validate(table, name);
    colored_group cg = colored_group::uncolored(std::move(g));
    if (j.contains("colors")) {
        cg.colors = j.at("colors").get<std::vector<int>>();
        if (int(cg.colors.size()) != n)
            throw error(errc::parse_error, origin + ": colors length != order");
    }
    return cg;
}

} // namespace

colored_group parse_group_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string name;

    auto next_content_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '#') {
                const std::string tag = "# name:";
                if (line.rfind(tag, 0) == 0) {
                    name = line.substr(tag.size());
                    while (!name.empty() && name.front() == ' ') name.erase(name.begin());
                }
                continue;
            }
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            return true;
        }
        return false;
    };

    if (!next_content_line()) throw error(errc::parse_error, origin + ": empty file");
    int n = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> n) || n <= 0) parse_fail(origin, lineno, "expected positive order");
        std::string extra;
        if (ls >> extra) parse_fail(origin, lineno, "trailing tokens after order");
    }

    std::vector<int> colors;
    if (!next_content_line()) parse_fail(origin, lineno, "missing table rows");
    if (line.rfind("colors:", 0) == 0) {
        std::istringstream ls(line.substr(7));
        int c;
        while (ls >> c) colors.push_back(c);
        if (int(colors.size()) != n) parse_fail(origin, lineno, "colors line must list exactly n integers");
        if (!next_content_line()) parse_fail(origin, lineno, "missing table rows");
    }

    std::vector<std::vector<int>> table;
    table.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (i > 0 && !next_content_line()) parse_fail(origin, lineno, "expected " + std::to_string(n) + " rows");
        std::istringstream ls(line);
        std::vector<int> row;
        int v;
        while (ls >> v) row.push_back(v);
        if (int(row.size()) != n)
            parse_fail(origin, lineno,
                       "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n));
        table.push_back(std::move(row));
    }

    group g = group::validate(table, name);
    colored_group cg = colored_group::uncolored(std::move(g));
    if (!colors.empty()) cg.colors = std::move(colors);
    return cg;
}

colored_group parse_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();

    size_t first = text.find_first_not_of(" \t\r\n");
    bool looks_json = first != std::string::npos && text[first] == '{';
    if (looks_json || std::filesystem::path(path).extension() == ".json") {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw error(errc::parse_error, path + ": " + e.what());
        }
        return from_json(j, path);
    }
    return parse_group_text(text, path);
}

std::string write_group_text(const colored_group& cg) {
    std::ostringstream out;
    const int n = cg.g.order();
    if (!cg.g.name().empty()) out << "# name: " << cg.g.name() << "\n";
    out << n << "\n";
    bool uniform = std::all_of(cg.colors.begin(), cg.colors.end(), [](int c) { return c == 0; });
    if (!uniform) {
        out << "colors:";
        for (int c : cg.colors) out << ' ' << c;
        out << "\n";
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ' ';
            out << cg.g.mul(i, j);
        }
        out << "\n";
    }
    return out.str();
}

void write_group_file(const colored_group& cg, const std::string& path) {
    if (std::filesystem::path(path).extension() == ".json") {
        json j;
        j["order"] = cg.g.order();
        j["table"] = cg.g.table_rows();
        bool uniform = std::all_of(cg.colors.begin(), cg.colors.end(), [](int c) { return c == 0; });
        if (!uniform) j["colors"] = cg.colors;
        if (!cg.g.name().empty()) j["name"] = cg.g.name();
        std::ofstream out(path);
        if (!out) throw error(errc::parse_error, path + ": cannot open for writing");
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw error(errc::parse_error, path + ": cannot open for writing");
    out << write_group_text(cg);
}

std::vector<catalog_entry> scan_catalog(const std::string& dir) {
    std::vector<catalog_entry> entries;
    if (!std::filesystem::is_directory(dir)) return entries;
    std::vector<std::string> paths;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto ext = e.path().extension();
        if (ext == ".mt" || ext == ".json") paths.push_back(e.path().string());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
        colored_group cg = parse_group_file(p);
        catalog_entry entry;
        entry.path = p;
        entry.order = cg.g.order();
        entry.name = cg.g.name().empty() ? std::filesystem::path(p).stem().string() : cg.g.name();
        // smallgroup_<order>_<index> file names carry a library id
        std::string stem = std::filesystem::path(p).stem().string();
        if (stem.rfind("smallgroup_", 0) == 0) {
            int o = 0, idx = 0;
            if (sscanf(stem.c_str(), "smallgroup_%d_%d", &o, &idx) == 2)
                entry.catalog_id = std::make_pair(o, idx);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace gwl
