#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwl/group.hpp"

namespace gwl {

struct catalog_entry {
    std::string path;
    std::string name;
    int order = 0;
    std::optional<std::pair<int, int>> catalog_id; // (order, index) when known
};

/// Reads a ".mt" table file or its JSON mirror, validates the table and
/// returns the colored group (uniform color 0 when no colors are given).
colored_group parse_group_file(const std::string& path);

/// Parses the ".mt" text format from a string (used by tests and stdin).
colored_group parse_group_text(const std::string& text, const std::string& origin = "<text>");

void write_group_file(const colored_group& cg, const std::string& path);
std::string write_group_text(const colored_group& cg);

std::vector<catalog_entry> scan_catalog(const std::string& dir);

} // namespace gwl
