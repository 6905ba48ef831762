#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isofib/group.hpp"

namespace isofib {

// Parsed form of the key-value tree config format:
//   key arg1 arg2 ...          a leaf entry
//   key arg1 ... {             a block entry; children until the matching
//     ...                      closing brace on its own line
//   }
// '#' starts a comment. Keys may repeat (group, factor, action, ...).
struct ConfigNode {
    std::string key;
    std::vector<std::string> args;
    std::vector<ConfigNode> children;

    const ConfigNode* child(const std::string& k) const;
    std::vector<const ConfigNode*> all(const std::string& k) const;
};

ConfigNode parse_config_tree(const std::string& text);

// One cover block: explicit periods + vector, or an enumerate directive.
struct CoverConfig {
    int base_genus = 0;
    std::vector<int> periods;
    std::string vector_text;   // "[x, x*y, ...]" when explicit
    bool enumerate = false;
    int max_points = 0;        // enumerate: largest number of branch points
    int max_period = 0;        // enumerate: largest period
};

struct FilterConfig {
    std::optional<long> pg, q, K2;
    int min_genus = 2;  // lower bound for both curve genera in search output
};

struct AnalysisConfig {
    std::vector<GroupSpec> groups;  // one for analyze, the catalog for search
    std::vector<std::string> group_texts;  // config snippets for report echo
    CoverConfig cover1, cover2;
    int base_choice = 2;
    std::string format = "text";   // default output format: text | json | csv
    FilterConfig filter;
    int jobs = 0;                  // 0: take ISOFIB_JOBS, else hardware default
    std::uint64_t node_budget = 50'000'000;
    int max_group_order = FiniteGroup::kDefaultOrderCap;
};

GroupSpec parse_group_spec(const ConfigNode& node);

AnalysisConfig parse_config(const std::string& text);
AnalysisConfig load_config_file(const std::string& path);

}  // namespace isofib
