#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gpbench {

// Shortest round-trip decimal form. The single float formatter used for all
// file output, so reruns with the same seed are byte-identical.
std::string format_double(double v);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);
bool parse_double(std::string_view s, double& out);

// Shell-style name matching with '*' and '?'.
bool glob_match(std::string_view pattern, std::string_view name);

std::string read_text_file(const std::string& path);                  // throws DataError
void write_text_file(const std::string& path, std::string_view text); // throws DataError

} // namespace gpbench
