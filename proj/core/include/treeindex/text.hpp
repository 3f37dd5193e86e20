#pragma once

#include <string>

namespace treeindex {

// Shortest decimal text that parses back to exactly the same double.
// Infinities render as "inf" / "-inf".
std::string format_double(double v);
void append_double(std::string& out, double v);

// Fixed six decimal places, the rendering used in human-facing report rows
// ("0.000000", "31.010000"). Infinities render as "inf".
std::string format_fixed6(double v);

// Strict double parse of a whole string (leading '+' allowed, surrounding
// whitespace not). Returns false on trailing garbage or empty input.
bool parse_double(const std::string& text, double& out);

}  // namespace treeindex
