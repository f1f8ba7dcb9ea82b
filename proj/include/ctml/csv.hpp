#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ctml {

/// Splits delimited text into a table of cells. Quoting is not interpreted;
/// qPCR exports do not quote. Trailing '\r' is stripped per line.
std::vector<std::vector<std::string>> split_delimited(const std::string& text, char delim);

/// Picks ',' or '\t' by which occurs in the first line (tab wins if both).
char detect_delimiter(const std::string& text);

std::string trim(const std::string& s);
std::string to_lower(std::string s);

/// Strict decimal parse ('.' separator only, optional exponent). Returns
/// nullopt for anything else, including locale-style commas.
std::optional<double> parse_number(const std::string& token);

/// Shortest representation that round-trips exactly (std::to_chars).
std::string format_exact(double v);

/// Six significant digits, the convention for analysis output tables.
std::string format_sig6(double v);

/// Writes text to a file; throws std::runtime_error with the path on failure.
void write_file(const std::string& path, const std::string& content);

/// Reads a whole file; throws std::runtime_error with the path on failure.
std::string read_file(const std::string& path);

}  // namespace ctml
