#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace biblio {

struct TableRow {
  std::string key;
  std::string value;
};

/// Parses the shared `raw<TAB>canonical` format. Blank lines and lines
/// starting with '#' are ignored. A non-empty row without a tab, or with an
/// empty column, is a ConfigError naming `source` and the line.
std::vector<TableRow> parse_two_column(std::string_view text, std::string_view source);

std::vector<TableRow> load_two_column(const std::filesystem::path& path);

/// Reads a whole file; throws InputError naming the path if unreadable.
std::string read_file(const std::filesystem::path& path);

/// Shipped default tables (the files under data/, embedded at build time).
namespace default_tables {
std::string_view countries();
std::string_view institution_abbreviations();
std::string_view institution_aliases();
std::string_view regions();
}  // namespace default_tables

}  // namespace biblio
