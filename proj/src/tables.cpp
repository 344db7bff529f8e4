#include "biblio/tables.hpp"

#include <fstream>
#include <sstream>

#include "biblio/common.hpp"

namespace biblio {

std::vector<TableRow> parse_two_column(std::string_view text, std::string_view source) {
  std::vector<TableRow> rows;
  std::size_t line_no = 0;
  for (const auto& raw_line : split(text, '\n')) {
    ++line_no;
    std::string line = rtrim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                        ": expected two tab-separated columns");
    }
    TableRow row{trim(line.substr(0, tab)), trim(line.substr(tab + 1))};
    if (row.key.empty() || row.value.empty()) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": empty column");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("I/O error while reading: " + path.string());
  return ss.str();
}

std::vector<TableRow> load_two_column(const std::filesystem::path& path) {
  return parse_two_column(read_file(path), path.string());
}

}  // namespace biblio
