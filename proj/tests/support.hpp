#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "biblio/common.hpp"
#include "biblio/tables.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(BIBLIO_FIXTURES) / name;
}

inline std::string fixture_text(const std::string& name) { return biblio::read_file(fixture(name)); }

inline std::vector<std::string> messages(const biblio::Diagnostics& d) {
  std::vector<std::string> out;
  for (const auto& item : d.items()) out.push_back(item.message);
  return out;
}

inline std::size_t count_message(const biblio::Diagnostics& d, const std::string& needle) {
  std::size_t n = 0;
  for (const auto& item : d.items()) {
    if (item.message.find(needle) != std::string::npos) ++n;
  }
  return n;
}

/// Minimal tagged record builder for hand-made corpora.
struct RecordText {
  std::vector<std::pair<std::string, std::vector<std::string>>> fields;

  RecordText& add(const std::string& tag, std::vector<std::string> lines) {
    fields.push_back({tag, std::move(lines)});
    return *this;
  }

  std::string str() const {
    std::string out;
    for (const auto& [tag, lines] : fields) {
      for (std::size_t i = 0; i < lines.size(); ++i) {
        out += (i == 0 ? tag + " " : std::string("   ")) + lines[i] + "\n";
      }
    }
    return out + "ER\n";
  }
};

inline std::string export_text(const std::vector<RecordText>& records) {
  std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
  for (const auto& r : records) out += r.str() + "\n";
  return out + "EF\n";
}

/// Runs the CLI with `args` (already quoted), stdout/stderr to `log`.
inline int run_cli(const std::string& args, const std::filesystem::path& log) {
  const std::string cmd = std::string("\"") + BIBLIO_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

/// Relative path -> file bytes for every regular file under `root`.
inline std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    out[std::filesystem::relative(entry.path(), root).generic_string()] = biblio::read_file(entry.path());
  }
  return out;
}

/// Fresh scratch directory under the working directory.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::current_path() / "scratch" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string quote(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace testing
