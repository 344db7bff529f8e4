#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace biblio {

/// Analysis level shared by credit tallies, networks and reports.
enum class Level { author, institution, country };

inline constexpr Level kAllLevels[] = {Level::author, Level::institution, Level::country};

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view text);

/// Entity id used for credits whose affiliation could not be resolved.
inline constexpr std::string_view kUnknownEntity = "UNKNOWN";

enum class Severity { info, warning, error };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::warning;
  std::string location;  // "file:line", "record <id>", or a stage name
  std::string message;

  /// `LEVEL<TAB>location<TAB>message`
  std::string to_log_line() const;
};

/// Append-only sink for non-fatal findings. Stages never abort on these.
class Diagnostics {
public:
  void info(std::string location, std::string message);
  void warn(std::string location, std::string message);
  void error(std::string location, std::string message);
  void add(Diagnostic d) { items_.push_back(std::move(d)); }
  void append(const Diagnostics& other);

  const std::vector<Diagnostic>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t count(Severity severity) const;
  bool has_warnings() const { return count(Severity::warning) + count(Severity::error) > 0; }

  std::string to_log() const;

private:
  std::vector<Diagnostic> items_;
};

/// Fatal problem with an input file (unreadable, empty export).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Fatal problem with configuration (bad table, conflicting overrides).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// String helpers used across modules.
std::string trim(std::string_view s);
std::string rtrim(std::string_view s);
std::string to_lower_ascii(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool starts_with_ci(std::string_view s, std::string_view prefix);
bool iequals(std::string_view a, std::string_view b);

/// Replaces Latin-1 and Latin Extended-A letters with their unaccented ASCII
/// base letter; other non-ASCII code points are dropped.
std::string fold_diacritics(std::string_view utf8);

/// 64-bit FNV-1a; stable across platforms, used for synthesized ids and digests.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

/// Locale-independent fixed-point formatting ("-0.000" is printed as "0.000").
std::string format_fixed(double value, int decimals);

}  // namespace biblio
