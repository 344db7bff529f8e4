#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biblio/common.hpp"
#include "biblio/tables.hpp"
#include "biblio/wos_parser.hpp"

namespace biblio {

struct FilterConfig {
  long long min_citations = 100;  // inclusive: times_cited >= min_citations is kept
  bool exclude_anonymous = true;
  std::optional<std::pair<int, int>> year_range;  // inclusive on both ends

  /// Throws ConfigError on a negative threshold or an inverted year range.
  void validate() const;
  bool accepts(const Publication& pub) const;
};

struct CanonicalAuthor {
  std::string id;            // normalized key of the longest merged variant
  std::string display_name;  // most frequent AF form, else AU form
  std::set<std::string> variants;
};

struct AuthorOverride {
  std::string raw;
  std::string canonical;
};

std::vector<AuthorOverride> overrides_from_rows(const std::vector<TableRow>& rows);

/// Country, abbreviation and alias tables. Construction validates that every
/// canonical value maps to itself so normalization is idempotent.
class NormalizationTables {
public:
  static NormalizationTables defaults();
  static NormalizationTables from_rows(const std::vector<TableRow>& countries,
                                       const std::vector<TableRow>& abbreviations,
                                       const std::vector<TableRow>& aliases);

  const std::map<std::string, std::string>& countries() const { return countries_; }
  const std::map<std::string, std::string>& abbreviations() const { return abbreviations_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }
  /// Exact, then case-insensitive, country table lookup.
  std::optional<std::string> lookup_country(const std::string& raw) const;

private:
  std::map<std::string, std::string> countries_;
  std::map<std::string, std::string> countries_ci_;  // lowercase raw -> canonical
  std::map<std::string, std::string> abbreviations_;
  std::map<std::string, std::string> aliases_;
};

struct Corpus {
  std::vector<Publication> publications;
  std::map<std::string, std::string> canonical_authors;  // raw AU/RP name -> author id
  std::map<std::string, CanonicalAuthor> authors;        // author id -> author
  std::map<std::string, std::string> institutions;       // raw institution -> canonical
  std::map<std::string, std::string> countries;          // raw country -> canonical
  FilterConfig filter;

  /// Canonical id for a raw author string; falls back to the normalized key.
  std::string author_id(const std::string& raw) const;
  std::string display_name(const std::string& author_id) const;
  /// Canonical institution/country; UNKNOWN for an empty raw value.
  std::string institution_of(const std::string& raw) const;
  std::string country_of(const std::string& raw) const;
};

/// Address entries of `pub` linked to byline position `author_index` through
/// C1 brackets (matched against AF, AU or the normalized key).
std::vector<std::size_t> linked_addresses(const Publication& pub, std::size_t author_index);

/// Canonical institution (institution level) or country (otherwise) of an address.
std::string address_entity(const Corpus& corpus, const AddressEntry& address, Level level);

/// Distinct entities of a publication in first-seen order: canonical authors
/// at author level; otherwise the entities of every C1 address, falling back
/// to RP addresses, then {UNKNOWN}.
std::vector<std::string> publication_entities(const Corpus& corpus, const Publication& pub,
                                              Level level);

/// Keeps publications passing `cfg`. Canonical maps are left empty; see
/// canonicalize(). An empty result is reported as a warning.
Corpus apply_exclusions(std::vector<Publication> pubs, const FilterConfig& cfg, Diagnostics& diags);

/// "Cumming, Douglas J." -> "cumming, DJ": lowercase last name, uppercase
/// initials, punctuation and diacritics stripped.
std::string normalize_author_name(std::string_view raw);

/// Prefix-compatible initials merge unless a shorter key is ambiguous.
/// Overrides (raw or normalized) always win. Throws ConfigError when one raw
/// name is overridden to two different targets.
std::map<std::string, std::string> disambiguate_names(const std::vector<std::string>& raw_names,
                                                      const std::vector<AuthorOverride>& overrides,
                                                      Diagnostics& diags);

/// disambiguate_names over every AU and RP name in the corpus.
std::map<std::string, std::string> disambiguate_authors(const Corpus& corpus,
                                                        const std::vector<AuthorOverride>& overrides,
                                                        Diagnostics& diags);

std::string extract_country(std::string_view country_raw, const NormalizationTables& tables,
                            Diagnostics* diags = nullptr);

std::string normalize_institution(std::string_view institution_raw,
                                  const NormalizationTables& tables);

/// Fills the canonical author, institution and country maps.
void canonicalize(Corpus& corpus, const NormalizationTables& tables,
                  const std::vector<AuthorOverride>& overrides, Diagnostics& diags);

/// apply_exclusions followed by canonicalize.
Corpus build_corpus(std::vector<Publication> pubs, const FilterConfig& cfg,
                    const NormalizationTables& tables,
                    const std::vector<AuthorOverride>& overrides, Diagnostics& diags);

struct CorpusStats {
  std::size_t publications = 0;
  std::map<DocType, std::size_t> doc_types;
  std::size_t authors = 0;
  std::size_t single_authored_authors = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

struct TimelinePeriod {
  int from = 0;
  int to = 0;  // inclusive last year
  std::size_t pub_count = 0;
  double mean_citations = 0.0;

  std::string label() const;
};

struct Timeline {
  std::vector<TimelinePeriod> periods;
  /// Publications without a year or outside every period.
  std::size_t unknown_count = 0;
};

/// Breakpoints b0 < b1 < ... < bn give periods [b0, b1), ..., [bn-1, bn).
/// Throws std::invalid_argument unless strictly increasing with >= 2 entries.
Timeline summarize_timeline(const Corpus& corpus, const std::vector<int>& breakpoints);

/// 1991-1995, 1996-2000, 2001-2005, 2006-2010, 2011-2017.
std::vector<int> default_breakpoints();

}  // namespace biblio
