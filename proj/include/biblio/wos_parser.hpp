#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/common.hpp"

namespace biblio {

// ---------------------------------------------------------------------------
// Raw tagged records
// ---------------------------------------------------------------------------

/// One field of a tagged record. `lines` holds the value line plus every
/// continuation line, without the tag or the three-space indent.
struct RawField {
  std::string tag;
  std::vector<std::string> lines;
};

struct SourceSpan {
  std::string file;
  std::size_t first_line = 0;
  std::size_t last_line = 0;
};

struct RawRecord {
  std::vector<RawField> fields;  // in source order; never contains ER or EF
  SourceSpan span;

  const RawField* find(std::string_view tag) const;
  /// Lines of `tag` joined with single spaces; empty if the tag is absent.
  std::string joined(std::string_view tag) const;
  /// One trimmed, non-empty value per line (AU/AF/C1 style).
  std::vector<std::string> values(std::string_view tag) const;
};

/// A whole export: file-level header fields (FN, VR) and the records.
struct ExportFile {
  std::vector<RawField> header;
  std::vector<RawRecord> records;
  bool tab_delimited = false;
};

struct ParseResult {
  ExportFile file;
  Diagnostics diagnostics;
};

/// Parses a WoS export (tagged plain text, or tab-delimited when the first
/// line contains a tab). Malformed input yields diagnostics, never an abort:
///   - "missing EF"           the file ends without an EF line
///   - "malformed line"       a line that is neither a tag line nor a
///                            three-space continuation (line is skipped)
///   - "unterminated record"  fields after the last ER (record is dropped)
/// Throws InputError("empty export ...") when no record is found.
ParseResult parse_export(std::string_view text, std::string_view source = "<input>");

/// Reads and parses a file; throws InputError naming the path if unreadable.
ParseResult parse_export_file(const std::filesystem::path& path);

/// Writes a record in tagged form, one `TAG value` line per field followed
/// by three-space continuations and a closing `ER` line.
std::string serialize_record(const RawRecord& record);

/// Writes header, records (each followed by a blank line) and `EF`.
std::string serialize_export(const ExportFile& file);

// ---------------------------------------------------------------------------
// Normalized publications
// ---------------------------------------------------------------------------

enum class DocType { article, review, proceedings_paper, editorial, book, book_chapter, other };

inline constexpr DocType kAllDocTypes[] = {DocType::article,     DocType::review,
                                           DocType::proceedings_paper, DocType::editorial,
                                           DocType::book,        DocType::book_chapter,
                                           DocType::other};

std::string_view to_string(DocType type);

/// Case-insensitive DT mapping. Combined values ("Article; Proceedings Paper")
/// map to proceedings_paper when that component is present, else to the
/// first recognised component.
DocType parse_doc_type(std::string_view dt);

using AuthorName = std::string;

struct AddressEntry {
  std::vector<AuthorName> linked_authors;
  std::string institution_raw;
  std::string country_raw;
  std::string full_text;
};

struct ReprintEntry {
  AuthorName author;
  std::string institution_raw;
  std::string country_raw;
};

struct Publication {
  std::string id;
  std::string title;
  std::optional<int> year;
  DocType doc_type = DocType::other;
  std::string source;
  long long times_cited = 0;
  std::string language;
  std::vector<AuthorName> authors;     // AU, byline order
  std::vector<AuthorName> full_names;  // AF, aligned with authors when present
  std::vector<AddressEntry> addresses;
  std::vector<ReprintEntry> reprint_entries;

  bool anonymous() const { return authors.empty(); }
};

/// Maps one raw record to a Publication. Records without AU/AF come back
/// with an empty author list and an "anonymous record" diagnostic.
Publication record_to_publication(const RawRecord& record, Diagnostics& diags);

/// Splits a joined RP value into corresponding-author clauses.
std::vector<ReprintEntry> parse_reprint(std::string_view rp_text, Diagnostics& diags,
                                        std::string_view location = "RP");

/// One entry per C1 segment; `[A; B] Inst, ..., Country` fills linked_authors.
std::vector<AddressEntry> parse_addresses(const std::vector<std::string>& c1_lines,
                                          Diagnostics& diags,
                                          std::string_view location = "C1");

/// Final comma token of an address, trimmed, with a trailing period removed.
/// US "ST 12345 USA" style tokens collapse to "USA".
std::string address_country_token(std::string_view address);

/// Parses every file and converts every record. Throws InputError on an
/// unreadable or empty file.
std::vector<Publication> load_publications(const std::vector<std::filesystem::path>& paths,
                                           Diagnostics& diags);

}  // namespace biblio
