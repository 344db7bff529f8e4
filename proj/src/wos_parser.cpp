#include "biblio/wos_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "biblio/tables.hpp"

namespace biblio {

// ---------------------------------------------------------------------------
// RawRecord accessors
// ---------------------------------------------------------------------------

const RawField* RawRecord::find(std::string_view tag) const {
  for (const auto& f : fields) {
    if (f.tag == tag) return &f;
  }
  return nullptr;
}

std::string RawRecord::joined(std::string_view tag) const {
  const RawField* f = find(tag);
  if (f == nullptr) return {};
  std::string out;
  for (const auto& line : f->lines) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<std::string> RawRecord::values(std::string_view tag) const {
  std::vector<std::string> out;
  const RawField* f = find(tag);
  if (f == nullptr) return out;
  for (const auto& line : f->lines) {
    std::string t = trim(line);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tagged-format parsing
// ---------------------------------------------------------------------------

namespace {

bool is_tag_char(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

bool is_tag_line(std::string_view line) {
  if (line.size() < 2 || !is_tag_char(line[0]) || !is_tag_char(line[1])) return false;
  return line.size() == 2 || line[2] == ' ';
}

bool is_continuation(std::string_view line) {
  return line.size() > 3 && line.substr(0, 3) == "   " && line[3] != ' ';
}

std::string location(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines = split(text, '\n');
  for (auto& l : lines) l = rtrim(l);
  // A trailing newline produces one empty element; keep counts aligned with
  // editor line numbers by leaving it in place (it is blank and ignored).
  return lines;
}

/// Splits on `sep` outside square brackets.
std::vector<std::string> split_outside_brackets(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    else if (s[i] == ']' && depth > 0) --depth;
    else if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  out.erase(std::remove_if(out.begin(), out.end(), [](const std::string& x) { return x.empty(); }),
            out.end());
  return out;
}

ParseResult parse_tagged(const std::vector<std::string>& lines, std::string_view source) {
  ParseResult result;
  auto& diags = result.diagnostics;
  auto& file = result.file;

  bool in_record = false;
  bool saw_ef = false;
  RawRecord current;
  std::size_t last_content_line = 0;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t n = i + 1;
    const std::string& line = lines[i];
    if (line.empty()) continue;
    last_content_line = n;
    if (saw_ef) {
      diags.warn(location(source, n), "content after EF");
      continue;
    }
    if (is_tag_line(line)) {
      std::string tag = line.substr(0, 2);
      std::string value = line.size() > 3 ? line.substr(3) : std::string{};
      if (tag == "EF") {
        if (in_record) {
          diags.warn(location(source, current.span.first_line), "unterminated record");
          in_record = false;
        }
        saw_ef = true;
        continue;
      }
      if (tag == "ER") {
        if (!in_record) {
          diags.warn(location(source, n), "ER without record");
          continue;
        }
        current.span.last_line = n;
        file.records.push_back(std::move(current));
        current = RawRecord{};
        in_record = false;
        continue;
      }
      if (!in_record) {
        if ((tag == "FN" || tag == "VR") && file.records.empty()) {
          file.header.push_back({tag, {value}});
          continue;
        }
        in_record = true;
        current.span = SourceSpan{std::string(source), n, n};
      }
      current.fields.push_back({std::move(tag), {std::move(value)}});
      continue;
    }
    if (is_continuation(line)) {
      if (in_record && !current.fields.empty()) {
        current.fields.back().lines.push_back(line.substr(3));
      } else if (!in_record && file.records.empty() && !file.header.empty()) {
        file.header.back().lines.push_back(line.substr(3));
      } else {
        diags.warn(location(source, n), "malformed line");
      }
      continue;
    }
    diags.warn(location(source, n), "malformed line");
  }

  if (in_record) diags.warn(location(source, current.span.first_line), "unterminated record");
  if (!saw_ef) diags.warn(location(source, last_content_line), "missing EF");
  return result;
}

bool is_multi_valued(std::string_view tag) { return tag == "AU" || tag == "AF" || tag == "C1"; }

ParseResult parse_tab_delimited(const std::vector<std::string>& lines, std::string_view source) {
  ParseResult result;
  result.file.tab_delimited = true;
  std::vector<std::string> header = split(lines.front(), '\t');
  for (auto& h : header) h = trim(h);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t n = i + 1;
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> cols = split(lines[i], '\t');
    if (cols.size() > header.size()) {
      // Trailing empty columns are common; only complain about real data.
      bool extra_data = std::any_of(cols.begin() + static_cast<long>(header.size()), cols.end(),
                                    [](const std::string& c) { return !trim(c).empty(); });
      if (extra_data) result.diagnostics.warn(location(source, n), "column count mismatch");
    }
    RawRecord rec;
    rec.span = SourceSpan{std::string(source), n, n};
    for (std::size_t c = 0; c < std::min(cols.size(), header.size()); ++c) {
      const std::string& tag = header[c];
      std::string value = trim(cols[c]);
      if (value.empty() || tag.size() != 2 || !is_tag_char(tag[0]) || !is_tag_char(tag[1])) continue;
      RawField field{tag, {}};
      if (is_multi_valued(tag)) {
        field.lines = split_outside_brackets(value, ';');
      } else {
        field.lines.push_back(value);
      }
      rec.fields.push_back(std::move(field));
    }
    result.file.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace

ParseResult parse_export(std::string_view text, std::string_view source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::string> lines = split_lines(text);
  while (!lines.empty() && lines.front().empty()) lines.erase(lines.begin());

  ParseResult result;
  if (!lines.empty() && lines.front().find('\t') != std::string::npos) {
    result = parse_tab_delimited(lines, source);
  } else {
    result = parse_tagged(lines, source);
  }
  if (result.file.records.empty()) {
    throw InputError("empty export: no records in " + std::string(source));
  }
  return result;
}

ParseResult parse_export_file(const std::filesystem::path& path) {
  return parse_export(read_file(path), path.string());
}

std::string serialize_record(const RawRecord& record) {
  std::string out;
  for (const auto& f : record.fields) {
    for (std::size_t i = 0; i < f.lines.size(); ++i) {
      if (i == 0) {
        out += f.tag;
        if (!f.lines[0].empty()) {
          out += ' ';
          out += f.lines[0];
        }
      } else {
        out += "   ";
        out += f.lines[i];
      }
      out += '\n';
    }
    if (f.lines.empty()) {
      out += f.tag;
      out += '\n';
    }
  }
  out += "ER\n";
  return out;
}

std::string serialize_export(const ExportFile& file) {
  std::string out;
  RawRecord header_only;
  header_only.fields = file.header;
  std::string header = serialize_record(header_only);
  header.resize(header.size() - 3);  // drop the "ER\n" the record writer adds
  out += header;
  for (const auto& r : file.records) {
    out += serialize_record(r);
    out += '\n';
  }
  out += "EF\n";
  return out;
}

// ---------------------------------------------------------------------------
// Record normalization
// ---------------------------------------------------------------------------

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::proceedings_paper: return "proceedings_paper";
    case DocType::editorial: return "editorial";
    case DocType::book: return "book";
    case DocType::book_chapter: return "book_chapter";
    case DocType::other: return "other";
  }
  return "other";
}

namespace {

std::optional<DocType> doc_type_component(std::string_view c) {
  std::string t = to_lower_ascii(trim(c));
  if (t == "article") return DocType::article;
  if (t == "review") return DocType::review;
  if (t == "proceedings paper") return DocType::proceedings_paper;
  if (t == "editorial material" || t == "editorial") return DocType::editorial;
  if (t == "book") return DocType::book;
  if (t == "book chapter") return DocType::book_chapter;
  return std::nullopt;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  std::string t = trim(s);
  Int value{};
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

bool is_anonymous_marker(std::string_view name) {
  return iequals(name, "[Anonymous]") || iequals(name, "Anonymous") || iequals(name, "[Anon]");
}

std::string strip_trailing_period(std::string s) {
  s = trim(s);
  while (!s.empty() && s.back() == '.') s.pop_back();
  return trim(s);
}

std::vector<std::string> comma_tokens(std::string_view address) {
  std::vector<std::string> tokens;
  for (auto& t : split(strip_trailing_period(std::string(address)), ',')) {
    std::string tt = trim(t);
    if (!tt.empty()) tokens.push_back(std::move(tt));
  }
  return tokens;
}

}  // namespace

DocType parse_doc_type(std::string_view dt) {
  std::optional<DocType> first;
  for (const auto& part : split(dt, ';')) {
    auto t = doc_type_component(part);
    if (!t) continue;
    if (*t == DocType::proceedings_paper) return *t;
    if (!first) first = t;
  }
  return first.value_or(DocType::other);
}

std::string address_country_token(std::string_view address) {
  auto tokens = comma_tokens(address);
  if (tokens.empty()) return {};
  std::string last = tokens.back();
  if (last.size() > 3 && last.compare(last.size() - 4, 4, " USA") == 0) return "USA";
  return last;
}

std::vector<AddressEntry> parse_addresses(const std::vector<std::string>& c1_lines,
                                          Diagnostics& diags, std::string_view location) {
  std::vector<AddressEntry> entries;
  for (const auto& line : c1_lines) {
    for (const auto& segment : split_outside_brackets(line, ';')) {
      AddressEntry e;
      e.full_text = segment;
      std::string rest = segment;
      if (!segment.empty() && segment.front() == '[') {
        auto close = segment.find(']');
        if (close == std::string::npos) {
          diags.warn(std::string(location), "unclosed author bracket in address: " + segment);
          rest = segment.substr(1);
        } else {
          for (const auto& name : split(std::string_view(segment).substr(1, close - 1), ';')) {
            std::string t = trim(name);
            if (!t.empty()) e.linked_authors.push_back(std::move(t));
          }
          rest = trim(segment.substr(close + 1));
        }
      }
      auto tokens = comma_tokens(rest);
      if (tokens.empty()) {
        diags.warn(std::string(location), "address without institution: " + segment);
      } else {
        e.institution_raw = tokens.front();
        e.country_raw = address_country_token(rest);
      }
      entries.push_back(std::move(e));
    }
  }
  return entries;
}

namespace {

constexpr std::string_view kMarkers[] = {"(corresponding author)", "(reprint author)"};

struct MarkerHit {
  std::size_t pos;
  std::size_t len;
};

std::vector<MarkerHit> find_markers(std::string_view text) {
  std::vector<MarkerHit> hits;
  std::string lower = to_lower_ascii(text);
  for (auto marker : kMarkers) {
    for (auto p = lower.find(marker); p != std::string::npos; p = lower.find(marker, p + 1)) {
      hits.push_back({p, marker.size()});
    }
  }
  std::sort(hits.begin(), hits.end(), [](auto a, auto b) { return a.pos < b.pos; });
  return hits;
}

/// Clause boundaries are ';' preceded (ignoring spaces) by '.'.
std::vector<std::string> split_clauses(std::string_view text) {
  std::vector<std::string> clauses;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != ';') continue;
    std::size_t k = i;
    while (k > start && text[k - 1] == ' ') --k;
    if (k > start && text[k - 1] == '.') {
      clauses.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  clauses.push_back(trim(text.substr(start)));
  // A clause holding several markers was separated without a period; cut it
  // at the last ';' before each following marker.
  std::vector<std::string> out;
  for (const auto& c : clauses) {
    if (c.empty()) continue;
    auto hits = find_markers(c);
    std::size_t from = 0;
    for (std::size_t h = 1; h < hits.size(); ++h) {
      auto cut = c.rfind(';', hits[h].pos);
      if (cut == std::string::npos || cut < hits[h - 1].pos) continue;
      out.push_back(trim(std::string_view(c).substr(from, cut - from)));
      from = cut + 1;
    }
    out.push_back(trim(std::string_view(c).substr(from)));
  }
  return out;
}

}  // namespace

std::vector<ReprintEntry> parse_reprint(std::string_view rp_text, Diagnostics& diags,
                                        std::string_view location) {
  std::vector<ReprintEntry> entries;
  if (trim(rp_text).empty()) return entries;
  for (const auto& clause : split_clauses(rp_text)) {
    auto hits = find_markers(clause);
    if (hits.empty()) {
      diags.warn(std::string(location), "unparseable reprint clause: " + clause);
      continue;
    }
    std::string authors_part = trim(std::string_view(clause).substr(0, hits[0].pos));
    std::string address = trim(std::string_view(clause).substr(hits[0].pos + hits[0].len));
    while (!address.empty() && (address.front() == ',' || address.front() == ' ')) {
      address.erase(0, 1);
    }
    if (authors_part.empty()) {
      diags.warn(std::string(location), "reprint clause without author: " + clause);
      continue;
    }
    auto tokens = comma_tokens(address);
    std::string institution = tokens.empty() ? std::string{} : tokens.front();
    std::string country = address_country_token(address);
    // Several authors may share one address clause ("A, X; B, Y (corresponding author), ...").
    for (const auto& name : split(authors_part, ';')) {
      std::string t = trim(name);
      if (t.empty()) continue;
      entries.push_back({t, institution, country});
    }
  }
  return entries;
}

Publication record_to_publication(const RawRecord& record, Diagnostics& diags) {
  Publication pub;
  const std::string loc = record.span.file + ":" + std::to_string(record.span.first_line);

  pub.title = record.joined("TI");
  pub.source = record.joined("SO");
  pub.language = record.joined("LA");
  pub.doc_type = parse_doc_type(record.joined("DT"));

  if (record.find("PY") != nullptr) {
    if (auto y = parse_int<int>(record.joined("PY"))) {
      pub.year = *y;
    } else {
      diags.warn(loc, "unparseable PY: " + record.joined("PY"));
    }
  }

  if (record.find("TC") == nullptr) {
    diags.warn(loc, "missing TC, times_cited set to 0");
  } else if (auto tc = parse_int<long long>(record.joined("TC")); tc && *tc >= 0) {
    pub.times_cited = *tc;
  } else {
    diags.warn(loc, "unparseable TC: " + record.joined("TC"));
  }

  auto keep_named = [](std::vector<std::string> names) {
    names.erase(std::remove_if(names.begin(), names.end(), is_anonymous_marker), names.end());
    return names;
  };
  pub.full_names = keep_named(record.values("AF"));
  pub.authors = keep_named(record.values("AU"));
  if (pub.authors.empty()) pub.authors = pub.full_names;
  if (pub.authors.empty()) diags.warn(loc, "anonymous record");

  pub.addresses = parse_addresses(record.values("C1"), diags, loc);
  pub.reprint_entries = parse_reprint(record.joined("RP"), diags, loc);

  std::string ut = record.joined("UT");
  if (!ut.empty()) {
    pub.id = ut;
  } else {
    std::string key = (pub.authors.empty() ? std::string{} : pub.authors.front()) + "|" +
                      (pub.year ? std::to_string(*pub.year) : std::string{}) + "|" + pub.title;
    pub.id = "SYN:" + hex64(fnv1a64(key));
  }
  return pub;
}

std::vector<Publication> load_publications(const std::vector<std::filesystem::path>& paths,
                                           Diagnostics& diags) {
  std::vector<Publication> pubs;
  for (const auto& path : paths) {
    ParseResult parsed = parse_export_file(path);
    diags.append(parsed.diagnostics);
    for (const auto& rec : parsed.file.records) {
      pubs.push_back(record_to_publication(rec, diags));
    }
  }
  return pubs;
}

}  // namespace biblio
