#include "biblio/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace biblio {

// ---------------------------------------------------------------------------
// Filtering
// ---------------------------------------------------------------------------

void FilterConfig::validate() const {
  if (min_citations < 0) throw ConfigError("min_citations must be >= 0");
  if (year_range && year_range->first > year_range->second) {
    throw ConfigError("year range start must not exceed its end");
  }
}

bool FilterConfig::accepts(const Publication& pub) const {
  if (pub.times_cited < min_citations) return false;
  if (exclude_anonymous && pub.anonymous()) return false;
  if (year_range) {
    if (!pub.year || *pub.year < year_range->first || *pub.year > year_range->second) return false;
  }
  return true;
}

Corpus apply_exclusions(std::vector<Publication> pubs, const FilterConfig& cfg,
                        Diagnostics& diags) {
  cfg.validate();
  Corpus corpus;
  corpus.filter = cfg;
  for (auto& p : pubs) {
    if (cfg.accepts(p)) corpus.publications.push_back(std::move(p));
  }
  if (corpus.publications.empty()) {
    diags.warn("filter", "no publication passes the filter (min_citations=" +
                             std::to_string(cfg.min_citations) + ")");
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Author names
// ---------------------------------------------------------------------------

namespace {

bool is_upper_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c)) != 0;
  });
}

std::vector<std::string> words(std::string_view s, std::string_view separators) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (separators.find(c) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string clean_last_name(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) != 0) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += static_cast<char>(std::tolower(uc));
    } else if (c == ' ' || c == '-') {
      pending_space = true;
    }
  }
  return out;
}

std::string initials_of(std::string_view given) {
  std::string out;
  for (const auto& w : words(given, " .-\t")) {
    std::string letters;
    for (char c : w) {
      if (std::isalpha(static_cast<unsigned char>(c)) != 0) letters += c;
    }
    if (letters.empty()) continue;
    if (is_upper_word(letters) && letters.size() <= 3) {
      out += letters;
    } else {
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(letters[0])));
    }
  }
  return out;
}

struct NameKey {
  std::string last;
  std::string initials;
};

NameKey split_key(const std::string& key) {
  auto pos = key.find(", ");
  if (pos == std::string::npos) return {key, {}};
  return {key.substr(0, pos), key.substr(pos + 2)};
}

}  // namespace

std::string normalize_author_name(std::string_view raw) {
  std::string s = trim(fold_diacritics(raw));
  std::string last;
  std::string given;
  auto comma = s.find(',');
  if (comma != std::string::npos) {
    last = s.substr(0, comma);
    given = s.substr(comma + 1);
  } else {
    auto ws = words(s, " \t");
    if (!ws.empty()) {
      last = ws.front();
      for (std::size_t i = 1; i < ws.size(); ++i) given += ws[i] + " ";
    }
  }
  std::string key = clean_last_name(last);
  std::string ini = initials_of(given);
  if (!ini.empty()) key += ", " + ini;
  return key;
}

std::map<std::string, std::string> disambiguate_names(const std::vector<std::string>& raw_names,
                                                      const std::vector<AuthorOverride>& overrides,
                                                      Diagnostics& diags) {
  // Overrides keyed by normalized raw name; the same raw pinned twice to
  // different targets is a configuration error.
  std::map<std::string, std::string> pinned;
  for (const auto& o : overrides) {
    std::string from = normalize_author_name(o.raw);
    std::string to = normalize_author_name(o.canonical);
    auto [it, inserted] = pinned.emplace(from, to);
    if (!inserted && it->second != to) {
      throw ConfigError("conflicting author overrides for '" + o.raw + "': '" + it->second +
                        "' vs '" + to + "'");
    }
  }

  std::map<std::string, std::string> key_of;
  std::map<std::string, std::set<std::string>> by_last;  // last name -> initials
  for (const auto& raw : raw_names) {
    if (key_of.count(raw) != 0) continue;
    std::string key = normalize_author_name(raw);
    key_of[raw] = key;
    NameKey nk = split_key(key);
    by_last[nk.last].insert(nk.initials);
  }

  // Union-find over keys of one last name at a time.
  std::map<std::string, std::string> representative;
  for (const auto& [last, initial_set] : by_last) {
    std::vector<std::string> inits(initial_set.begin(), initial_set.end());
    std::vector<std::size_t> parent(inits.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto is_prefix = [](const std::string& a, const std::string& b) {
      return a.size() < b.size() && b.compare(0, a.size(), a) == 0;
    };
    auto make_key = [&](const std::string& ini) { return ini.empty() ? last : last + ", " + ini; };

    for (std::size_t k = 0; k < inits.size(); ++k) {
      std::vector<std::size_t> ext;
      for (std::size_t o = 0; o < inits.size(); ++o) {
        if (is_prefix(inits[k], inits[o])) ext.push_back(o);
      }
      if (ext.empty()) continue;
      bool ambiguous = false;
      for (std::size_t a = 0; a < ext.size() && !ambiguous; ++a) {
        for (std::size_t b = a + 1; b < ext.size(); ++b) {
          const auto& x = inits[ext[a]];
          const auto& y = inits[ext[b]];
          if (!is_prefix(x, y) && !is_prefix(y, x)) {
            ambiguous = true;
            break;
          }
        }
      }
      if (ambiguous) {
        std::string candidates;
        for (auto o : ext) candidates += (candidates.empty() ? "" : ", ") + make_key(inits[o]);
        diags.warn("disambiguation", "ambiguous initials, left unmerged: '" + make_key(inits[k]) +
                                         "' matches " + candidates);
        continue;
      }
      for (auto o : ext) parent[find(o)] = find(k);
    }

    // Clusters are chains; the longest member names the cluster.
    std::map<std::size_t, std::size_t> best;
    for (std::size_t k = 0; k < inits.size(); ++k) {
      auto root = find(k);
      auto it = best.find(root);
      if (it == best.end() || inits[k].size() > inits[it->second].size() ||
          (inits[k].size() == inits[it->second].size() && inits[k] < inits[it->second])) {
        best[root] = k;
      }
    }
    for (std::size_t k = 0; k < inits.size(); ++k) {
      representative[make_key(inits[k])] = make_key(inits[best[find(k)]]);
    }
  }

  std::map<std::string, std::string> out;
  for (const auto& [raw, key] : key_of) {
    auto p = pinned.find(key);
    out[raw] = (p != pinned.end()) ? p->second : representative.at(key);
  }
  return out;
}

std::map<std::string, std::string> disambiguate_authors(const Corpus& corpus,
                                                        const std::vector<AuthorOverride>& overrides,
                                                        Diagnostics& diags) {
  std::vector<std::string> names;
  for (const auto& p : corpus.publications) {
    names.insert(names.end(), p.authors.begin(), p.authors.end());
    for (const auto& r : p.reprint_entries) names.push_back(r.author);
  }
  return disambiguate_names(names, overrides, diags);
}

std::vector<AuthorOverride> overrides_from_rows(const std::vector<TableRow>& rows) {
  std::vector<AuthorOverride> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back({r.key, r.value});
  return out;
}

// ---------------------------------------------------------------------------
// Countries and institutions
// ---------------------------------------------------------------------------

namespace {

std::string institution_tokens_normalized(std::string_view raw,
                                          const std::map<std::string, std::string>& abbreviations) {
  std::string folded = to_lower_ascii(fold_diacritics(raw));
  std::string out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto it = abbreviations.find(cur);
    if (!out.empty()) out += ' ';
    out += (it != abbreviations.end()) ? it->second : cur;
    cur.clear();
  };
  for (char c : folded) {
    if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
      cur += c;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

void require_idempotent(const std::map<std::string, std::string>& table, std::string_view name) {
  for (const auto& [from, to] : table) {
    auto it = table.find(to);
    if (it != table.end() && it->second != to) {
      throw ConfigError(std::string(name) + ": canonical value '" + to + "' is remapped to '" +
                        it->second + "'");
    }
  }
}

}  // namespace

NormalizationTables NormalizationTables::from_rows(const std::vector<TableRow>& countries,
                                                   const std::vector<TableRow>& abbreviations,
                                                   const std::vector<TableRow>& aliases) {
  NormalizationTables t;
  for (const auto& r : countries) t.countries_[r.key] = r.value;
  for (const auto& r : countries) t.countries_.emplace(r.value, r.value);
  require_idempotent(t.countries_, "country table");
  for (const auto& [k, v] : t.countries_) t.countries_ci_.emplace(to_lower_ascii(k), v);

  for (const auto& r : abbreviations) {
    t.abbreviations_[to_lower_ascii(r.key)] = to_lower_ascii(r.value);
  }
  for (const auto& [k, v] : t.abbreviations_) {
    for (const auto& w : split(v, ' ')) {
      if (t.abbreviations_.count(w) != 0 && t.abbreviations_.at(w) != w) {
        throw ConfigError("abbreviation table: expansion '" + v + "' contains abbreviation '" + w +
                          "'");
      }
    }
  }

  for (const auto& r : aliases) {
    t.aliases_[institution_tokens_normalized(r.key, t.abbreviations_)] =
        institution_tokens_normalized(r.value, t.abbreviations_);
  }
  require_idempotent(t.aliases_, "institution alias table");
  return t;
}

NormalizationTables NormalizationTables::defaults() {
  return from_rows(parse_two_column(default_tables::countries(), "data/countries.tsv"),
                   parse_two_column(default_tables::institution_abbreviations(),
                                    "data/institution_abbreviations.tsv"),
                   parse_two_column(default_tables::institution_aliases(),
                                    "data/institution_aliases.tsv"));
}

std::optional<std::string> NormalizationTables::lookup_country(const std::string& raw) const {
  if (auto it = countries_.find(raw); it != countries_.end()) return it->second;
  if (auto it = countries_ci_.find(to_lower_ascii(raw)); it != countries_ci_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::string extract_country(std::string_view country_raw, const NormalizationTables& tables,
                            Diagnostics* diags) {
  std::string c = trim(country_raw);
  while (!c.empty() && c.back() == '.') c.pop_back();
  c = trim(c);
  if (c == "USA" || (c.size() > 4 && c.compare(c.size() - 4, 4, " USA") == 0)) return "USA";
  if (auto found = tables.lookup_country(c)) return *found;
  if (diags != nullptr && !c.empty()) diags->warn("country", "unknown country kept as is: " + c);
  return c;
}

std::string normalize_institution(std::string_view institution_raw,
                                  const NormalizationTables& tables) {
  std::string norm = institution_tokens_normalized(institution_raw, tables.abbreviations());
  if (auto it = tables.aliases().find(norm); it != tables.aliases().end()) return it->second;
  return norm;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

std::string Corpus::author_id(const std::string& raw) const {
  if (auto it = canonical_authors.find(raw); it != canonical_authors.end()) return it->second;
  return normalize_author_name(raw);
}

std::string Corpus::display_name(const std::string& id) const {
  if (auto it = authors.find(id); it != authors.end()) return it->second.display_name;
  return id;
}

std::string Corpus::institution_of(const std::string& raw) const {
  if (trim(raw).empty()) return std::string(kUnknownEntity);
  if (auto it = institutions.find(raw); it != institutions.end()) return it->second;
  return std::string(kUnknownEntity);
}

std::string Corpus::country_of(const std::string& raw) const {
  if (trim(raw).empty()) return std::string(kUnknownEntity);
  if (auto it = countries.find(raw); it != countries.end()) return it->second;
  return std::string(kUnknownEntity);
}

std::vector<std::size_t> linked_addresses(const Publication& pub, std::size_t author_index) {
  std::vector<std::size_t> out;
  if (author_index >= pub.authors.size()) return out;
  const std::string& au = pub.authors[author_index];
  const bool aligned = pub.full_names.size() == pub.authors.size();
  const std::string* af = aligned ? &pub.full_names[author_index] : nullptr;
  const std::string key = normalize_author_name(au);
  for (std::size_t a = 0; a < pub.addresses.size(); ++a) {
    for (const auto& name : pub.addresses[a].linked_authors) {
      if (name == au || (af != nullptr && name == *af) || normalize_author_name(name) == key) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

std::string address_entity(const Corpus& corpus, const AddressEntry& address, Level level) {
  return level == Level::institution ? corpus.institution_of(address.institution_raw)
                                     : corpus.country_of(address.country_raw);
}

std::vector<std::string> publication_entities(const Corpus& corpus, const Publication& pub,
                                              Level level) {
  std::vector<std::string> out;
  auto push = [&out](std::string v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  };
  if (level == Level::author) {
    for (const auto& a : pub.authors) push(corpus.author_id(a));
    return out;
  }
  for (const auto& a : pub.addresses) push(address_entity(corpus, a, level));
  if (out.empty()) {
    for (const auto& r : pub.reprint_entries) {
      push(level == Level::institution ? corpus.institution_of(r.institution_raw)
                                       : corpus.country_of(r.country_raw));
    }
  }
  if (out.empty()) out.emplace_back(kUnknownEntity);
  return out;
}

void canonicalize(Corpus& corpus, const NormalizationTables& tables,
                  const std::vector<AuthorOverride>& overrides, Diagnostics& diags) {
  corpus.canonical_authors = disambiguate_authors(corpus, overrides, diags);
  corpus.authors.clear();

  // display-name votes: id -> form -> count (AF forms preferred over AU forms)
  std::map<std::string, std::map<std::string, std::size_t>> full_votes;
  std::map<std::string, std::map<std::string, std::size_t>> short_votes;
  for (const auto& p : corpus.publications) {
    const bool aligned = p.full_names.size() == p.authors.size();
    for (std::size_t i = 0; i < p.authors.size(); ++i) {
      const std::string& id = corpus.canonical_authors.at(p.authors[i]);
      ++short_votes[id][p.authors[i]];
      if (aligned) ++full_votes[id][p.full_names[i]];
    }
    for (const auto& r : p.reprint_entries) {
      ++short_votes[corpus.canonical_authors.at(r.author)][r.author];
    }
  }
  auto top = [](const std::map<std::string, std::size_t>& votes) {
    std::string best;
    std::size_t best_n = 0;
    for (const auto& [form, n] : votes) {
      if (n > best_n) {
        best = form;
        best_n = n;
      }
    }
    return best;
  };
  for (const auto& [raw, id] : corpus.canonical_authors) {
    auto& a = corpus.authors[id];
    a.id = id;
    a.variants.insert(raw);
  }
  for (auto& [id, a] : corpus.authors) {
    if (auto it = full_votes.find(id); it != full_votes.end()) a.display_name = top(it->second);
    if (a.display_name.empty()) {
      if (auto it = short_votes.find(id); it != short_votes.end()) a.display_name = top(it->second);
    }
    if (a.display_name.empty()) a.display_name = id;
  }

  corpus.institutions.clear();
  corpus.countries.clear();
  auto note = [&](const std::string& inst, const std::string& country) {
    if (!trim(inst).empty() && corpus.institutions.count(inst) == 0) {
      corpus.institutions[inst] = normalize_institution(inst, tables);
    }
    if (!trim(country).empty() && corpus.countries.count(country) == 0) {
      corpus.countries[country] = extract_country(country, tables, &diags);
    }
  };
  for (const auto& p : corpus.publications) {
    for (const auto& a : p.addresses) note(a.institution_raw, a.country_raw);
    for (const auto& r : p.reprint_entries) note(r.institution_raw, r.country_raw);
  }
}

Corpus build_corpus(std::vector<Publication> pubs, const FilterConfig& cfg,
                    const NormalizationTables& tables,
                    const std::vector<AuthorOverride>& overrides, Diagnostics& diags) {
  Corpus corpus = apply_exclusions(std::move(pubs), cfg, diags);
  canonicalize(corpus, tables, overrides, diags);
  return corpus;
}

// ---------------------------------------------------------------------------
// Descriptive statistics
// ---------------------------------------------------------------------------

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.publications = corpus.publications.size();
  std::set<std::string> all;
  std::set<std::string> solo;
  for (const auto& p : corpus.publications) {
    ++s.doc_types[p.doc_type];
    std::set<std::string> ids;
    for (const auto& a : p.authors) ids.insert(corpus.author_id(a));
    all.insert(ids.begin(), ids.end());
    if (ids.size() == 1) solo.insert(*ids.begin());
  }
  s.authors = all.size();
  s.single_authored_authors = solo.size();
  return s;
}

std::string TimelinePeriod::label() const { return std::to_string(from) + "-" + std::to_string(to); }

Timeline summarize_timeline(const Corpus& corpus, const std::vector<int>& breakpoints) {
  if (breakpoints.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] <= breakpoints[i - 1]) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
  Timeline t;
  std::vector<double> sums(breakpoints.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    t.periods.push_back({breakpoints[i], breakpoints[i + 1] - 1, 0, 0.0});
  }
  for (const auto& p : corpus.publications) {
    if (!p.year || *p.year < breakpoints.front() || *p.year >= breakpoints.back()) {
      ++t.unknown_count;
      continue;
    }
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), *p.year);
    auto idx = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    ++t.periods[idx].pub_count;
    sums[idx] += static_cast<double>(p.times_cited);
  }
  for (std::size_t i = 0; i < t.periods.size(); ++i) {
    if (t.periods[i].pub_count > 0) {
      t.periods[i].mean_citations = sums[i] / static_cast<double>(t.periods[i].pub_count);
    }
  }
  return t;
}

std::vector<int> default_breakpoints() { return {1991, 1996, 2001, 2006, 2011, 2018}; }

}  // namespace biblio
