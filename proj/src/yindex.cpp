#include "biblio/yindex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace biblio {

bool operator==(const Credit& a, const Credit& b) { return a.fp == b.fp && a.rp == b.rp; }

void CreditLedger::merge(const CreditLedger& other) {
  for (const auto& [entity, c] : other.entries) {
    auto& mine = entries[entity];
    mine.fp += c.fp;
    mine.rp += c.rp;
  }
  for (const auto& [entity, label] : other.labels) labels.emplace(entity, label);
}

long long CreditLedger::total_fp() const {
  long long s = 0;
  for (const auto& [e, c] : entries) s += c.fp;
  return s;
}

long long CreditLedger::total_rp() const {
  long long s = 0;
  for (const auto& [e, c] : entries) s += c.rp;
  return s;
}

namespace {

std::string reprint_entity(const Corpus& corpus, const ReprintEntry& r, Level level) {
  switch (level) {
    case Level::author: return corpus.author_id(r.author);
    case Level::institution: return corpus.institution_of(r.institution_raw);
    case Level::country: return corpus.country_of(r.country_raw);
  }
  return std::string(kUnknownEntity);
}

void push_distinct(std::vector<std::string>& out, std::string value) {
  if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(std::move(value));
}

}  // namespace

std::vector<std::string> first_author_entities(const Corpus& corpus, const Publication& pub,
                                               Level level) {
  std::vector<std::string> out;
  if (pub.authors.empty()) return out;
  if (level == Level::author) {
    out.push_back(corpus.author_id(pub.authors.front()));
    return out;
  }
  for (auto idx : linked_addresses(pub, 0)) {
    push_distinct(out, address_entity(corpus, pub.addresses[idx], level));
  }
  if (out.empty()) {
    const std::string first = corpus.author_id(pub.authors.front());
    for (const auto& r : pub.reprint_entries) {
      if (corpus.author_id(r.author) == first) push_distinct(out, reprint_entity(corpus, r, level));
    }
  }
  if (out.empty() && !pub.addresses.empty()) {
    out.push_back(address_entity(corpus, pub.addresses.front(), level));
  }
  if (out.empty()) out.emplace_back(kUnknownEntity);
  return out;
}

std::vector<std::string> reprint_entities(const Corpus& corpus, const Publication& pub,
                                          Level level, ReprintPolicy policy) {
  std::vector<std::string> out;
  for (const auto& r : pub.reprint_entries) {
    push_distinct(out, reprint_entity(corpus, r, level));
    if (policy == ReprintPolicy::first_entry_only) break;
  }
  return out;
}

CreditLedger tally_publication(const Corpus& corpus, const Publication& pub, Level level,
                               ReprintPolicy policy, Diagnostics& diags) {
  CreditLedger ledger;
  ledger.level = level;
  if (pub.authors.empty()) return ledger;
  for (const auto& e : first_author_entities(corpus, pub, level)) ledger.add_fp(e);
  auto rps = reprint_entities(corpus, pub, level, policy);
  if (rps.empty()) {
    diags.warn("record " + pub.id, "no reprint entry; FP credit only");
  }
  for (const auto& e : rps) ledger.add_rp(e);
  if (level == Level::author) {
    for (const auto& [e, c] : ledger.entries) ledger.labels[e] = corpus.display_name(e);
  }
  return ledger;
}

CreditLedger tally_credits(const Corpus& corpus, Level level, Diagnostics& diags,
                           ReprintPolicy policy) {
  CreditLedger total;
  total.level = level;
  for (const auto& pub : corpus.publications) {
    total.merge(tally_publication(corpus, pub, level, policy, diags));
  }
  return total;
}

YIndex compute_y_index(long long fp, long long rp) {
  if (fp < 0 || rp < 0) throw std::invalid_argument("FP and RP must be non-negative");
  if (fp == 0 && rp == 0) throw std::domain_error("undefined h: FP = RP = 0");
  YIndex y;
  y.fp = fp;
  y.rp = rp;
  y.j = fp + rp;
  y.h = std::atan2(static_cast<double>(rp), static_cast<double>(fp));
  const auto j = static_cast<double>(y.j);
  y.x = j * std::cos(y.h);
  y.y = j * std::sin(y.h);
  return y;
}

std::vector<YIndex> rank_entities(const CreditLedger& ledger, long long min_j, bool inclusive) {
  std::vector<YIndex> out;
  for (const auto& [entity, c] : ledger.entries) {
    if (entity == kUnknownEntity) continue;
    const long long j = c.fp + c.rp;
    if (j == 0 || (inclusive ? j < min_j : j <= min_j)) continue;
    YIndex y = compute_y_index(c.fp, c.rp);
    y.entity = entity;
    auto label = ledger.labels.find(entity);
    y.label = label != ledger.labels.end() ? label->second : entity;
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end(), [](const YIndex& a, const YIndex& b) {
    if (a.j != b.j) return a.j > b.j;
    if (a.rp != b.rp) return a.rp > b.rp;
    return a.entity < b.entity;
  });
  return out;
}

std::map<std::string, double> count_productivity(const Corpus& corpus, Level level,
                                                 CountingMode mode) {
  std::map<std::string, double> scores;
  for (const auto& pub : corpus.publications) {
    if (pub.authors.empty()) continue;
    const double n = static_cast<double>(pub.authors.size());
    if (level == Level::author) {
      if (mode == CountingMode::full) {
        std::set<std::string> ids;
        for (const auto& a : pub.authors) ids.insert(corpus.author_id(a));
        for (const auto& id : ids) scores[id] += 1.0;
      } else {
        for (const auto& a : pub.authors) scores[corpus.author_id(a)] += 1.0 / n;
      }
      continue;
    }
    const auto all = publication_entities(corpus, pub, level);
    if (mode == CountingMode::full) {
      for (const auto& e : all) scores[e] += 1.0;
      continue;
    }
    for (std::size_t i = 0; i < pub.authors.size(); ++i) {
      std::vector<std::string> mine;
      for (auto idx : linked_addresses(pub, i)) {
        push_distinct(mine, address_entity(corpus, pub.addresses[idx], level));
      }
      const auto& targets = mine.empty() ? all : mine;
      const double share = 1.0 / n / static_cast<double>(targets.size());
      for (const auto& e : targets) scores[e] += share;
    }
  }
  return scores;
}

}  // namespace biblio
