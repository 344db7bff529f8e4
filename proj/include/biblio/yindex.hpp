#pragma once

#include <map>
#include <string>
#include <vector>

#include "biblio/common.hpp"
#include "biblio/corpus.hpp"

namespace biblio {

struct Credit {
  long long fp = 0;  // first-authored publications
  long long rp = 0;  // corresponding-author publications
};

/// Per-entity FP/RP tallies at one level. Entities with no credit are absent.
struct CreditLedger {
  Level level = Level::author;
  std::map<std::string, Credit> entries;
  std::map<std::string, std::string> labels;  // display names, authors only

  void add_fp(const std::string& entity) { ++entries[entity].fp; }
  void add_rp(const std::string& entity) { ++entries[entity].rp; }
  /// Commutative, associative sum of tallies.
  void merge(const CreditLedger& other);
  long long total_fp() const;
  long long total_rp() const;
};

bool operator==(const Credit& a, const Credit& b);

enum class ReprintPolicy { all_entries, first_entry_only };

/// Distinct institution/country entities of the first author. Resolution:
/// C1 brackets naming the first author, then RP entries of the first
/// author, then the first C1 segment; UNKNOWN when all three are missing.
std::vector<std::string> first_author_entities(const Corpus& corpus, const Publication& pub,
                                               Level level);

/// Distinct entities credited with RP on `pub`.
std::vector<std::string> reprint_entities(const Corpus& corpus, const Publication& pub,
                                          Level level, ReprintPolicy policy);

/// Credits granted by one publication (FP to the first author, RP to every
/// distinct corresponding entity). Never more than one FP/RP per entity.
CreditLedger tally_publication(const Corpus& corpus, const Publication& pub, Level level,
                               ReprintPolicy policy, Diagnostics& diags);

CreditLedger tally_credits(const Corpus& corpus, Level level, Diagnostics& diags,
                           ReprintPolicy policy = ReprintPolicy::all_entries);

struct YIndex {
  std::string entity;
  std::string label;
  long long fp = 0;
  long long rp = 0;
  long long j = 0;
  double h = 0.0;  // radians in [0, pi/2]
  double x = 0.0;  // j cos h
  double y = 0.0;  // j sin h
};

/// j = fp + rp, h = atan(rp / fp) with h = pi/2 for fp = 0.
/// Throws std::domain_error for fp = rp = 0 and std::invalid_argument for
/// negative counts.
YIndex compute_y_index(long long fp, long long rp);

/// Entities with j >= min_j (inclusive) or j > min_j, UNKNOWN excluded,
/// ordered by j desc, rp desc, entity id asc.
std::vector<YIndex> rank_entities(const CreditLedger& ledger, long long min_j, bool inclusive);

enum class CountingMode { full, fractional };

/// Full counting: 1 per publication to every distinct entity. Fractional:
/// 1/N per byline position (N = byline size), an author's share split across
/// that author's linked affiliations at institution/country level.
std::map<std::string, double> count_productivity(const Corpus& corpus, Level level,
                                                 CountingMode mode);

}  // namespace biblio
