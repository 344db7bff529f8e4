#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "biblio/common.hpp"
#include "biblio/conetwork.hpp"
#include "biblio/corpus.hpp"
#include "biblio/yindex.hpp"

namespace biblio {

enum class CorrespondingPolicy { first_author, random_coauthor };

struct SynthRegion {
  std::string label;
  int n_authors = 0;
  std::vector<std::string> countries;  // canonical names, assigned round-robin
};

/// A planted community drawn from one region's authors. Authors of a region
/// not covered by its groups form one extra group.
struct SynthGroup {
  std::string region;
  int size = 0;
};

struct SynthSpec {
  std::uint64_t seed = 42;
  int n_pubs = 100;
  std::vector<SynthRegion> regions;
  std::vector<SynthGroup> groups;  // empty: one group per region
  double p_in = 0.9;
  double p_out = 0.1;
  std::pair<long long, long long> citation_range{100, 1000};
  CorrespondingPolicy corresponding = CorrespondingPolicy::first_author;
  std::pair<int, int> authors_per_pub{2, 4};
  std::pair<int, int> year_range{1991, 2017};

  /// Throws ConfigError on invalid or infeasible settings.
  void validate() const;
  static SynthSpec from_json(const nlohmann::json& doc);
  nlohmann::ordered_json to_json() const;
};

struct SynthAuthor {
  std::string au;  // "Kalomi, B"
  std::string af;  // "Kalomi, B."
  std::string id;  // canonical author id
  std::string region;
  std::string country;
  std::string institution;  // as written in C1
  std::string city;
  int group = 0;
};

struct GroundTruth {
  std::vector<SynthAuthor> authors;
  std::vector<std::vector<std::string>> communities;  // author ids per planted group
  std::map<std::string, std::string> author_region;   // id -> region label
  /// Unordered co-author pairs over all publications (a pair on k papers
  /// counts k times) and how many of them join two regions.
  long long total_pairs = 0;
  long long cross_pairs = 0;
  double cross_fraction = 0.0;
  std::map<std::string, Credit> credits;  // id -> true FP/RP
  std::vector<std::vector<std::string>> bylines;  // author ids per publication
};

struct SynthResult {
  std::string export_text;  // WoS tagged export
  Corpus corpus;            // parsed back from export_text with default tables
  GroundTruth truth;
  Diagnostics diagnostics;
};

/// Each co-author slot after the first author (drawn from a random group) is
/// filled from the same group with probability p_in / (p_in + p_out), else
/// from the other groups; p_in = p_out = 0 gives single-author papers.
SynthResult generate_corpus(const SynthSpec& spec);

nlohmann::ordered_json truth_to_json(const GroundTruth& truth);

/// `groups` blocks of `group_size` nodes; each pair is linked (weight 1) with
/// probability p_in inside a block, p_out across. Node i belongs to block
/// i / group_size; node names sort in index order.
CoNetwork planted_partition_network(std::size_t groups, std::size_t group_size, double p_in,
                                    double p_out, std::uint64_t seed);

}  // namespace biblio
