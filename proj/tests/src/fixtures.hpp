#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geoshield/attacks.hpp"
#include "geoshield/corpus.hpp"

// Synthetic datasets for tests. Descriptions are stitched from the
// embedded reference corpus so the trigram model scores them as natural
// prose, and none of them contain judge rule phrases.
namespace fixtures {

extern const std::vector<std::string> kCategories;  // six of them

/// One candidate set in `category` with n clean records.
geoshield::corpus::CandidateSet clean_set(const std::string& category, std::size_t n,
                                          std::uint64_t seed);

/// Dataset with one clean candidate set per category.
geoshield::corpus::Dataset clean_dataset(std::size_t per_category, std::uint64_t seed);

/// Like clean_dataset, but in every set `attacked_per_set` records get the
/// given injection, the first of them becoming the set's target. The query
/// is the target's title so an unpenalized target ranks near the top.
geoshield::corpus::Dataset attacked_dataset(std::size_t per_category,
                                            std::size_t attacked_per_set,
                                            const geoshield::attacks::AttackSpec& spec,
                                            std::uint64_t seed);

}  // namespace fixtures
