#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meton/sample.hpp"

namespace meton {

// Multiset of target surface forms drawn from a training set. Sampling is
// uniform over occurrences, i.e. frequency-weighted.
struct TargetPool {
  std::vector<std::string> surfaces;
  std::uint64_t seed = 0;

  // restrict_to_dataset: keep only targets from samples of that dataset
  // (type-compatible replacement across mixed corpora); empty keeps all.
  static TargetPool from_samples(const std::vector<Sample>& samples,
                                 std::uint64_t seed,
                                 const std::string& restrict_to_dataset = "");
};

// Replaces the target span with the literal "X"; span becomes one scalar,
// label unchanged, original pmw_key kept for split bookkeeping. The id gains
// a ":mask" suffix once.
Sample mask_target(const Sample& sample);

// originals followed by `copies` fresh samples per original (default grows
// the set 10-fold). Fresh samples differ only in the target substring and the
// adjusted span/pmw_key; ids gain ":augN". Deterministic given pool.seed and
// independent of processing order.
std::vector<Sample> augment(const std::vector<Sample>& samples,
                            const TargetPool& pool, std::size_t copies = 9);

}  // namespace meton
