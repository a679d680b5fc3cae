// Synthetic GPCR-like corpora with valid 7TM topologies, for demos and tests.

#ifndef GPCR_SYNTHETIC_HPP_
#define GPCR_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "gpcr/seqio.hpp"
#include "gpcr/topology.hpp"

namespace gpcr {

struct SyntheticOptions {
  std::size_t per_class = 50;
  std::uint64_t seed = 42;
  // Human records draw residues at even positions of the alphabet with
  // probability 0.05 + enrichment and odd ones with 0.05 - enrichment; the
  // other class is mirrored. Must lie in [0, 0.05].
  double enrichment = 0.04;
};

struct SyntheticCorpus {
  std::vector<SequenceRecord> records;  // ids end in _HUMAN or _MOUSE; labels unset
  std::vector<TopologyMap> topologies;
};

// Human and other records alternate. Region lengths share one distribution
// across classes so only composition separates them.
SyntheticCorpus make_synthetic_corpus(const SyntheticOptions& options);

} // namespace gpcr

#endif
