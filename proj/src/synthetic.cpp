#include "gpcr/synthetic.hpp"

#include <array>
#include <cstdio>

#include "gpcr/error.hpp"
#include "gpcr/features.hpp"
#include "gpcr/random.hpp"

namespace gpcr {

namespace {

std::array<double, 20> residue_weights(bool human, double enrichment) {
  // Residues alternate between enriched and depleted in alphabet order, so
  // every composition feature carries the class signal.
  std::array<double, 20> w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool up = (i % 2 == 0) == human;
    w[i] = 0.05 + (up ? enrichment : -enrichment);
  }
  return w;
}

char draw_residue(Rng& rng, const std::array<double, 20>& w) {
  double u = rng.uniform();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (u < w[i])
      return kAminoAcids[i];
    u -= w[i];
  }
  return kAminoAcids.back();
}

} // namespace

SyntheticCorpus make_synthetic_corpus(const SyntheticOptions& options) {
  if (!(options.enrichment >= 0.0 && options.enrichment <= 0.05))
    throw ContractError("synthetic enrichment must lie in [0, 0.05]");
  Rng rng(options.seed);
  SyntheticCorpus corpus;
  auto span_len = [&](std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); };
  for (std::size_t n = 0; n < 2 * options.per_class; ++n) {
    const bool human = n % 2 == 0;
    char id[32];
    std::snprintf(id, sizeof id, "SYN%04zu_%s", n + 1, human ? "HUMAN" : "MOUSE");

    TopologyMap topo;
    topo.sequence_id = id;
    std::size_t pos = 1;
    auto add = [&](SegmentKind kind, std::size_t len) {
      topo.segments.push_back({kind, pos, pos + len - 1});
      pos += len;
    };
    add(SegmentKind::Outside, span_len(20, 60));
    for (int h = 0; h < 7; ++h) {
      add(SegmentKind::TmHelix, span_len(19, 23));
      if (h == 6)
        add(SegmentKind::Inside, span_len(20, 60));
      else
        add(h % 2 == 0 ? SegmentKind::Inside : SegmentKind::Outside, span_len(5, 30));
    }
    topo.length = pos - 1;

    SequenceRecord rec;
    rec.id = id;
    rec.description = human ? "synthetic human receptor" : "synthetic mouse receptor";
    auto weights = residue_weights(human, options.enrichment);
    rec.residues.reserve(topo.length);
    for (std::size_t i = 0; i < topo.length; ++i)
      rec.residues += draw_residue(rng, weights);

    corpus.records.push_back(std::move(rec));
    corpus.topologies.push_back(std::move(topo));
  }
  return corpus;
}

} // namespace gpcr
