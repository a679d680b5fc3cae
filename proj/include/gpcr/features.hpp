// Feature vectors: amino acid composition plus extracellular region lengths.

#ifndef GPCR_FEATURES_HPP_
#define GPCR_FEATURES_HPP_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpcr/seqio.hpp"
#include "gpcr/topology.hpp"

namespace gpcr {

inline constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr std::size_t kCompositionSize = 20;
inline constexpr std::size_t kFeatureCount = 24;

// Column names in vector order: A..Y, ntl, ecl1, ecl2, ecl3.
const std::array<std::string, kFeatureCount>& feature_names();

// Fraction of each amino acid, alphabetical one-letter order. 'X' is dropped
// from numerator and denominator. Throws DataError when no standard residue remains.
std::array<double, kCompositionSize> composition(std::string_view residues);

struct FeatureVector {
  std::vector<double> values;
  Label label = Label::Negative;
  std::string source_id;
};

FeatureVector build_vector(const SequenceRecord& record, const RegionLengths& regions);

enum class NormalizeMode { None, MinMax };

std::optional<NormalizeMode> parse_normalize_mode(std::string_view s);

// Per-feature min-max scaling fitted on training data.
class Normalizer {
public:
  Normalizer() = default;
  Normalizer(std::vector<double> min, std::vector<double> max, std::size_t fitted_count = 0);

  // Throws DataError on an empty or ragged collection.
  static Normalizer fit(std::span<const FeatureVector> training);

  // (x - min) / (max - min), clamped to [0,1]; constant features map to 0.
  std::vector<double> apply(std::span<const double> x) const;
  // x' * (max - min) + min
  std::vector<double> invert(std::span<const double> scaled) const;

  std::size_t dimension() const { return min_.size(); }
  const std::vector<double>& min() const { return min_; }
  const std::vector<double>& max() const { return max_; }
  std::size_t fitted_count() const { return fitted_count_; }

private:
  std::vector<double> min_;
  std::vector<double> max_;
  std::size_t fitted_count_ = 0;
};

struct Provenance {
  std::size_t ingested = 0;
  std::size_t retained = 0;
  std::size_t with_unknown = 0;               // retained records containing 'X'
  std::map<std::string, std::size_t> excluded;  // reason code -> count

  std::size_t excluded_total() const;
};

struct Dataset {
  std::vector<FeatureVector> vectors;
  std::optional<Normalizer> normalizer;
  Provenance provenance;

  std::size_t size() const { return vectors.size(); }
  std::size_t count(Label l) const;
};

// Joins records to topologies by id and drops those that cannot yield a full
// vector. Reason codes: NO_TOPOLOGY, LENGTH_MISMATCH, the topology reason
// codes, EMPTY_REGION, BAD_SEQUENCE. Throws DataError on duplicate record ids
// or unlabeled records.
Dataset assemble_dataset(const std::vector<SequenceRecord>& records,
                         const std::vector<TopologyMap>& topologies);

// Copy of the dataset with every vector scaled by the normalizer, which is attached.
Dataset normalize(const Dataset& data, const Normalizer& normalizer);

// Comma-separated table: header "id,A,...,Y,ntl,ecl1,ecl2,ecl3,label".
void write_feature_table(std::ostream& out, const Dataset& data);
Dataset read_feature_table(std::istream& in);
Dataset read_feature_table_file(const std::string& path);

// Attribute-relation export: 24 numeric attributes and a {human,other} class.
void write_arff(std::ostream& out, const Dataset& data, std::string_view relation = "gpcr");

// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

} // namespace gpcr

#endif
