// Protein sequence ingestion: FASTA parsing and species labelling.

#ifndef GPCR_SEQIO_HPP_
#define GPCR_SEQIO_HPP_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gpcr {

// Positive is the human class.
enum class Label { Positive, Negative };

inline const char* label_name(Label l) { return l == Label::Positive ? "human" : "other"; }
inline Label flip(Label l) { return l == Label::Positive ? Label::Negative : Label::Positive; }
// Accepts "human" / "other"; nullopt otherwise.
std::optional<Label> parse_label(std::string_view s);

inline constexpr std::string_view kResidueAlphabet = "ACDEFGHIKLMNPQRSTVWYX";

struct SequenceRecord {
  std::string id;
  std::string description;
  std::string residues;
  std::optional<Label> label;

  // True when residues contain the unknown residue 'X'.
  bool has_unknown() const { return residues.find('X') != std::string::npos; }
  bool operator==(const SequenceRecord&) const = default;
};

std::vector<SequenceRecord> parse_fasta(std::istream& in);
std::vector<SequenceRecord> parse_fasta(std::string_view text);
std::vector<SequenceRecord> read_fasta_file(const std::string& path);

// Writes records with 60 residues per line.
void write_fasta(std::ostream& out, const std::vector<SequenceRecord>& records);

using LabelOverrides = std::map<std::string, Label>;

// "id<TAB>label" per line, label in {human, other}; '#' lines and blank lines ignored.
LabelOverrides parse_label_overrides(std::istream& in);
LabelOverrides read_label_overrides(const std::string& path);

struct LabelingResult {
  std::vector<SequenceRecord> records;
  std::vector<std::string> unmatched_overrides;  // override ids absent from the corpus
};

// Override wins; otherwise POSITIVE iff the last '_'-delimited token of the id is "HUMAN".
LabelingResult assign_labels(std::vector<SequenceRecord> records,
                             const LabelOverrides& overrides = {});

} // namespace gpcr

#endif
