#include "gpcr/seqio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gpcr/error.hpp"

namespace gpcr {

std::optional<Label> parse_label(std::string_view s) {
  if (s == "human")
    return Label::Positive;
  if (s == "other")
    return Label::Negative;
  return std::nullopt;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

} // namespace

std::vector<SequenceRecord> parse_fasta(std::istream& in) {
  std::vector<SequenceRecord> records;
  std::size_t header_line = 0;
  std::string line;
  auto close_record = [&] {
    if (!records.empty() && records.back().residues.empty())
      throw ParseError("empty sequence for '" + records.back().id + "'", header_line);
  };
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line[0] == '>') {
      close_record();
      std::string_view header = trim(std::string_view(line).substr(1));
      std::size_t split = 0;
      while (split < header.size() && !is_space(header[split]))
        ++split;
      if (split == 0)
        throw ParseError("header without identifier", lineno);
      SequenceRecord rec;
      rec.id = std::string(header.substr(0, split));
      rec.description = std::string(trim(header.substr(split)));
      records.push_back(std::move(rec));
      header_line = lineno;
      continue;
    }
    for (char c : line) {
      if (is_space(c))
        continue;
      if (records.empty())
        throw ParseError("sequence data before first header", lineno);
      char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (kResidueAlphabet.find(u) == std::string_view::npos)
        throw ParseError(std::string("invalid residue '") + c + "' in '" + records.back().id + "'",
                         lineno);
      records.back().residues += u;
    }
  }
  close_record();
  return records;
}

std::vector<SequenceRecord> parse_fasta(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fasta(in);
}

std::vector<SequenceRecord> read_fasta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::ios_base::failure("cannot open FASTA file: " + path);
  return parse_fasta(in);
}

void write_fasta(std::ostream& out, const std::vector<SequenceRecord>& records) {
  constexpr std::size_t width = 60;
  for (const SequenceRecord& r : records) {
    out << '>' << r.id;
    if (!r.description.empty())
      out << ' ' << r.description;
    out << '\n';
    for (std::size_t i = 0; i < r.residues.size(); i += width)
      out << r.residues.substr(i, width) << '\n';
  }
}

LabelOverrides parse_label_overrides(std::istream& in) {
  LabelOverrides overrides;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '#')
      continue;
    std::size_t tab = v.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError("expected id<TAB>label", lineno);
    std::string_view id = trim(v.substr(0, tab));
    std::string_view name = trim(v.substr(tab + 1));
    std::optional<Label> label = parse_label(name);
    if (id.empty() || !label)
      throw ParseError("bad label override '" + std::string(v) + "'", lineno);
    overrides[std::string(id)] = *label;
  }
  return overrides;
}

LabelOverrides read_label_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::ios_base::failure("cannot open label file: " + path);
  return parse_label_overrides(in);
}

LabelingResult assign_labels(std::vector<SequenceRecord> records,
                             const LabelOverrides& overrides) {
  LabelingResult result;
  std::map<std::string, bool> seen;
  for (SequenceRecord& r : records) {
    if (auto it = overrides.find(r.id); it != overrides.end()) {
      r.label = it->second;
      seen[r.id] = true;
      continue;
    }
    std::size_t us = r.id.rfind('_');
    std::string_view species = std::string_view(r.id).substr(us == std::string::npos ? 0 : us + 1);
    r.label = species == "HUMAN" ? Label::Positive : Label::Negative;
  }
  for (const auto& [id, label] : overrides)
    if (!seen.count(id))
      result.unmatched_overrides.push_back(id);
  result.records = std::move(records);
  return result;
}

} // namespace gpcr
