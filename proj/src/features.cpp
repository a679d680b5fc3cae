#include "gpcr/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gpcr/error.hpp"

namespace gpcr {

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = [] {
    std::array<std::string, kFeatureCount> n;
    for (std::size_t i = 0; i < kCompositionSize; ++i)
      n[i] = std::string(1, kAminoAcids[i]);
    n[20] = "ntl";
    n[21] = "ecl1";
    n[22] = "ecl2";
    n[23] = "ecl3";
    return n;
  }();
  return names;
}

std::array<double, kCompositionSize> composition(std::string_view residues) {
  std::array<std::size_t, 26> counts{};
  std::size_t total = 0;
  for (char c : residues) {
    if (c == 'X')
      continue;
    std::size_t pos = kAminoAcids.find(c);
    if (pos == std::string_view::npos)
      throw DataError(std::string("composition: invalid residue '") + c + "'");
    ++counts[pos];
    ++total;
  }
  if (total == 0)
    throw DataError("composition undefined: no standard residues");
  std::array<double, kCompositionSize> frac{};
  for (std::size_t i = 0; i < kCompositionSize; ++i)
    frac[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return frac;
}

FeatureVector build_vector(const SequenceRecord& record, const RegionLengths& regions) {
  if (!record.label)
    throw ContractError("build_vector: record '" + record.id + "' is unlabeled");
  FeatureVector v;
  auto comp = composition(record.residues);
  v.values.assign(comp.begin(), comp.end());
  v.values.push_back(static_cast<double>(regions.ntl));
  v.values.push_back(static_cast<double>(regions.ecl1));
  v.values.push_back(static_cast<double>(regions.ecl2));
  v.values.push_back(static_cast<double>(regions.ecl3));
  v.label = *record.label;
  v.source_id = record.id;
  return v;
}

std::optional<NormalizeMode> parse_normalize_mode(std::string_view s) {
  if (s == "none")
    return NormalizeMode::None;
  if (s == "minmax")
    return NormalizeMode::MinMax;
  return std::nullopt;
}

Normalizer::Normalizer(std::vector<double> min, std::vector<double> max, std::size_t fitted_count)
  : min_(std::move(min)), max_(std::move(max)), fitted_count_(fitted_count) {
  if (min_.size() != max_.size())
    throw ContractError("normalizer: min/max dimension mismatch");
  for (std::size_t i = 0; i < min_.size(); ++i)
    if (!(min_[i] <= max_[i]))
      throw ContractError("normalizer: min > max at feature " + std::to_string(i));
}

Normalizer Normalizer::fit(std::span<const FeatureVector> training) {
  if (training.empty())
    throw DataError("cannot fit normalizer on an empty training set");
  std::vector<double> lo = training.front().values;
  std::vector<double> hi = lo;
  for (const FeatureVector& v : training) {
    if (v.values.size() != lo.size())
      throw DataError("ragged feature vectors");
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], v.values[i]);
      hi[i] = std::max(hi[i], v.values[i]);
    }
  }
  return Normalizer(std::move(lo), std::move(hi), training.size());
}

std::vector<double> Normalizer::apply(std::span<const double> x) const {
  if (x.size() != min_.size())
    throw ContractError("normalizer: expected dimension " + std::to_string(min_.size()) +
                        ", got " + std::to_string(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double range = max_[i] - min_[i];
    out[i] = range > 0 ? std::clamp((x[i] - min_[i]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

std::vector<double> Normalizer::invert(std::span<const double> scaled) const {
  if (scaled.size() != min_.size())
    throw ContractError("normalizer: dimension mismatch");
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    out[i] = scaled[i] * (max_[i] - min_[i]) + min_[i];
  return out;
}

std::size_t Provenance::excluded_total() const {
  std::size_t n = 0;
  for (const auto& [reason, count] : excluded)
    n += count;
  return n;
}

std::size_t Dataset::count(Label l) const {
  return static_cast<std::size_t>(
      std::count_if(vectors.begin(), vectors.end(), [l](const FeatureVector& v) { return v.label == l; }));
}

Dataset assemble_dataset(const std::vector<SequenceRecord>& records,
                         const std::vector<TopologyMap>& topologies) {
  std::set<std::string_view> ids;
  for (const SequenceRecord& r : records) {
    if (!ids.insert(r.id).second)
      throw DataError("duplicate sequence id '" + r.id + "'");
    if (!r.label)
      throw DataError("record '" + r.id + "' is unlabeled");
  }
  std::map<std::string_view, const TopologyMap*> by_id;
  for (const TopologyMap& t : topologies)
    by_id.emplace(t.sequence_id, &t);

  Dataset data;
  data.provenance.ingested = records.size();
  auto exclude = [&](const std::string& reason) { ++data.provenance.excluded[reason]; };
  for (const SequenceRecord& r : records) {
    auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      exclude("NO_TOPOLOGY");
      continue;
    }
    const TopologyMap& topo = *it->second;
    if (topo.length != r.residues.size()) {
      exclude("LENGTH_MISMATCH");
      continue;
    }
    if (TopologyCheck check = validate_gpcr_topology(topo); !check) {
      exclude(reason_code(*check.failure));
      continue;
    }
    RegionLengths regions = extract_region_lengths(topo);
    if (!regions.ntl || !regions.ecl1 || !regions.ecl2 || !regions.ecl3) {
      exclude("EMPTY_REGION");
      continue;
    }
    try {
      data.vectors.push_back(build_vector(r, regions));
    } catch (const DataError&) {
      exclude("BAD_SEQUENCE");
      continue;
    }
    data.provenance.with_unknown += r.has_unknown();
  }
  data.provenance.retained = data.vectors.size();
  return data;
}

Dataset normalize(const Dataset& data, const Normalizer& normalizer) {
  Dataset out = data;
  for (FeatureVector& v : out.vectors)
    v.values = normalizer.apply(v.values);
  out.normalizer = normalizer;
  return out;
}

std::string format_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void write_feature_table(std::ostream& out, const Dataset& data) {
  out << "id";
  for (const std::string& name : feature_names())
    out << ',' << name;
  out << ",label\n";
  for (const FeatureVector& v : data.vectors) {
    out << v.source_id;
    for (double x : v.values)
      out << ',' << format_real(x);
    out << ',' << label_name(v.label) << '\n';
  }
}

Dataset read_feature_table(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    for (std::string& c : cells)
      if (!c.empty() && c.back() == '\r')
        c.pop_back();
    return cells;
  };

  std::string line;
  if (!std::getline(in, line))
    throw ParseError("feature table is empty", 1);
  std::vector<std::string> header = split(line);
  std::vector<std::string> expected{"id"};
  expected.insert(expected.end(), feature_names().begin(), feature_names().end());
  expected.push_back("label");
  if (header != expected)
    throw ParseError("unexpected feature table header", 1);

  Dataset data;
  std::set<std::string> ids;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty() || line == "\r")
      continue;
    std::vector<std::string> cells = split(line);
    if (cells.size() != kFeatureCount + 2)
      throw ParseError("expected " + std::to_string(kFeatureCount + 2) + " columns", lineno);
    FeatureVector v;
    v.source_id = cells[0];
    if (v.source_id.empty() || !ids.insert(v.source_id).second)
      throw ParseError("missing or duplicate id '" + v.source_id + "'", lineno);
    for (std::size_t i = 1; i <= kFeatureCount; ++i) {
      const std::string& c = cells[i];
      double x = 0;
      auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), x);
      if (ec != std::errc() || p != c.data() + c.size() || !std::isfinite(x))
        throw ParseError("bad number '" + c + "' in column " + expected[i], lineno);
      v.values.push_back(x);
    }
    auto label = parse_label(cells.back());
    if (!label)
      throw ParseError("bad label '" + cells.back() + "'", lineno);
    v.label = *label;
    data.vectors.push_back(std::move(v));
  }
  data.provenance.ingested = data.provenance.retained = data.vectors.size();
  return data;
}

Dataset read_feature_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::ios_base::failure("cannot open feature table: " + path);
  return read_feature_table(in);
}

void write_arff(std::ostream& out, const Dataset& data, std::string_view relation) {
  out << "@relation " << relation << "\n\n";
  for (const std::string& name : feature_names())
    out << "@attribute " << name << " numeric\n";
  out << "@attribute class {human,other}\n\n@data\n";
  for (const FeatureVector& v : data.vectors) {
    for (double x : v.values)
      out << format_real(x) << ',';
    out << label_name(v.label) << '\n';
  }
}

} // namespace gpcr
