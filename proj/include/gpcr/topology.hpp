// TMHMM long-format topology parsing and extraction of the extracellular regions.

#ifndef GPCR_TOPOLOGY_HPP_
#define GPCR_TOPOLOGY_HPP_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gpcr {

enum class SegmentKind { Inside, Outside, TmHelix };

// Token used in TMHMM output: "inside", "outside", "TMhelix".
const char* segment_token(SegmentKind k);

struct TopologySegment {
  SegmentKind kind;
  std::size_t start;  // 1-based, inclusive
  std::size_t end;    // 1-based, inclusive
  std::size_t length() const { return end - start + 1; }
  bool operator==(const TopologySegment&) const = default;
};

struct TopologyMap {
  std::string sequence_id;
  std::string method = "TMHMM2.0";
  std::size_t length = 0;
  std::vector<TopologySegment> segments;
  bool operator==(const TopologyMap&) const = default;
};

// Throws ParseError naming the sequence id and line on unknown kinds, bad
// numbers, or segments that do not tile [1, length].
std::vector<TopologyMap> parse_topology(std::istream& in);
std::vector<TopologyMap> parse_topology(std::string_view text);
std::vector<TopologyMap> read_topology_file(const std::string& path);

void write_topology(std::ostream& out, const std::vector<TopologyMap>& maps);

enum class TopologyReason { WrongHelixCount, NtermNotOutside, CtermNotInside, NonAlternating };

const char* reason_code(TopologyReason r);

struct TopologyCheck {
  std::optional<TopologyReason> failure;
  explicit operator bool() const { return !failure; }
};

// Canonical GPCR layout: seven helices, N-terminus outside, C-terminus inside,
// loops alternating outside/inside with exactly one loop between helices.
TopologyCheck validate_gpcr_topology(const TopologyMap& map);

struct RegionLengths {
  std::size_t ntl = 0;
  std::size_t ecl1 = 0;
  std::size_t ecl2 = 0;
  std::size_t ecl3 = 0;
  bool operator==(const RegionLengths&) const = default;
};

// Lengths of the four OUTSIDE segments in order. Intracellular loops and the
// C-terminal tail are never read. Throws ContractError if the map is not a
// valid GPCR topology.
RegionLengths extract_region_lengths(const TopologyMap& map);

} // namespace gpcr

#endif
