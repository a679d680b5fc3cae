#include "gpcr/topology.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gpcr/error.hpp"

namespace gpcr {

const char* segment_token(SegmentKind k) {
  switch (k) {
  case SegmentKind::Inside: return "inside";
  case SegmentKind::Outside: return "outside";
  case SegmentKind::TmHelix: return "TMhelix";
  }
  return "?";
}

const char* reason_code(TopologyReason r) {
  switch (r) {
  case TopologyReason::WrongHelixCount: return "WRONG_HELIX_COUNT";
  case TopologyReason::NtermNotOutside: return "NTERM_NOT_OUTSIDE";
  case TopologyReason::CtermNotInside: return "CTERM_NOT_INSIDE";
  case TopologyReason::NonAlternating: return "NON_ALTERNATING";
  }
  return "?";
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;)
    out.push_back(tok);
  return out;
}

std::optional<std::size_t> to_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    return std::nullopt;
  return v;
}

struct Pending {
  TopologyMap map;
  std::optional<std::size_t> declared_length;
  std::size_t declared_line = 0;
  std::vector<std::size_t> lines;  // source line of each segment
};

void check_tiling(const Pending& p) {
  const std::string& id = p.map.sequence_id;
  const auto& segs = p.map.segments;
  if (segs.empty())
    throw ParseError("'" + id + "': Length comment without segments", p.declared_line);
  std::size_t expect = 1;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const TopologySegment& s = segs[i];
    if (s.start > s.end)
      throw ParseError("'" + id + "': segment start after end", p.lines[i]);
    if (s.start != expect)
      throw ParseError("'" + id + "': segment starts at " + std::to_string(s.start) +
                       ", expected " + std::to_string(expect) + " (gap or overlap)", p.lines[i]);
    if (i > 0 && segs[i - 1].kind == s.kind)
      throw ParseError("'" + id + "': consecutive segments of the same kind", p.lines[i]);
    expect = s.end + 1;
  }
  if (p.declared_length && *p.declared_length != segs.back().end)
    throw ParseError("'" + id + "': segments end at " + std::to_string(segs.back().end) +
                     " but Length is " + std::to_string(*p.declared_length), p.lines.back());
}

} // namespace

std::vector<TopologyMap> parse_topology(std::istream& in) {
  std::vector<Pending> pending;
  std::map<std::string, std::size_t> index;
  auto entry = [&](const std::string& id) -> Pending& {
    auto [it, inserted] = index.emplace(id, pending.size());
    if (inserted) {
      pending.emplace_back();
      pending.back().map.sequence_id = id;
    }
    return pending[it->second];
  };

  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty())
      continue;
    if (tok[0][0] == '#') {
      // "# <id> Length: <n>"
      if (tok.size() == 4 && tok[0] == "#" && tok[2] == "Length:") {
        auto n = to_size(tok[3]);
        if (!n)
          throw ParseError("'" + tok[1] + "': bad Length value '" + tok[3] + "'", lineno);
        Pending& p = entry(tok[1]);
        p.declared_length = *n;
        p.declared_line = lineno;
      }
      continue;
    }
    if (tok.size() != 5)
      throw ParseError("expected 5 fields <id> <method> <kind> <start> <end>", lineno);
    TopologySegment seg{};
    if (tok[2] == "inside")
      seg.kind = SegmentKind::Inside;
    else if (tok[2] == "outside")
      seg.kind = SegmentKind::Outside;
    else if (tok[2] == "TMhelix")
      seg.kind = SegmentKind::TmHelix;
    else
      throw ParseError("'" + tok[0] + "': unknown segment kind '" + tok[2] + "'", lineno);
    auto start = to_size(tok[3]);
    auto end = to_size(tok[4]);
    if (!start || !end)
      throw ParseError("'" + tok[0] + "': non-numeric segment bounds", lineno);
    seg.start = *start;
    seg.end = *end;
    Pending& p = entry(tok[0]);
    p.map.method = tok[1];
    p.map.segments.push_back(seg);
    p.lines.push_back(lineno);
  }

  std::vector<TopologyMap> maps;
  maps.reserve(pending.size());
  for (Pending& p : pending) {
    check_tiling(p);
    p.map.length = p.map.segments.back().end;
    maps.push_back(std::move(p.map));
  }
  return maps;
}

std::vector<TopologyMap> parse_topology(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_topology(in);
}

std::vector<TopologyMap> read_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::ios_base::failure("cannot open topology file: " + path);
  return parse_topology(in);
}

void write_topology(std::ostream& out, const std::vector<TopologyMap>& maps) {
  for (const TopologyMap& m : maps) {
    out << "# " << m.sequence_id << " Length: " << m.length << '\n';
    for (const TopologySegment& s : m.segments)
      out << m.sequence_id << '\t' << m.method << '\t' << segment_token(s.kind) << '\t'
          << s.start << '\t' << s.end << '\n';
  }
}

TopologyCheck validate_gpcr_topology(const TopologyMap& map) {
  const auto& segs = map.segments;
  std::size_t helices = 0;
  for (const TopologySegment& s : segs)
    helices += s.kind == SegmentKind::TmHelix;
  if (helices != 7)
    return {TopologyReason::WrongHelixCount};
  if (segs.front().kind != SegmentKind::Outside)
    return {TopologyReason::NtermNotOutside};
  if (segs.back().kind != SegmentKind::Inside)
    return {TopologyReason::CtermNotInside};
  // loop, helix, loop, ..., helix, loop with loops alternating out/in
  if (segs.size() != 15)
    return {TopologyReason::NonAlternating};
  for (std::size_t i = 0; i < segs.size(); ++i) {
    SegmentKind want = i % 2 ? SegmentKind::TmHelix
                       : i % 4 == 0 ? SegmentKind::Outside : SegmentKind::Inside;
    if (segs[i].kind != want)
      return {TopologyReason::NonAlternating};
  }
  return {};
}

RegionLengths extract_region_lengths(const TopologyMap& map) {
  if (TopologyCheck check = validate_gpcr_topology(map); !check)
    throw ContractError("'" + map.sequence_id + "' is not a 7TM topology (" +
                        reason_code(*check.failure) + ")");
  std::vector<std::size_t> outside;
  for (const TopologySegment& s : map.segments)
    if (s.kind == SegmentKind::Outside)
      outside.push_back(s.length());
  return {outside[0], outside[1], outside[2], outside[3]};
}

} // namespace gpcr
