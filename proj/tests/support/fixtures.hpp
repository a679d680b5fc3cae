// Shared test builders.

#ifndef GPCR_TEST_FIXTURES_HPP_
#define GPCR_TEST_FIXTURES_HPP_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gpcr/features.hpp"
#include "gpcr/random.hpp"
#include "gpcr/topology.hpp"

namespace fixtures {

// Canonical 7TM map: out/TM/in/TM/.../in with the given loop lengths
// (8 loops in order: ntl, icl1, ecl1, icl2, ecl2, icl3, ecl3, cterm) and 21-residue helices.
inline gpcr::TopologyMap seven_tm(const std::string& id, std::vector<std::size_t> loops,
                                  std::size_t helix = 21) {
  gpcr::TopologyMap m;
  m.sequence_id = id;
  std::size_t pos = 1;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    gpcr::SegmentKind kind = i % 2 == 0 ? gpcr::SegmentKind::Outside : gpcr::SegmentKind::Inside;
    m.segments.push_back({kind, pos, pos + loops[i] - 1});
    pos += loops[i];
    if (i + 1 < loops.size()) {
      m.segments.push_back({gpcr::SegmentKind::TmHelix, pos, pos + helix - 1});
      pos += helix;
    }
  }
  m.length = pos - 1;
  return m;
}

// Map from an explicit kind/length list.
inline gpcr::TopologyMap from_kinds(const std::string& id,
                                    std::vector<std::pair<gpcr::SegmentKind, std::size_t>> segs) {
  gpcr::TopologyMap m;
  m.sequence_id = id;
  std::size_t pos = 1;
  for (auto [kind, len] : segs) {
    m.segments.push_back({kind, pos, pos + len - 1});
    pos += len;
  }
  m.length = pos - 1;
  return m;
}

struct Problem {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
};

// Uniform points in [0,1]^d with random labels, both classes present.
inline Problem random_problem(gpcr::Rng& rng, std::size_t n, std::size_t d) {
  Problem p;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(d);
    for (double& f : v)
      f = rng.uniform();
    p.x.push_back(std::move(v));
    p.y.push_back(rng.below(2) ? 1 : -1);
  }
  p.y[0] = 1;
  p.y[1] = -1;
  return p;
}

inline gpcr::Dataset to_dataset(const Problem& p) {
  gpcr::Dataset d;
  for (std::size_t i = 0; i < p.x.size(); ++i)
    d.vectors.push_back({p.x[i], p.y[i] > 0 ? gpcr::Label::Positive : gpcr::Label::Negative,
                         "p" + std::to_string(i)});
  return d;
}

// Two Gaussian clusters in d dimensions, centers `separation` sigma apart on every axis.
inline gpcr::Dataset gaussian_clusters(std::size_t per_class, std::size_t d, double separation,
                                       std::uint64_t seed) {
  gpcr::Rng rng(seed);
  gpcr::Dataset data;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    bool pos = i % 2 == 0;
    std::vector<double> v(d);
    for (double& f : v)
      f = (pos ? separation : 0.0) + rng.normal();
    data.vectors.push_back({std::move(v), pos ? gpcr::Label::Positive : gpcr::Label::Negative,
                            "g" + std::to_string(i)});
  }
  return data;
}

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("gpcr_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace fixtures

#endif
