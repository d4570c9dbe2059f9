#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "raagws/cube_complex.hpp"
#include "raagws/reduction.hpp"

namespace raagws {

/// Length profile over the classes of length at most 3; equal roses share it.
std::vector<int> rose_profile(const RoseSpace& s, const MarkedRose& r);
/// Hex digest of the profile, used as a node label.
std::string rose_digest(const RoseSpace& s, const MarkedRose& r);

struct RoseEdge {
  int from = 0;
  int to = 0;
  Partition partition;
  GWPair move;
  long long norm0_delta = 0;
};

/// Roses reachable from the identity by Whitehead moves with ‖·‖₀ ≤ bound.
struct RoseGraph {
  long long bound = 0;
  std::vector<MarkedRose> nodes;
  std::vector<RoseEdge> edges;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

/// BFS from the identity rose. An empty graph means the bound is below the minimum.
RoseGraph enumerate_roses(const RoseSpace& s, long long bound);
/// Index of the node equal to `r`, or -1.
int find_rose(const RoseSpace& s, const RoseGraph& rg, const MarkedRose& r);

std::string rose_graph_to_json(const RoseSpace& s, const RoseGraph& rg);
RoseGraph parse_rose_graph_json(const RoseSpace& s, std::string_view text);
std::string rose_graph_to_dot(const RoseSpace& s, const RoseGraph& rg);

inline constexpr std::size_t kDefaultStarCap = 100000;

/// Ideal forests at a rose: nonempty pairwise-compatible sets of partitions
/// of Γ-Whitehead pairs, ordered by inclusion.
struct StarPoset {
  std::vector<Partition> partitions;
  /// Sorted indices into `partitions`, listed by size, then lexicographically.
  std::vector<std::vector<int>> elements;
  /// Per element: every partition is reductive at the rose.
  std::vector<bool> reductive;

  int size() const { return static_cast<int>(elements.size()); }
  bool leq(int a, int b) const;
  /// Pairs (a, b) with a ⊂ b and |b| = |a| + 1.
  std::vector<std::pair<int, int>> covers() const;
  std::vector<int> maximal() const;
};

/// Throws PreconditionError when the poset would exceed `cap` elements.
StarPoset star_poset(const RoseSpace& s, const MarkedRose& r, bool reductive_only,
                     std::size_t cap = kDefaultStarCap);

std::string star_poset_to_json(const DefiningGraph& g, const StarPoset& p);
StarPoset parse_star_poset_json(const DefiningGraph& g, std::string_view text);
std::string star_poset_to_dot(const DefiningGraph& g, const StarPoset& p);

struct ForestCollapse {
  std::vector<int> labels;
  Automorphism induced;
  MarkedRose rose;
};

/// Blowup of one poset element and the roses obtained from each tree-like collapse.
struct StarElementDetail {
  CubeComplex blowup;
  std::vector<ForestCollapse> collapses;
};

StarElementDetail star_element_detail(const RoseSpace& s, const MarkedRose& r, const std::vector<Partition>& system);

}  // namespace raagws
