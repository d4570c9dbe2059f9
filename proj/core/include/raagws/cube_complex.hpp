#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raagws/automorphism.hpp"
#include "raagws/graph.hpp"
#include "raagws/whitehead.hpp"
#include "raagws/word.hpp"

namespace raagws {

/// Side choice per partition: bit i set means the region lies on P_i*.
using Region = std::uint32_t;

inline constexpr int kMaxSystemSize = 20;

/// True iff the partitions are pairwise compatible and distinct.
bool is_compatible_system(const DefiningGraph& g, const std::vector<Partition>& ps);
/// Regions in increasing bit order; throws PreconditionError for incompatible systems.
std::vector<Region> enumerate_regions(const DefiningGraph& g, const std::vector<Partition>& ps);
/// I(R): letters lying in the chosen side or the link of every partition.
LetterSet region_intersection(const std::vector<Partition>& ps, Region r);
/// Flip every partition in which v is single.
Region flip_singles(const std::vector<Partition>& ps, Region r, Vertex v);
std::string region_name(Region r, int k);

struct ComplexEdge {
  int from = 0;
  int to = 0;
  int label = 0;
};

/// Edge end at a vertex: end 0 is the tail, end 1 the head.
struct Germ {
  int edge = 0;
  int end = 0;
  int code() const { return 2 * edge + end; }
};

/// Square with corners x, y, z, w; edges[0]: x-y, edges[1]: y-z, edges[2]: w-z,
/// edges[3]: x-w. edges[0] and edges[2] carry label_a, the others label_b.
struct Square {
  std::array<int, 4> corners{};
  std::array<int, 4> edges{};
  int label_a = 0;
  int label_b = 0;
  /// Germ ends of edges[0] and edges[3] at corner x.
  int end_a = 0;
  int end_b = 0;
};

/// 2-skeleton of a cube complex; higher cubes are implied by flag completion.
/// Labels 0..generator_count-1 are the generator edges e_v, the remaining
/// labels are the partition edges e_P.
struct CubeComplex {
  int generator_count = 0;
  std::vector<std::string> label_names;
  std::vector<std::uint64_t> label_commute;  // row bitmasks
  std::vector<std::string> vertex_names;
  std::vector<Region> vertex_regions;
  std::vector<ComplexEdge> edges;
  std::vector<Square> squares;

  int vertex_count() const { return static_cast<int>(vertex_names.size()); }
  int label_count() const { return static_cast<int>(label_names.size()); }
  bool labels_commute(int a, int b) const { return (label_commute[a] >> b) & 1u; }
  bool is_generator_label(int label) const { return label < generator_count; }
  std::vector<Germ> germs_at(int vertex) const;
  int germ_vertex(Germ g) const { return g.end == 0 ? edges[g.edge].from : edges[g.edge].to; }
  int germ_other(Germ g) const { return g.end == 0 ? edges[g.edge].to : edges[g.edge].from; }
  /// Unique edge at `vertex` with the given label and end, if any.
  std::optional<int> edge_with_germ(int vertex, int label, int end) const;
  /// Number of cubes per dimension, counted from cliques of commuting germs.
  std::vector<long long> cube_counts() const;
  long long euler_characteristic() const;

  std::string to_json() const;
  static CubeComplex parse_json(std::string_view text);
  std::string to_dot() const;
};

CubeComplex build_salvetti(const DefiningGraph& g);
/// S^𝒫; throws PreconditionError if the system is not compatible.
CubeComplex build_blowup(const DefiningGraph& g, const std::vector<Partition>& ps);
/// Fills in every square spanned by a commuting germ pair.
std::vector<Square> fill_squares(const CubeComplex& x);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
  explicit operator bool() const { return ok; }
};

VerifyReport verify_complex(const CubeComplex& x);

struct Hyperplane {
  std::vector<int> edges;
  std::vector<int> labels;
  bool carrier_retract = false;
};

std::vector<Hyperplane> hyperplanes(const CubeComplex& x);
bool is_carrier_retract(const CubeComplex& x, const std::vector<int>& dual_edges);
/// Every hyperplane is a carrier retract and every loop of dual edges is null-homotopic.
bool compatible_carriers(const CubeComplex& x, const std::vector<Hyperplane>& hs, const std::vector<int>& chosen);
/// Collapses the chosen hyperplanes; throws PreconditionError on incompatible carriers.
CubeComplex collapse(const CubeComplex& x, const std::vector<Hyperplane>& hs, const std::vector<int>& chosen);
/// Hyperplane indices carrying the given labels (each label must be one hyperplane).
std::vector<int> hyperplanes_of_labels(const std::vector<Hyperplane>& hs, const std::vector<int>& labels);
CubeComplex collapse_labels(const CubeComplex& x, const std::vector<int>& labels);
std::vector<int> partition_labels(const CubeComplex& x);

/// One vertex, one loop per label in use, torus squares exactly on a graph isomorphic to Γ.
bool is_salvetti(const CubeComplex& x, const DefiningGraph& g);
/// Checks that forgetting the region bits outside `kept` is an isomorphism onto `target`
/// (labels matched by name).
bool region_forgetting_isomorphic(const CubeComplex& collapsed, const CubeComplex& target,
                                  const std::vector<int>& kept);

/// Base graph of one link class: vertices are regions of the sub-system with that link.
struct BaseGraph {
  LetterSet link;
  std::vector<int> partitions;
  std::vector<Region> regions;
  struct Edge {
    int label = 0;
    int from = 0;
    int to = 0;
  };
  std::vector<Edge> edges;
};

struct TreeLikeSets {
  std::vector<BaseGraph> base_graphs;
  /// Each set is a sorted list of labels.
  std::vector<std::vector<int>> sets;
};

TreeLikeSets treelike_sets(const DefiningGraph& g, const std::vector<Partition>& ps, const CubeComplex& x);

/// Outer automorphism of S ← S^𝒫 → (S^𝒫)_𝒦 ≅ S for a tree-like label set 𝒦.
Automorphism induced_automorphism(const DefiningGraph& g, const std::vector<Partition>& ps, const CubeComplex& x,
                                  const std::vector<int>& treelike);

struct PathLift {
  /// Edge index and direction (true = traversed from tail to head).
  std::vector<std::pair<int, bool>> path;
  std::vector<int> label_counts;
};

/// Minimal lift of a cyclically reduced word to a loop in S^𝒫.
PathLift min_path_lift(const DefiningGraph& g, const CubeComplex& x, const std::vector<Partition>& ps,
                       const Word& w);

}  // namespace raagws
