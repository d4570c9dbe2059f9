#pragma once

#include <vector>

#include "raagws/graph.hpp"
#include "raagws/whitehead.hpp"
#include "raagws/word.hpp"

namespace raagws {

/// One star-graph edge: the cyclic adjacency u_i u_{i+1} joins u_i to u_{i+1}^-1.
/// Link letters sit in the copy L_c of the block the scan is currently in.
struct StarEdge {
  Letter from = 0;
  int from_block = 0;
  Letter to = 0;
  int to_block = 0;

  bool crossing() const { return from_block != to_block; }
};

/// St^L_{A_1..A_k}(w) for a cyclically reduced word w.
struct StarGraph {
  LetterSet link;
  std::vector<LetterSet> blocks;
  std::vector<StarEdge> edges;

  /// Edges with one end in block i and the other in block j (i != j).
  int edges_between(int i, int j) const;
  int crossing_edges() const;
};

/// Blocks must partition V^± ∖ L (empty blocks allowed) and L must be symmetric.
StarGraph build_star_graph(const DefiningGraph& g, LetterSet link, const std::vector<LetterSet>& blocks,
                           const Word& w);

struct CrossingCounts {
  int partition = 0;            // |P̂|_w
  std::vector<int> per_vertex;  // |v|_w, indexed by vertex
};

CrossingCounts crossing_counts(const DefiningGraph& g, const Partition& p, const Word& w);
/// |P̂|_w without building the edge list; w must be cyclically reduced (unchecked).
int partition_crossings(const Partition& p, const Word& w);
/// Number of occurrences of v or v^-1 in w.
int letter_count(const Word& w, Vertex v);

/// (A.B)^L_w; A and B disjoint subsets of V^± ∖ L.
int dot(const DefiningGraph& g, LetterSet link, LetterSet a, LetterSet b, const Word& w);
/// |A|^L_w = (A.A*)^L_w with A* = V^± ∖ (A ∪ L).
int absval(const DefiningGraph& g, LetterSet link, LetterSet a, const Word& w);

}  // namespace raagws
