#include "raagws/stargraph.hpp"

namespace raagws {

namespace {

void check_word(const DefiningGraph& g, const Word& w) {
  for (Letter x : w)
    if (x < 0 || x >= 2 * g.size()) throw PreconditionError("star graph: letter outside the graph");
  if (!is_cyclically_reduced(g, w)) throw PreconditionError("star graph: word is not cyclically reduced");
}

int block_index(const std::vector<LetterSet>& blocks, Letter x) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].contains(x)) return static_cast<int>(i);
  return -1;
}

}  // namespace

int StarGraph::edges_between(int i, int j) const {
  int n = 0;
  for (const auto& e : edges)
    if ((e.from_block == i && e.to_block == j) || (e.from_block == j && e.to_block == i)) ++n;
  return n;
}

int StarGraph::crossing_edges() const {
  int n = 0;
  for (const auto& e : edges) n += e.crossing();
  return n;
}

StarGraph build_star_graph(const DefiningGraph& g, LetterSet link, const std::vector<LetterSet>& blocks,
                           const Word& w) {
  if (link.inverses() != link) throw PreconditionError("star graph: link is not symmetric");
  if (blocks.empty()) throw PreconditionError("star graph: no blocks");
  LetterSet seen = link;
  for (LetterSet b : blocks) {
    if (b.intersects(seen)) throw PreconditionError("star graph: blocks overlap each other or the link");
    seen = seen | b;
  }
  if (seen != LetterSet::all(g)) throw PreconditionError("star graph: blocks do not cover V^± ∖ L");
  check_word(g, w);

  StarGraph sg{link, blocks, {}};
  const std::size_t n = w.size();
  if (n == 0) return sg;
  std::size_t start = 0;
  while (start < n && link.contains(w[start])) ++start;
  if (start == n) start = 0;
  int current = link.contains(w[start]) ? 0 : block_index(blocks, w[start]);
  sg.edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Letter x = w[(start + k) % n];
    const Letter y = w[(start + k + 1) % n];
    if (!link.contains(x)) current = block_index(blocks, x);
    const int from_block = current;
    const Letter to = inv(y);
    const int to_block = link.contains(to) ? current : block_index(blocks, to);
    sg.edges.push_back({x, from_block, to, to_block});
  }
  return sg;
}

int letter_count(const Word& w, Vertex v) {
  int n = 0;
  for (Letter x : w) n += vertex_of(x) == v;
  return n;
}

int partition_crossings(const Partition& p, const Word& w) {
  // Delete link letters; count cyclic neighbours (x, y) with x and y^-1 on different sides.
  int first = -1, prev = -1, count = 0;
  for (Letter x : w) {
    if (p.link.contains(x)) continue;
    if (prev >= 0 && p.P.contains(prev) != p.P.contains(inv(x))) ++count;
    if (first < 0) first = x;
    prev = x;
  }
  if (first >= 0 && p.P.contains(prev) != p.P.contains(inv(first))) ++count;
  return count;
}

CrossingCounts crossing_counts(const DefiningGraph& g, const Partition& p, const Word& w) {
  const StarGraph sg = build_star_graph(g, p.link, {p.P, p.Pstar}, w);
  CrossingCounts c;
  c.partition = sg.crossing_edges();
  c.per_vertex.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) c.per_vertex[v] = letter_count(w, v);
  return c;
}

int dot(const DefiningGraph& g, LetterSet link, LetterSet a, LetterSet b, const Word& w) {
  if (a.intersects(b)) throw PreconditionError("dot: A and B must be disjoint");
  if (a.intersects(link) || b.intersects(link)) throw PreconditionError("dot: A and B must avoid the link");
  const LetterSet rest = LetterSet::all(g).minus(a | b | link);
  return build_star_graph(g, link, {a, b, rest}, w).edges_between(0, 1);
}

int absval(const DefiningGraph& g, LetterSet link, LetterSet a, const Word& w) {
  return dot(g, link, a, LetterSet::all(g).minus(a | link), w);
}

}  // namespace raagws
