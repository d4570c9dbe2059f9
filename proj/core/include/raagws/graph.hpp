#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace raagws {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

using Vertex = int;

inline constexpr int kMaxVertices = 32;

/// Set of vertices of a defining graph, stored as a bitmask.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr VertexSet single(Vertex v) { return VertexSet(std::uint32_t{1} << v); }

  constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1u; }
  constexpr void insert(Vertex v) { bits_ |= std::uint32_t{1} << v; }
  constexpr void erase(Vertex v) { bits_ &= ~(std::uint32_t{1} << v); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  constexpr VertexSet minus(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }

  std::vector<Vertex> elements() const {
    std::vector<Vertex> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr auto operator<=>(const VertexSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Simplicial graph defining a right-angled Artin group. Vertex order is the
/// declaration order and drives every canonical ordering in the library.
class DefiningGraph {
 public:
  DefiningGraph() = default;
  DefiningGraph(std::vector<std::string> names, const std::vector<std::pair<Vertex, Vertex>>& edges);

  /// Parses `{"vertices":[...],"edges":[[u,v],...]}`.
  static DefiningGraph parse_json(std::string_view text);
  std::string to_json() const;

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Vertex> find(std::string_view name) const;
  /// Like find() but throws ParseError for unknown names.
  Vertex vertex(std::string_view name) const;

  VertexSet all() const { return VertexSet(size() == 32 ? ~0u : ((1u << size()) - 1u)); }
  bool adjacent(Vertex v, Vertex w) const { return links_[v].contains(w); }
  /// Distinct adjacent vertices generate commuting elements.
  bool commute(Vertex v, Vertex w) const { return v != w && adjacent(v, w); }
  VertexSet link(Vertex v) const { return links_[v]; }
  VertexSet star(Vertex v) const { return links_[v] | VertexSet::single(v); }
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// v <= w iff lk(v) is contained in st(w).
  bool leq(Vertex v, Vertex w) const { return link(v).subset_of(star(w)); }
  bool equiv(Vertex v, Vertex w) const { return leq(v, w) && leq(w, v); }
  std::vector<std::vector<Vertex>> equivalence_classes() const;

  /// Connected components of the full subgraph on vertices outside `removed`.
  std::vector<VertexSet> components(VertexSet removed) const;

  bool operator==(const DefiningGraph& o) const { return names_ == o.names_ && links_ == o.links_; }

 private:
  std::vector<std::string> names_;
  std::vector<VertexSet> links_;
};

/// Adjacency-preserving permutations of the vertex set, identity first.
std::vector<std::vector<Vertex>> graph_automorphisms(const DefiningGraph& g);

/// Isomorphism between two graphs given as adjacency bitmasks, found by
/// backtracking; result maps vertex i of `a` to vertex result[i] of `b`.
std::optional<std::vector<Vertex>> find_graph_isomorphism(const std::vector<VertexSet>& a,
                                                          const std::vector<VertexSet>& b);

}  // namespace raagws
