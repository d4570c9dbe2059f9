#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "raagws/graph.hpp"

namespace raagws {

/// A generator or its inverse, encoded as 2*vertex + (inverse ? 1 : 0).
/// The integer order a < a^-1 < b < b^-1 < ... is the canonical letter order.
using Letter = int;

constexpr Letter make_letter(Vertex v, bool inverse = false) { return 2 * v + (inverse ? 1 : 0); }
constexpr Vertex vertex_of(Letter x) { return x >> 1; }
constexpr bool is_inverse(Letter x) { return (x & 1) != 0; }
constexpr Letter inv(Letter x) { return x ^ 1; }
constexpr int sign_of(Letter x) { return is_inverse(x) ? -1 : 1; }

/// Subset of V^±, stored as a bitmask indexed by letter code.
class LetterSet {
 public:
  constexpr LetterSet() = default;
  constexpr explicit LetterSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr LetterSet single(Letter x) { return LetterSet(std::uint64_t{1} << x); }
  /// Both letters of every vertex in `vs`.
  static LetterSet symmetric(VertexSet vs);
  static LetterSet all(const DefiningGraph& g);

  constexpr bool contains(Letter x) const { return (bits_ >> x) & 1u; }
  constexpr void insert(Letter x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(Letter x) { bits_ &= ~(std::uint64_t{1} << x); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool subset_of(LetterSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(LetterSet o) const { return (bits_ & o.bits_) != 0; }
  Letter first() const { return std::countr_zero(bits_); }

  constexpr LetterSet operator|(LetterSet o) const { return LetterSet(bits_ | o.bits_); }
  constexpr LetterSet operator&(LetterSet o) const { return LetterSet(bits_ & o.bits_); }
  constexpr LetterSet minus(LetterSet o) const { return LetterSet(bits_ & ~o.bits_); }
  /// {x^-1 : x in this}.
  LetterSet inverses() const;
  /// Vertices with at least one letter in the set.
  VertexSet vertices() const;
  /// Vertices with both letters in the set.
  VertexSet double_vertices() const;

  std::vector<Letter> elements() const {
    std::vector<Letter> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr auto operator<=>(const LetterSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

using Word = std::vector<Letter>;

Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);

/// Text form: whitespace-separated `name` or `name^-1` tokens; empty text is the identity.
Word parse_word(const DefiningGraph& g, std::string_view text);
std::string format_word(const DefiningGraph& g, const Word& w);
std::string format_letter(const DefiningGraph& g, Letter x);
Letter parse_letter(const DefiningGraph& g, std::string_view token);
/// JSON form: `[{"v":"a","sign":1},...]`.
Word parse_word_json(const DefiningGraph& g, std::string_view text);
std::string format_word_json(const DefiningGraph& g, const Word& w);

inline bool letters_commute(const DefiningGraph& g, Letter x, Letter y) {
  return g.commute(vertex_of(x), vertex_of(y));
}

/// Minimal-length representative of the element, in lex-least shuffle order.
Word reduce(const DefiningGraph& g, const Word& w);
/// Lex-least word among the commutation-equivalents of `w` (no cancellation).
Word lex_normal(const DefiningGraph& g, const Word& w);
/// True iff no letter can cancel with a later inverse through commuting letters.
bool is_reduced(const DefiningGraph& g, const Word& w);

/// Minimal-length word in the conjugacy class of `w` (lex-normal shape).
Word cyclic_reduce(const DefiningGraph& g, const Word& w);
/// Conjugacy length: |cyclic_reduce(w)|.
int conj_length(const DefiningGraph& g, const Word& w);
bool is_cyclically_reduced(const DefiningGraph& g, const Word& w);

/// Splits a reduced word as p * core * p^-1 with `core` cyclically reduced.
struct ConjugateSplit {
  Word prefix;
  Word core;
};
ConjugateSplit split_conjugate(const DefiningGraph& g, const Word& w);

struct ConjClass {
  Word rep;

  int length() const { return static_cast<int>(rep.size()); }
  bool is_identity() const { return rep.empty(); }
  /// Ordering used for the class list: by length, then lexicographically.
  friend bool operator<(const ConjClass& a, const ConjClass& b) {
    if (a.rep.size() != b.rep.size()) return a.rep.size() < b.rep.size();
    return a.rep < b.rep;
  }
  friend bool operator==(const ConjClass& a, const ConjClass& b) { return a.rep == b.rep; }
};

ConjClass conj_canonical(const DefiningGraph& g, const Word& w);
inline bool conj_equal(const DefiningGraph& g, const Word& a, const Word& b) {
  return conj_canonical(g, a) == conj_canonical(g, b);
}

/// Every nontrivial conjugacy class of length <= max_len, sorted.
std::vector<ConjClass> enumerate_classes(const DefiningGraph& g, int max_len);
/// Nontrivial classes of length exactly `len`, sorted.
std::vector<ConjClass> classes_of_length(const DefiningGraph& g, int len);

/// Lazily extended cache of the class list, one bucket per length.
class ClassCatalog {
 public:
  explicit ClassCatalog(const DefiningGraph& g) : graph_(g) {}

  const std::vector<ConjClass>& of_length(int len) const;
  /// Classes of length 1 and 2: the set used for the 0-th norm coordinate.
  std::vector<ConjClass> short_classes() const;
  const DefiningGraph& graph() const { return graph_; }

 private:
  DefiningGraph graph_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<ConjClass>>> buckets_;
};

}  // namespace raagws
