#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raagws/automorphism.hpp"
#include "raagws/graph.hpp"
#include "raagws/word.hpp"

namespace raagws {

/// (P, m): P ⊆ V^± with a distinguished letter m.
struct GWPair {
  LetterSet P;
  Letter m = 0;
  bool operator==(const GWPair&) const = default;
};

/// Outcome of checking the Γ-Whitehead conditions; lists every violation.
struct PairReport {
  bool valid = false;
  std::vector<std::string> violations;
  LetterSet offending;

  explicit operator bool() const { return valid; }
};

PairReport validate_gw_pair(const DefiningGraph& g, LetterSet P, Letter m);

/// Γ-Whitehead partition {P, lk(P), P*} of V^±. Sides are oriented so that
/// `P` holds the least letter outside the link, which makes equality
/// insensitive to side order.
struct Partition {
  LetterSet P;
  LetterSet Pstar;
  LetterSet link;
  VertexSet link_vertices;
  VertexSet max_vertices;
  VertexSet single_vertices;

  bool degenerate() const { return P.size() == 1 || Pstar.size() == 1; }
  bool P_degenerate() const { return P.size() == 1; }
  bool Pstar_degenerate() const { return Pstar.size() == 1; }
  /// The side holding letter x (which must not lie in the link).
  LetterSet side_of(Letter x) const { return P.contains(x) ? P : Pstar; }
  LetterSet other_side(Letter x) const { return P.contains(x) ? Pstar : P; }
  /// Maximal singles of the given side.
  LetterSet max_letters(LetterSet side) const;
  /// (side, m) pairs for every maximal letter of either side.
  std::vector<GWPair> moves() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.P == b.P && a.Pstar == b.Pstar;
  }
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.P != b.P) return a.P < b.P;
    return a.Pstar < b.Pstar;
  }
};

/// Builds the partition of a valid pair (throws PreconditionError otherwise).
Partition make_partition(const DefiningGraph& g, const GWPair& pair);
/// Partition with sides `side` and its complement, link lk(m); `side` may be a
/// singleton {m} (degenerate partition).
Partition partition_from_side(const DefiningGraph& g, LetterSet side, Letter m);
/// The degenerate partition {v} | V^± ∖ ({v} ∪ lk(v)^±).
Partition degenerate_partition(const DefiningGraph& g, Letter v);

enum class PartitionScope {
  NonDegenerate,  // both sides have at least two letters
  FromPairs,      // every partition of a valid pair, including singleton complements
  All,            // FromPairs plus every degenerate singleton partition
};

/// Deterministic list (sorted by side bitmasks) of distinct partitions.
std::vector<Partition> enumerate_partitions(const DefiningGraph& g, PartitionScope scope);
/// false: FromPairs; true: All.
std::vector<Partition> enumerate_partitions(const DefiningGraph& g, bool include_degenerate);
/// Every valid pair (P, m) with |P| >= 2, in enumeration order.
std::vector<GWPair> enumerate_pairs(const DefiningGraph& g);

/// Whitehead automorphism of (P, m); an involution.
Automorphism whitehead_auto(const DefiningGraph& g, const GWPair& pair);

enum class RelationKind { Commute, CompatibleDisjoint, Incompatible };

struct Relation {
  RelationKind kind = RelationKind::Incompatible;
  /// P∩Q, P∩Q*, P*∩Q, P*∩Q* with respect to the stored orientation.
  std::array<LetterSet, 4> quadrants;
  /// Index of the first empty quadrant, or -1.
  int empty_quadrant = -1;

  bool compatible() const { return kind != RelationKind::Incompatible; }
};

bool partitions_commute(const DefiningGraph& g, const Partition& p, const Partition& q);
Relation relation(const DefiningGraph& g, const Partition& p, const Partition& q);
inline bool compatible(const DefiningGraph& g, const Partition& p, const Partition& q) {
  return relation(g, p, q).compatible();
}

const char* quadrant_name(int index);

/// A quadrant together with a maximal letter making it a (possibly degenerate) pair.
struct QuadrantWitness {
  int quadrant = 0;
  LetterSet set;
  Letter m = 0;
  Partition partition;
  bool degenerate = false;
};

/// Pairs of opposite quadrants that both define (possibly degenerate)
/// Γ-Whitehead partitions with maximal letter among max(P̂)^± ∪ max(Q̂)^±.
std::vector<std::array<QuadrantWitness, 2>> opposite_gw_quadrants(const DefiningGraph& g, const Partition& p,
                                                                  const Partition& q);
/// Every single quadrant that validates, with each admissible maximal letter.
std::vector<QuadrantWitness> gw_quadrants(const DefiningGraph& g, const Partition& p, const Partition& q);

/// JSON: `{"P":[...],"Pstar":[...],"link":[...]}` with `{"v":..,"sign":±1}` letters.
std::string partition_to_json(const DefiningGraph& g, const Partition& p);
std::string pair_to_json(const DefiningGraph& g, const GWPair& pair);
std::string letters_to_text(const DefiningGraph& g, LetterSet s);
/// Accepts a partition object (P, optional Pstar/link) or a pair object with "m".
Partition parse_partition_json(const DefiningGraph& g, std::string_view text);
std::vector<Partition> parse_partition_list_json(const DefiningGraph& g, std::string_view text);
/// `{"P":[...],"m":...}`; the pair is validated.
GWPair parse_pair_json(const DefiningGraph& g, std::string_view text);
LetterSet parse_letter_set(const DefiningGraph& g, const std::vector<std::string>& tokens);

}  // namespace raagws
