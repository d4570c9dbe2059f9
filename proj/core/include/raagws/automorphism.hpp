#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raagws/graph.hpp"
#include "raagws/word.hpp"

namespace raagws {

class NotAnAutomorphism : public Error {
 public:
  using Error::Error;
};

/// Endomorphism of A_Γ given by reduced images of the generators.
struct Automorphism {
  std::vector<Word> images;

  static Automorphism identity(const DefiningGraph& g);
  /// Reduces the images and checks that every defining relation is preserved.
  static Automorphism from_images(const DefiningGraph& g, std::vector<Word> images);
  /// Parses `{"images":{"x":"x","y":"y x^-1"}}`; unlisted generators are fixed.
  static Automorphism parse_json(const DefiningGraph& g, std::string_view text);
  std::string to_json(const DefiningGraph& g) const;

  const Word& image(Vertex v) const { return images.at(v); }
  bool operator==(const Automorphism&) const = default;
};

/// Reduced image of a word.
Word apply(const DefiningGraph& g, const Automorphism& phi, const Word& w);
/// Image of a single letter (not necessarily reduced beyond the stored image).
Word apply_letter(const Automorphism& phi, Letter x);
/// (phi ∘ psi)(v) = phi(psi(v)).
Automorphism compose(const DefiningGraph& g, const Automorphism& phi, const Automorphism& psi);
bool preserves_relations(const DefiningGraph& g, const Automorphism& phi);
bool is_identity(const Automorphism& phi);

/// Determinant of the induced map on the abelianization.
long long abelian_determinant(const DefiningGraph& g, const Automorphism& phi);

/// Computes the inverse; throws NotAnAutomorphism if the images do not form a basis.
Automorphism invert(const DefiningGraph& g, const Automorphism& phi);

/// Inner automorphism v ↦ a v a^-1.
Automorphism inner(const DefiningGraph& g, const Word& a);

/// Graph automorphism π combined with a sign per vertex: v ↦ π(v)^{sign}.
struct Isometry {
  std::vector<Vertex> perm;
  std::vector<int> signs;

  static Isometry identity(const DefiningGraph& g);
  Automorphism as_automorphism(const DefiningGraph& g) const;
  Isometry inverse() const;
  bool is_identity() const;
};

/// ψ = c_a ∘ θ for an isometry θ and a conjugator a.
struct IsometryModInner {
  Isometry theta;
  Word conjugator;
};

/// Decides whether ψ is an isometry up to an inner automorphism.
std::optional<IsometryModInner> match_isometry_mod_inner(const DefiningGraph& g, const Automorphism& psi);

/// Elementary automorphism with its inverse, used by factorizations and inversion.
struct Elementary {
  std::string kind;  // "whitehead", "transvection", "partial_conjugation", "inner"
  Automorphism forward;
  Automorphism backward;
};

/// Transvections (adjacent and non-adjacent), partial conjugations, and inner
/// conjugations by a single letter.
std::vector<Elementary> elementary_automorphisms(const DefiningGraph& g);

}  // namespace raagws
