#pragma once

#include <optional>
#include <string>
#include <vector>

#include "raagws/automorphism.hpp"
#include "raagws/graph.hpp"
#include "raagws/whitehead.hpp"
#include "raagws/word.hpp"

namespace raagws {

/// Shared, read-only data for rose computations over one graph: the class
/// catalog, 𝒢₀, the non-degenerate partitions and their valid moves.
class RoseSpace {
 public:
  explicit RoseSpace(DefiningGraph g);

  const DefiningGraph& graph() const { return catalog_.graph(); }
  const ClassCatalog& catalog() const { return catalog_; }
  /// 𝒢₀: every nontrivial class of length at most 2, in canonical order.
  const std::vector<ConjClass>& short_classes() const { return short_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  /// Valid pairs (side, m) with m maximal, per partition.
  const std::vector<std::vector<GWPair>>& moves() const { return moves_; }

 private:
  ClassCatalog catalog_;
  std::vector<ConjClass> short_;
  std::vector<Partition> partitions_;
  std::vector<std::vector<GWPair>> moves_;
};

/// Valid Whitehead pairs (side, m) of a partition with m maximal.
std::vector<GWPair> partition_moves(const DefiningGraph& g, const Partition& p);

/// Marked rose (S, α), stored through ρ = α⁻¹. α is kept when known.
struct MarkedRose {
  Automorphism rho;
  std::optional<Automorphism> alpha;
  /// Cyclically reduced ρ-images of the 𝒢₀ representatives.
  std::vector<Word> short_words;
  long long norm0 = 0;
};

MarkedRose rose_identity(const RoseSpace& s);
/// Rose with marking α = images; throws NotAnAutomorphism if they cannot be inverted.
MarkedRose rose_from_images(const RoseSpace& s, const Automorphism& images);
/// Rose with the given ρ (and α when the caller knows it).
MarkedRose rose_from_rho(const RoseSpace& s, const Automorphism& rho, std::optional<Automorphism> alpha = {});

/// ℓ_σ(g) for a word representing g.
int rose_length(const RoseSpace& s, const MarkedRose& r, const Word& rep);
/// α, computing it by inversion when it was not recorded.
Automorphism rose_alpha(const RoseSpace& s, const MarkedRose& r);
/// Equal iff ρ_τ ∘ α_σ is an isometry up to an inner automorphism.
bool rose_equal(const RoseSpace& s, const MarkedRose& a, const MarkedRose& b);

enum class Order { Less, Equal, Greater };
const char* order_name(Order o);

/// Lexicographic comparison of the full norms.
Order norm_compare(const RoseSpace& s, const MarkedRose& a, const MarkedRose& b);

struct MoveResult {
  MarkedRose rose;
  /// |P̂|_w − |m|_w for each class of 𝒢₀.
  std::vector<int> predicted_deltas;
};

/// σ^P̂_m: ρ' = (P,m) ∘ ρ. Checks the predicted length changes on 𝒢₀.
MoveResult whitehead_move(const RoseSpace& s, const MarkedRose& r, const GWPair& move);
/// Predicted change of ℓ_σ on each class of 𝒢₀.
std::vector<int> move_deltas(const RoseSpace& s, const MarkedRose& r, const GWPair& move);
/// Sign of the full-norm change of a move, scanning classes lazily.
Order move_compare(const RoseSpace& s, const MarkedRose& r, const GWPair& move);

enum class Reductivity { Not, Reductive, Strong };
const char* reductivity_name(Reductivity r);

struct ReductiveResult {
  Reductivity kind = Reductivity::Not;
  std::optional<GWPair> witness;
  long long norm0_delta = 0;
};

/// Strong if some maximal letter lowers ‖σ‖₀, reductive if some lowers ‖σ‖.
ReductiveResult is_reductive(const RoseSpace& s, const MarkedRose& r, const Partition& p);
/// True iff some move of the partition does not raise ‖σ‖₀.
bool is_zero_reductive(const RoseSpace& s, const MarkedRose& r, const Partition& p);

struct MoveChoice {
  Partition partition;
  GWPair move;
};

std::optional<MoveChoice> find_strongly_reductive(const RoseSpace& s, const MarkedRose& r);
std::optional<MoveChoice> find_reductive(const RoseSpace& s, const MarkedRose& r);

struct PeakStep {
  Partition partition;
  GWPair move;
  bool strong = false;
  long long norm0_before = 0;
  long long norm0_after = 0;
};

struct PeakResult {
  MarkedRose terminal;
  std::vector<PeakStep> steps;
};

PeakResult peak_reduce(const RoseSpace& s, const MarkedRose& start);

struct Factorization {
  bool recognized = false;
  /// φ = W_1 ∘ … ∘ W_k ∘ c_a ∘ θ.
  std::vector<PeakStep> steps;
  Isometry theta;
  Word conjugator;
  MarkedRose terminal;
};

/// Peak-reduces the rose whose ρ is φ and, when it reaches the identity rose,
/// returns φ as a product of Whitehead automorphisms, an inner automorphism
/// and an isometry (recomposition is checked). A known inverse of φ saves an
/// inversion when the descent needs full-norm comparisons.
Factorization factor(const RoseSpace& s, const Automorphism& phi, std::optional<Automorphism> phi_inverse = {});
std::string factorization_to_json(const DefiningGraph& g, const Factorization& f);

enum class HllMode { Reductive, Strong };

struct HllResult {
  Partition partition;
  GWPair move;
  int quadrant = 0;
};

/// Combines incompatible reductive partitions into a compatible quadrant partition.
HllResult hll_combine(const RoseSpace& s, const MarkedRose& r, const Partition& p, const Partition& q, HllMode mode);

struct PushingResult {
  Partition partition;
  GWPair move;
  /// 0 for M∩P*, 1 for M*∩P*.
  int which = 0;
};

/// Checks the hypotheses on (M̂, m): its link is maximal among σ-reductive
/// partitions and the move has minimal resulting norm among reductive moves
/// with that link.
bool pushing_hypotheses(const RoseSpace& s, const MarkedRose& r, const Partition& m_hat, Letter m);
PushingResult pushing_witness(const RoseSpace& s, const MarkedRose& r, const Partition& m_hat, Letter m,
                              const Partition& p);

}  // namespace raagws
