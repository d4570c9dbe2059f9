#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "raagws/cube_complex.hpp"
#include "raagws/reduction.hpp"

namespace raagws {

using Rng = std::mt19937_64;

/// Random graph on n vertices v0..v{n-1}, each edge present with probability p.
DefiningGraph random_graph(int n, double p, Rng& rng);
/// Random reduced word of length at most max_len, cyclically reduced.
Word random_cyclic_word(const DefiningGraph& g, int max_len, Rng& rng);
/// Random symmetric letter set (each vertex kept with probability p).
LetterSet random_symmetric_set(const DefiningGraph& g, double p, Rng& rng, LetterSet within);
/// Random subset of `within`.
LetterSet random_subset(LetterSet within, double p, Rng& rng);

struct RandomAutomorphism {
  Automorphism phi;
  Automorphism inverse;
};

/// Product of `count` random Whitehead automorphisms, inversions and graph automorphisms.
RandomAutomorphism random_long_range(const DefiningGraph& g, int count, Rng& rng);
/// Rose reached from the identity by `moves` random Whitehead moves (marking tracked).
MarkedRose random_rose(const RoseSpace& s, int moves, Rng& rng);
/// Every pairwise-compatible set of at most max_size partitions, as index lists.
std::vector<std::vector<int>> compatible_systems(const DefiningGraph& g, const std::vector<Partition>& ps,
                                                 int max_size);
/// Reference count of cyclic subwords a u b^-1 or b u a^-1 with a in A, b in B, u a word in L.
int dot_by_subwords(LetterSet link, LetterSet a, LetterSet b, const Word& w);

struct CheckResult {
  explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  long long trials = 0;
  long long failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return failures == 0; }
  void fail(std::string what);
};

CheckResult check_length_change(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
CheckResult check_linearity(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
CheckResult check_quadrant_identity(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
CheckResult check_difference(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
CheckResult check_mixed_link(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
/// dot against dot_by_subwords, and dot symmetry.
CheckResult check_dot_oracle(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
CheckResult check_shuffle_invariance(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);
/// |P̂|_w against the e_P̂ count of the minimal lift in blowups of one or two partitions.
CheckResult check_lift_consistency(const DefiningGraph& g, Rng& rng, long long trials, int max_len = 12);

/// verify_complex, region counts and canonical collapses over all systems of size ≤ max_size.
CheckResult check_blowups(const DefiningGraph& g, int max_size = 3);
/// Tree-like ⟺ compatible carriers with a Salvetti collapse, plus the swap property.
CheckResult check_treelike(const DefiningGraph& g, int max_size = 2);

/// No reductive partition at the identity rose, and the minimum-bound rose graph is a point.
CheckResult check_identity_minimal(const RoseSpace& s);
/// Rose-level involution and σ ≠ σ^P̂_m on random roses.
CheckResult check_moves(const RoseSpace& s, Rng& rng, long long trials);
/// factor() on random long-range products, with monotone descent.
CheckResult check_peak_roundtrip(const RoseSpace& s, Rng& rng, long long trials, int max_factors = 8);
/// Norm change of tree-like collapses of random systems at random roses.
CheckResult check_multi_collapse(const RoseSpace& s, Rng& rng, long long trials);

struct WitnessCounts {
  long long roses = 0;
  long long hll_pairs = 0;
  long long hll_strong_pairs = 0;
  long long pushing_configs = 0;
  long long pushing_skipped = 0;
};

/// hll_combine and pushing_witness over every qualifying configuration of the rose graph.
CheckResult check_witnesses(const RoseSpace& s, long long bound, WitnessCounts* counts = nullptr);
CheckResult check_witnesses(const RoseSpace& s, const std::vector<MarkedRose>& roses, WitnessCounts* counts = nullptr);

struct SuiteOptions {
  std::uint64_t seed = 1;
  long long trials = 1000;
};

/// Suites: "identities" (counting and length identities) or "all".
std::vector<CheckResult> run_suite(const DefiningGraph& g, std::string_view suite, const SuiteOptions& opt);

}  // namespace raagws
