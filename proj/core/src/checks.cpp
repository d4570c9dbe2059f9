#include "raagws/checks.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "raagws/spine.hpp"
#include "raagws/stargraph.hpp"

namespace raagws {

namespace {

using Clock = std::chrono::steady_clock;

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

class Timer {
 public:
  explicit Timer(CheckResult& r) : r_(r), start_(Clock::now()) {}
  ~Timer() { r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  CheckResult& r_;
  Clock::time_point start_;
};

std::string sets_text(const DefiningGraph& g, std::initializer_list<std::pair<const char*, LetterSet>> sets) {
  std::string out;
  for (const auto& [name, set] : sets) out += std::string(" ") + name + "=" + letters_to_text(g, set);
  return out;
}

Word nonempty_word(const DefiningGraph& g, int max_len, Rng& rng) {
  for (;;) {
    Word w = random_cyclic_word(g, max_len, rng);
    if (!w.empty()) return w;
  }
}

}  // namespace

void CheckResult::fail(std::string what) {
  if (failures++ == 0) first_failure = std::move(what);
}

DefiningGraph random_graph(int n, double p, Rng& rng) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng, p)) edges.emplace_back(i, j);
  return DefiningGraph(std::move(names), edges);
}

Word random_cyclic_word(const DefiningGraph& g, int max_len, Rng& rng) {
  const int len = std::uniform_int_distribution<int>(1, std::max(1, max_len))(rng);
  Word w;
  for (int i = 0; i < len; ++i) {
    Letter x;
    do {
      x = pick(rng, 2 * g.size());
    } while (!w.empty() && x == inv(w.back()));
    w.push_back(x);
  }
  return cyclic_reduce(g, w);
}

LetterSet random_symmetric_set(const DefiningGraph& g, double p, Rng& rng, LetterSet within) {
  LetterSet out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (within.contains(make_letter(v)) && within.contains(make_letter(v, true)) && coin(rng, p))
      out = out | LetterSet::symmetric(VertexSet::single(v));
  return out;
}

LetterSet random_subset(LetterSet within, double p, Rng& rng) {
  LetterSet out;
  for (Letter x : within.elements())
    if (coin(rng, p)) out.insert(x);
  return out;
}

RandomAutomorphism random_long_range(const DefiningGraph& g, int count, Rng& rng) {
  const auto pairs = enumerate_pairs(g);
  const auto autos = graph_automorphisms(g);
  RandomAutomorphism out{Automorphism::identity(g), Automorphism::identity(g)};
  for (int i = 0; i < count; ++i) {
    Automorphism f = Automorphism::identity(g), finv = Automorphism::identity(g);
    const int kind = pick(rng, 4);
    if (kind <= 1 && !pairs.empty()) {
      f = finv = whitehead_auto(g, pairs[pick(rng, static_cast<int>(pairs.size()))]);
    } else if (kind == 2) {
      const Vertex v = pick(rng, g.size());
      f.images[v] = {make_letter(v, true)};
      finv = f;
    } else {
      const auto& perm = autos[pick(rng, static_cast<int>(autos.size()))];
      for (Vertex v = 0; v < g.size(); ++v) {
        f.images[v] = {make_letter(perm[v])};
        finv.images[perm[v]] = {make_letter(v)};
      }
    }
    out.phi = compose(g, out.phi, f);
    out.inverse = compose(g, finv, out.inverse);
  }
  return out;
}

MarkedRose random_rose(const RoseSpace& s, int moves, Rng& rng) {
  MarkedRose r = rose_identity(s);
  if (s.partitions().empty()) return r;
  for (int i = 0; i < moves; ++i) {
    const int p = pick(rng, static_cast<int>(s.partitions().size()));
    const auto& mv = s.moves()[p];
    if (mv.empty()) continue;
    r = whitehead_move(s, r, mv[pick(rng, static_cast<int>(mv.size()))]).rose;
  }
  return r;
}

std::vector<std::vector<int>> compatible_systems(const DefiningGraph& g, const std::vector<Partition>& ps,
                                                 int max_size) {
  const int n = static_cast<int>(ps.size());
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) ok[a][b] = ok[b][a] = compatible(g, ps[a], ps[b]);
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto cur = out[i];
    if (static_cast<int>(cur.size()) >= max_size) continue;
    for (int c = cur.empty() ? 0 : cur.back() + 1; c < n; ++c) {
      bool fits = true;
      for (int j : cur) fits = fits && ok[j][c];
      if (!fits) continue;
      auto next = cur;
      next.push_back(c);
      out.push_back(std::move(next));
    }
  }
  return out;
}

int dot_by_subwords(LetterSet link, LetterSet a, LetterSet b, const Word& w) {
  const int n = static_cast<int>(w.size());
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const Letter x = w[i];
    if (link.contains(x) || !(a.contains(x) || b.contains(x))) continue;
    for (int k = 1; k <= n; ++k) {
      const Letter y = w[(i + k) % n];
      if (link.contains(y)) continue;
      if ((a.contains(x) && b.contains(inv(y))) || (b.contains(x) && a.contains(inv(y)))) ++count;
      break;
    }
  }
  return count;
}

CheckResult check_length_change(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"length_change"};
  Timer t(r);
  const auto pairs = enumerate_pairs(g);
  if (pairs.empty()) return r;
  for (long long i = 0; i < trials; ++i) {
    const GWPair pair = pairs[pick(rng, static_cast<int>(pairs.size()))];
    const Partition p = make_partition(g, pair);
    const Word w = random_cyclic_word(g, max_len, rng);
    const int before = static_cast<int>(w.size());
    const int after = conj_length(g, apply(g, whitehead_auto(g, pair), w));
    const int predicted = before + partition_crossings(p, w) - letter_count(w, vertex_of(pair.m));
    ++r.trials;
    if (after != predicted)
      r.fail("w=" + format_word(g, w) + " P=" + letters_to_text(g, pair.P) + " m=" + format_letter(g, pair.m) +
             ": " + std::to_string(after) + " != " + std::to_string(predicted));
  }
  return r;
}

CheckResult check_linearity(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"dot_linearity"};
  Timer t(r);
  const LetterSet all = LetterSet::all(g);
  for (long long i = 0; i < trials; ++i) {
    const LetterSet L = random_symmetric_set(g, 0.3, rng, all);
    LetterSet A, B, C;
    for (Letter x : all.minus(L).elements()) {
      switch (pick(rng, 4)) {
        case 0: A.insert(x); break;
        case 1: B.insert(x); break;
        case 2: C.insert(x); break;
        default: break;
      }
    }
    const Word w = random_cyclic_word(g, max_len, rng);
    const int lhs = dot(g, L, A, B | C, w);
    const int rhs = dot(g, L, A, B, w) + dot(g, L, A, C, w);
    ++r.trials;
    if (lhs != rhs)
      r.fail("w=" + format_word(g, w) + sets_text(g, {{"L", L}, {"A", A}, {"B", B}, {"C", C}}));
  }
  return r;
}

CheckResult check_quadrant_identity(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"quadrant_identity"};
  Timer t(r);
  const LetterSet all = LetterSet::all(g);
  for (long long i = 0; i < trials; ++i) {
    const LetterSet L = random_symmetric_set(g, 0.3, rng, all);
    const LetterSet rest = all.minus(L);
    const LetterSet A = random_subset(rest, 0.5, rng), B = random_subset(rest, 0.5, rng);
    const LetterSet As = rest.minus(A), Bs = rest.minus(B);
    const Word w = random_cyclic_word(g, max_len, rng);
    const int lhs = absval(g, L, A & Bs, w) + absval(g, L, As & B, w);
    const int rhs = absval(g, L, A, w) + absval(g, L, B, w) - 2 * dot(g, L, A & B, As & Bs, w);
    ++r.trials;
    if (lhs != rhs) r.fail("w=" + format_word(g, w) + sets_text(g, {{"L", L}, {"A", A}, {"B", B}}));
  }
  return r;
}

CheckResult check_difference(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"dot_difference"};
  Timer t(r);
  const LetterSet all = LetterSet::all(g);
  for (long long i = 0; i < trials; ++i) {
    const LetterSet L = random_symmetric_set(g, 0.4, rng, all);
    const LetterSet L0 = random_symmetric_set(g, 0.5, rng, L);
    const LetterSet C = random_subset(all.minus(L), 0.6, rng);
    const LetterSet A = random_subset(C, 0.5, rng);
    const Word w = random_cyclic_word(g, max_len, rng);
    const int lhs = absval(g, L0, A, w) - absval(g, L, A, w);
    const int rhs = absval(g, L0, C, w) - absval(g, L, C, w);
    ++r.trials;
    if (lhs > rhs)
      r.fail("w=" + format_word(g, w) + sets_text(g, {{"L0", L0}, {"L", L}, {"A", A}, {"C", C}}));
  }
  return r;
}

CheckResult check_mixed_link(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"mixed_link"};
  Timer t(r);
  const LetterSet all = LetterSet::all(g);
  for (long long i = 0; i < trials; ++i) {
    const LetterSet L1 = random_symmetric_set(g, 0.25, rng, all);
    const LetterSet L2 = random_symmetric_set(g, 0.25, rng, all);
    const LetterSet rest = all.minus(L1 | L2);
    const LetterSet A = random_subset(rest, 0.5, rng), B = random_subset(rest, 0.5, rng);
    const LetterSet As = rest.minus(A), Bs = rest.minus(B);
    const Word w = random_cyclic_word(g, max_len, rng);
    const int lhs = absval(g, L1, A & Bs, w) + absval(g, L2, As & B, w);
    const int rhs = absval(g, L1, A, w) + absval(g, L2, B, w);
    ++r.trials;
    if (lhs > rhs)
      r.fail("w=" + format_word(g, w) + sets_text(g, {{"L1", L1}, {"L2", L2}, {"A", A}, {"B", B}}));
  }
  return r;
}

CheckResult check_dot_oracle(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"dot_subwords"};
  Timer t(r);
  const LetterSet all = LetterSet::all(g);
  for (long long i = 0; i < trials; ++i) {
    const LetterSet L = random_symmetric_set(g, 0.3, rng, all);
    LetterSet A, B;
    for (Letter x : all.minus(L).elements()) {
      const int c = pick(rng, 3);
      if (c == 0) A.insert(x);
      if (c == 1) B.insert(x);
    }
    const Word w = random_cyclic_word(g, max_len, rng);
    const int d = dot(g, L, A, B, w);
    ++r.trials;
    if (d != dot(g, L, B, A, w) || d != dot_by_subwords(L, A, B, w))
      r.fail("w=" + format_word(g, w) + sets_text(g, {{"L", L}, {"A", A}, {"B", B}}));
  }
  return r;
}

CheckResult check_shuffle_invariance(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"shuffle_invariance"};
  Timer t(r);
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  for (long long i = 0; i < trials; ++i) {
    const Word w = nonempty_word(g, max_len, rng);
    Word u = w;
    std::rotate(u.begin(), u.begin() + pick(rng, static_cast<int>(u.size())), u.end());
    for (int k = 0, swaps = 2 * static_cast<int>(u.size()); k < swaps && u.size() > 1; ++k) {
      const int j = pick(rng, static_cast<int>(u.size()) - 1);
      if (letters_commute(g, u[j], u[j + 1]) && vertex_of(u[j]) != vertex_of(u[j + 1])) std::swap(u[j], u[j + 1]);
    }
    ++r.trials;
    if (!is_cyclically_reduced(g, u)) {
      r.fail("shuffle of " + format_word(g, w) + " is not cyclically reduced");
      continue;
    }
    if (parts.empty()) continue;
    const Partition& p = parts[pick(rng, static_cast<int>(parts.size()))];
    const int crossings = partition_crossings(p, w);
    if (crossings != partition_crossings(p, u) || crossings != absval(g, p.link, p.P, u))
      r.fail("w=" + format_word(g, w) + " shuffled=" + format_word(g, u) + " P=" + letters_to_text(g, p.P));
  }
  return r;
}

CheckResult check_lift_consistency(const DefiningGraph& g, Rng& rng, long long trials, int max_len) {
  CheckResult r{"lift_consistency"};
  Timer t(r);
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  if (parts.empty()) return r;
  std::vector<std::vector<int>> systems;
  for (auto& sys : compatible_systems(g, parts, 2))
    if (!sys.empty()) systems.push_back(std::move(sys));
  std::map<std::vector<int>, CubeComplex> cache;
  for (long long i = 0; i < trials; ++i) {
    const auto& sys = systems[pick(rng, static_cast<int>(systems.size()))];
    std::vector<Partition> ps;
    for (int k : sys) ps.push_back(parts[k]);
    auto it = cache.find(sys);
    if (it == cache.end()) it = cache.emplace(sys, build_blowup(g, ps)).first;
    const CubeComplex& x = it->second;
    const Word w = random_cyclic_word(g, max_len, rng);
    const PathLift lift = min_path_lift(g, x, ps, w);
    ++r.trials;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const int crossings = partition_crossings(ps[k], w);
      if (lift.label_counts[x.generator_count + static_cast<int>(k)] != crossings) {
        r.fail("w=" + format_word(g, w) + " P=" + letters_to_text(g, ps[k].P) + " lift count " +
               std::to_string(lift.label_counts[x.generator_count + static_cast<int>(k)]) + " != " +
               std::to_string(crossings));
        break;
      }
    }
  }
  return r;
}

namespace {

// Regions by the definition: chosen sides of non-commuting pairs intersect.
long long brute_force_regions(const DefiningGraph& g, const std::vector<Partition>& ps) {
  const int k = static_cast<int>(ps.size());
  long long count = 0;
  for (Region reg = 0; reg < (Region{1} << k); ++reg) {
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = a + 1; b < k && ok; ++b) {
        if (partitions_commute(g, ps[a], ps[b])) continue;
        const LetterSet sa = (reg >> a) & 1u ? ps[a].Pstar : ps[a].P;
        const LetterSet sb = (reg >> b) & 1u ? ps[b].Pstar : ps[b].P;
        ok = sa.intersects(sb);
      }
    count += ok;
  }
  return count;
}

std::string system_text(const DefiningGraph& g, const std::vector<Partition>& ps) {
  std::string out = "{";
  for (std::size_t i = 0; i < ps.size(); ++i)
    out += (i ? ", " : "") + letters_to_text(g, ps[i].P) + " | " + letters_to_text(g, ps[i].Pstar);
  return out + "}";
}

}  // namespace

CheckResult check_blowups(const DefiningGraph& g, int max_size) {
  CheckResult r{"blowups"};
  Timer t(r);
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  const CubeComplex salvetti = build_salvetti(g);
  const long long chi = salvetti.euler_characteristic();
  for (const auto& sys : compatible_systems(g, parts, max_size)) {
    std::vector<Partition> ps;
    for (int k : sys) ps.push_back(parts[k]);
    ++r.trials;
    const std::string where = system_text(g, ps);
    const CubeComplex x = build_blowup(g, ps);
    if (auto rep = verify_complex(x); !rep) {
      r.fail(where + ": " + rep.failures.front());
      continue;
    }
    const auto regions = enumerate_regions(g, ps);
    if (static_cast<long long>(regions.size()) != brute_force_regions(g, ps)) r.fail(where + ": region count");
    if (ps.size() == 2) {
      const long long expect = relation(g, ps[0], ps[1]).kind == RelationKind::Commute ? 4 : 3;
      if (static_cast<long long>(regions.size()) != expect) r.fail(where + ": quadrant rule region count");
    }
    LetterSet covered;
    for (Region reg : regions) covered = covered | region_intersection(ps, reg);
    if ((covered & LetterSet::all(g)) != LetterSet::all(g)) r.fail(where + ": some letter lies in no I(R)");
    if (x.euler_characteristic() != chi) r.fail(where + ": Euler characteristic differs from the Salvetti");
    if (!is_salvetti(collapse_labels(x, partition_labels(x)), g)) r.fail(where + ": canonical collapse");
    for (std::size_t j = 0; j < ps.size(); ++j) {
      std::vector<Partition> rest;
      std::vector<int> kept;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (i != j) {
          rest.push_back(ps[i]);
          kept.push_back(static_cast<int>(i));
        }
      const CubeComplex partial = collapse_labels(x, {x.generator_count + static_cast<int>(j)});
      if (!region_forgetting_isomorphic(partial, build_blowup(g, rest), kept))
        r.fail(where + ": collapsing one partition edge is not the smaller blowup");
    }
  }
  return r;
}

CheckResult check_treelike(const DefiningGraph& g, int max_size) {
  CheckResult r{"treelike"};
  Timer t(r);
  const RoseSpace space(g);
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  for (const auto& sys : compatible_systems(g, parts, max_size)) {
    std::vector<Partition> ps;
    for (int k : sys) ps.push_back(parts[k]);
    const std::string where = system_text(g, ps);
    const CubeComplex x = build_blowup(g, ps);
    const auto hs = hyperplanes(x);
    const auto tl = treelike_sets(g, ps, x);
    const int h = static_cast<int>(hs.size());
    for (const auto& hp : hs)
      if (hp.labels.size() != 1) r.fail(where + ": hyperplane with several labels");
    if (h > 20) {
      r.fail(where + ": too many hyperplanes for exhaustive search");
      continue;
    }
    for (std::uint32_t mask = 0; mask < (1u << h); ++mask) {
      std::vector<int> chosen, labels;
      for (int i = 0; i < h; ++i)
        if ((mask >> i) & 1u) {
          chosen.push_back(i);
          labels.insert(labels.end(), hs[i].labels.begin(), hs[i].labels.end());
        }
      std::sort(labels.begin(), labels.end());
      ++r.trials;
      const bool collapses = compatible_carriers(x, hs, chosen) && is_salvetti(collapse(x, hs, chosen), g);
      const bool listed = std::binary_search(tl.sets.begin(), tl.sets.end(), labels);
      if (collapses != listed) {
        std::string names;
        for (int l : labels) names += " " + x.label_names[l];
        r.fail(where + ": set {" + names + " } collapses=" + std::to_string(collapses) +
               " treelike=" + std::to_string(listed));
      }
    }
    for (const auto& H : tl.sets)
      for (const auto& K : tl.sets)
        for (int k : K) {
          bool found = false;
          for (int hh : H) {
            auto swapped = H;
            std::erase(swapped, hh);
            if (std::find(swapped.begin(), swapped.end(), k) == swapped.end()) swapped.push_back(k);
            std::sort(swapped.begin(), swapped.end());
            if (std::binary_search(tl.sets.begin(), tl.sets.end(), swapped)) {
              found = true;
              break;
            }
          }
          ++r.trials;
          if (!found) r.fail(where + ": swap property fails");
        }
    for (const auto& K : tl.sets) {
      ++r.trials;
      const Automorphism phi = induced_automorphism(g, ps, x, K);
      if (!factor(space, phi).recognized) r.fail(where + ": induced automorphism not factored");
    }
  }
  return r;
}

CheckResult check_identity_minimal(const RoseSpace& s) {
  CheckResult r{"identity_minimal"};
  Timer t(r);
  const MarkedRose id = rose_identity(s);
  for (const auto& p : s.partitions()) {
    ++r.trials;
    if (is_reductive(s, id, p).kind != Reductivity::Not)
      r.fail("reductive at the identity: " + letters_to_text(s.graph(), p.P));
  }
  ++r.trials;
  if (enumerate_roses(s, id.norm0).node_count() != 1) r.fail("rose graph at the minimum is not a single point");
  ++r.trials;
  if (enumerate_roses(s, id.norm0 - 1).node_count() != 0) r.fail("rose graph below the minimum is not empty");
  return r;
}

CheckResult check_moves(const RoseSpace& s, Rng& rng, long long trials) {
  CheckResult r{"rose_moves"};
  Timer t(r);
  if (s.partitions().empty()) return r;
  const auto& g = s.graph();
  for (long long i = 0; i < trials; ++i) {
    const MarkedRose start = random_rose(s, pick(rng, 4), rng);
    const auto& moves = s.moves()[pick(rng, static_cast<int>(s.partitions().size()))];
    if (moves.empty()) continue;
    const GWPair mv = moves[pick(rng, static_cast<int>(moves.size()))];
    const MarkedRose once = whitehead_move(s, start, mv).rose;
    const MarkedRose twice = whitehead_move(s, once, mv).rose;
    ++r.trials;
    const Order o = norm_compare(s, once, start);
    if (!rose_equal(s, twice, start)) r.fail("move twice is not the identity: P=" + letters_to_text(g, mv.P));
    if (o == Order::Equal) r.fail("moved rose has the same norm: P=" + letters_to_text(g, mv.P));
    if (move_compare(s, start, mv) != o) r.fail("move_compare disagrees with norm_compare");
  }
  return r;
}

CheckResult check_peak_roundtrip(const RoseSpace& s, Rng& rng, long long trials, int max_factors) {
  CheckResult r{"peak_roundtrip"};
  Timer t(r);
  const auto& g = s.graph();
  for (long long i = 0; i < trials; ++i) {
    const auto ra = random_long_range(g, std::uniform_int_distribution<int>(1, max_factors)(rng), rng);
    ++r.trials;
    Factorization f;
    try {
      f = factor(s, ra.phi, ra.inverse);
    } catch (const Error& e) {
      r.fail(ra.phi.to_json(g) + ": " + e.what());
      continue;
    }
    if (!f.recognized) {
      r.fail("not recognized: " + ra.phi.to_json(g));
      continue;
    }
    Automorphism rebuilt = compose(g, inner(g, f.conjugator), f.theta.as_automorphism(g));
    for (auto it = f.steps.rbegin(); it != f.steps.rend(); ++it)
      rebuilt = compose(g, whitehead_auto(g, it->move), rebuilt);
    const MarkedRose target = rose_from_rho(s, ra.phi, ra.inverse);
    if (!rose_equal(s, rose_from_rho(s, rebuilt), target)) r.fail("recomposition differs: " + ra.phi.to_json(g));
    MarkedRose cur = target;
    for (const auto& st : f.steps) {
      MarkedRose next = whitehead_move(s, cur, st.move).rose;
      const bool down = st.strong ? next.norm0 < cur.norm0 : norm_compare(s, next, cur) == Order::Less;
      if (!down) r.fail("descent step does not decrease the norm: " + ra.phi.to_json(g));
      cur = std::move(next);
    }
  }
  return r;
}

CheckResult check_multi_collapse(const RoseSpace& s, Rng& rng, long long trials) {
  CheckResult r{"multi_collapse"};
  Timer t(r);
  const auto& g = s.graph();
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  std::vector<std::vector<int>> systems;
  for (auto& sys : compatible_systems(g, parts, 3))
    if (!sys.empty()) systems.push_back(std::move(sys));
  if (systems.empty()) return r;
  std::vector<Word> reps;
  for (const auto& c : s.short_classes()) reps.push_back(c.rep);
  for (const auto& c : s.catalog().of_length(3)) reps.push_back(c.rep);
  for (long long i = 0; i < trials; ++i) {
    const MarkedRose rose = random_rose(s, pick(rng, 4), rng);
    const auto& sys = systems[pick(rng, static_cast<int>(systems.size()))];
    std::vector<Partition> ps;
    for (int k : sys) ps.push_back(parts[k]);
    const CubeComplex x = build_blowup(g, ps);
    const auto tl = treelike_sets(g, ps, x);
    const auto& labels = tl.sets[pick(rng, static_cast<int>(tl.sets.size()))];
    const Automorphism phi = induced_automorphism(g, ps, x, labels);
    const MarkedRose collapsed =
        rose_from_rho(s, compose(g, phi, rose.rho), compose(g, *rose.alpha, invert(g, phi)));
    auto in_set = [&](int label) { return std::binary_search(labels.begin(), labels.end(), label); };
    ++r.trials;
    for (const Word& rep : reps) {
      const Word u = cyclic_reduce(g, apply(g, rose.rho, rep));
      long long expect = static_cast<long long>(u.size());
      for (std::size_t k = 0; k < ps.size(); ++k)
        if (!in_set(x.generator_count + static_cast<int>(k))) expect += partition_crossings(ps[k], u);
      for (Vertex v = 0; v < g.size(); ++v)
        if (in_set(v)) expect -= letter_count(u, v);
      if (rose_length(s, collapsed, rep) != expect) {
        r.fail(system_text(g, ps) + ": collapsed length of " + format_word(g, rep) + " is " +
               std::to_string(rose_length(s, collapsed, rep)) + ", expected " + std::to_string(expect));
        break;
      }
    }
    if (norm_compare(s, collapsed, rose) == Order::Less) {
      bool some = false;
      for (const auto& p : ps) some = some || (!p.degenerate() && is_reductive(s, rose, p).kind != Reductivity::Not);
      if (!some) r.fail(system_text(g, ps) + ": collapse reduces the norm but no partition is reductive");
    }
  }
  return r;
}

CheckResult check_witnesses(const RoseSpace& s, long long bound, WitnessCounts* counts) {
  CheckResult r = check_witnesses(s, enumerate_roses(s, bound).nodes, counts);
  return r;
}

CheckResult check_witnesses(const RoseSpace& s, const std::vector<MarkedRose>& roses, WitnessCounts* counts) {
  CheckResult r{"hll_pushing"};
  Timer t(r);
  const auto& g = s.graph();
  WitnessCounts local;
  for (const auto& rose : roses) {
    ++local.roses;
    std::vector<Partition> red;
    std::vector<Reductivity> kind;
    for (const auto& p : s.partitions()) {
      auto rr = is_reductive(s, rose, p);
      if (rr.kind == Reductivity::Not) continue;
      red.push_back(p);
      kind.push_back(rr.kind);
    }
    for (std::size_t a = 0; a < red.size(); ++a)
      for (std::size_t b = a + 1; b < red.size(); ++b) {
        const Relation rel = relation(g, red[a], red[b]);
        if (rel.compatible()) continue;
        ++local.hll_pairs;
        ++r.trials;
        try {
          const HllResult h = hll_combine(s, rose, red[a], red[b], HllMode::Reductive);
          const bool quadrant = std::find(rel.quadrants.begin(), rel.quadrants.end(), h.partition.P) !=
                                    rel.quadrants.end() ||
                                std::find(rel.quadrants.begin(), rel.quadrants.end(), h.partition.Pstar) !=
                                    rel.quadrants.end();
          if (!quadrant || h.partition.degenerate() || !compatible(g, h.partition, red[a]) ||
              !compatible(g, h.partition, red[b]) || is_reductive(s, rose, h.partition).kind == Reductivity::Not)
            r.fail("hll witness fails its postcondition: " + system_text(g, {red[a], red[b]}));
        } catch (const Error& e) {
          r.fail(std::string("hll: ") + e.what() + " " + system_text(g, {red[a], red[b]}));
        }
      }
    for (std::size_t a = 0; a < red.size(); ++a) {
      if (kind[a] != Reductivity::Strong) continue;
      for (const auto& q : s.partitions()) {
        if (compatible(g, red[a], q) || !is_zero_reductive(s, rose, q)) continue;
        ++local.hll_strong_pairs;
        ++r.trials;
        try {
          const HllResult h = hll_combine(s, rose, red[a], q, HllMode::Strong);
          if (is_reductive(s, rose, h.partition).kind != Reductivity::Strong || !compatible(g, h.partition, q) ||
              !compatible(g, h.partition, red[a]))
            r.fail("strong hll witness fails its postcondition: " + system_text(g, {red[a], q}));
        } catch (const Error& e) {
          r.fail(std::string("strong hll: ") + e.what() + " " + system_text(g, {red[a], q}));
        }
      }
    }
    for (const auto& m_hat : red)
      for (const auto& mv : partition_moves(g, m_hat)) {
        if (move_compare(s, rose, mv) != Order::Less || !pushing_hypotheses(s, rose, m_hat, mv.m)) continue;
        for (const auto& p : red) {
          if (relation(g, m_hat, p).compatible()) continue;
          if (p.link.contains(mv.m)) {
            ++local.pushing_skipped;
            continue;
          }
          ++local.pushing_configs;
          ++r.trials;
          try {
            const PushingResult w = pushing_witness(s, rose, m_hat, mv.m, p);
            const LetterSet M = m_hat.side_of(mv.m), Ms = m_hat.other_side(mv.m), Ps = p.other_side(mv.m);
            const LetterSet expect = w.which == 0 ? (M & Ps) : (Ms & Ps);
            const bool side_ok = w.partition.P == expect || w.partition.Pstar == expect;
            if (!side_ok || w.partition.link != p.link || !validate_gw_pair(g, w.move.P, w.move.m) ||
                is_reductive(s, rose, w.partition).kind == Reductivity::Not)
              r.fail("pushing witness fails its postcondition: " + system_text(g, {m_hat, p}));
          } catch (const Error& e) {
            r.fail(std::string("pushing: ") + e.what() + " " + system_text(g, {m_hat, p}));
          }
        }
      }
  }
  if (counts) *counts = local;
  return r;
}

std::vector<CheckResult> run_suite(const DefiningGraph& g, std::string_view suite, const SuiteOptions& opt) {
  if (suite != "identities" && suite != "all") throw PreconditionError("unknown suite '" + std::string(suite) + "'");
  Rng rng(opt.seed);
  std::vector<CheckResult> out;
  const long long n = opt.trials;
  out.push_back(check_length_change(g, rng, n));
  out.push_back(check_linearity(g, rng, n));
  out.push_back(check_quadrant_identity(g, rng, n));
  out.push_back(check_difference(g, rng, n));
  out.push_back(check_mixed_link(g, rng, n));
  out.push_back(check_dot_oracle(g, rng, n));
  out.push_back(check_shuffle_invariance(g, rng, n));
  out.push_back(check_lift_consistency(g, rng, n));
  if (suite == "all") {
    const RoseSpace s(g);
    out.push_back(check_blowups(g));
    out.push_back(check_treelike(g));
    out.push_back(check_identity_minimal(s));
    out.push_back(check_moves(s, rng, std::max(1LL, n / 10)));
    out.push_back(check_peak_roundtrip(s, rng, std::max(1LL, n / 10)));
    out.push_back(check_multi_collapse(s, rng, std::max(1LL, n / 10)));
    out.push_back(check_witnesses(s, rose_identity(s).norm0 + 6));
  }
  return out;
}

}  // namespace raagws
