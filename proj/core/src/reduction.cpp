#include "raagws/reduction.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "raagws/stargraph.hpp"

namespace raagws {

std::vector<GWPair> partition_moves(const DefiningGraph& g, const Partition& p) {
  std::vector<GWPair> out;
  for (const auto& mv : p.moves())
    if (validate_gw_pair(g, mv.P, mv.m)) out.push_back(mv);
  return out;
}

RoseSpace::RoseSpace(DefiningGraph g) : catalog_(std::move(g)) {
  short_ = catalog_.short_classes();
  partitions_ = enumerate_partitions(graph(), PartitionScope::NonDegenerate);
  for (const auto& p : partitions_) moves_.push_back(partition_moves(graph(), p));
}

namespace {

MarkedRose make_rose(const RoseSpace& s, Automorphism rho, std::optional<Automorphism> alpha) {
  MarkedRose r;
  r.rho = std::move(rho);
  r.alpha = std::move(alpha);
  const auto& g = s.graph();
  r.short_words.reserve(s.short_classes().size());
  for (const auto& c : s.short_classes()) {
    Word w = cyclic_reduce(g, apply(g, r.rho, c.rep));
    r.norm0 += static_cast<long long>(w.size());
    r.short_words.push_back(std::move(w));
  }
  return r;
}

int delta_for(const Partition& p, Letter m, const Word& w) {
  return partition_crossings(p, w) - letter_count(w, vertex_of(m));
}

// Largest ℓ over images α(h), h of length at most 2: every class with ℓ_σ ≤ 2 is this short.
int scan_bound(const RoseSpace& s, const Automorphism& alpha) {
  int bound = 2;
  for (const auto& c : s.short_classes())
    bound = std::max(bound, conj_length(s.graph(), apply(s.graph(), alpha, c.rep)));
  return bound;
}

}  // namespace

MarkedRose rose_identity(const RoseSpace& s) {
  auto id = Automorphism::identity(s.graph());
  return make_rose(s, id, id);
}

MarkedRose rose_from_images(const RoseSpace& s, const Automorphism& images) {
  Automorphism rho = invert(s.graph(), images);
  return make_rose(s, std::move(rho), images);
}

MarkedRose rose_from_rho(const RoseSpace& s, const Automorphism& rho, std::optional<Automorphism> alpha) {
  if (!preserves_relations(s.graph(), rho)) throw NotAnAutomorphism("not an automorphism");
  return make_rose(s, rho, std::move(alpha));
}

int rose_length(const RoseSpace& s, const MarkedRose& r, const Word& rep) {
  return conj_length(s.graph(), apply(s.graph(), r.rho, rep));
}

Automorphism rose_alpha(const RoseSpace& s, const MarkedRose& r) {
  if (r.alpha) return *r.alpha;
  return invert(s.graph(), r.rho);
}

bool rose_equal(const RoseSpace& s, const MarkedRose& a, const MarkedRose& b) {
  const auto& g = s.graph();
  if (a.norm0 != b.norm0) return false;
  if (a.alpha) return match_isometry_mod_inner(g, compose(g, b.rho, *a.alpha)).has_value();
  return match_isometry_mod_inner(g, compose(g, a.rho, rose_alpha(s, b))).has_value();
}

const char* order_name(Order o) {
  switch (o) {
    case Order::Less: return "less";
    case Order::Equal: return "equal";
    case Order::Greater: return "greater";
  }
  return "?";
}

Order norm_compare(const RoseSpace& s, const MarkedRose& a, const MarkedRose& b) {
  if (a.norm0 != b.norm0) return a.norm0 < b.norm0 ? Order::Less : Order::Greater;
  for (std::size_t i = 0; i < a.short_words.size(); ++i)
    if (a.short_words[i].size() != b.short_words[i].size())
      return a.short_words[i].size() < b.short_words[i].size() ? Order::Less : Order::Greater;
  const int bound = std::max(scan_bound(s, rose_alpha(s, a)), scan_bound(s, rose_alpha(s, b)));
  for (int len = 3; len <= bound; ++len)
    for (const auto& c : s.catalog().of_length(len)) {
      const int la = rose_length(s, a, c.rep), lb = rose_length(s, b, c.rep);
      if (la != lb) return la < lb ? Order::Less : Order::Greater;
    }
  if (!rose_equal(s, a, b)) throw Error("norm_compare: equal norms on the scan set but the roses differ");
  return Order::Equal;
}

std::vector<int> move_deltas(const RoseSpace& s, const MarkedRose& r, const GWPair& move) {
  const Partition p = partition_from_side(s.graph(), move.P, move.m);
  std::vector<int> out;
  out.reserve(r.short_words.size());
  for (const auto& w : r.short_words) out.push_back(delta_for(p, move.m, w));
  return out;
}

MoveResult whitehead_move(const RoseSpace& s, const MarkedRose& r, const GWPair& move) {
  const auto& g = s.graph();
  if (!validate_gw_pair(g, move.P, move.m)) throw PreconditionError("whitehead_move: invalid Γ-Whitehead pair");
  const Automorphism w = whitehead_auto(g, move);
  std::optional<Automorphism> alpha;
  if (r.alpha) alpha = compose(g, *r.alpha, w);
  MoveResult out{make_rose(s, compose(g, w, r.rho), std::move(alpha)), move_deltas(s, r, move)};
  for (std::size_t i = 0; i < out.predicted_deltas.size(); ++i)
    if (static_cast<int>(out.rose.short_words[i].size()) !=
        static_cast<int>(r.short_words[i].size()) + out.predicted_deltas[i])
      throw Error("whitehead_move: length change differs from the crossing-count prediction");
  return out;
}

Order move_compare(const RoseSpace& s, const MarkedRose& r, const GWPair& move) {
  const auto& g = s.graph();
  const Partition p = partition_from_side(g, move.P, move.m);
  const auto deltas = move_deltas(s, r, move);
  long long total = 0;
  for (int d : deltas) total += d;
  if (total != 0) return total < 0 ? Order::Less : Order::Greater;
  for (int d : deltas)
    if (d != 0) return d < 0 ? Order::Less : Order::Greater;
  const Automorphism alpha = rose_alpha(s, r);
  const Automorphism moved_alpha = compose(g, alpha, whitehead_auto(g, move));
  const int bound = std::max(scan_bound(s, alpha), scan_bound(s, moved_alpha));
  for (int len = 3; len <= bound; ++len)
    for (const auto& c : s.catalog().of_length(len)) {
      const int d = delta_for(p, move.m, cyclic_reduce(g, apply(g, r.rho, c.rep)));
      if (d != 0) return d < 0 ? Order::Less : Order::Greater;
    }
  throw Error("move_compare: a Whitehead move left every length unchanged");
}

const char* reductivity_name(Reductivity r) {
  switch (r) {
    case Reductivity::Not: return "not";
    case Reductivity::Reductive: return "reductive";
    case Reductivity::Strong: return "strong";
  }
  return "?";
}

ReductiveResult is_reductive(const RoseSpace& s, const MarkedRose& r, const Partition& p) {
  if (p.degenerate()) throw PreconditionError("is_reductive: a reductive partition cannot be degenerate");
  ReductiveResult out;
  const auto moves = partition_moves(s.graph(), p);
  long long best = 0;
  bool have = false;
  for (const auto& mv : moves) {
    long long total = 0;
    for (int d : move_deltas(s, r, mv)) total += d;
    if (!have || total < best) {
      best = total;
      have = true;
      if (total < 0) out.witness = mv;
    }
  }
  out.norm0_delta = best;
  if (have && best < 0) {
    out.kind = Reductivity::Strong;
    return out;
  }
  for (const auto& mv : moves)
    if (move_compare(s, r, mv) == Order::Less) {
      out.kind = Reductivity::Reductive;
      out.witness = mv;
      return out;
    }
  return out;
}

bool is_zero_reductive(const RoseSpace& s, const MarkedRose& r, const Partition& p) {
  for (const auto& mv : partition_moves(s.graph(), p)) {
    long long total = 0;
    for (int d : move_deltas(s, r, mv)) total += d;
    if (total <= 0) return true;
  }
  return false;
}

std::optional<MoveChoice> find_strongly_reductive(const RoseSpace& s, const MarkedRose& r) {
  for (std::size_t i = 0; i < s.partitions().size(); ++i)
    for (const auto& mv : s.moves()[i]) {
      long long total = 0;
      for (int d : move_deltas(s, r, mv)) total += d;
      if (total < 0) return MoveChoice{s.partitions()[i], mv};
    }
  return std::nullopt;
}

std::optional<MoveChoice> find_reductive(const RoseSpace& s, const MarkedRose& r) {
  for (std::size_t i = 0; i < s.partitions().size(); ++i)
    for (const auto& mv : s.moves()[i])
      if (move_compare(s, r, mv) == Order::Less) return MoveChoice{s.partitions()[i], mv};
  return std::nullopt;
}

PeakResult peak_reduce(const RoseSpace& s, const MarkedRose& start) {
  const auto& g = s.graph();
  PeakResult out{start, {}};
  Automorphism product = Automorphism::identity(g);
  for (;;) {
    bool strong = true;
    auto choice = find_strongly_reductive(s, out.terminal);
    if (!choice) {
      strong = false;
      if (!out.terminal.alpha) out.terminal.alpha = invert(g, out.terminal.rho);
      choice = find_reductive(s, out.terminal);
    }
    if (!choice) break;
    auto moved = whitehead_move(s, out.terminal, choice->move);
    out.steps.push_back({choice->partition, choice->move, strong, out.terminal.norm0, moved.rose.norm0});
    product = compose(g, whitehead_auto(g, choice->move), product);
    out.terminal = std::move(moved.rose);
  }
  if (compose(g, product, start.rho) != out.terminal.rho) throw Error("peak_reduce: move sequence does not recompose");
  return out;
}

Factorization factor(const RoseSpace& s, const Automorphism& phi, std::optional<Automorphism> phi_inverse) {
  const auto& g = s.graph();
  const long long det = abelian_determinant(g, phi);
  if ((det != 1 && det != -1) || !preserves_relations(g, phi)) throw NotAnAutomorphism("not an automorphism");
  Factorization f;
  auto peak = peak_reduce(s, rose_from_rho(s, phi, std::move(phi_inverse)));
  f.steps = std::move(peak.steps);
  f.terminal = std::move(peak.terminal);
  auto match = match_isometry_mod_inner(g, f.terminal.rho);
  if (!match) return f;
  f.theta = match->theta;
  f.conjugator = match->conjugator;
  Automorphism recomposed = compose(g, inner(g, f.conjugator), f.theta.as_automorphism(g));
  for (auto it = f.steps.rbegin(); it != f.steps.rend(); ++it)
    recomposed = compose(g, whitehead_auto(g, it->move), recomposed);
  if (recomposed != phi) throw Error("factor: recomposition differs from the input");
  f.recognized = true;
  return f;
}

std::string factorization_to_json(const DefiningGraph& g, const Factorization& f) {
  nlohmann::ordered_json j;
  j["recognized"] = f.recognized;
  nlohmann::ordered_json moves = nlohmann::ordered_json::array();
  for (const auto& st : f.steps) {
    auto pj = nlohmann::ordered_json::parse(pair_to_json(g, st.move));
    pj["strong"] = st.strong;
    pj["norm0_before"] = st.norm0_before;
    pj["norm0_after"] = st.norm0_after;
    moves.push_back(pj);
  }
  j["moves"] = moves;
  if (f.recognized) {
    nlohmann::ordered_json iso = nlohmann::ordered_json::object();
    for (Vertex v = 0; v < g.size(); ++v)
      iso[g.name(v)] = format_letter(g, make_letter(f.theta.perm[v], f.theta.signs[v] < 0));
    j["isometry"] = iso;
    j["conjugator"] = format_word(g, f.conjugator);
  } else {
    j["terminal"] = nlohmann::ordered_json::parse(f.terminal.rho.to_json(g));
    j["terminal_norm0"] = f.terminal.norm0;
  }
  return j.dump();
}

HllResult hll_combine(const RoseSpace& s, const MarkedRose& r, const Partition& p, const Partition& q, HllMode mode) {
  const auto& g = s.graph();
  if (relation(g, p, q).kind != RelationKind::Incompatible)
    throw PreconditionError("hll_combine: partitions are compatible");
  if (mode == HllMode::Reductive) {
    if (is_reductive(s, r, p).kind == Reductivity::Not || is_reductive(s, r, q).kind == Reductivity::Not)
      throw PreconditionError("hll_combine: both partitions must be reductive");
  } else {
    if (is_reductive(s, r, p).kind != Reductivity::Strong || !is_zero_reductive(s, r, q))
      throw PreconditionError("hll_combine: needs a strongly reductive and a 0-reductive partition");
  }
  for (const auto& wit : gw_quadrants(g, p, q)) {
    if (wit.degenerate || wit.partition.degenerate()) continue;
    if (!compatible(g, wit.partition, p) || !compatible(g, wit.partition, q)) continue;
    auto red = is_reductive(s, r, wit.partition);
    const bool ok = mode == HllMode::Strong ? red.kind == Reductivity::Strong : red.kind != Reductivity::Not;
    if (ok) return HllResult{wit.partition, *red.witness, wit.quadrant};
  }
  throw Error("hll_combine: no reductive quadrant");
}

namespace {

std::vector<std::pair<GWPair, MarkedRose>> reductive_moves_with_link(const RoseSpace& s, const MarkedRose& r,
                                                                     LetterSet link) {
  std::vector<std::pair<GWPair, MarkedRose>> out;
  for (std::size_t i = 0; i < s.partitions().size(); ++i) {
    if (s.partitions()[i].link != link) continue;
    for (const auto& mv : s.moves()[i])
      if (move_compare(s, r, mv) == Order::Less) out.emplace_back(mv, whitehead_move(s, r, mv).rose);
  }
  return out;
}

}  // namespace

bool pushing_hypotheses(const RoseSpace& s, const MarkedRose& r, const Partition& m_hat, Letter m) {
  const auto& g = s.graph();
  const LetterSet side = m_hat.side_of(m);
  if (!validate_gw_pair(g, side, m) || move_compare(s, r, GWPair{side, m}) != Order::Less) return false;
  for (const auto& p : s.partitions()) {
    if (p.link == m_hat.link || !m_hat.link.subset_of(p.link)) continue;
    if (is_reductive(s, r, p).kind != Reductivity::Not) return false;
  }
  const MarkedRose mine = whitehead_move(s, r, GWPair{side, m}).rose;
  for (const auto& [mv, moved] : reductive_moves_with_link(s, r, m_hat.link))
    if (norm_compare(s, moved, mine) == Order::Less) return false;
  return true;
}

PushingResult pushing_witness(const RoseSpace& s, const MarkedRose& r, const Partition& m_hat, Letter m,
                              const Partition& p) {
  const auto& g = s.graph();
  if (relation(g, m_hat, p).kind != RelationKind::Incompatible)
    throw PreconditionError("pushing_witness: partitions are compatible");
  if (p.link.contains(m) || m_hat.link.contains(m))
    throw PreconditionError("pushing_witness: m must lie on a side of both partitions");
  const LetterSet M = m_hat.side_of(m), Mstar = m_hat.other_side(m);
  const LetterSet Pstar = p.other_side(m);
  const LetterSet letters = LetterSet::symmetric(p.max_vertices | m_hat.max_vertices);
  const std::array<LetterSet, 2> quadrants{M & Pstar, Mstar & Pstar};
  for (int which = 0; which < 2; ++which) {
    const LetterSet x = quadrants[which];
    if (x.size() < 2) continue;
    for (Letter c : (x & letters).elements()) {
      if (x.contains(inv(c)) || !validate_gw_pair(g, x, c)) continue;
      const Partition cand = partition_from_side(g, x, c);
      if (cand.link != p.link || cand.degenerate()) continue;
      auto red = is_reductive(s, r, cand);
      if (red.kind != Reductivity::Not) return PushingResult{cand, *red.witness, which};
    }
  }
  throw Error("pushing_witness: no witness");
}

}  // namespace raagws
