#include "raagws/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

namespace raagws {

namespace {

VertexSet component_of(const std::vector<VertexSet>& comps, Vertex v) {
  for (auto c : comps)
    if (c.contains(v)) return c;
  return {};
}

VertexSet singles_of(LetterSet side) {
  VertexSet out;
  for (Letter x : side.elements())
    if (!side.contains(inv(x))) out.insert(vertex_of(x));
  return out;
}

VertexSet maximal_vertices(const DefiningGraph& g, VertexSet singles) {
  VertexSet out;
  for (Vertex v : singles.elements()) {
    bool dominated = false;
    for (Vertex u : singles.elements())
      if (u != v && g.leq(v, u) && !g.leq(u, v)) dominated = true;
    if (!dominated) out.insert(v);
  }
  return out;
}

Partition orient(const DefiningGraph& g, LetterSet a, LetterSet b, LetterSet link) {
  Partition p;
  const LetterSet rest = a | b;
  if (!rest.empty() && b.contains(rest.first())) std::swap(a, b);
  p.P = a;
  p.Pstar = b;
  p.link = link;
  p.link_vertices = link.double_vertices();
  p.single_vertices = singles_of(a);
  p.max_vertices = maximal_vertices(g, p.single_vertices);
  return p;
}

nlohmann::ordered_json letter_json(const DefiningGraph& g, Letter x) {
  return {{"v", g.name(vertex_of(x))}, {"sign", sign_of(x)}};
}

nlohmann::ordered_json letters_json(const DefiningGraph& g, LetterSet s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (Letter x : s.elements()) j.push_back(letter_json(g, x));
  return j;
}

Letter letter_from_json(const DefiningGraph& g, const nlohmann::json& j) {
  if (j.is_string()) return parse_letter(g, j.get<std::string>());
  if (j.is_object() && j.contains("v") && j["v"].is_string()) {
    int sign = j.value("sign", 1);
    if (sign != 1 && sign != -1) throw ParseError("letter JSON: sign must be 1 or -1");
    return make_letter(g.vertex(j["v"].get<std::string>()), sign == -1);
  }
  throw ParseError("letter JSON: expected a string or {\"v\",\"sign\"} object");
}

LetterSet letter_set_from_json(const DefiningGraph& g, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of letters");
  LetterSet out;
  for (const auto& e : j) {
    Letter x = letter_from_json(g, e);
    if (out.contains(x)) throw ParseError("repeated letter '" + format_letter(g, x) + "'");
    out.insert(x);
  }
  return out;
}

Partition partition_from_json_object(const DefiningGraph& g, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("P")) throw ParseError("partition JSON: missing \"P\"");
  const LetterSet P = letter_set_from_json(g, j["P"]);
  Partition part;
  if (j.contains("m")) {
    const Letter m = letter_from_json(g, j["m"]);
    if (P.size() == 1 && P.contains(m)) {
      part = degenerate_partition(g, m);
    } else {
      auto report = validate_gw_pair(g, P, m);
      if (!report) {
        std::string msg = "not a Γ-Whitehead pair:";
        for (const auto& v : report.violations) msg += " " + v + ";";
        throw ParseError(msg);
      }
      part = make_partition(g, GWPair{P, m});
    }
  } else {
    if (P.empty()) throw ParseError("partition JSON: empty side");
    if (P.size() == 1) {
      part = degenerate_partition(g, P.first());
    } else {
      VertexSet maxv = maximal_vertices(g, singles_of(P));
      std::optional<Partition> found;
      for (Letter m : P.elements()) {
        if (P.contains(inv(m)) || !maxv.contains(vertex_of(m))) continue;
        if (validate_gw_pair(g, P, m)) {
          found = make_partition(g, GWPair{P, m});
          break;
        }
      }
      if (!found) throw ParseError("partition JSON: side P is not part of a Γ-Whitehead pair");
      part = *found;
    }
  }
  const LetterSet link = part.link;
  const LetterSet other = part.other_side(P.first());
  if (j.contains("Pstar") && letter_set_from_json(g, j["Pstar"]) != other)
    throw ParseError("partition JSON: \"Pstar\" is not the complement of P and its link");
  if (j.contains("link") && letter_set_from_json(g, j["link"]) != link)
    throw ParseError("partition JSON: \"link\" does not match lk(m)");
  return part;
}

}  // namespace

PairReport validate_gw_pair(const DefiningGraph& g, LetterSet P, Letter m) {
  PairReport r;
  const LetterSet universe = LetterSet::all(g);
  if (!P.subset_of(universe)) {
    r.violations.push_back("P contains letters outside V^±");
    r.offending = r.offending | P.minus(universe);
  }
  if (P.size() < 2) r.violations.push_back("P must have at least 2 elements");
  if (m < 0 || m >= 2 * g.size()) {
    r.violations.push_back("m is not a letter of the graph");
    return r;
  }
  if (!P.contains(m)) r.violations.push_back("m must lie in P");
  if (P.contains(inv(m))) {
    r.violations.push_back("m^-1 must not lie in P");
    r.offending.insert(inv(m));
  }
  const Vertex mv = vertex_of(m);
  const auto comps = g.components(g.star(mv));
  LetterSet bad1, bad2, bad3;
  for (Letter x : P.minus(P.minus(universe)).elements()) {
    const Vertex xv = vertex_of(x);
    if (g.adjacent(xv, mv)) bad1.insert(x);
    const bool single = !P.contains(inv(x));
    if (single) {
      if (!g.leq(xv, mv)) bad2.insert(x);
    } else if (xv != mv && !g.adjacent(xv, mv)) {
      for (Vertex w : component_of(comps, xv).elements()) {
        if (!P.contains(make_letter(w)) || !P.contains(make_letter(w, true))) {
          bad3.insert(x);
          break;
        }
      }
    }
  }
  auto describe = [&](LetterSet s) {
    std::string out;
    for (Letter x : s.elements()) out += (out.empty() ? "" : ", ") + format_letter(g, x);
    return out;
  };
  if (!bad1.empty()) r.violations.push_back("(1) adjacent to m: " + describe(bad1));
  if (!bad2.empty()) r.violations.push_back("(2) single but not <= m: " + describe(bad2));
  if (!bad3.empty()) r.violations.push_back("(3) double without its whole component of Γ∖st(m): " + describe(bad3));
  r.offending = r.offending | bad1 | bad2 | bad3;
  r.valid = r.violations.empty();
  return r;
}

LetterSet Partition::max_letters(LetterSet side) const {
  LetterSet out;
  for (Letter x : side.elements())
    if (!side.contains(inv(x)) && max_vertices.contains(vertex_of(x))) out.insert(x);
  return out;
}

std::vector<GWPair> Partition::moves() const {
  std::vector<GWPair> out;
  for (LetterSet side : {P, Pstar})
    for (Letter m : max_letters(side).elements()) out.push_back(GWPair{side, m});
  return out;
}

Partition partition_from_side(const DefiningGraph& g, LetterSet side, Letter m) {
  const LetterSet link = LetterSet::symmetric(g.link(vertex_of(m)));
  const LetterSet other = LetterSet::all(g).minus(side).minus(link);
  return orient(g, side, other, link);
}

Partition make_partition(const DefiningGraph& g, const GWPair& pair) {
  auto report = validate_gw_pair(g, pair.P, pair.m);
  if (!report) throw PreconditionError("make_partition: invalid Γ-Whitehead pair");
  return partition_from_side(g, pair.P, pair.m);
}

Partition degenerate_partition(const DefiningGraph& g, Letter v) {
  return partition_from_side(g, LetterSet::single(v), v);
}

std::vector<GWPair> enumerate_pairs(const DefiningGraph& g) {
  std::vector<GWPair> out;
  for (Letter m = 0; m < 2 * g.size(); ++m) {
    const Vertex mv = vertex_of(m);
    const auto comps = g.components(g.star(mv));
    // per component: list of letter sets it may contribute
    std::vector<std::vector<LetterSet>> options;
    for (VertexSet c : comps) {
      std::vector<LetterSet> opts{LetterSet{}};
      for (Vertex u : c.elements()) {
        if (!g.leq(u, mv)) continue;
        std::vector<LetterSet> next;
        for (LetterSet s : opts) {
          next.push_back(s);
          next.push_back(s | LetterSet::single(make_letter(u)));
          next.push_back(s | LetterSet::single(make_letter(u, true)));
        }
        opts = std::move(next);
      }
      const LetterSet dbl = LetterSet::symmetric(c);
      if (std::find(opts.begin(), opts.end(), dbl) == opts.end()) opts.push_back(dbl);
      options.push_back(std::move(opts));
    }
    std::function<void(std::size_t, LetterSet)> rec = [&](std::size_t i, LetterSet acc) {
      if (i == options.size()) {
        if (acc.size() >= 2) out.push_back(GWPair{acc, m});
        return;
      }
      for (LetterSet s : options[i]) rec(i + 1, acc | s);
    };
    rec(0, LetterSet::single(m));
  }
  return out;
}

std::vector<Partition> enumerate_partitions(const DefiningGraph& g, PartitionScope scope) {
  std::set<Partition> found;
  for (const auto& pair : enumerate_pairs(g)) {
    Partition p = partition_from_side(g, pair.P, pair.m);
    if (scope == PartitionScope::NonDegenerate && p.degenerate()) continue;
    found.insert(p);
  }
  if (scope == PartitionScope::All)
    for (Letter v = 0; v < 2 * g.size(); ++v) found.insert(degenerate_partition(g, v));
  return {found.begin(), found.end()};
}

std::vector<Partition> enumerate_partitions(const DefiningGraph& g, bool include_degenerate) {
  return enumerate_partitions(g, include_degenerate ? PartitionScope::All : PartitionScope::FromPairs);
}

Automorphism whitehead_auto(const DefiningGraph& g, const GWPair& pair) {
  const Letter m = pair.m;
  std::vector<Word> images(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    const Letter x = make_letter(v);
    const bool in = pair.P.contains(x);
    const bool in_inv = pair.P.contains(inv(x));
    Word w;
    if (v == vertex_of(m))
      w = {inv(x)};
    else if (in && !in_inv)
      w = {x, inv(m)};
    else if (!in && in_inv)
      w = {m, x};
    else if (in && in_inv)
      w = {m, x, inv(m)};
    else
      w = {x};
    images[v] = reduce(g, w);
  }
  return Automorphism{std::move(images)};
}

bool partitions_commute(const DefiningGraph& g, const Partition& p, const Partition& q) {
  if (p.max_vertices.empty() || q.max_vertices.empty()) return false;
  // Adjacent maximal vertices are distinct; equivalent adjacent vertices form
  // an abelian class, of which a maximal set holds only one vertex.
  const Vertex v = p.max_vertices.elements().front();
  const Vertex w = q.max_vertices.elements().front();
  return g.adjacent(v, w);
}

Relation relation(const DefiningGraph& g, const Partition& p, const Partition& q) {
  Relation r;
  r.quadrants = {p.P & q.P, p.P & q.Pstar, p.Pstar & q.P, p.Pstar & q.Pstar};
  for (int i = 0; i < 4; ++i)
    if (r.quadrants[i].empty()) {
      r.empty_quadrant = i;
      break;
    }
  if (p == q) {
    r.kind = RelationKind::CompatibleDisjoint;
  } else if (partitions_commute(g, p, q)) {
    r.kind = RelationKind::Commute;
  } else {
    r.kind = r.empty_quadrant >= 0 ? RelationKind::CompatibleDisjoint : RelationKind::Incompatible;
  }
  return r;
}

const char* quadrant_name(int index) {
  static const char* names[] = {"P∩Q", "P∩Q*", "P*∩Q", "P*∩Q*"};
  return names[index];
}

std::vector<QuadrantWitness> gw_quadrants(const DefiningGraph& g, const Partition& p, const Partition& q) {
  const Relation r = relation(g, p, q);
  const LetterSet candidates = LetterSet::symmetric(p.max_vertices | q.max_vertices);
  std::vector<QuadrantWitness> out;
  for (int i = 0; i < 4; ++i) {
    const LetterSet x = r.quadrants[i];
    if (x.empty()) continue;
    if (x.size() == 1) {
      const Letter c = x.first();
      if (candidates.contains(c)) {
        Partition part = degenerate_partition(g, c);
        // a singleton quadrant is a degenerate partition only if it misses lk(c)
        out.push_back(QuadrantWitness{i, x, c, part, true});
      }
      continue;
    }
    for (Letter c : (x & candidates).elements()) {
      if (validate_gw_pair(g, x, c)) out.push_back(QuadrantWitness{i, x, c, partition_from_side(g, x, c), false});
    }
  }
  return out;
}

std::vector<std::array<QuadrantWitness, 2>> opposite_gw_quadrants(const DefiningGraph& g, const Partition& p,
                                                                  const Partition& q) {
  if (relation(g, p, q).kind != RelationKind::Incompatible)
    throw PreconditionError("opposite_gw_quadrants: partitions are compatible");
  const auto all = gw_quadrants(g, p, q);
  std::vector<std::array<QuadrantWitness, 2>> out;
  for (auto [a, b] : {std::pair{0, 3}, std::pair{1, 2}}) {
    for (const auto& wa : all) {
      if (wa.quadrant != a) continue;
      for (const auto& wb : all)
        if (wb.quadrant == b) out.push_back({wa, wb});
    }
  }
  return out;
}

std::string letters_to_text(const DefiningGraph& g, LetterSet s) {
  std::string out = "{";
  bool first = true;
  for (Letter x : s.elements()) {
    if (!first) out += ",";
    out += format_letter(g, x);
    first = false;
  }
  return out + "}";
}

std::string partition_to_json(const DefiningGraph& g, const Partition& p) {
  nlohmann::ordered_json j;
  j["P"] = letters_json(g, p.P);
  j["Pstar"] = letters_json(g, p.Pstar);
  j["link"] = letters_json(g, p.link);
  return j.dump();
}

std::string pair_to_json(const DefiningGraph& g, const GWPair& pair) {
  nlohmann::ordered_json j;
  j["P"] = letters_json(g, pair.P);
  j["m"] = letter_json(g, pair.m);
  return j.dump();
}

LetterSet parse_letter_set(const DefiningGraph& g, const std::vector<std::string>& tokens) {
  LetterSet out;
  for (const auto& t : tokens) out.insert(parse_letter(g, t));
  return out;
}

Partition parse_partition_json(const DefiningGraph& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("partition JSON: ") + e.what());
  }
  return partition_from_json_object(g, j);
}

GWPair parse_pair_json(const DefiningGraph& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("pair JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("P") || !j.contains("m")) throw ParseError("pair JSON: expected {\"P\",\"m\"}");
  GWPair pair{letter_set_from_json(g, j["P"]), letter_from_json(g, j["m"])};
  auto report = validate_gw_pair(g, pair.P, pair.m);
  if (!report) throw PreconditionError("pair JSON: " + report.violations.front());
  return pair;
}

std::vector<Partition> parse_partition_list_json(const DefiningGraph& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("partition list JSON: ") + e.what());
  }
  std::vector<Partition> out;
  if (j.is_object()) {
    out.push_back(partition_from_json_object(g, j));
    return out;
  }
  if (!j.is_array()) throw ParseError("partition list JSON: expected an array");
  for (const auto& e : j) out.push_back(partition_from_json_object(g, e));
  return out;
}

}  // namespace raagws
