#include "raagws/cube_complex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

namespace raagws {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

bool bit(Region r, int i) { return (r >> i) & 1u; }

LetterSet chosen_side(const Partition& p, bool star) { return star ? p.Pstar : p.P; }

long long corner_key(Germ a, Germ b) {
  int x = a.code(), y = b.code();
  if (x > y) std::swap(x, y);
  return static_cast<long long>(x) * 1000003LL + y;
}

std::array<std::pair<Germ, Germ>, 4> square_corners(const Square& s) {
  const Germ xa{s.edges[0], s.end_a}, xb{s.edges[3], s.end_b};
  const Germ ya{s.edges[0], 1 - s.end_a}, yb{s.edges[1], s.end_b};
  const Germ wa{s.edges[2], s.end_a}, wb{s.edges[3], 1 - s.end_b};
  const Germ za{s.edges[2], 1 - s.end_a}, zb{s.edges[1], 1 - s.end_b};
  return {{{xa, xb}, {ya, yb}, {za, zb}, {wa, wb}}};
}

std::array<long long, 4> square_key(const Square& s) {
  std::array<long long, 4> key{};
  auto cs = square_corners(s);
  for (int i = 0; i < 4; ++i) key[i] = corner_key(cs[i].first, cs[i].second);
  std::sort(key.begin(), key.end());
  return key;
}

// Walks the square spanned by two commuting germs at a common vertex.
std::optional<Square> walk_square(const CubeComplex& x, Germ g1, Germ g2) {
  const int la = x.edges[g1.edge].label, lb = x.edges[g2.edge].label;
  const int v = x.germ_vertex(g1);
  const int y = x.germ_other(g1);
  auto f2 = x.edge_with_germ(y, lb, g2.end);
  if (!f2) return std::nullopt;
  const int z = x.germ_other(Germ{*f2, g2.end});
  const int w = x.germ_other(g2);
  auto f1 = x.edge_with_germ(w, la, g1.end);
  if (!f1) return std::nullopt;
  if (x.germ_other(Germ{*f1, g1.end}) != z) return std::nullopt;
  Square s;
  s.corners = {v, y, z, w};
  s.edges = {g1.edge, *f2, *f1, g2.edge};
  s.label_a = la;
  s.label_b = lb;
  s.end_a = g1.end;
  s.end_b = g2.end;
  return s;
}

DefiningGraph generator_graph(const CubeComplex& x) {
  std::vector<std::string> names(x.label_names.begin(), x.label_names.begin() + x.generator_count);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int a = 0; a < x.generator_count; ++a)
    for (int b = a + 1; b < x.generator_count; ++b)
      if (x.labels_commute(a, b)) edges.emplace_back(a, b);
  return DefiningGraph(std::move(names), edges);
}

Letter traversal_letter(const CubeComplex& x, int edge, bool forward) {
  return make_letter(x.edges[edge].label, !forward);
}

std::vector<int> bfs_parent_edges(const CubeComplex& x, int root, const std::function<bool(int)>& usable) {
  std::vector<int> parent(x.vertex_count(), -2);
  parent[root] = -1;
  std::deque<int> q{root};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int e = 0; e < static_cast<int>(x.edges.size()); ++e) {
      if (!usable(e)) continue;
      const auto& ed = x.edges[e];
      int other = -1;
      if (ed.from == u) other = ed.to;
      else if (ed.to == u) other = ed.from;
      if (other < 0 || parent[other] != -2) continue;
      parent[other] = e;
      q.push_back(other);
    }
  }
  return parent;
}

// Sequence of (edge, forward) from root to v along a BFS tree.
std::vector<std::pair<int, bool>> tree_path(const CubeComplex& x, const std::vector<int>& parent, int v) {
  std::vector<std::pair<int, bool>> rev;
  while (parent[v] >= 0) {
    const int e = parent[v];
    const auto& ed = x.edges[e];
    if (ed.to == v) {
      rev.emplace_back(e, true);
      v = ed.from;
    } else {
      rev.emplace_back(e, false);
      v = ed.to;
    }
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::vector<std::pair<int, bool>> reverse_path(std::vector<std::pair<int, bool>> p) {
  std::reverse(p.begin(), p.end());
  for (auto& s : p) s.second = !s.second;
  return p;
}

std::string label_for_partition(const DefiningGraph& g, const Partition& p) {
  return letters_to_text(g, p.P) + "|" + letters_to_text(g, p.Pstar);
}

}  // namespace

bool is_compatible_system(const DefiningGraph& g, const std::vector<Partition>& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (ps[i] == ps[j] || !compatible(g, ps[i], ps[j])) return false;
  return true;
}

std::vector<Region> enumerate_regions(const DefiningGraph& g, const std::vector<Partition>& ps) {
  const int k = static_cast<int>(ps.size());
  if (k > kMaxSystemSize) throw PreconditionError("enumerate_regions: system too large");
  if (!is_compatible_system(g, ps)) throw PreconditionError("enumerate_regions: partitions are not compatible");
  std::vector<std::vector<bool>> commute(k, std::vector<bool>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) commute[i][j] = partitions_commute(g, ps[i], ps[j]);
  std::vector<Region> out;
  for (Region r = 0; r < (Region{1} << k); ++r) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j)
        if (!commute[i][j] && !chosen_side(ps[i], bit(r, i)).intersects(chosen_side(ps[j], bit(r, j)))) ok = false;
    if (ok) out.push_back(r);
  }
  return out;
}

LetterSet region_intersection(const std::vector<Partition>& ps, Region r) {
  LetterSet out(~std::uint64_t{0});
  for (std::size_t i = 0; i < ps.size(); ++i)
    out = out & (chosen_side(ps[i], bit(r, static_cast<int>(i))) | ps[i].link);
  return out;
}

Region flip_singles(const std::vector<Partition>& ps, Region r, Vertex v) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].single_vertices.contains(v)) r ^= Region{1} << i;
  return r;
}

std::string region_name(Region r, int k) {
  if (k == 0) return "*";
  std::string s;
  for (int i = 0; i < k; ++i) s += bit(r, i) ? '1' : '0';
  return s;
}

std::vector<Germ> CubeComplex::germs_at(int vertex) const {
  std::vector<Germ> out;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (edges[e].from == vertex) out.push_back({e, 0});
    if (edges[e].to == vertex) out.push_back({e, 1});
  }
  return out;
}

std::optional<int> CubeComplex::edge_with_germ(int vertex, int label, int end) const {
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (edges[e].label != label) continue;
    if ((end == 0 ? edges[e].from : edges[e].to) == vertex) return e;
  }
  return std::nullopt;
}

std::vector<long long> CubeComplex::cube_counts() const {
  std::vector<long long> corner_counts{static_cast<long long>(vertex_count())};
  for (int v = 0; v < vertex_count(); ++v) {
    const auto germs = germs_at(v);
    const int d = static_cast<int>(germs.size());
    std::vector<int> clique;
    std::function<void(int)> grow = [&](int from) {
      for (int i = from; i < d; ++i) {
        const int li = edges[germs[i].edge].label;
        bool ok = true;
        for (int j : clique)
          if (!labels_commute(li, edges[germs[j].edge].label)) ok = false;
        if (!ok) continue;
        clique.push_back(i);
        if (corner_counts.size() <= clique.size()) corner_counts.push_back(0);
        ++corner_counts[clique.size()];
        grow(i + 1);
        clique.pop_back();
      }
    };
    grow(0);
  }
  std::vector<long long> out(corner_counts.size());
  out[0] = corner_counts[0];
  for (std::size_t k = 1; k < corner_counts.size(); ++k) out[k] = corner_counts[k] >> k;
  return out;
}

long long CubeComplex::euler_characteristic() const {
  long long chi = 0;
  const auto c = cube_counts();
  for (std::size_t k = 0; k < c.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * c[k];
  return chi;
}

std::vector<Square> fill_squares(const CubeComplex& x) {
  std::vector<Square> out;
  std::set<std::array<long long, 4>> seen;
  for (int v = 0; v < x.vertex_count(); ++v) {
    const auto germs = x.germs_at(v);
    for (std::size_t i = 0; i < germs.size(); ++i)
      for (std::size_t j = i + 1; j < germs.size(); ++j) {
        const int la = x.edges[germs[i].edge].label, lb = x.edges[germs[j].edge].label;
        if (!x.labels_commute(la, lb)) continue;
        auto s = walk_square(x, germs[i], germs[j]);
        if (s && seen.insert(square_key(*s)).second) out.push_back(*s);
      }
  }
  return out;
}

CubeComplex build_salvetti(const DefiningGraph& g) { return build_blowup(g, {}); }

CubeComplex build_blowup(const DefiningGraph& g, const std::vector<Partition>& ps) {
  const auto regions = enumerate_regions(g, ps);
  const int n = g.size(), k = static_cast<int>(ps.size());
  if (n + k > 64) throw PreconditionError("build_blowup: too many labels");
  CubeComplex x;
  x.generator_count = n;
  for (Vertex v = 0; v < n; ++v) x.label_names.push_back(g.name(v));
  for (const auto& p : ps) x.label_names.push_back(label_for_partition(g, p));
  x.label_commute.assign(n + k, 0);
  auto set_commute = [&](int a, int b) {
    x.label_commute[a] |= std::uint64_t{1} << b;
    x.label_commute[b] |= std::uint64_t{1} << a;
  };
  for (auto [u, v] : g.edges()) set_commute(u, v);
  for (int i = 0; i < k; ++i) {
    for (Vertex v : ps[i].link_vertices.elements()) set_commute(v, n + i);
    for (int j = i + 1; j < k; ++j)
      if (partitions_commute(g, ps[i], ps[j])) set_commute(n + i, n + j);
  }
  std::map<Region, int> index;
  for (Region r : regions) {
    index[r] = x.vertex_count();
    x.vertex_names.push_back(region_name(r, k));
    x.vertex_regions.push_back(r);
  }
  for (Vertex v = 0; v < n; ++v) {
    for (Region r : regions) {
      if (!region_intersection(ps, r).contains(make_letter(v))) continue;
      auto tail = index.find(flip_singles(ps, r, v));
      if (tail == index.end()) throw Error("build_blowup: region R_v is missing");
      x.edges.push_back({tail->second, index[r], v});
    }
  }
  for (int i = 0; i < k; ++i)
    for (Region r : regions) {
      if (bit(r, i)) continue;
      auto other = index.find(r | (Region{1} << i));
      if (other != index.end()) x.edges.push_back({index[r], other->second, n + i});
    }
  x.squares = fill_squares(x);
  return x;
}

VerifyReport verify_complex(const CubeComplex& x) {
  VerifyReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.failures.push_back(std::move(msg));
  };
  const int nv = x.vertex_count();
  if (nv == 0) {
    fail("complex has no vertices");
    return rep;
  }
  for (const auto& e : x.edges)
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv || e.label < 0 || e.label >= x.label_count()) {
      fail("edge with out-of-range endpoint or label");
      return rep;
    }
  UnionFind uf(nv);
  for (const auto& e : x.edges) uf.unite(e.from, e.to);
  for (int v = 0; v < nv; ++v)
    if (uf.find(v) != uf.find(0)) {
      fail("not connected: vertex " + x.vertex_names[v]);
      break;
    }
  for (int v = 0; v < nv; ++v) {
    std::set<std::pair<int, int>> types;
    for (Germ gm : x.germs_at(v))
      if (!types.insert({x.edges[gm.edge].label, gm.end}).second)
        fail("vertex " + x.vertex_names[v] + " has two germs labeled " + x.label_names[x.edges[gm.edge].label]);
  }
  std::map<long long, int> corner_uses;
  for (const auto& s : x.squares) {
    const bool labels_ok = x.edges[s.edges[0]].label == s.label_a && x.edges[s.edges[2]].label == s.label_a &&
                           x.edges[s.edges[1]].label == s.label_b && x.edges[s.edges[3]].label == s.label_b &&
                           s.label_a != s.label_b && x.labels_commute(s.label_a, s.label_b);
    if (!labels_ok) {
      fail("square with inconsistent labels");
      continue;
    }
    const auto cs = square_corners(s);
    bool geometry_ok = true;
    for (int i = 0; i < 4; ++i)
      if (x.germ_vertex(cs[i].first) != s.corners[i] || x.germ_vertex(cs[i].second) != s.corners[i])
        geometry_ok = false;
    if (!geometry_ok) {
      fail("square whose corners do not match its edges");
      continue;
    }
    for (const auto& c : cs) ++corner_uses[corner_key(c.first, c.second)];
  }
  for (int v = 0; v < nv; ++v) {
    const auto germs = x.germs_at(v);
    for (std::size_t i = 0; i < germs.size(); ++i)
      for (std::size_t j = i + 1; j < germs.size(); ++j) {
        const int la = x.edges[germs[i].edge].label, lb = x.edges[germs[j].edge].label;
        if (!x.labels_commute(la, lb)) continue;
        auto it = corner_uses.find(corner_key(germs[i], germs[j]));
        const int uses = it == corner_uses.end() ? 0 : it->second;
        if (uses != 1)
          fail("germs " + x.label_names[la] + "," + x.label_names[lb] + " at " + x.vertex_names[v] + " span " +
               std::to_string(uses) + " squares");
      }
  }
  // Cube closure: the three squares at a corner close up to a cube.
  auto step = [&](int v, int label, int end) -> std::optional<int> {
    auto e = x.edge_with_germ(v, label, end);
    if (!e) return std::nullopt;
    return x.germ_other(Germ{*e, end});
  };
  for (int v = 0; v < nv && rep.ok; ++v) {
    std::vector<std::pair<int, int>> types;
    for (Germ gm : x.germs_at(v)) types.push_back({x.edges[gm.edge].label, gm.end});
    const int d = static_cast<int>(types.size());
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = b + 1; c < d; ++c) {
          std::array<std::pair<int, int>, 3> t{types[a], types[b], types[c]};
          if (!x.labels_commute(t[0].first, t[1].first) || !x.labels_commute(t[0].first, t[2].first) ||
              !x.labels_commute(t[1].first, t[2].first))
            continue;
          std::array<int, 3> order{0, 1, 2};
          std::optional<int> target;
          bool ok = true;
          do {
            std::optional<int> cur = v;
            for (int i : order) {
              if (!cur) break;
              cur = step(*cur, t[i].first, t[i].second);
            }
            if (!cur) ok = false;
            else if (!target) target = cur;
            else if (*target != *cur) ok = false;
          } while (ok && std::next_permutation(order.begin(), order.end()));
          if (!ok) fail("cube closure fails at " + x.vertex_names[v]);
        }
  }
  return rep;
}

std::vector<Hyperplane> hyperplanes(const CubeComplex& x) {
  const int ne = static_cast<int>(x.edges.size());
  UnionFind uf(ne);
  for (const auto& s : x.squares) {
    uf.unite(s.edges[0], s.edges[2]);
    uf.unite(s.edges[1], s.edges[3]);
  }
  std::map<int, Hyperplane> classes;
  for (int e = 0; e < ne; ++e) classes[uf.find(e)].edges.push_back(e);
  std::vector<Hyperplane> out;
  for (auto& [root, h] : classes) {
    std::set<int> labels;
    for (int e : h.edges) labels.insert(x.edges[e].label);
    h.labels.assign(labels.begin(), labels.end());
    h.carrier_retract = is_carrier_retract(x, h.edges);
    out.push_back(std::move(h));
  }
  return out;
}

bool is_carrier_retract(const CubeComplex& x, const std::vector<int>& dual_edges) {
  std::set<int> tails, heads, dual(dual_edges.begin(), dual_edges.end());
  for (int e : dual_edges) {
    const auto& ed = x.edges[e];
    if (ed.from == ed.to) return false;
    if (!tails.insert(ed.from).second || !heads.insert(ed.to).second) return false;
  }
  for (int t : tails)
    if (heads.count(t)) return false;
  for (const auto& s : x.squares)
    if (dual.count(s.edges[0]) && dual.count(s.edges[1])) return false;
  return true;
}

bool compatible_carriers(const CubeComplex& x, const std::vector<Hyperplane>& hs, const std::vector<int>& chosen) {
  std::set<int> dual;
  for (int h : chosen) {
    if (!hs.at(h).carrier_retract) return false;
    dual.insert(hs[h].edges.begin(), hs[h].edges.end());
  }
  if (dual.empty()) return true;
  const DefiningGraph gg = generator_graph(x);
  auto usable = [&](int e) { return dual.count(e) > 0; };
  std::vector<int> parent(x.vertex_count(), -2);
  std::vector<Word> potential(x.vertex_count());
  auto read = [&](const std::vector<std::pair<int, bool>>& path) {
    Word w;
    for (auto [e, fwd] : path)
      if (x.is_generator_label(x.edges[e].label)) w.push_back(traversal_letter(x, e, fwd));
    return w;
  };
  for (int root = 0; root < x.vertex_count(); ++root) {
    if (parent[root] != -2) continue;
    auto p = bfs_parent_edges(x, root, usable);
    for (int v = 0; v < x.vertex_count(); ++v)
      if (p[v] != -2) {
        parent[v] = p[v];
        potential[v] = read(tree_path(x, p, v));
      }
  }
  for (int e : dual) {
    const auto& ed = x.edges[e];
    if (parent[ed.to] == e || parent[ed.from] == e) continue;
    Word cycle = potential[ed.from];
    if (x.is_generator_label(ed.label)) cycle.push_back(traversal_letter(x, e, true));
    cycle = concat(cycle, inverse_word(potential[ed.to]));
    if (!reduce(gg, cycle).empty()) return false;
  }
  return true;
}

std::vector<int> hyperplanes_of_labels(const std::vector<Hyperplane>& hs, const std::vector<int>& labels) {
  std::vector<int> out;
  for (int label : labels) {
    int found = -1;
    for (int h = 0; h < static_cast<int>(hs.size()); ++h)
      if (std::find(hs[h].labels.begin(), hs[h].labels.end(), label) != hs[h].labels.end()) {
        if (found >= 0 || hs[h].labels.size() != 1)
          throw PreconditionError("label does not determine a single hyperplane");
        found = h;
      }
    if (found < 0) throw PreconditionError("no hyperplane carries the label");
    out.push_back(found);
  }
  return out;
}

CubeComplex collapse(const CubeComplex& x, const std::vector<Hyperplane>& hs, const std::vector<int>& chosen) {
  if (!compatible_carriers(x, hs, chosen)) throw PreconditionError("collapse: incompatible carriers");
  std::vector<bool> dual(x.edges.size(), false);
  for (int h : chosen)
    for (int e : hs[h].edges) dual[e] = true;
  UnionFind vuf(x.vertex_count());
  for (std::size_t e = 0; e < x.edges.size(); ++e)
    if (dual[e]) vuf.unite(x.edges[e].from, x.edges[e].to);
  UnionFind euf(static_cast<int>(x.edges.size()));
  for (const auto& s : x.squares) {
    const bool a = dual[s.edges[0]], b = dual[s.edges[1]];
    if (a && !b) euf.unite(s.edges[1], s.edges[3]);
    if (b && !a) euf.unite(s.edges[0], s.edges[2]);
  }
  CubeComplex out;
  out.generator_count = x.generator_count;
  out.label_names = x.label_names;
  out.label_commute = x.label_commute;
  std::vector<int> vmap(x.vertex_count(), -1);
  for (int v = 0; v < x.vertex_count(); ++v) {
    const int r = vuf.find(v);
    if (vmap[r] < 0) {
      vmap[r] = out.vertex_count();
      out.vertex_names.push_back(x.vertex_names[r]);
      if (!x.vertex_regions.empty()) out.vertex_regions.push_back(x.vertex_regions[r]);
    }
    vmap[v] = vmap[r];
  }
  std::vector<int> emap(x.edges.size(), -1);
  for (int e = 0; e < static_cast<int>(x.edges.size()); ++e) {
    if (dual[e]) continue;
    const int r = euf.find(e);
    if (emap[r] < 0) {
      emap[r] = static_cast<int>(out.edges.size());
      out.edges.push_back({vmap[x.edges[r].from], vmap[x.edges[r].to], x.edges[r].label});
    }
    emap[e] = emap[r];
  }
  std::set<std::array<long long, 4>> seen;
  for (const auto& s : x.squares) {
    if (dual[s.edges[0]] || dual[s.edges[1]]) continue;
    Square t = s;
    for (auto& c : t.corners) c = vmap[c];
    for (auto& e : t.edges) e = emap[e];
    if (seen.insert(square_key(t)).second) out.squares.push_back(t);
  }
  return out;
}

CubeComplex collapse_labels(const CubeComplex& x, const std::vector<int>& labels) {
  const auto hs = hyperplanes(x);
  return collapse(x, hs, hyperplanes_of_labels(hs, labels));
}

std::vector<int> partition_labels(const CubeComplex& x) {
  std::vector<int> out;
  for (int l = x.generator_count; l < x.label_count(); ++l) out.push_back(l);
  return out;
}

bool is_salvetti(const CubeComplex& x, const DefiningGraph& g) {
  if (x.vertex_count() != 1 || static_cast<int>(x.edges.size()) != g.size()) return false;
  std::set<int> labels;
  for (const auto& e : x.edges)
    if (e.from != e.to || !labels.insert(e.label).second) return false;
  const int n = g.size();
  std::vector<VertexSet> adj(n);
  std::map<std::pair<int, int>, int> count;
  for (const auto& s : x.squares) {
    if (s.edges[0] != s.edges[2] || s.edges[1] != s.edges[3]) return false;
    const int a = s.edges[0], b = s.edges[1];
    if (a == b) return false;
    adj[a].insert(b);
    adj[b].insert(a);
    ++count[std::minmax(a, b)];
  }
  for (const auto& [pair, c] : count)
    if (c != 1) return false;
  if (!verify_complex(x)) return false;
  std::vector<VertexSet> target(n);
  for (Vertex v = 0; v < n; ++v) target[v] = g.link(v);
  return find_graph_isomorphism(adj, target).has_value();
}

bool region_forgetting_isomorphic(const CubeComplex& collapsed, const CubeComplex& target,
                                  const std::vector<int>& kept) {
  if (collapsed.vertex_count() != target.vertex_count() || collapsed.vertex_regions.empty()) return false;
  if (collapsed.edges.size() != target.edges.size() || collapsed.squares.size() != target.squares.size())
    return false;
  std::map<Region, int> target_index;
  for (int v = 0; v < target.vertex_count(); ++v) target_index[target.vertex_regions[v]] = v;
  std::vector<int> vmap(collapsed.vertex_count());
  std::set<int> hit;
  for (int v = 0; v < collapsed.vertex_count(); ++v) {
    Region r = 0;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (bit(collapsed.vertex_regions[v], kept[j])) r |= Region{1} << j;
    auto it = target_index.find(r);
    if (it == target_index.end() || !hit.insert(it->second).second) return false;
    vmap[v] = it->second;
  }
  std::vector<int> lmap(collapsed.label_count(), -1);
  for (int l = 0; l < collapsed.label_count(); ++l) {
    auto it = std::find(target.label_names.begin(), target.label_names.end(), collapsed.label_names[l]);
    if (it != target.label_names.end()) lmap[l] = static_cast<int>(it - target.label_names.begin());
  }
  using EdgeKey = std::tuple<int, int, int>;
  std::vector<EdgeKey> ea, eb;
  for (const auto& e : collapsed.edges) {
    if (lmap[e.label] < 0) return false;
    ea.emplace_back(vmap[e.from], vmap[e.to], lmap[e.label]);
  }
  for (const auto& e : target.edges) eb.emplace_back(e.from, e.to, e.label);
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  if (ea != eb) return false;
  using CornerKey = std::tuple<int, int, int, int, int>;
  auto key_of = [](const Square& s, const std::vector<int>& vm, const std::vector<int>& lm) {
    std::vector<CornerKey> out;
    int la = lm[s.label_a], lb = lm[s.label_b], ea_ = s.end_a, eb_ = s.end_b;
    const std::array<std::pair<int, int>, 4> ends{{{ea_, eb_}, {1 - ea_, eb_}, {1 - ea_, 1 - eb_}, {ea_, 1 - eb_}}};
    for (int i = 0; i < 4; ++i) {
      auto [x1, x2] = ends[i];
      if (la < lb) out.emplace_back(vm[s.corners[i]], la, lb, x1, x2);
      else out.emplace_back(vm[s.corners[i]], lb, la, x2, x1);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<int> identity_v(target.vertex_count()), identity_l(target.label_count());
  std::iota(identity_v.begin(), identity_v.end(), 0);
  std::iota(identity_l.begin(), identity_l.end(), 0);
  std::vector<std::vector<CornerKey>> sa, sb;
  for (const auto& s : collapsed.squares) sa.push_back(key_of(s, vmap, lmap));
  for (const auto& s : target.squares) sb.push_back(key_of(s, identity_v, identity_l));
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

TreeLikeSets treelike_sets(const DefiningGraph& g, const std::vector<Partition>& ps, const CubeComplex& x) {
  TreeLikeSets out;
  const int n = g.size();
  std::map<LetterSet, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(ps.size()); ++i) groups[ps[i].link].push_back(i);
  std::vector<std::vector<std::vector<int>>> per_group;
  for (const auto& [link, members] : groups) {
    BaseGraph bg;
    bg.link = link;
    bg.partitions = members;
    std::vector<Partition> sub;
    for (int i : members) sub.push_back(ps[i]);
    bg.regions = enumerate_regions(g, sub);
    auto region_index = [&](Region r) {
      auto it = std::find(bg.regions.begin(), bg.regions.end(), r);
      if (it == bg.regions.end()) throw Error("treelike_sets: missing base region");
      return static_cast<int>(it - bg.regions.begin());
    };
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (Region r : bg.regions) {
        if (bit(r, static_cast<int>(k))) continue;
        auto it = std::find(bg.regions.begin(), bg.regions.end(), r | (Region{1} << k));
        if (it != bg.regions.end())
          bg.edges.push_back({n + members[k], region_index(r), static_cast<int>(it - bg.regions.begin())});
      }
    }
    auto region_of_letter = [&](Letter l) {
      Region r = 0;
      for (std::size_t k = 0; k < sub.size(); ++k)
        if (!sub[k].P.contains(l)) r |= Region{1} << k;
      return region_index(r);
    };
    for (Vertex v = 0; v < n; ++v) {
      if (LetterSet::symmetric(g.link(v)) != link) continue;
      bg.edges.push_back({v, region_of_letter(make_letter(v, true)), region_of_letter(make_letter(v))});
    }
    // Maximal trees by brute force over edge subsets.
    std::vector<std::vector<int>> trees;
    const int m = static_cast<int>(bg.edges.size());
    const int need = static_cast<int>(bg.regions.size()) - 1;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != need) continue;
      UnionFind uf(static_cast<int>(bg.regions.size()));
      bool acyclic = true;
      std::vector<int> labels;
      for (int e = 0; e < m && acyclic; ++e)
        if ((mask >> e) & 1u) {
          acyclic = uf.unite(bg.edges[e].from, bg.edges[e].to);
          labels.push_back(bg.edges[e].label);
        }
      if (acyclic) trees.push_back(labels);
    }
    per_group.push_back(std::move(trees));
    out.base_graphs.push_back(std::move(bg));
  }
  (void)x;
  std::vector<std::vector<int>> acc{{}};
  for (const auto& trees : per_group) {
    std::vector<std::vector<int>> next;
    for (const auto& a : acc)
      for (const auto& t : trees) {
        auto u = a;
        u.insert(u.end(), t.begin(), t.end());
        next.push_back(std::move(u));
      }
    acc = std::move(next);
  }
  for (auto& s : acc) std::sort(s.begin(), s.end());
  std::sort(acc.begin(), acc.end());
  out.sets = std::move(acc);
  return out;
}

Automorphism induced_automorphism(const DefiningGraph& g, const std::vector<Partition>& ps, const CubeComplex& x,
                                  const std::vector<int>& treelike) {
  const auto tl = treelike_sets(g, ps, x);
  std::vector<int> kset = treelike;
  std::sort(kset.begin(), kset.end());
  if (!std::binary_search(tl.sets.begin(), tl.sets.end(), kset))
    throw PreconditionError("induced_automorphism: label set is not tree-like");
  const int n = g.size();
  auto in_k = [&](int label) { return std::binary_search(kset.begin(), kset.end(), label); };
  // Surviving partition labels stand in for the collapsed generator labels of their link class.
  std::map<int, Vertex> stand_in;
  for (const auto& bg : tl.base_graphs) {
    std::vector<int> lost, kept;
    for (const auto& e : bg.edges) {
      if (e.label < n && in_k(e.label)) lost.push_back(e.label);
      if (e.label >= n && !in_k(e.label)) kept.push_back(e.label);
    }
    std::sort(lost.begin(), lost.end());
    std::sort(kept.begin(), kept.end());
    for (std::size_t i = 0; i < kept.size() && i < lost.size(); ++i) stand_in[kept[i]] = lost[i];
  }
  auto read = [&](const std::vector<std::pair<int, bool>>& path) {
    Word w;
    for (auto [e, fwd] : path) {
      const int label = x.edges[e].label;
      if (in_k(label)) continue;
      if (label < n) {
        w.push_back(make_letter(label, !fwd));
      } else {
        auto it = stand_in.find(label);
        if (it == stand_in.end()) throw Error("induced_automorphism: unassigned partition label");
        w.push_back(make_letter(it->second, fwd));
      }
    }
    return w;
  };
  auto parent = bfs_parent_edges(x, 0, [&](int e) { return x.edges[e].label >= n; });
  std::vector<Word> images(n);
  for (Vertex v = 0; v < n; ++v) {
    auto it = std::find_if(x.edges.begin(), x.edges.end(), [&](const ComplexEdge& e) { return e.label == v; });
    if (it == x.edges.end()) throw Error("induced_automorphism: generator without an edge");
    const int e = static_cast<int>(it - x.edges.begin());
    if (parent[it->from] == -2 || parent[it->to] == -2) throw Error("induced_automorphism: E is disconnected");
    auto path = tree_path(x, parent, it->from);
    path.emplace_back(e, true);
    auto back = reverse_path(tree_path(x, parent, it->to));
    path.insert(path.end(), back.begin(), back.end());
    images[v] = read(path);
  }
  return Automorphism::from_images(g, std::move(images));
}

PathLift min_path_lift(const DefiningGraph& g, const CubeComplex& x, const std::vector<Partition>& ps,
                       const Word& w) {
  if (!is_cyclically_reduced(g, w)) throw PreconditionError("min_path_lift: word is not cyclically reduced");
  PathLift out;
  out.label_counts.assign(x.label_count(), 0);
  if (w.empty()) return out;
  const int nv = x.vertex_count();
  const int n = g.size();
  std::map<Region, int> index;
  for (int v = 0; v < nv; ++v) index[x.vertex_regions[v]] = v;

  // Shortest e_P paths between all regions.
  std::vector<std::vector<int>> parent(nv);
  std::vector<std::vector<int>> dist(nv, std::vector<int>(nv, -1));
  for (int s = 0; s < nv; ++s) {
    parent[s] = bfs_parent_edges(x, s, [&](int e) { return x.edges[e].label >= n; });
    for (int t = 0; t < nv; ++t)
      if (parent[s][t] != -2) dist[s][t] = static_cast<int>(tree_path(x, parent[s], t).size());
  }
  const int len = static_cast<int>(w.size());
  std::vector<std::vector<int>> ends(len), starts(len);
  for (int i = 0; i < len; ++i) {
    const Vertex v = vertex_of(w[i]);
    for (int r = 0; r < nv; ++r) {
      if (!region_intersection(ps, x.vertex_regions[r]).contains(w[i])) continue;
      auto s = index.find(flip_singles(ps, x.vertex_regions[r], v));
      if (s == index.end()) continue;
      ends[i].push_back(r);
      starts[i].push_back(s->second);
    }
    if (ends[i].empty()) throw Error("min_path_lift: no region contains the letter");
  }
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  int best = kInf;
  std::vector<int> best_choice;
  for (std::size_t c0 = 0; c0 < ends[len - 1].size(); ++c0) {
    const int anchor = ends[len - 1][c0];
    std::vector<std::vector<int>> cost(len), back(len);
    for (int i = 0; i < len; ++i) {
      cost[i].assign(ends[i].size(), kInf);
      back[i].assign(ends[i].size(), -1);
      for (std::size_t c = 0; c < ends[i].size(); ++c) {
        if (i == len - 1 && c != c0) continue;
        const int s = starts[i][c];
        if (i == 0) {
          if (dist[anchor][s] >= 0) cost[0][c] = dist[anchor][s];
          continue;
        }
        for (std::size_t p = 0; p < ends[i - 1].size(); ++p) {
          const int d = dist[ends[i - 1][p]][s];
          if (cost[i - 1][p] >= kInf || d < 0) continue;
          if (cost[i - 1][p] + d < cost[i][c]) {
            cost[i][c] = cost[i - 1][p] + d;
            back[i][c] = static_cast<int>(p);
          }
        }
      }
    }
    if (cost[len - 1][c0] < best) {
      best = cost[len - 1][c0];
      best_choice.assign(len, 0);
      int c = static_cast<int>(c0);
      for (int i = len - 1; i >= 0; --i) {
        best_choice[i] = c;
        c = back[i][c];
      }
    }
  }
  if (best >= kInf) throw Error("min_path_lift: no lift found");
  int at = ends[len - 1][best_choice[len - 1]];
  for (int i = 0; i < len; ++i) {
    const int c = best_choice[i];
    const int s = starts[i][c], e = ends[i][c];
    auto connector = reverse_path(tree_path(x, parent[s], at));
    for (auto step : connector) out.path.push_back(step);
    const Vertex v = vertex_of(w[i]);
    const bool forward = !is_inverse(w[i]);
    const int tail = forward ? s : e, head = forward ? e : s;
    int edge = -1;
    for (int k = 0; k < static_cast<int>(x.edges.size()); ++k)
      if (x.edges[k].label == v && x.edges[k].from == tail && x.edges[k].to == head) edge = k;
    if (edge < 0) throw Error("min_path_lift: generator edge missing");
    out.path.emplace_back(edge, forward);
    at = e;
  }
  for (auto [e, fwd] : out.path) ++out.label_counts[x.edges[e].label];
  return out;
}

std::string CubeComplex::to_json() const {
  nlohmann::ordered_json j;
  j["generator_count"] = generator_count;
  j["labels"] = label_names;
  nlohmann::ordered_json commute = nlohmann::ordered_json::array();
  for (int a = 0; a < label_count(); ++a)
    for (int b = a + 1; b < label_count(); ++b)
      if (labels_commute(a, b)) commute.push_back({a, b});
  j["commute"] = commute;
  j["vertices"] = vertex_names;
  j["regions"] = vertex_regions;
  nlohmann::ordered_json es = nlohmann::ordered_json::array();
  for (const auto& e : edges) {
    nlohmann::ordered_json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["label"] = label_names[e.label];
    je["orientation"] = is_generator_label(e.label) ? "v^-1->v" : "P->P*";
    es.push_back(je);
  }
  j["edges"] = es;
  nlohmann::ordered_json ss = nlohmann::ordered_json::array();
  for (const auto& s : squares) {
    nlohmann::ordered_json js;
    js["corners"] = s.corners;
    js["edges"] = s.edges;
    js["ends"] = {s.end_a, s.end_b};
    ss.push_back(js);
  }
  j["squares"] = ss;
  return j.dump();
}

CubeComplex CubeComplex::parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("complex JSON: ") + e.what());
  }
  try {
    CubeComplex x;
    x.generator_count = j.at("generator_count").get<int>();
    x.label_names = j.at("labels").get<std::vector<std::string>>();
    if (x.label_names.size() > 64) throw ParseError("complex JSON: too many labels");
    x.label_commute.assign(x.label_names.size(), 0);
    for (const auto& c : j.at("commute")) {
      const int a = c.at(0).get<int>(), b = c.at(1).get<int>();
      if (a < 0 || b < 0 || a >= x.label_count() || b >= x.label_count()) throw ParseError("complex JSON: bad label");
      x.label_commute[a] |= std::uint64_t{1} << b;
      x.label_commute[b] |= std::uint64_t{1} << a;
    }
    x.vertex_names = j.at("vertices").get<std::vector<std::string>>();
    x.vertex_regions = j.at("regions").get<std::vector<Region>>();
    for (const auto& je : j.at("edges")) {
      const auto name = je.at("label").get<std::string>();
      auto it = std::find(x.label_names.begin(), x.label_names.end(), name);
      if (it == x.label_names.end()) throw ParseError("complex JSON: unknown label '" + name + "'");
      x.edges.push_back({je.at("from").get<int>(), je.at("to").get<int>(),
                         static_cast<int>(it - x.label_names.begin())});
    }
    for (const auto& js : j.at("squares")) {
      Square s;
      s.corners = js.at("corners").get<std::array<int, 4>>();
      s.edges = js.at("edges").get<std::array<int, 4>>();
      for (int e : s.edges)
        if (e < 0 || e >= static_cast<int>(x.edges.size())) throw ParseError("complex JSON: bad square edge");
      s.end_a = js.at("ends").at(0).get<int>();
      s.end_b = js.at("ends").at(1).get<int>();
      s.label_a = x.edges[s.edges[0]].label;
      s.label_b = x.edges[s.edges[3]].label;
      x.squares.push_back(s);
    }
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("complex JSON: ") + e.what());
  }
}

std::string CubeComplex::to_dot() const {
  std::string out = "digraph complex {\n";
  for (int v = 0; v < vertex_count(); ++v)
    out += "  v" + std::to_string(v) + " [label=\"" + vertex_names[v] + "\"];\n";
  for (const auto& e : edges)
    out += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) + " [label=\"" + label_names[e.label] +
           "\"];\n";
  return out + "}\n";
}

}  // namespace raagws
