#include "raagws/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

namespace raagws {

DefiningGraph::DefiningGraph(std::vector<std::string> names,
                             const std::vector<std::pair<Vertex, Vertex>>& edges)
    : names_(std::move(names)), links_(names_.size()) {
  if (names_.size() > static_cast<std::size_t>(kMaxVertices))
    throw ParseError("too many vertices (limit " + std::to_string(kMaxVertices) + ")");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ParseError("empty vertex name");
    if (!seen.insert(n).second) throw ParseError("duplicate vertex '" + n + "'");
  }
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw ParseError("edge endpoint out of range");
    if (u == v) throw ParseError("self-loop at '" + names_[u] + "'");
    links_[u].insert(v);
    links_[v].insert(u);
  }
}

DefiningGraph DefiningGraph::parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("graph JSON: expected object with a \"vertices\" array");
  std::vector<std::string> names;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("graph JSON: vertex names must be strings");
    names.push_back(v.get<std::string>());
  }
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw ParseError("duplicate vertex '" + n + "'");

  auto index_of = [&](const std::string& n) -> Vertex {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw ParseError("unknown endpoint '" + n + "'");
    return static_cast<Vertex>(it - names.begin());
  };

  std::vector<std::pair<Vertex, Vertex>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("graph JSON: \"edges\" must be an array");
    std::set<std::pair<Vertex, Vertex>> dedup;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("graph JSON: each edge must be a pair of vertex names");
      const auto a = e[0].get<std::string>();
      const auto b = e[1].get<std::string>();
      Vertex u = index_of(a);
      Vertex v = index_of(b);
      if (u == v) throw ParseError("self-loop at '" + a + "'");
      if (!dedup.insert(std::minmax(u, v)).second)
        throw ParseError("multi-edge between '" + a + "' and '" + b + "'");
      edges.emplace_back(u, v);
    }
  }
  return DefiningGraph(std::move(names), edges);
}

std::string DefiningGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = names_;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : edges()) j["edges"].push_back({names_[u], names_[v]});
  return j.dump();
}

std::optional<Vertex> DefiningGraph::find(std::string_view name) const {
  for (Vertex v = 0; v < size(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

Vertex DefiningGraph::vertex(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ParseError("unknown vertex '" + std::string(name) + "'");
}

std::vector<std::pair<Vertex, Vertex>> DefiningGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v = u + 1; v < size(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::vector<Vertex>> DefiningGraph::equivalence_classes() const {
  std::vector<std::vector<Vertex>> classes;
  std::vector<bool> done(size(), false);
  for (Vertex v = 0; v < size(); ++v) {
    if (done[v]) continue;
    std::vector<Vertex> cls;
    for (Vertex w = v; w < size(); ++w)
      if (!done[w] && equiv(v, w)) {
        cls.push_back(w);
        done[w] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<VertexSet> DefiningGraph::components(VertexSet removed) const {
  std::vector<VertexSet> out;
  VertexSet remaining = all().minus(removed);
  while (!remaining.empty()) {
    Vertex start = remaining.elements().front();
    VertexSet comp = VertexSet::single(start);
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet next;
      for (Vertex v : frontier.elements()) next = next | (links_[v] & remaining);
      next = next.minus(comp);
      comp = comp | next;
      frontier = next;
    }
    out.push_back(comp);
    remaining = remaining.minus(comp);
  }
  return out;
}

std::optional<std::vector<Vertex>> find_graph_isomorphism(const std::vector<VertexSet>& a,
                                                          const std::vector<VertexSet>& b) {
  const int n = static_cast<int>(a.size());
  if (b.size() != a.size()) return std::nullopt;
  std::vector<int> deg_a(n), deg_b(n);
  for (int i = 0; i < n; ++i) {
    deg_a[i] = a[i].size();
    deg_b[i] = b[i].size();
  }
  {
    auto sa = deg_a, sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<Vertex> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || deg_a[i] != deg_b[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = a[i].contains(k) == b[j].contains(map[k]);
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    map[i] = -1;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

std::vector<std::vector<Vertex>> graph_automorphisms(const DefiningGraph& g) {
  const int n = g.size();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> extend = [&](int i) {
    if (i == n) {
      out.push_back(map);
      return;
    }
    for (Vertex j = 0; j < n; ++j) {
      if (used[j] || g.link(i).size() != g.link(j).size()) continue;
      bool ok = true;
      for (Vertex k = 0; k < i && ok; ++k) ok = g.adjacent(i, k) == g.adjacent(j, map[k]);
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      extend(i + 1);
      used[j] = false;
    }
    map[i] = -1;
  };
  extend(0);
  // backtracking visits j in increasing order, so the identity comes first
  return out;
}

}  // namespace raagws
