#include "raagws/spine.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace raagws {

std::vector<int> rose_profile(const RoseSpace& s, const MarkedRose& r) {
  std::vector<int> out;
  for (const auto& w : r.short_words) out.push_back(static_cast<int>(w.size()));
  for (const auto& c : s.catalog().of_length(3)) out.push_back(rose_length(s, r, c.rep));
  return out;
}

std::string rose_digest(const RoseSpace& s, const MarkedRose& r) {
  // FNV-1a over the profile.
  std::uint64_t h = 1469598103934665603ull;
  for (int x : rose_profile(s, r)) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 8);
}

namespace {

struct RoseIndex {
  std::map<std::vector<int>, std::vector<int>> by_profile;

  int find(const RoseSpace& s, const std::vector<MarkedRose>& nodes, const std::vector<int>& key,
           const MarkedRose& r) const {
    auto it = by_profile.find(key);
    if (it == by_profile.end()) return -1;
    for (int i : it->second)
      if (rose_equal(s, nodes[i], r)) return i;
    return -1;
  }
};

}  // namespace

RoseGraph enumerate_roses(const RoseSpace& s, long long bound) {
  RoseGraph rg;
  rg.bound = bound;
  MarkedRose start = rose_identity(s);
  if (start.norm0 > bound) return rg;
  RoseIndex index;
  index.by_profile[rose_profile(s, start)].push_back(0);
  rg.nodes.push_back(std::move(start));
  for (int cur = 0; cur < rg.node_count(); ++cur) {
    for (std::size_t pi = 0; pi < s.partitions().size(); ++pi) {
      for (const auto& mv : s.moves()[pi]) {
        long long delta = 0;
        for (int d : move_deltas(s, rg.nodes[cur], mv)) delta += d;
        if (rg.nodes[cur].norm0 + delta > bound) continue;
        MarkedRose next = whitehead_move(s, rg.nodes[cur], mv).rose;
        const auto key = rose_profile(s, next);
        int to = index.find(s, rg.nodes, key, next);
        if (to < 0) {
          to = rg.node_count();
          index.by_profile[key].push_back(to);
          rg.nodes.push_back(std::move(next));
        }
        rg.edges.push_back({cur, to, s.partitions()[pi], mv, delta});
      }
    }
  }
  return rg;
}

int find_rose(const RoseSpace& s, const RoseGraph& rg, const MarkedRose& r) {
  const auto key = rose_profile(s, r);
  for (int i = 0; i < rg.node_count(); ++i)
    if (rg.nodes[i].norm0 == r.norm0 && rose_profile(s, rg.nodes[i]) == key && rose_equal(s, rg.nodes[i], r))
      return i;
  return -1;
}

std::string rose_graph_to_json(const RoseSpace& s, const RoseGraph& rg) {
  const auto& g = s.graph();
  nlohmann::ordered_json j;
  j["bound"] = rg.bound;
  auto nodes = nlohmann::ordered_json::array();
  for (int i = 0; i < rg.node_count(); ++i) {
    const auto& r = rg.nodes[i];
    nlohmann::ordered_json n;
    n["id"] = i;
    n["norm0"] = r.norm0;
    n["digest"] = rose_digest(s, r);
    n["rho"] = nlohmann::ordered_json::parse(r.rho.to_json(g))["images"];
    if (r.alpha) n["marking"] = nlohmann::ordered_json::parse(r.alpha->to_json(g))["images"];
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : rg.edges) {
    nlohmann::ordered_json ej;
    ej["from"] = e.from;
    ej["to"] = e.to;
    ej["move"] = nlohmann::ordered_json::parse(pair_to_json(g, e.move));
    ej["norm0_delta"] = e.norm0_delta;
    edges.push_back(ej);
  }
  j["edges"] = edges;
  return j.dump(2);
}

RoseGraph parse_rose_graph_json(const RoseSpace& s, std::string_view text) {
  const auto& g = s.graph();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("rose graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    throw ParseError("rose graph JSON: expected nodes and edges");
  RoseGraph rg;
  rg.bound = j.value("bound", 0LL);
  for (const auto& n : j["nodes"]) {
    nlohmann::json wrap;
    wrap["images"] = n.at("rho");
    Automorphism rho = Automorphism::parse_json(g, wrap.dump());
    std::optional<Automorphism> alpha;
    if (n.contains("marking")) {
      wrap["images"] = n["marking"];
      alpha = Automorphism::parse_json(g, wrap.dump());
    }
    rg.nodes.push_back(rose_from_rho(s, rho, alpha));
  }
  for (const auto& e : j["edges"]) {
    RoseEdge edge;
    edge.from = e.at("from").get<int>();
    edge.to = e.at("to").get<int>();
    if (edge.from < 0 || edge.to < 0 || edge.from >= rg.node_count() || edge.to >= rg.node_count())
      throw ParseError("rose graph JSON: edge endpoint out of range");
    edge.move = parse_pair_json(g, e.at("move").dump());
    edge.partition = make_partition(g, edge.move);
    edge.norm0_delta = e.value("norm0_delta", 0LL);
    rg.edges.push_back(std::move(edge));
  }
  return rg;
}

std::string rose_graph_to_dot(const RoseSpace& s, const RoseGraph& rg) {
  const auto& g = s.graph();
  std::ostringstream out;
  out << "digraph roses {\n";
  for (int i = 0; i < rg.node_count(); ++i)
    out << "  r" << i << " [label=\"" << rg.nodes[i].norm0 << "\\n" << rose_digest(s, rg.nodes[i]) << "\"];\n";
  for (const auto& e : rg.edges) {
    if (e.from == e.to) continue;
    out << "  r" << e.from << " -> r" << e.to << " [label=\"" << letters_to_text(g, e.move.P) << " / "
        << format_letter(g, e.move.m) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

bool StarPoset::leq(int a, int b) const {
  return std::includes(elements[b].begin(), elements[b].end(), elements[a].begin(), elements[a].end());
}

std::vector<std::pair<int, int>> StarPoset::covers() const {
  std::map<std::vector<int>, int> id;
  for (int a = 0; a < size(); ++a) id.emplace(elements[a], a);
  std::vector<std::pair<int, int>> out;
  for (int b = 0; b < size(); ++b) {
    if (elements[b].size() < 2) continue;
    for (std::size_t k = 0; k < elements[b].size(); ++k) {
      auto face = elements[b];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
      if (auto it = id.find(face); it != id.end()) out.emplace_back(it->second, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> StarPoset::maximal() const {
  std::vector<bool> covered(elements.size(), false);
  for (auto [a, b] : covers()) covered[a] = true;
  std::vector<int> out;
  for (int a = 0; a < size(); ++a)
    if (!covered[a]) out.push_back(a);
  return out;
}

StarPoset star_poset(const RoseSpace& s, const MarkedRose& r, bool reductive_only, std::size_t cap) {
  const auto& g = s.graph();
  StarPoset out;
  std::vector<bool> red;
  for (const auto& p : enumerate_partitions(g, PartitionScope::FromPairs)) {
    const bool is_red = !p.degenerate() && is_reductive(s, r, p).kind != Reductivity::Not;
    if (reductive_only && !is_red) continue;
    out.partitions.push_back(p);
    red.push_back(is_red);
  }
  const int n = static_cast<int>(out.partitions.size());
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) ok[a][b] = ok[b][a] = compatible(g, out.partitions[a], out.partitions[b]);

  // Level-by-level extension keeps elements sorted by size, then lexicographically.
  std::vector<std::vector<int>> level;
  for (int a = 0; a < n; ++a) level.push_back({a});
  while (!level.empty()) {
    if (out.elements.size() + level.size() > cap)
      throw PreconditionError("star poset exceeds " + std::to_string(cap) + " elements (partitions: " +
                              std::to_string(n) + ")");
    std::vector<std::vector<int>> next;
    for (const auto& e : level) {
      bool all_red = true;
      for (int i : e) all_red = all_red && red[i];
      out.elements.push_back(e);
      out.reductive.push_back(all_red);
      for (int c = e.back() + 1; c < n; ++c) {
        bool fits = true;
        for (int i : e) fits = fits && ok[i][c];
        if (!fits) continue;
        auto f = e;
        f.push_back(c);
        next.push_back(std::move(f));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::string star_poset_to_json(const DefiningGraph& g, const StarPoset& p) {
  nlohmann::ordered_json j;
  auto parts = nlohmann::ordered_json::array();
  for (const auto& q : p.partitions) parts.push_back(nlohmann::ordered_json::parse(partition_to_json(g, q)));
  j["partitions"] = parts;
  auto elems = nlohmann::ordered_json::array();
  for (int i = 0; i < p.size(); ++i) {
    nlohmann::ordered_json e;
    e["id"] = i;
    e["partitions"] = p.elements[i];
    e["reductive"] = static_cast<bool>(p.reductive[i]);
    elems.push_back(e);
  }
  j["elements"] = elems;
  auto covers = nlohmann::ordered_json::array();
  for (auto [a, b] : p.covers()) covers.push_back({a, b});
  j["covers"] = covers;
  return j.dump(2);
}

StarPoset parse_star_poset_json(const DefiningGraph& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("star poset JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("partitions") || !j.contains("elements"))
    throw ParseError("star poset JSON: expected partitions and elements");
  StarPoset p;
  for (const auto& q : j["partitions"]) p.partitions.push_back(parse_partition_json(g, q.dump()));
  const int n = static_cast<int>(p.partitions.size());
  for (const auto& e : j["elements"]) {
    auto idx = e.at("partitions").get<std::vector<int>>();
    if (idx.empty() || !std::is_sorted(idx.begin(), idx.end()))
      throw ParseError("star poset JSON: element indices must be nonempty and sorted");
    for (int i : idx)
      if (i < 0 || i >= n) throw ParseError("star poset JSON: partition index out of range");
    p.elements.push_back(std::move(idx));
    p.reductive.push_back(e.value("reductive", false));
  }
  return p;
}

std::string star_poset_to_dot(const DefiningGraph& g, const StarPoset& p) {
  std::ostringstream out;
  out << "digraph star {\n";
  for (int i = 0; i < p.size(); ++i) {
    out << "  f" << i << " [label=\"";
    for (std::size_t k = 0; k < p.elements[i].size(); ++k) {
      const auto& q = p.partitions[p.elements[i][k]];
      out << (k ? "\\n" : "") << letters_to_text(g, q.P) << " | " << letters_to_text(g, q.Pstar);
    }
    out << "\"" << (p.reductive[i] ? ", style=bold" : "") << "];\n";
  }
  for (auto [a, b] : p.covers()) out << "  f" << a << " -> f" << b << ";\n";
  out << "}\n";
  return out.str();
}

StarElementDetail star_element_detail(const RoseSpace& s, const MarkedRose& r, const std::vector<Partition>& system) {
  const auto& g = s.graph();
  StarElementDetail out;
  out.blowup = build_blowup(g, system);
  for (const auto& labels : treelike_sets(g, system, out.blowup).sets) {
    Automorphism phi = induced_automorphism(g, system, out.blowup, labels);
    MarkedRose collapsed = rose_from_rho(s, compose(g, phi, r.rho));
    out.collapses.push_back({labels, std::move(phi), std::move(collapsed)});
  }
  return out;
}

}  // namespace raagws
