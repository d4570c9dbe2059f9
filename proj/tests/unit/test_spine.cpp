#include <doctest.h>

#include "fixtures.hpp"
#include "raagws/spine.hpp"

using namespace raagws;
using fx::ls;

TEST_CASE("rose graph at the minimum is a point") {
  for (const auto& g : {fx::f2(), fx::path3()}) {
    const RoseSpace s(g);
    const long long m = rose_identity(s).norm0;
    const auto rg = enumerate_roses(s, m);
    CHECK(rg.node_count() == 1);
    CHECK(enumerate_roses(s, m - 1).node_count() == 0);
  }
}

TEST_CASE("rose graph node counts") {
  const RoseSpace s(fx::f2());
  CHECK(enumerate_roses(s, 24).node_count() == 1);
  const auto rg = enumerate_roses(s, 26);
  CHECK(rg.node_count() == 5);
  for (const auto& e : rg.edges) {
    CHECK(rg.nodes[e.to].norm0 - rg.nodes[e.from].norm0 == e.norm0_delta);
    CHECK(rose_equal(s, whitehead_move(s, rg.nodes[e.from], e.move).rose, rg.nodes[e.to]));
  }
  // Every node is distinct.
  for (int a = 0; a < rg.node_count(); ++a)
    for (int b = a + 1; b < rg.node_count(); ++b) CHECK_FALSE(rose_equal(s, rg.nodes[a], rg.nodes[b]));
  CHECK(find_rose(s, rg, rose_identity(s)) == 0);
}

TEST_CASE("rose graph export") {
  const RoseSpace s(fx::f2());
  const auto rg = enumerate_roses(s, 26);
  const std::string text = rose_graph_to_json(s, rg);
  const auto back = parse_rose_graph_json(s, text);
  CHECK(back.node_count() == rg.node_count());
  CHECK(rose_graph_to_json(s, back) == text);
  const auto point = enumerate_roses(s, 20);
  const std::string dot = rose_graph_to_dot(s, point);
  CHECK(dot.find("digraph") == 0);
  CHECK(std::count(dot.begin(), dot.end(), '\n') >= 3);
}

TEST_CASE("star poset at the identity") {
  const RoseSpace f(fx::f2());
  CHECK(star_poset(f, rose_identity(f), true).size() == 0);

  const RoseSpace s(fx::path3());
  const auto p = star_poset(s, rose_identity(s), false);
  CHECK(p.partitions.size() == 6);
  // Singletons, then every compatible pair, triple and so on.
  int singles = 0;
  for (const auto& e : p.elements) singles += e.size() == 1;
  CHECK(singles == 6);
  for (const auto& e : p.elements)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        CHECK(compatible(s.graph(), p.partitions[e[i]], p.partitions[e[j]]));
  CHECK(p.size() == 47);
  for (auto [a, b] : p.covers()) CHECK(p.leq(a, b));
  CHECK_FALSE(p.maximal().empty());
  CHECK_THROWS_AS(star_poset(s, rose_identity(s), false, 10), PreconditionError);
}

TEST_CASE("star poset away from the minimum") {
  const RoseSpace s(fx::f2());
  const auto r = rose_from_images(s, Automorphism::parse_json(s.graph(), R"({"images":{"y":"y x"}})"));
  const auto p = star_poset(s, r, true);
  REQUIRE(p.size() > 0);
  for (int e : p.maximal()) {
    std::vector<Partition> sys;
    for (int i : p.elements[e]) sys.push_back(p.partitions[i]);
    const auto detail = star_element_detail(s, r, sys);
    bool lower = false;
    for (const auto& c : detail.collapses) lower = lower || norm_compare(s, c.rose, r) == Order::Less;
    CHECK(lower);
  }
}

TEST_CASE("star poset export") {
  const RoseSpace s(fx::path3());
  const auto p = star_poset(s, rose_identity(s), false);
  const std::string text = star_poset_to_json(s.graph(), p);
  CHECK(star_poset_to_json(s.graph(), parse_star_poset_json(s.graph(), text)) == text);
  CHECK(star_poset_to_dot(s.graph(), p).find("digraph") == 0);
}
