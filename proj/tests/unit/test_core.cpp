#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "raagws/automorphism.hpp"
#include "raagws/checks.hpp"

using namespace raagws;
using fx::w;

TEST_CASE("graph json") {
  const auto g = fx::f2();
  CHECK(g.size() == 2);
  CHECK(g.edges().empty());
  const auto p = fx::path3();
  CHECK(p.adjacent(0, 1));
  CHECK_FALSE(p.adjacent(0, 2));
  CHECK(DefiningGraph::parse_json(p.to_json()) == p);
  CHECK_THROWS_AS(DefiningGraph::parse_json(R"({"vertices":["a"],"edges":[["a","a"]]})"), ParseError);
  CHECK_THROWS_AS(DefiningGraph::parse_json(R"({"vertices":["a","a"],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(DefiningGraph::parse_json(R"({"vertices":["a"],"edges":[["a","z"]]})"), ParseError);
  CHECK_THROWS_AS(DefiningGraph::parse_json("not json"), ParseError);
}

TEST_CASE("domination order") {
  const auto g = fx::path3();
  const Vertex a = g.vertex("a"), b = g.vertex("b"), c = g.vertex("c");
  CHECK(g.leq(a, c));
  CHECK(g.leq(c, a));
  CHECK(g.equiv(a, c));
  CHECK_FALSE(g.leq(b, a));
  for (Vertex v = 0; v < g.size(); ++v) CHECK(g.leq(v, v));
}

TEST_CASE("word text and json") {
  const auto g = fx::path3();
  const Word u = w(g, "a b^-1 c");
  CHECK(u.size() == 3);
  CHECK(format_word(g, u) == "a b^-1 c");
  CHECK(parse_word_json(g, format_word_json(g, u)) == u);
  CHECK_THROWS_AS(parse_word(g, "a q"), ParseError);
  CHECK_THROWS_AS(parse_word(g, "a^2"), ParseError);
}

TEST_CASE("free reduction in the group") {
  const auto f = fx::f2();
  CHECK(reduce(f, w(f, "x x^-1 y")) == w(f, "y"));
  const auto g = fx::path3();
  CHECK(reduce(g, w(g, "a b a^-1")) == w(g, "b"));
  CHECK(reduce(g, w(g, "a c a^-1")) == w(g, "a c a^-1"));
}

TEST_CASE("cyclic reduction") {
  const auto f = fx::f2();
  CHECK(cyclic_reduce(f, w(f, "x y x^-1")) == w(f, "y"));
  CHECK(cyclic_reduce(f, w(f, "x y")) == w(f, "x y"));
  const auto g = fx::path3();
  CHECK(conj_length(g, w(g, "c b a b^-1 c^-1")) == 1);
  CHECK(conj_equal(g, w(g, "c b a b^-1 c^-1"), w(g, "a")));
}

TEST_CASE("conjugacy representatives") {
  const auto f = fx::f2();
  CHECK(conj_canonical(f, w(f, "y x")).rep == w(f, "x y"));
  const auto g = fx::path3();
  CHECK(conj_canonical(g, w(g, "c a")).rep == w(g, "a c"));
  CHECK(conj_canonical(g, Word{}).is_identity());
}

TEST_CASE("class enumeration counts") {
  const auto f = fx::f2();
  CHECK(enumerate_classes(f, 0).empty());
  CHECK(enumerate_classes(f, 1).size() == 4);
  const auto two = enumerate_classes(f, 2);
  CHECK(two.size() == 12);
  for (const char* text : {"x x", "x^-1 x^-1", "y y", "y^-1 y^-1", "x y", "x y^-1", "x^-1 y", "x^-1 y^-1"})
    CHECK(std::find(two.begin(), two.end(), conj_canonical(f, w(f, text))) != two.end());
  CHECK(std::is_sorted(two.begin(), two.end()));
}

TEST_CASE("reduction agrees with exhaustive rewriting") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(3 + trial % 2, 0.5, rng);
    Word u;
    const int len = static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) u.push_back(static_cast<Letter>(rng() % (2 * g.size())));
    const auto shortest = fx::shortest_by_rewriting(g, u, false);
    const Word r = reduce(g, u);
    CHECK(shortest.count(r) == 1);
    CHECK(is_reduced(g, r));
    const auto cyclic = fx::shortest_by_rewriting(g, u, true);
    CHECK(conj_length(g, u) == static_cast<int>(cyclic.begin()->size()));
    // Every shortest cyclic word lies in the same class.
    for (const auto& v : cyclic) CHECK(conj_canonical(g, v) == conj_canonical(g, u));
  }
}

TEST_CASE("catalog short classes") {
  const auto g = fx::path3();
  const ClassCatalog cat(g);
  const auto shorts = cat.short_classes();
  CHECK(shorts.size() == enumerate_classes(g, 2).size());
  CHECK(cat.of_length(3) == classes_of_length(g, 3));
}

TEST_CASE("automorphisms") {
  const auto f = fx::f2();
  const auto phi = Automorphism::parse_json(f, R"({"images":{"y":"y x"}})");
  const auto inv_phi = invert(f, phi);
  CHECK(inv_phi.image(f.vertex("y")) == w(f, "y x^-1"));
  CHECK(is_identity(compose(f, phi, inv_phi)));
  CHECK(Automorphism::parse_json(f, phi.to_json(f)) == phi);
  CHECK(abelian_determinant(f, phi) == 1);
  const auto bad = Automorphism::parse_json(f, R"({"images":{"y":"x"}})");
  CHECK(abelian_determinant(f, bad) == 0);
  CHECK_THROWS_AS(invert(f, bad), NotAnAutomorphism);

  const auto g = fx::path3();
  CHECK_THROWS_AS(Automorphism::from_images(g, {w(g, "a"), w(g, "c"), w(g, "b")}), NotAnAutomorphism);
}

TEST_CASE("isometry modulo inner") {
  const auto g = fx::path3();
  const Automorphism swap_ac = Automorphism::from_images(g, {w(g, "c^-1"), w(g, "b"), w(g, "a")});
  const Automorphism conj = inner(g, w(g, "a c"));
  const auto m = match_isometry_mod_inner(g, compose(g, conj, swap_ac));
  REQUIRE(m.has_value());
  CHECK(compose(g, inner(g, m->conjugator), m->theta.as_automorphism(g)) == compose(g, conj, swap_ac));
  CHECK_FALSE(match_isometry_mod_inner(g, Automorphism::parse_json(g, R"({"images":{"a":"a c"}})")).has_value());
}
