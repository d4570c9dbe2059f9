#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "raagws/checks.hpp"
#include "raagws/stargraph.hpp"

using namespace raagws;
using fx::ls;
using fx::w;

TEST_CASE("star graph edges of x y in F2") {
  const auto f = fx::f2();
  const auto sg = build_star_graph(f, LetterSet(), {ls(f, {"x"}), ls(f, {"x^-1", "y", "y^-1"})}, w(f, "x y"));
  REQUIRE(sg.edges.size() == 2);
  std::set<std::pair<Letter, Letter>> ends;
  for (const auto& e : sg.edges) ends.insert({e.from, e.to});
  CHECK(ends.count({parse_letter(f, "x"), parse_letter(f, "y^-1")}) == 1);
  CHECK(ends.count({parse_letter(f, "y"), parse_letter(f, "x^-1")}) == 1);
}

TEST_CASE("words inside the link never cross") {
  const auto g = fx::path3();
  const LetterSet link = ls(g, {"b", "b^-1"});
  const auto sg = build_star_graph(g, link, {ls(g, {"a", "c"}), ls(g, {"a^-1", "c^-1"})}, w(g, "b b"));
  CHECK(sg.crossing_edges() == 0);
}

TEST_CASE("link letters stay in the current block") {
  const auto g = fx::path3();
  const auto p = fx::part(g, {"a", "c"}, "a");
  CHECK(partition_crossings(p, w(g, "a b c")) == 2);
  const auto sg = build_star_graph(g, p.link, {p.P, p.Pstar}, w(g, "a b c"));
  CHECK(sg.crossing_edges() == 2);
}

TEST_CASE("crossing counts") {
  const auto f = fx::f2();
  const auto p = fx::part(f, {"x", "y"}, "x");
  auto c = crossing_counts(f, p, w(f, "x y"));
  CHECK(c.partition == 2);
  CHECK(c.per_vertex == std::vector<int>{1, 1});
  c = crossing_counts(f, p, w(f, "x"));
  CHECK(c.partition == 1);
  CHECK(c.per_vertex[0] == 1);
  c = crossing_counts(f, p, w(f, "y"));
  CHECK(c.partition == 1);
  CHECK(c.per_vertex[0] == 0);
  CHECK(letter_count(w(f, "x y x^-1 x^-1"), 0) == 3);
}

TEST_CASE("dot and absval") {
  const auto f = fx::f2();
  const Word u = w(f, "x y");
  CHECK(dot(f, LetterSet(), ls(f, {"x"}), ls(f, {"y^-1"}), u) == 1);
  CHECK(dot(f, LetterSet(), ls(f, {"x"}), ls(f, {"y"}), u) == 0);
  CHECK(absval(f, LetterSet(), ls(f, {"x"}), u) == 1);
}

TEST_CASE("dot matches the subword count") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const auto g = random_graph(4, 0.4, rng);
    const Word u = random_cyclic_word(g, 10, rng);
    if (u.empty()) continue;
    const LetterSet all = LetterSet::all(g);
    const LetterSet link = random_symmetric_set(g, 0.3, rng, all);
    const LetterSet a = random_subset(all.minus(link), 0.4, rng);
    const LetterSet b = random_subset(all.minus(link).minus(a), 0.5, rng);
    CHECK(dot(g, link, a, b, u) == dot_by_subwords(link, a, b, u));
    CHECK(dot(g, link, a, b, u) == dot(g, link, b, a, u));
  }
}

TEST_CASE("crossings are invariant under rotation") {
  const auto g = fx::cycle4();
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Word u = random_cyclic_word(g, 10, rng);
    if (u.empty()) continue;
    Word rot(u.begin() + 1, u.end());
    rot.push_back(u.front());
    for (const auto& p : parts) CHECK(partition_crossings(p, u) == partition_crossings(p, rot));
  }
}
