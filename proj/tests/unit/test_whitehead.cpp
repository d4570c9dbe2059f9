#include <doctest.h>

#include "fixtures.hpp"
#include "raagws/automorphism.hpp"
#include "raagws/whitehead.hpp"

using namespace raagws;
using fx::ls;
using fx::w;

TEST_CASE("pair validation") {
  const auto g = fx::path3();
  CHECK(validate_gw_pair(g, ls(g, {"a", "c"}), parse_letter(g, "a")).valid);
  const auto bad = validate_gw_pair(g, ls(g, {"a", "b"}), parse_letter(g, "a"));
  CHECK_FALSE(bad.valid);
  CHECK(bad.offending.contains(parse_letter(g, "b")));
  CHECK_FALSE(bad.violations.empty());
  const auto f = fx::f2();
  CHECK(validate_gw_pair(f, ls(f, {"x", "y", "y^-1"}), parse_letter(f, "x")).valid);
  CHECK_FALSE(validate_gw_pair(f, ls(f, {"x", "y"}), parse_letter(f, "y^-1")).valid);
  CHECK_FALSE(validate_gw_pair(f, ls(f, {"x", "x^-1"}), parse_letter(f, "x")).valid);
}

TEST_CASE("partition sides") {
  const auto f = fx::f2();
  const auto p = fx::part(f, {"x", "y"}, "x");
  CHECK(p.P == ls(f, {"x", "y"}));
  CHECK(p.Pstar == ls(f, {"x^-1", "y^-1"}));
  CHECK(p.link.empty());
  CHECK(p.max_vertices == VertexSet(0b11));
  CHECK_FALSE(p.degenerate());

  const auto g = fx::path3();
  const auto q = fx::part(g, {"a", "c"}, "a");
  CHECK(q.Pstar == ls(g, {"a^-1", "c^-1"}));
  CHECK(q.link == ls(g, {"b", "b^-1"}));
  const auto r = fx::part(g, {"a", "c", "c^-1"}, "a");
  CHECK(r.degenerate());
  CHECK(r.side_of(parse_letter(g, "a^-1")) == ls(g, {"a^-1"}));
  // Equality ignores which side was given.
  CHECK(fx::part(f, {"x^-1", "y^-1"}, "x^-1") == p);
}

TEST_CASE("partition enumeration") {
  const auto f = fx::f2();
  const auto from_pairs = enumerate_partitions(f, PartitionScope::FromPairs);
  CHECK(from_pairs.size() == 6);
  CHECK(enumerate_partitions(f, PartitionScope::NonDegenerate).size() == 2);
  CHECK(enumerate_partitions(f, false).size() == 6);
  const auto g = fx::path3();
  const auto p3 = enumerate_partitions(g, PartitionScope::FromPairs);
  CHECK(p3.size() == 6);
  for (const auto& p : p3) CHECK(p.link == ls(g, {"b", "b^-1"}));
  CHECK(enumerate_partitions(g, PartitionScope::NonDegenerate).size() == 2);
  const auto single = DefiningGraph::parse_json(R"({"vertices":["v"],"edges":[]})");
  CHECK(enumerate_partitions(single, PartitionScope::FromPairs).empty());
  CHECK(std::is_sorted(p3.begin(), p3.end()));
}

TEST_CASE("whitehead automorphism formula") {
  const auto f = fx::f2();
  const auto phi = whitehead_auto(f, GWPair{ls(f, {"x", "y"}), parse_letter(f, "x")});
  CHECK(phi.image(0) == w(f, "x^-1"));
  CHECK(phi.image(1) == w(f, "y x^-1"));
  CHECK(apply(f, phi, w(f, "x y")) == w(f, "x^-1 y x^-1"));
  CHECK(apply(f, Automorphism::identity(f), w(f, "x y")) == w(f, "x y"));

  const auto g = fx::path3();
  const auto psi = whitehead_auto(g, GWPair{ls(g, {"a", "c", "c^-1"}), parse_letter(g, "a")});
  CHECK(psi.image(g.vertex("a")) == w(g, "a^-1"));
  CHECK(psi.image(g.vertex("b")) == w(g, "b"));
  CHECK(psi.image(g.vertex("c")) == w(g, "a c a^-1"));
  const auto chi = whitehead_auto(g, GWPair{ls(g, {"a", "c"}), parse_letter(g, "a")});
  CHECK(apply(g, chi, w(g, "a b a^-1 b^-1")).empty());
}

TEST_CASE("every whitehead automorphism is an involution") {
  for (const auto& g : {fx::f2(), fx::path3(), fx::cycle4()})
    for (const auto& pair : enumerate_pairs(g)) {
      const auto phi = whitehead_auto(g, pair);
      CHECK(preserves_relations(g, phi));
      CHECK(is_identity(compose(g, phi, phi)));
    }
}

TEST_CASE("compatibility") {
  const auto f = fx::f2();
  const auto p = fx::part(f, {"x", "y"}, "x");
  const auto q = fx::part(f, {"x", "y^-1"}, "x");
  const auto r = fx::part(f, {"x", "y", "y^-1"}, "x");
  const auto pq = relation(f, p, q);
  CHECK(pq.kind == RelationKind::Incompatible);
  for (const auto& quad : pq.quadrants) CHECK(quad.size() == 1);
  const auto pr = relation(f, p, r);
  CHECK(pr.kind == RelationKind::CompatibleDisjoint);
  CHECK(pr.quadrants[pr.empty_quadrant].empty());
  CHECK(relation(f, p, p).compatible());

  // Commuting partitions of the square.
  const auto c4 = fx::cycle4();
  const auto ac = fx::part(c4, {"a", "c"}, "a");
  const auto bd = fx::part(c4, {"b", "d"}, "b");
  CHECK(partitions_commute(c4, ac, bd));
  CHECK(relation(c4, ac, bd).kind == RelationKind::Commute);
}

TEST_CASE("quadrants of an incompatible pair") {
  const auto f = fx::f2();
  const auto p = fx::part(f, {"x", "y"}, "x");
  const auto q = fx::part(f, {"x", "y^-1"}, "x");
  const auto opp = opposite_gw_quadrants(f, p, q);
  REQUIRE_FALSE(opp.empty());
  for (const auto& pair : opp) {
    CHECK(pair[0].degenerate);
    CHECK(pair[1].degenerate);
    CHECK(pair[0].set.size() == 1);
    CHECK(vertex_of(pair[0].set.elements().front()) == vertex_of(pair[1].set.elements().front()));
  }
  for (const auto& qw : gw_quadrants(f, p, q)) {
    const bool in_p = qw.set.subset_of(p.P) || qw.set.subset_of(p.Pstar);
    const bool in_q = qw.set.subset_of(q.P) || qw.set.subset_of(q.Pstar);
    CHECK(in_p);
    CHECK(in_q);
  }
}

TEST_CASE("partition json round trip") {
  const auto g = fx::path3();
  for (const auto& p : enumerate_partitions(g, PartitionScope::FromPairs)) {
    const std::string text = partition_to_json(g, p);
    const auto back = parse_partition_json(g, text);
    CHECK(back == p);
    CHECK(partition_to_json(g, back) == text);
  }
  const GWPair pair{ls(g, {"a", "c"}), parse_letter(g, "a")};
  CHECK(parse_pair_json(g, pair_to_json(g, pair)) == pair);
  CHECK_THROWS(parse_pair_json(g, R"({"P":[{"v":"a","sign":1},{"v":"b","sign":1}],"m":{"v":"a","sign":1}})"));
}
