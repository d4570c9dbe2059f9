#include <doctest.h>

#include "fixtures.hpp"
#include "raagws/cube_complex.hpp"
#include "raagws/reduction.hpp"
#include "raagws/stargraph.hpp"

using namespace raagws;
using fx::ls;
using fx::w;

namespace {

int label_of(const CubeComplex& x, const std::string& name) {
  const auto it = std::find(x.label_names.begin(), x.label_names.end(), name);
  REQUIRE(it != x.label_names.end());
  return static_cast<int>(it - x.label_names.begin());
}

const Hyperplane& hyperplane_with_label(const std::vector<Hyperplane>& hs, int label) {
  for (const auto& h : hs)
    if (std::find(h.labels.begin(), h.labels.end(), label) != h.labels.end()) return h;
  FAIL("no hyperplane carries the label");
  return hs.front();
}

}  // namespace

TEST_CASE("salvetti complexes") {
  const auto f = build_salvetti(fx::f2());
  CHECK(f.vertex_count() == 1);
  CHECK(f.edges.size() == 2);
  CHECK(f.squares.empty());
  const auto p = build_salvetti(fx::path3());
  CHECK(p.vertex_count() == 1);
  CHECK(p.edges.size() == 3);
  CHECK(p.squares.size() == 2);
  CHECK(p.euler_characteristic() == 0);
  const auto t = build_salvetti(fx::z2());
  CHECK(t.edges.size() == 2);
  CHECK(t.squares.size() == 1);
  CHECK(is_salvetti(t, fx::z2()));
}

TEST_CASE("regions") {
  const auto f = fx::f2();
  const auto p = fx::part(f, {"x", "y"}, "x");
  const auto q = fx::part(f, {"x", "y", "y^-1"}, "x");
  CHECK(enumerate_regions(f, {p}).size() == 2);
  CHECK(enumerate_regions(f, {p, q}).size() == 3);
  const auto c4 = fx::cycle4();
  const auto ac = fx::part(c4, {"a", "c"}, "a");
  const auto bd = fx::part(c4, {"b", "d"}, "b");
  CHECK(enumerate_regions(c4, {ac, bd}).size() == 4);
  CHECK(build_blowup(c4, {ac, bd}).squares.size() >= 1);
}

TEST_CASE("blowup cell counts") {
  const auto f = fx::f2();
  const auto x = build_blowup(f, {fx::part(f, {"x", "y"}, "x")});
  CHECK(x.vertex_count() == 2);
  CHECK(x.edges.size() == 3);
  CHECK(x.squares.empty());
  CHECK(verify_complex(x).ok);

  const auto g = fx::path3();
  const auto y = build_blowup(g, {fx::part(g, {"a", "c"}, "a")});
  CHECK(y.vertex_count() == 2);
  CHECK(y.edges.size() == 5);
  CHECK(y.squares.size() == 3);
  CHECK(y.euler_characteristic() == 0);
  CHECK(verify_complex(y).ok);

  CHECK(build_blowup(g, {}).to_json() == build_salvetti(g).to_json());
}

TEST_CASE("verification catches seeded defects") {
  const auto g = fx::path3();
  auto y = build_blowup(g, {fx::part(g, {"a", "c"}, "a")});
  auto doubled = y;
  doubled.edges.push_back(doubled.edges.front());
  CHECK_FALSE(verify_complex(doubled).ok);
  auto holed = y;
  holed.squares.pop_back();
  const auto rep = verify_complex(holed);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("hyperplanes of a single blowup") {
  const auto g = fx::path3();
  const auto p = fx::part(g, {"a", "c", "c^-1"}, "a");
  const auto x = build_blowup(g, {p});
  const auto hs = hyperplanes(x);
  CHECK(static_cast<int>(hs.size()) == x.label_count());
  for (const auto& h : hs) CHECK(h.labels.size() == 1);
  CHECK(hyperplane_with_label(hs, x.generator_count).carrier_retract);
  for (Vertex v = 0; v < g.size(); ++v) {
    const bool single = p.single_vertices.contains(v);
    CHECK(hyperplane_with_label(hs, v).carrier_retract == single);
  }
  for (const auto& h : hyperplanes(build_salvetti(fx::f2()))) CHECK_FALSE(h.carrier_retract);
}

TEST_CASE("tree-like sets") {
  const auto f = fx::f2();
  const std::vector<Partition> ps{fx::part(f, {"x", "y"}, "x")};
  const auto x = build_blowup(f, ps);
  const auto t = treelike_sets(f, ps, x);
  REQUIRE(t.base_graphs.size() == 1);
  CHECK(t.base_graphs[0].regions.size() == 2);
  CHECK(t.base_graphs[0].edges.size() == 3);
  CHECK(t.sets.size() == 3);
  for (const auto& s : t.sets) CHECK(s.size() == 1);

  const auto g = fx::path3();
  const std::vector<Partition> qs{fx::part(g, {"a", "c"}, "a")};
  CHECK(treelike_sets(g, qs, build_blowup(g, qs)).sets.size() == 3);

  const auto empty = treelike_sets(g, {}, build_salvetti(g));
  CHECK(empty.base_graphs.empty());
  CHECK(empty.sets == std::vector<std::vector<int>>{{}});
}

TEST_CASE("collapses and induced automorphisms") {
  const auto f = fx::f2();
  const std::vector<Partition> ps{fx::part(f, {"x", "y"}, "x")};
  const auto x = build_blowup(f, ps);
  const int ep = x.generator_count;
  CHECK(is_salvetti(collapse_labels(x, {ep}), f));
  CHECK(is_salvetti(collapse_labels(x, {label_of(x, "y")}), f));

  const RoseSpace s(f);
  const auto induced_x = induced_automorphism(f, ps, x, {label_of(x, "x")});
  const auto wx = whitehead_auto(f, GWPair{ls(f, {"x", "y"}), parse_letter(f, "x")});
  CHECK(rose_equal(s, rose_from_rho(s, induced_x), rose_from_rho(s, wx)));
  const auto induced_y = induced_automorphism(f, ps, x, {label_of(x, "y")});
  const auto wy = whitehead_auto(f, GWPair{ls(f, {"x", "y"}), parse_letter(f, "y")});
  CHECK(rose_equal(s, rose_from_rho(s, induced_y), rose_from_rho(s, wy)));
  CHECK(rose_equal(s, rose_from_rho(s, induced_automorphism(f, ps, x, {ep})), rose_identity(s)));

  const auto g = fx::path3();
  const std::vector<Partition> qs{fx::part(g, {"a", "c"}, "a")};
  const auto y = build_blowup(g, qs);
  CHECK(is_salvetti(collapse_labels(y, partition_labels(y)), g));
  // e_b is not a carrier retract, so it cannot be collapsed.
  CHECK_THROWS_AS(collapse_labels(y, {label_of(y, "b")}), PreconditionError);
}

TEST_CASE("minimal path lifts") {
  const auto f = fx::f2();
  const std::vector<Partition> ps{fx::part(f, {"x", "y"}, "x")};
  const auto x = build_blowup(f, ps);
  const auto lift = min_path_lift(f, x, ps, w(f, "x y"));
  CHECK(lift.path.size() == 4);
  CHECK(lift.label_counts[x.generator_count] == 2);

  const auto g = fx::path3();
  const std::vector<Partition> qs{fx::part(g, {"a", "c"}, "a")};
  const auto y = build_blowup(g, qs);
  const auto in_link = min_path_lift(g, y, qs, w(g, "b"));
  CHECK(in_link.path.size() == 1);
  CHECK(in_link.label_counts[y.generator_count] == 0);
  // Both letters lie in P, so each cyclic step from one to the next re-enters P
  // and crosses e_P twice, as the star graph of a c also shows.
  CHECK(min_path_lift(g, y, qs, w(g, "a c")).label_counts[y.generator_count] == 2);
  CHECK(partition_crossings(qs[0], w(g, "a c")) == 2);
  CHECK(min_path_lift(g, y, qs, w(g, "a c^-1")).label_counts[y.generator_count] == 0);
}

TEST_CASE("complex json round trip") {
  const auto g = fx::cycle4();
  const auto x = build_blowup(g, {fx::part(g, {"a", "c"}, "a"), fx::part(g, {"b", "d"}, "b")});
  const std::string text = x.to_json();
  CHECK(CubeComplex::parse_json(text).to_json() == text);
  CHECK(x.to_dot().find("graph") != std::string::npos);
  CHECK_THROWS_AS(CubeComplex::parse_json("{}"), ParseError);
}
