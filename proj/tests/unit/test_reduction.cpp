#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "raagws/checks.hpp"
#include "raagws/reduction.hpp"

using namespace raagws;
using fx::ls;
using fx::w;

namespace {

MarkedRose rose_of(const RoseSpace& s, const std::string& marking) {
  return rose_from_images(s, Automorphism::parse_json(s.graph(), marking));
}

// Recomputes ‖σ‖₀ from scratch as an oracle for the stored value.
long long norm0_oracle(const RoseSpace& s, const MarkedRose& r) {
  long long total = 0;
  for (const auto& c : enumerate_classes(s.graph(), 2)) total += conj_length(s.graph(), apply(s.graph(), r.rho, c.rep));
  return total;
}

}  // namespace

TEST_CASE("roses and lengths") {
  const RoseSpace s(fx::f2());
  const auto& g = s.graph();
  const auto id = rose_identity(s);
  CHECK(id.norm0 == 20);
  CHECK(rose_length(s, id, w(g, "x")) == 1);
  CHECK(rose_length(s, id, Word{}) == 0);
  const auto r = rose_of(s, R"({"images":{"y":"y x"}})");
  CHECK(r.rho.image(1) == w(g, "y x^-1"));
  CHECK(rose_length(s, r, w(g, "y")) == 2);
  CHECK(r.norm0 == norm0_oracle(s, r));
  CHECK_THROWS_AS(rose_of(s, R"({"images":{"y":"x"}})"), NotAnAutomorphism);
}

TEST_CASE("rose equality") {
  const RoseSpace s(fx::f2());
  const auto& g = s.graph();
  const auto id = rose_identity(s);
  CHECK(rose_equal(s, id, rose_from_rho(s, inner(g, w(g, "x y^-1")))));
  CHECK(rose_equal(s, id, rose_of(s, R"({"images":{"x":"y","y":"x"}})")));
  CHECK_FALSE(rose_equal(s, id, rose_of(s, R"({"images":{"y":"y x"}})")));
}

TEST_CASE("norm comparison") {
  const RoseSpace s(fx::f2());
  const auto& g = s.graph();
  const auto id = rose_identity(s);
  const auto r = rose_of(s, R"({"images":{"y":"y x"}})");
  CHECK(norm_compare(s, id, r) == Order::Less);
  CHECK(norm_compare(s, r, id) == Order::Greater);
  CHECK(norm_compare(s, r, rose_from_rho(s, compose(g, inner(g, w(g, "y")), r.rho))) == Order::Equal);
}

TEST_CASE("move length changes") {
  const RoseSpace s(fx::f2());
  const auto& g = s.graph();
  const auto id = rose_identity(s);
  const GWPair mv{ls(g, {"x", "y"}), parse_letter(g, "x")};
  const auto res = whitehead_move(s, id, mv);
  CHECK(rose_length(s, res.rose, w(g, "x y")) == 3);
  CHECK(rose_length(s, res.rose, w(g, "x")) == 1);
  CHECK(rose_length(s, res.rose, w(g, "y")) == 2);
  CHECK(res.rose.norm0 == norm0_oracle(s, res.rose));
  CHECK(move_deltas(s, id, mv) == res.predicted_deltas);
  CHECK(move_compare(s, id, mv) == Order::Greater);
  CHECK(rose_equal(s, whitehead_move(s, res.rose, mv).rose, id));
}

TEST_CASE("reductivity") {
  for (const auto& g : {fx::f2(), fx::path3()}) {
    const RoseSpace s(g);
    const auto id = rose_identity(s);
    for (const auto& p : s.partitions()) CHECK(is_reductive(s, id, p).kind == Reductivity::Not);
    CHECK_FALSE(find_reductive(s, id).has_value());
    CHECK_FALSE(find_strongly_reductive(s, id).has_value());
  }
  const RoseSpace s(fx::f2());
  const auto& g = s.graph();
  const auto r = rose_of(s, R"({"images":{"y":"y x"}})");
  const auto choice = find_strongly_reductive(s, r);
  REQUIRE(choice.has_value());
  CHECK(whitehead_move(s, r, choice->move).rose.norm0 < r.norm0);
  CHECK_THROWS_AS(is_reductive(s, r, degenerate_partition(g, parse_letter(g, "x"))), PreconditionError);

  // One move away from the identity: some move back is found.
  for (const auto& moves : s.moves())
    for (const auto& mv : moves) {
      const auto up = whitehead_move(s, rose_identity(s), mv).rose;
      const auto back = find_reductive(s, up);
      REQUIRE(back.has_value());
      CHECK(norm_compare(s, whitehead_move(s, up, back->move).rose, up) == Order::Less);
    }
}

TEST_CASE("peak reduction") {
  const RoseSpace s(fx::path3());
  CHECK(peak_reduce(s, rose_identity(s)).steps.empty());
  const auto iso = rose_of(s, R"({"images":{"a":"c","c":"a"}})");
  CHECK(peak_reduce(s, iso).steps.empty());
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto r = random_rose(s, 1 + i % 5, rng);
    const auto pr = peak_reduce(s, r);
    CHECK(rose_equal(s, pr.terminal, rose_identity(s)));
    long long last = r.norm0;
    for (const auto& st : pr.steps) {
      CHECK(st.norm0_before == last);
      CHECK(st.norm0_after <= st.norm0_before);
      last = st.norm0_after;
    }
  }
}

TEST_CASE("factorization") {
  const RoseSpace f(fx::f2());
  const auto wx = whitehead_auto(f.graph(), GWPair{ls(f.graph(), {"x", "y"}), parse_letter(f.graph(), "x")});
  const auto fx1 = factor(f, wx);
  CHECK(fx1.recognized);
  CHECK(fx1.steps.size() == 1);

  const RoseSpace s(fx::path3());
  const auto& g = s.graph();
  const auto pc = factor(s, Automorphism::parse_json(g, R"({"images":{"c":"a c a^-1"}})"));
  CHECK(pc.recognized);
  const auto json = nlohmann::json::parse(factorization_to_json(g, pc));
  CHECK(json["recognized"] == true);

  const auto adjacent = factor(s, Automorphism::parse_json(g, R"({"images":{"a":"a b"}})"));
  CHECK_FALSE(adjacent.recognized);
  CHECK(nlohmann::json::parse(factorization_to_json(g, adjacent))["recognized"] == false);

  CHECK(factor(s, Automorphism::identity(g)).steps.empty());
  CHECK_THROWS_AS(factor(s, Automorphism::parse_json(g, R"({"images":{"a":"a a"}})")), NotAnAutomorphism);
}

TEST_CASE("combination and pushing preconditions") {
  const RoseSpace s(fx::f2());
  const auto& g = s.graph();
  const auto p = fx::part(g, {"x", "y"}, "x");
  const auto r = rose_of(s, R"({"images":{"y":"y x"}})");
  CHECK_THROWS_AS(hll_combine(s, r, p, p, HllMode::Reductive), PreconditionError);
}

TEST_CASE("witnesses at random roses of a three-generator free group") {
  const RoseSpace s(DefiningGraph::parse_json(R"({"vertices":["a","b","c"],"edges":[]})"));
  Rng rng(7);
  std::vector<MarkedRose> roses;
  for (int i = 0; i < 8; ++i) roses.push_back(random_rose(s, 2, rng));
  WitnessCounts counts;
  const auto res = check_witnesses(s, roses, &counts);
  CHECK(res.ok());
  CHECK(counts.hll_pairs + counts.hll_strong_pairs > 0);
}
