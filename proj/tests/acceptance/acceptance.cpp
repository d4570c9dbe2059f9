// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "raagws/checks.hpp"
#include "raagws/spine.hpp"

using namespace raagws;

namespace {

constexpr std::uint64_t kSeed = 20240611;

DefiningGraph fixture(const std::string& name) {
  std::ifstream in(std::string(RAAGWS_DATA_DIR) + "/" + name + ".json");
  if (!in) throw Error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return DefiningGraph::parse_json(ss.str());
}

// Every labelled graph on n vertices.
std::vector<DefiningGraph> all_graphs(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<DefiningGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1u) edges.push_back(slots[k]);
    out.emplace_back(names, edges);
  }
  return out;
}

std::vector<DefiningGraph> graphs_up_to(int n) {
  std::vector<DefiningGraph> out;
  for (int k = 1; k <= n; ++k)
    for (auto& g : all_graphs(k)) out.push_back(std::move(g));
  return out;
}

struct Tally {
  long long trials = 0;
  long long failures = 0;
  std::string first;

  void add(const CheckResult& r) {
    trials += r.trials;
    failures += r.failures;
    if (first.empty() && !r.ok()) first = r.name + ": " + r.first_failure;
  }
};

struct Line {
  bool ok = true;
  std::string detail;
};

bool report(int id, const std::string& name, double limit, const std::function<Line()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Line line;
  try {
    line = body();
  } catch (const std::exception& e) {
    line = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = line.ok && secs < limit;
  std::printf("%s %d %s: %s time=%.2fs limit=%.0fs\n", ok ? "PASS" : "FAIL", id, name.c_str(), line.detail.c_str(),
              secs, limit);
  std::fflush(stdout);
  return ok;
}

std::string counts(const Tally& t) {
  std::string s = "trials=" + std::to_string(t.trials) + " failures=" + std::to_string(t.failures);
  if (!t.first.empty()) s += " first=[" + t.first + "]";
  return s;
}

// Random graphs with 1..5 vertices, `per_graph` trials each, until `total` trials ran.
Tally over_random_graphs(long long total, long long per_graph,
                         const std::function<CheckResult(const DefiningGraph&, Rng&, long long)>& check, Rng& rng) {
  Tally t;
  while (t.trials < total) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    const DefiningGraph g = random_graph(n, 0.5, rng);
    t.add(check(g, rng, per_graph));
  }
  return t;
}

}  // namespace

int main() {
  Rng rng(kSeed);
  const DefiningGraph f2 = fixture("f2"), path3 = fixture("path3"), cycle4 = fixture("cycle4");
  bool all_ok = true;

  all_ok &= report(1, "length_change", 60, [&] {
    const Tally t = over_random_graphs(10000, 200,
                                       [](const DefiningGraph& g, Rng& r, long long n) {
                                         return check_length_change(g, r, n, 12);
                                       },
                                       rng);
    return Line{t.failures == 0 && t.trials >= 10000, counts(t)};
  });

  all_ok &= report(2, "counting_identities", 60, [&] {
    using Check = CheckResult (*)(const DefiningGraph&, Rng&, long long, int);
    const std::vector<std::pair<std::string, Check>> identities = {{"linearity", check_linearity},
                                                               {"quadrant", check_quadrant_identity},
                                                               {"difference", check_difference},
                                                               {"mixed_link", check_mixed_link}};
    bool ok = true;
    std::string detail;
    for (const auto& [name, fn] : identities) {
      const Tally t = over_random_graphs(
          10000, 200, [fn](const DefiningGraph& g, Rng& r, long long n) { return fn(g, r, n, 12); }, rng);
      ok = ok && t.failures == 0 && t.trials >= 10000;
      detail += (detail.empty() ? "" : "; ") + name + " " + counts(t);
    }
    return Line{ok, detail};
  });

  all_ok &= report(3, "blowup_soundness", 120, [&] {
    Tally t;
    for (const auto* g : {&f2, &path3, &cycle4}) t.add(check_blowups(*g, 3));
    return Line{t.failures == 0, "systems=" + std::to_string(t.trials) + " failures=" + std::to_string(t.failures) +
                                     (t.first.empty() ? "" : " first=[" + t.first + "]")};
  });

  all_ok &= report(4, "treelike_exchange", 300, [&] {
    Tally t;
    const auto graphs = graphs_up_to(4);
    for (const auto& g : graphs) t.add(check_treelike(g, 2));
    return Line{t.failures == 0, "graphs=" + std::to_string(graphs.size()) + " " + counts(t)};
  });

  all_ok &= report(5, "peak_roundtrip", 600, [&] {
    Tally t;
    for (const auto* g : {&f2, &path3, &cycle4}) t.add(check_peak_roundtrip(RoseSpace(*g), rng, 500, 8));
    return Line{t.failures == 0 && t.trials >= 1500, counts(t)};
  });

  all_ok &= report(6, "identity_minimal", 300, [&] {
    Tally t;
    const auto graphs = graphs_up_to(4);
    for (const auto& g : graphs) t.add(check_identity_minimal(RoseSpace(g)));
    const long long f2_norm0 = rose_identity(RoseSpace(f2)).norm0;
    return Line{t.failures == 0 && f2_norm0 == 20, "graphs=" + std::to_string(graphs.size()) + " " + counts(t) +
                                                       " f2_norm0=" + std::to_string(f2_norm0)};
  });

  all_ok &= report(7, "hll_pushing", 600, [&] {
    std::string detail;
    bool ok = true;
    auto describe = [](const std::string& tag, const CheckResult& r, const WitnessCounts& c) {
      std::string s = tag + " roses=" + std::to_string(c.roses) + " hll=" + std::to_string(c.hll_pairs) +
                      " hll_strong=" + std::to_string(c.hll_strong_pairs) +
                      " pushing=" + std::to_string(c.pushing_configs) +
                      " pushing_skipped=" + std::to_string(c.pushing_skipped) +
                      " failures=" + std::to_string(r.failures);
      if (!r.ok()) s += " first=[" + r.first_failure + "]";
      return s;
    };
    for (const auto& [tag, g] : {std::pair<std::string, const DefiningGraph*>{"f2", &f2}, {"path3", &path3}}) {
      const RoseSpace s(*g);
      WitnessCounts c;
      const CheckResult r = check_witnesses(s, rose_identity(s).norm0 + 6, &c);
      ok = ok && r.ok();
      detail += (detail.empty() ? "" : "; ") + describe(tag + "@min+6", r, c);
    }
    // The bound-(min+6) graphs above hold no incompatible reductive pair, so
    // the witnesses are also exercised at random roses where such pairs occur.
    long long exercised = 0;
    for (const std::string name : {"f3", "star4"}) {
      const RoseSpace s(fixture(name));
      std::vector<MarkedRose> roses;
      for (int i = 0; i < 40; ++i) roses.push_back(random_rose(s, 2, rng));
      WitnessCounts c;
      const CheckResult r = check_witnesses(s, roses, &c);
      ok = ok && r.ok();
      exercised += c.hll_pairs + c.hll_strong_pairs + c.pushing_configs;
      detail += "; " + describe(name + "@random", r, c);
    }
    return Line{ok && exercised > 0, detail};
  });

  all_ok &= report(8, "stargraph_lift", 60, [&] {
    Tally t;
    for (const auto* g : {&f2, &path3, &cycle4}) t.add(check_lift_consistency(*g, rng, 1000));
    const Tally random = over_random_graphs(
        3000, 100, [](const DefiningGraph& g, Rng& r, long long n) { return check_lift_consistency(g, r, n, 12); },
        rng);
    t.trials += random.trials;
    t.failures += random.failures;
    if (t.first.empty()) t.first = random.first;
    return Line{t.failures == 0 && t.trials >= 5000, counts(t)};
  });

  return all_ok ? 0 : 1;
}
