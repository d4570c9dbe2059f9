#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "raagws/checks.hpp"
#include "raagws/cube_complex.hpp"
#include "raagws/reduction.hpp"
#include "raagws/spine.hpp"
#include "raagws/stargraph.hpp"

using namespace raagws;
using nlohmann::ordered_json;

namespace {

// Arguments are file paths; text starting with '{' or '[' is taken as inline JSON.
std::string load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<int> parse_label_list(const CubeComplex& x, const std::string& text) {
  if (text == "canonical") return partition_labels(x);
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto it = std::find(x.label_names.begin(), x.label_names.end(), tok);
    if (it != x.label_names.end()) {
      out.push_back(static_cast<int>(it - x.label_names.begin()));
      continue;
    }
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used == tok.size() && v >= 0 && v < x.label_count()) {
        out.push_back(v);
        continue;
      }
    } catch (const std::exception&) {
    }
    throw ParseError("unknown label '" + tok + "'");
  }
  return out;
}

ordered_json step_json(const DefiningGraph& g, const PeakStep& st) {
  auto j = ordered_json::parse(pair_to_json(g, st.move));
  j["strong"] = st.strong;
  j["norm0_before"] = st.norm0_before;
  j["norm0_after"] = st.norm0_after;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead partitions, blowups and peak reduction for right-angled Artin groups"};
  app.require_subcommand(1);

  std::string graph_arg, marking_arg, partitions_arg, word_arg, collapse_arg, format = "json", out_path,
      suite = "identities";
  bool verify = false, trace = false, reductive = false;
  long long max_norm = 0, trials = 1000;
  std::uint64_t seed = 1;
  int max_length = 2, element = -1;
  std::size_t cap = kDefaultStarCap;

  auto* starcount = app.add_subcommand("starcount", "Crossing counts |P|_w and |v|_w of a word");
  starcount->add_option("graph", graph_arg, "Defining graph JSON")->required();
  starcount->add_option("partition", partitions_arg, "Partition or pair JSON")->required();
  starcount->add_option("word", word_arg, "Cyclically reduced word, e.g. \"x y^-1\"")->required();

  auto* blowup = app.add_subcommand("blowup", "Blowup of the Salvetti complex along compatible partitions");
  blowup->add_option("graph", graph_arg, "Defining graph JSON")->required();
  blowup->add_option("partitions", partitions_arg, "Partition list JSON")->required();
  blowup->add_option("--collapse", collapse_arg, "Comma-separated labels to collapse, or 'canonical'");
  blowup->add_flag("--verify", verify, "Run the complex checks and report them");
  blowup->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  blowup->add_option("--out", out_path, "Output file");

  auto* norm = app.add_subcommand("norm", "Norm of the rose with the given marking");
  norm->add_option("graph", graph_arg, "Defining graph JSON")->required();
  norm->add_option("marking", marking_arg, "Marking JSON {\"images\":{...}}")->required();
  norm->add_option("--max-length", max_length, "Report classes up to this length")->check(CLI::Range(1, 8));

  auto* reduce = app.add_subcommand("reduce", "Peak-reduce the rose with the given marking");
  reduce->add_option("graph", graph_arg, "Defining graph JSON")->required();
  reduce->add_option("marking", marking_arg, "Marking JSON")->required();
  reduce->add_flag("--trace", trace, "List every move");

  auto* factor_cmd = app.add_subcommand("factor", "Factor an automorphism into Whitehead moves and an isometry");
  factor_cmd->add_option("graph", graph_arg, "Defining graph JSON")->required();
  factor_cmd->add_option("marking", marking_arg, "Automorphism JSON {\"images\":{...}}")->required();

  auto* spine = app.add_subcommand("spine", "Rose graph below a bound on the 0-norm");
  spine->add_option("graph", graph_arg, "Defining graph JSON")->required();
  spine->add_option("--max-norm", max_norm, "Bound on the 0-norm")->required();
  spine->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  spine->add_option("--out", out_path, "Output file");

  auto* star = app.add_subcommand("star", "Poset of ideal forests at a rose");
  star->add_option("graph", graph_arg, "Defining graph JSON")->required();
  star->add_option("marking", marking_arg, "Marking JSON")->required();
  star->add_flag("--reductive", reductive, "Only partitions reductive at the rose");
  star->add_option("--cap", cap, "Maximum number of poset elements");
  star->add_option("--element", element, "Dump the blowup of one element instead of the poset");
  star->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  star->add_option("--out", out_path, "Output file");

  auto* verify_cmd = app.add_subcommand("verify", "Run property suites on a graph");
  verify_cmd->add_option("graph", graph_arg, "Defining graph JSON")->required();
  verify_cmd->add_option("--suite", suite, "identities or all")->check(CLI::IsMember({"identities", "all"}));
  verify_cmd->add_option("--seed", seed, "Random seed");
  verify_cmd->add_option("--trials", trials, "Trials per randomized check")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    const DefiningGraph g = DefiningGraph::parse_json(load(graph_arg));

    if (*starcount) {
      const Partition p = parse_partition_json(g, load(partitions_arg));
      const Word w = parse_word(g, word_arg);
      const CrossingCounts c = crossing_counts(g, p, w);
      ordered_json j;
      j["partition"] = c.partition;
      ordered_json per = ordered_json::object();
      for (Vertex v = 0; v < g.size(); ++v) per[g.name(v)] = c.per_vertex[v];
      j["per_vertex"] = per;
      emit(j.dump(), "");
      return 0;
    }

    if (*blowup) {
      const auto ps = parse_partition_list_json(g, load(partitions_arg));
      CubeComplex x = build_blowup(g, ps);
      if (!collapse_arg.empty()) x = collapse_labels(x, parse_label_list(x, collapse_arg));
      int status = 0;
      if (verify) {
        const VerifyReport rep = verify_complex(x);
        std::cerr << (rep.ok ? "verify: ok" : "verify: FAILED") << '\n';
        for (const auto& f : rep.failures) std::cerr << "  " << f << '\n';
        status = rep.ok ? 0 : 1;
      }
      emit(format == "dot" ? x.to_dot() : x.to_json(), out_path);
      return status;
    }

    if (*norm) {
      const RoseSpace s(g);
      const MarkedRose r = rose_from_images(s, Automorphism::parse_json(g, load(marking_arg)));
      ordered_json j;
      j["norm0"] = r.norm0;
      ordered_json lengths = ordered_json::array();
      for (int len = 1; len <= max_length; ++len)
        for (const auto& c : s.catalog().of_length(len))
          lengths.push_back({{"class", format_word(g, c.rep)}, {"length", rose_length(s, r, c.rep)}});
      j["lengths"] = lengths;
      emit(j.dump(2), "");
      return 0;
    }

    if (*reduce) {
      const RoseSpace s(g);
      const MarkedRose r = rose_from_images(s, Automorphism::parse_json(g, load(marking_arg)));
      const PeakResult pr = peak_reduce(s, r);
      ordered_json j;
      j["norm0_start"] = r.norm0;
      j["norm0_terminal"] = pr.terminal.norm0;
      j["terminal_is_identity"] = rose_equal(s, pr.terminal, rose_identity(s));
      j["move_count"] = pr.steps.size();
      if (trace) {
        ordered_json steps = ordered_json::array();
        for (const auto& st : pr.steps) steps.push_back(step_json(g, st));
        j["moves"] = steps;
      }
      emit(j.dump(2), "");
      return 0;
    }

    if (*factor_cmd) {
      const RoseSpace s(g);
      const Factorization f = factor(s, Automorphism::parse_json(g, load(marking_arg)));
      emit(factorization_to_json(g, f), "");
      return 0;
    }

    if (*spine) {
      const RoseSpace s(g);
      const RoseGraph rg = enumerate_roses(s, max_norm);
      if (rg.nodes.empty())
        std::cerr << "warning: bound " << max_norm << " is below the minimum 0-norm " << rose_identity(s).norm0
                  << '\n';
      emit(format == "dot" ? rose_graph_to_dot(s, rg) : rose_graph_to_json(s, rg), out_path);
      return 0;
    }

    if (*star) {
      const RoseSpace s(g);
      const MarkedRose r = rose_from_images(s, Automorphism::parse_json(g, load(marking_arg)));
      const StarPoset p = star_poset(s, r, reductive, cap);
      if (element >= 0) {
        if (element >= p.size()) throw PreconditionError("element index out of range");
        std::vector<Partition> sys;
        for (int i : p.elements[element]) sys.push_back(p.partitions[i]);
        const CubeComplex x = build_blowup(g, sys);
        emit(format == "dot" ? x.to_dot() : x.to_json(), out_path);
        return 0;
      }
      emit(format == "dot" ? star_poset_to_dot(g, p) : star_poset_to_json(g, p), out_path);
      return 0;
    }

    if (*verify_cmd) {
      const auto results = run_suite(g, suite, SuiteOptions{seed, trials});
      bool ok = true;
      for (const auto& r : results) {
        ok = ok && r.ok();
        std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " trials=" << r.trials << " failures=" << r.failures
                  << " time=" << r.seconds << "s";
        if (!r.ok()) std::cout << " first: " << r.first_failure;
        std::cout << '\n';
      }
      return ok ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
