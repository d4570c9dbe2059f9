#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "raagws/graph.hpp"
#include "raagws/whitehead.hpp"
#include "raagws/word.hpp"

namespace fx {

using namespace raagws;

inline DefiningGraph f2() { return DefiningGraph::parse_json(R"({"vertices":["x","y"],"edges":[]})"); }
inline DefiningGraph path3() {
  return DefiningGraph::parse_json(R"({"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]})");
}
inline DefiningGraph cycle4() {
  return DefiningGraph::parse_json(
      R"({"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]]})");
}
inline DefiningGraph z2() { return DefiningGraph::parse_json(R"({"vertices":["x","y"],"edges":[["x","y"]]})"); }

inline Word w(const DefiningGraph& g, const std::string& text) { return parse_word(g, text); }
inline LetterSet ls(const DefiningGraph& g, const std::vector<std::string>& tokens) {
  return parse_letter_set(g, tokens);
}
inline Partition part(const DefiningGraph& g, const std::vector<std::string>& side, const std::string& m) {
  return make_partition(g, GWPair{ls(g, side), parse_letter(g, m)});
}

// Words reachable by swapping adjacent commuting letters and cancelling
// adjacent inverse pairs; with `cyclic`, rotations too. Returns the shortest ones.
inline std::set<Word> shortest_by_rewriting(const DefiningGraph& g, const Word& start, bool cyclic) {
  std::set<Word> seen{start};
  std::deque<Word> queue{start};
  while (!queue.empty()) {
    const Word cur = queue.front();
    queue.pop_front();
    std::vector<Word> next;
    const std::size_t n = cur.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (cur[i] == inv(cur[i + 1])) {
        Word v = cur;
        v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i) + 2);
        next.push_back(v);
      } else if (letters_commute(g, cur[i], cur[i + 1])) {
        Word v = cur;
        std::swap(v[i], v[i + 1]);
        next.push_back(v);
      }
    }
    if (cyclic && n > 0) {
      Word v(cur.begin() + 1, cur.end());
      v.push_back(cur.front());
      next.push_back(v);
    }
    for (auto& v : next)
      if (seen.insert(v).second) queue.push_back(v);
  }
  std::size_t best = start.size();
  for (const auto& v : seen) best = std::min(best, v.size());
  std::set<Word> out;
  for (const auto& v : seen)
    if (v.size() == best) out.insert(v);
  return out;
}

}  // namespace fx
