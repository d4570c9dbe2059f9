#include "raagws/word.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace raagws {

LetterSet LetterSet::symmetric(VertexSet vs) {
  LetterSet out;
  for (Vertex v : vs.elements()) {
    out.insert(make_letter(v, false));
    out.insert(make_letter(v, true));
  }
  return out;
}

LetterSet LetterSet::all(const DefiningGraph& g) { return symmetric(g.all()); }

LetterSet LetterSet::inverses() const {
  constexpr std::uint64_t even = 0x5555555555555555ull;
  return LetterSet(((bits_ & even) << 1) | ((bits_ >> 1) & even));
}

VertexSet LetterSet::vertices() const {
  VertexSet out;
  for (Letter x : elements()) out.insert(vertex_of(x));
  return out;
}

VertexSet LetterSet::double_vertices() const {
  VertexSet out;
  for (Letter x : elements())
    if (!is_inverse(x) && contains(inv(x))) out.insert(vertex_of(x));
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = inv(x);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Letter parse_letter(const DefiningGraph& g, std::string_view token) {
  bool inverse = false;
  auto caret = token.find('^');
  std::string_view name = token;
  if (caret != std::string_view::npos) {
    auto exp = token.substr(caret + 1);
    if (exp == "-1")
      inverse = true;
    else if (exp != "1" && exp != "+1")
      throw ParseError("bad exponent in letter '" + std::string(token) + "'");
    name = token.substr(0, caret);
  }
  return make_letter(g.vertex(name), inverse);
}

Word parse_word(const DefiningGraph& g, std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(parse_letter(g, tok));
  return out;
}

std::string format_letter(const DefiningGraph& g, Letter x) {
  return is_inverse(x) ? g.name(vertex_of(x)) + "^-1" : g.name(vertex_of(x));
}

std::string format_word(const DefiningGraph& g, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_letter(g, w[i]);
  }
  return out;
}

Word parse_word_json(const DefiningGraph& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("word JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("word JSON: expected an array");
  Word out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("v") || !e["v"].is_string())
      throw ParseError("word JSON: each letter needs a string \"v\"");
    int sign = e.value("sign", 1);
    if (sign != 1 && sign != -1) throw ParseError("word JSON: sign must be 1 or -1");
    out.push_back(make_letter(g.vertex(e["v"].get<std::string>()), sign == -1));
  }
  return out;
}

std::string format_word_json(const DefiningGraph& g, const Word& w) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (Letter x : w) j.push_back({{"v", g.name(vertex_of(x))}, {"sign", sign_of(x)}});
  return j.dump();
}

namespace {

// Free reduction through commuting letters, keeping the input order otherwise.
Word cancel(const DefiningGraph& g, const Word& w) {
  Word st;
  st.reserve(w.size());
  for (Letter x : w) {
    bool cancelled = false;
    for (std::size_t i = st.size(); i-- > 0;) {
      if (st[i] == inv(x)) {
        st.erase(st.begin() + static_cast<std::ptrdiff_t>(i));
        cancelled = true;
        break;
      }
      if (!letters_commute(g, st[i], x)) break;
    }
    if (!cancelled) st.push_back(x);
  }
  return st;
}

bool available_first(const DefiningGraph& g, const Word& w, std::size_t i) {
  for (std::size_t j = 0; j < i; ++j)
    if (!letters_commute(g, w[j], w[i])) return false;
  return true;
}

bool available_last(const DefiningGraph& g, const Word& w, std::size_t i) {
  for (std::size_t j = i + 1; j < w.size(); ++j)
    if (!letters_commute(g, w[j], w[i])) return false;
  return true;
}

// Removes one x ... x^-1 pair that can be moved to the two ends; returns x or -1.
Letter peel_once(const DefiningGraph& g, Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!available_first(g, w, i)) continue;
    for (std::size_t j = w.size(); j-- > i + 1;) {
      if (w[j] != inv(w[i])) continue;
      if (!available_last(g, w, j)) break;
      Letter x = w[i];
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      return x;
    }
  }
  return -1;
}

}  // namespace

Word lex_normal(const DefiningGraph& g, const Word& w) {
  Word rest = w;
  Word out;
  out.reserve(w.size());
  while (!rest.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (rest[i] >= rest[best]) continue;
      if (available_first(g, rest, i)) best = i;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

Word reduce(const DefiningGraph& g, const Word& w) { return lex_normal(g, cancel(g, w)); }

bool is_reduced(const DefiningGraph& g, const Word& w) { return cancel(g, w).size() == w.size(); }

Word cyclic_reduce(const DefiningGraph& g, const Word& w) {
  Word u = cancel(g, w);
  while (peel_once(g, u) >= 0) {
  }
  return lex_normal(g, u);
}

int conj_length(const DefiningGraph& g, const Word& w) {
  Word u = cancel(g, w);
  while (peel_once(g, u) >= 0) {
  }
  return static_cast<int>(u.size());
}

bool is_cyclically_reduced(const DefiningGraph& g, const Word& w) {
  return is_reduced(g, w) && conj_length(g, w) == static_cast<int>(w.size());
}

ConjugateSplit split_conjugate(const DefiningGraph& g, const Word& w) {
  Word u = cancel(g, w);
  ConjugateSplit out;
  for (Letter x; (x = peel_once(g, u)) >= 0;) out.prefix.push_back(x);
  out.core = u;
  return out;
}

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (Letter x : w) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

// Lex-least word over all cyclic permutations and shuffles of a cyclically reduced word.
Word orbit_min(const DefiningGraph& g, const Word& start) {
  Word best = lex_normal(g, start);
  if (best.size() <= 1) return best;
  std::unordered_set<Word, WordHash> seen{best};
  std::deque<Word> queue{best};
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    if (cur < best) best = cur;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!available_first(g, cur, i)) continue;
      Word next = cur;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
      next.push_back(cur[i]);
      next = lex_normal(g, next);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return best;
}

}  // namespace

ConjClass conj_canonical(const DefiningGraph& g, const Word& w) {
  return ConjClass{orbit_min(g, cyclic_reduce(g, w))};
}

std::vector<ConjClass> classes_of_length(const DefiningGraph& g, int len) {
  std::vector<ConjClass> out;
  if (len <= 0) return out;
  const Letter n_letters = 2 * g.size();
  Word w;
  // Canonical reps start with their least letter and are reduced lex-normal words.
  std::function<void()> extend = [&]() {
    if (static_cast<int>(w.size()) == len) {
      if (conj_length(g, w) != len) return;
      if (orbit_min(g, w) == w) out.push_back(ConjClass{w});
      return;
    }
    const Letter lo = w.empty() ? 0 : w.front();
    for (Letter x = lo; x < n_letters; ++x) {
      w.push_back(x);
      if (w.size() == 1 || (is_reduced(g, w) && lex_normal(g, w) == w)) extend();
      w.pop_back();
    }
  };
  extend();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConjClass> enumerate_classes(const DefiningGraph& g, int max_len) {
  std::vector<ConjClass> out;
  for (int len = 1; len <= max_len; ++len) {
    auto part = classes_of_length(g, len);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

const std::vector<ConjClass>& ClassCatalog::of_length(int len) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = buckets_[len];
  if (!slot) slot = std::make_unique<std::vector<ConjClass>>(classes_of_length(graph_, len));
  return *slot;
}

std::vector<ConjClass> ClassCatalog::short_classes() const {
  std::vector<ConjClass> out = of_length(1);
  const auto& two = of_length(2);
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

}  // namespace raagws
