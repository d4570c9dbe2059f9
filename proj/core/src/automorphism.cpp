#include "raagws/automorphism.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include <nlohmann/json.hpp>

#include "raagws/whitehead.hpp"

namespace raagws {

Automorphism Automorphism::identity(const DefiningGraph& g) {
  Automorphism a;
  for (Vertex v = 0; v < g.size(); ++v) a.images.push_back({make_letter(v)});
  return a;
}

Automorphism Automorphism::from_images(const DefiningGraph& g, std::vector<Word> images) {
  if (static_cast<int>(images.size()) != g.size())
    throw PreconditionError("from_images: expected one image per generator");
  Automorphism a;
  for (auto& w : images) a.images.push_back(reduce(g, w));
  if (!preserves_relations(g, a)) throw NotAnAutomorphism("not an automorphism: a defining relation is not preserved");
  return a;
}

Automorphism Automorphism::parse_json(const DefiningGraph& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("marking JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("images") || !j["images"].is_object())
    throw ParseError("marking JSON: expected {\"images\":{...}}");
  std::vector<Word> images = identity(g).images;
  for (const auto& [name, value] : j["images"].items()) {
    const Vertex v = g.vertex(name);
    if (value.is_string())
      images[v] = parse_word(g, value.get<std::string>());
    else if (value.is_array())
      images[v] = parse_word_json(g, value.dump());
    else
      throw ParseError("marking JSON: image of '" + name + "' must be a word");
  }
  return from_images(g, std::move(images));
}

std::string Automorphism::to_json(const DefiningGraph& g) const {
  nlohmann::ordered_json imgs = nlohmann::ordered_json::object();
  for (Vertex v = 0; v < g.size(); ++v) imgs[g.name(v)] = format_word(g, images[v]);
  nlohmann::ordered_json j;
  j["images"] = imgs;
  return j.dump();
}

Word apply_letter(const Automorphism& phi, Letter x) {
  const Word& w = phi.images.at(vertex_of(x));
  return is_inverse(x) ? inverse_word(w) : w;
}

Word apply(const DefiningGraph& g, const Automorphism& phi, const Word& w) {
  Word out;
  for (Letter x : w) {
    const Word& img = phi.images.at(vertex_of(x));
    if (is_inverse(x)) {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(inv(*it));
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return reduce(g, out);
}

Automorphism compose(const DefiningGraph& g, const Automorphism& phi, const Automorphism& psi) {
  Automorphism out;
  out.images.reserve(psi.images.size());
  for (const auto& w : psi.images) out.images.push_back(apply(g, phi, w));
  return out;
}

bool preserves_relations(const DefiningGraph& g, const Automorphism& phi) {
  for (auto [u, v] : g.edges()) {
    Word c = concat(concat(phi.images[u], phi.images[v]),
                    concat(inverse_word(phi.images[u]), inverse_word(phi.images[v])));
    if (!reduce(g, c).empty()) return false;
  }
  return true;
}

bool is_identity(const Automorphism& phi) {
  for (std::size_t v = 0; v < phi.images.size(); ++v)
    if (phi.images[v] != Word{make_letter(static_cast<Vertex>(v))}) return false;
  return true;
}

long long abelian_determinant(const DefiningGraph& g, const Automorphism& phi) {
  const int n = g.size();
  if (n == 0) return 1;
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int v = 0; v < n; ++v)
    for (Letter x : phi.images[v]) m[v][vertex_of(x)] += sign_of(x);
  // Bareiss fraction-free elimination
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Automorphism inner(const DefiningGraph& g, const Word& a) {
  Automorphism out;
  const Word ai = inverse_word(a);
  for (Vertex v = 0; v < g.size(); ++v) out.images.push_back(reduce(g, concat(concat(a, {make_letter(v)}), ai)));
  return out;
}

Isometry Isometry::identity(const DefiningGraph& g) {
  Isometry t;
  t.perm.resize(g.size());
  std::iota(t.perm.begin(), t.perm.end(), 0);
  t.signs.assign(g.size(), 1);
  return t;
}

Automorphism Isometry::as_automorphism(const DefiningGraph&) const {
  Automorphism out;
  for (std::size_t v = 0; v < perm.size(); ++v) out.images.push_back({make_letter(perm[v], signs[v] < 0)});
  return out;
}

Isometry Isometry::inverse() const {
  Isometry t;
  t.perm.resize(perm.size());
  t.signs.resize(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) {
    t.perm[perm[v]] = static_cast<Vertex>(v);
    t.signs[perm[v]] = signs[v];
  }
  return t;
}

bool Isometry::is_identity() const {
  for (std::size_t v = 0; v < perm.size(); ++v)
    if (perm[v] != static_cast<Vertex>(v) || signs[v] != 1) return false;
  return true;
}

namespace {

Word conjugate_by(const DefiningGraph& g, Letter p, const Word& w) {
  Word c;
  c.reserve(w.size() + 2);
  c.push_back(p);
  c.insert(c.end(), w.begin(), w.end());
  c.push_back(inv(p));
  return reduce(g, c);
}

std::size_t total_length(const Automorphism& a) {
  std::size_t n = 0;
  for (const auto& w : a.images) n += w.size();
  return n;
}

}  // namespace

std::optional<IsometryModInner> match_isometry_mod_inner(const DefiningGraph& g, const Automorphism& psi) {
  const int n = g.size();
  Isometry theta;
  theta.perm.resize(n);
  theta.signs.resize(n);
  std::vector<bool> used(n, false);
  for (Vertex v = 0; v < n; ++v) {
    const auto split = split_conjugate(g, psi.images[v]);
    if (split.core.size() != 1) return std::nullopt;
    const Letter x = split.core.front();
    if (used[vertex_of(x)]) return std::nullopt;
    used[vertex_of(x)] = true;
    theta.perm[v] = vertex_of(x);
    theta.signs[v] = sign_of(x);
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (g.adjacent(u, v) != g.adjacent(theta.perm[u], theta.perm[v])) return std::nullopt;

  // Strip a common conjugator one letter at a time; each step must shorten
  // some image without lengthening any other.
  Automorphism cur = psi;
  Word a;
  while (total_length(cur) > static_cast<std::size_t>(n)) {
    bool progressed = false;
    for (Letter p = 0; p < 2 * n && !progressed; ++p) {
      Automorphism next;
      bool ok = true, shorter = false;
      for (Vertex v = 0; v < n && ok; ++v) {
        Word w = conjugate_by(g, inv(p), cur.images[v]);
        if (w.size() > cur.images[v].size()) ok = false;
        if (w.size() < cur.images[v].size()) shorter = true;
        next.images.push_back(std::move(w));
      }
      if (ok && shorter) {
        cur = std::move(next);
        a.push_back(p);
        progressed = true;
      }
    }
    if (!progressed) return std::nullopt;
  }
  for (Vertex v = 0; v < n; ++v)
    if (cur.images[v] != Word{make_letter(theta.perm[v], theta.signs[v] < 0)}) return std::nullopt;
  return IsometryModInner{theta, reduce(g, a)};
}

std::vector<Elementary> elementary_automorphisms(const DefiningGraph& g) {
  std::vector<Elementary> out;
  const int n = g.size();
  for (const auto& pair : enumerate_pairs(g)) {
    auto w = whitehead_auto(g, pair);
    out.push_back({"whitehead", w, w});
  }
  auto with_image = [&](Vertex v, Word img) {
    Automorphism a = Automorphism::identity(g);
    a.images[v] = reduce(g, img);
    return a;
  };
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w = 0; w < n; ++w) {
      if (u == w || !g.leq(u, w)) continue;
      const Letter uu = make_letter(u);
      for (bool neg : {false, true}) {
        const Letter ww = make_letter(w, neg);
        out.push_back({"transvection", with_image(u, {uu, ww}), with_image(u, {uu, inv(ww)})});
        if (!g.adjacent(u, w)) out.push_back({"transvection", with_image(u, {ww, uu}), with_image(u, {inv(ww), uu})});
      }
    }
  }
  for (Vertex w = 0; w < n; ++w) {
    for (VertexSet c : g.components(g.star(w))) {
      for (bool neg : {false, true}) {
        const Letter ww = make_letter(w, neg);
        Automorphism f = Automorphism::identity(g), b = Automorphism::identity(g);
        for (Vertex v : c.elements()) {
          f.images[v] = {ww, make_letter(v), inv(ww)};
          b.images[v] = {inv(ww), make_letter(v), ww};
        }
        out.push_back({"partial_conjugation", f, b});
      }
    }
  }
  for (Letter x = 0; x < 2 * n; ++x)
    out.push_back({"inner", inner(g, {x}), inner(g, {inv(x)})});
  return out;
}

namespace {

struct Score {
  long long norm0 = 0;
  long long total = 0;
  auto operator<=>(const Score&) const = default;
};

Score score_of(const DefiningGraph& g, const Automorphism& psi, const std::vector<ConjClass>& classes,
               const Score* bound) {
  Score s;
  for (const auto& c : classes) {
    s.norm0 += conj_length(g, apply(g, psi, c.rep));
    if (bound && s.norm0 > bound->norm0) return s;
  }
  s.total = static_cast<long long>(total_length(psi));
  return s;
}

}  // namespace

Automorphism invert(const DefiningGraph& g, const Automorphism& phi) {
  if (static_cast<int>(phi.images.size()) != g.size()) throw NotAnAutomorphism("not an automorphism: wrong arity");
  const long long det = abelian_determinant(g, phi);
  if (det != 1 && det != -1) throw NotAnAutomorphism("not an automorphism: abelianization is not invertible");
  if (!preserves_relations(g, phi)) throw NotAnAutomorphism("not an automorphism: a defining relation is not preserved");

  std::vector<ConjClass> classes = classes_of_length(g, 1);
  for (auto& c : classes_of_length(g, 2)) classes.push_back(c);
  const auto elementary = elementary_automorphisms(g);

  // Left-multiply by elementary maps until the result is an isometry up to
  // conjugation: E_k ... E_1 phi = c_a theta.
  Automorphism psi = phi;
  Automorphism acc_inverse = Automorphism::identity(g);  // E_k ... E_1
  Score cur = score_of(g, psi, classes, nullptr);
  for (;;) {
    if (auto m = match_isometry_mod_inner(g, psi)) {
      // phi^-1 = theta^-1 c_{a^-1} E_k ... E_1
      Automorphism left = compose(g, m->theta.inverse().as_automorphism(g), inner(g, inverse_word(m->conjugator)));
      Automorphism result = compose(g, left, acc_inverse);
      if (!is_identity(compose(g, result, phi)) || !is_identity(compose(g, phi, result)))
        throw NotAnAutomorphism("not an automorphism: inverse verification failed");
      return result;
    }
    const Elementary* best = nullptr;
    Automorphism best_psi;
    Score best_score = cur;
    for (const auto& e : elementary) {
      Automorphism cand = compose(g, e.forward, psi);
      Score s = score_of(g, cand, classes, &best_score);
      if (s < best_score) {
        best_score = s;
        best = &e;
        best_psi = std::move(cand);
      }
    }
    if (!best) throw NotAnAutomorphism("not an automorphism: elementary descent did not reach an isometry");
    psi = std::move(best_psi);
    acc_inverse = compose(g, best->forward, acc_inverse);
    cur = best_score;
  }
}

}  // namespace raagws
