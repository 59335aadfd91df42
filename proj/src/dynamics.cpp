#include "fskit/dynamics.hpp"

#include <algorithm>
#include <numeric>

#include "fskit/errors.hpp"

namespace fskit {

namespace {

long len(const Word &w) { return static_cast<long>(w.size()); }

long lead1(const Word &w) {
  size_t k = w.find('0');
  return k == std::string::npos ? len(w) : static_cast<long>(k);
}

// Generated cones used for order and bi-order scans. Each family is
// expanded two layers past every other depth in play; its remaining layers
// are summarised by the accumulation point, since their enclosing cone can
// overlap the expanded layers.
struct ScanItem {
  Word dom, ran;
  bool identity;
  bool limit = false;
  EvPeriodicWord dom_key, ran_key; // u(0) for a cone, u(1) for a limit
};

ScanItem cone_item(const Word &dom, const Word &ran) { return {dom, ran, dom == ran, false, {dom, "0"}, {ran, "0"}}; }

ScanItem limit_item(const Word &dom, const Word &ran, bool identity) {
  return {dom, ran, identity, true, {dom, "1"}, {ran, "1"}};
}

bool key_less(const EvPeriodicWord &a, const EvPeriodicWord &b) { return compare_points(a, b) < 0; }

std::vector<ScanItem> scan_items(const Eppm &f) {
  long B = 0;
  for (const auto &p : f.pieces) B = std::max({B, len(p.dom), len(p.ran)});
  for (const auto &F : f.families)
    for (const auto &b : F.blocks)
      B = std::max({B, len(F.dom_base) + len(b.dom), len(F.ran_base) + len(b.ran)});
  for (const auto &L : f.limits) B = std::max({B, len(L.dom), len(L.ran)});
  B += 1;
  std::vector<ScanItem> items;
  for (const auto &p : f.pieces) items.push_back(cone_item(p.dom, p.ran));
  for (const auto &F : f.families) {
    long M = 0;
    while (len(F.dom_base) + F.dom_step * M <= B || len(F.ran_base) + F.ran_step * M <= B) ++M;
    Eppm single;
    single.families.push_back(F);
    bool fid = is_identity_on_domain(single);
    for (long m = 0; m <= M + 1; ++m)
      for (size_t j = 0; j < F.blocks.size(); ++j) {
        Piece g = F.generated(m, j);
        items.push_back(cone_item(g.dom, g.ran));
      }
    items.push_back(limit_item(F.dom_base, F.ran_base, fid));
  }
  for (const auto &L : f.limits) items.push_back(limit_item(L.dom, L.ran, L.dom == L.ran));
  std::sort(items.begin(), items.end(), [](const ScanItem &a, const ScanItem &b) { return key_less(a.dom_key, b.dom_key); });
  return items;
}

std::optional<EvPeriodicWord> piece_fixed_point(const Word &u, const Word &v) {
  if (u == v) return std::nullopt;
  if (is_prefix(u, v)) return EvPeriodicWord(u, v.substr(u.size()));
  if (is_prefix(v, u)) return EvPeriodicWord(v, u.substr(v.size()));
  return std::nullopt;
}

Rational pow2neg(long n) { return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(n)); }

} // namespace

Eppm caret_map(const RightVineClass &c, const Colour &colour, int direction) {
  if (direction != 0 && direction != 1) throw IndexOutOfRange("caret direction must be 0 or 1");
  if (colour == c.a) return Eppm::piece("", direction ? "1" : "0");
  if (colour != c.b) throw UnknownColour("colour '" + colour + "' is not in the class");
  if (direction == 0) return Eppm::piece("", Word(static_cast<size_t>(c.L), '0'));
  Family F{"", "", c.R, c.R, {}};
  for (int k = 1; k < c.n - 1; ++k) F.blocks.push_back({c.leaf(k), c.leaf(k + 1)});
  F.blocks.push_back({c.leaf(c.n - 1), ones(c.R) + c.leaf(1)});
  Eppm f;
  f.families.push_back(std::move(F));
  return f;
}

Eppm caret_map(const RightVineClass &c, Gen g) {
  switch (g) {
  case Gen::A0: return caret_map(c, c.a, 0);
  case Gen::A1: return caret_map(c, c.a, 1);
  case Gen::B0: return caret_map(c, c.b, 0);
  case Gen::B1: return caret_map(c, c.b, 1);
  }
  return {};
}

Eppm evaluate_word(const RightVineClass &c, const SignedWord &w) {
  Eppm gens[4], invs[4];
  for (int k = 0; k < 4; ++k) {
    gens[k] = caret_map(c, static_cast<Gen>(k));
    invs[k] = invert(gens[k]);
  }
  Eppm r = Eppm::identity();
  for (const auto &l : w) r = compose(r, l.exp > 0 ? gens[static_cast<int>(l.gen)] : invs[static_cast<int>(l.gen)]);
  return r;
}

SignedWord inverse_word(const SignedWord &w) {
  SignedWord r(w.rbegin(), w.rend());
  for (auto &l : r) l.exp = -l.exp;
  return r;
}

Eppm beta(const RightVineClass &c, const ColouredTree &t, int leaf) {
  Eppm r = Eppm::identity();
  for (const auto &s : leaf_path(t, leaf)) r = compose(r, caret_map(c, s.colour, s.direction));
  return r;
}

Eppm evaluate_fraction(const RightVineClass &c, const Fraction &fr) {
  int n = fr.s.leaf_count();
  if (fr.t.leaf_count() != n) throw ShapeMismatch("fraction trees have different leaf counts");
  Permutation pi = fr.pi.size() ? fr.pi : Permutation::identity(n);
  if (pi.size() != n) throw ShapeMismatch("permutation size differs from the leaf count");
  for (const auto *tree : {&fr.t, &fr.s})
    for (const auto &[col, k] : colour_count(*tree))
      if (col != c.a && col != c.b) throw UnknownColour("colour '" + col + "' is not in the class");
  std::vector<Eppm> parts;
  for (int j = 1; j <= n; ++j) parts.push_back(compose(beta(c, fr.t, pi(j)), invert(beta(c, fr.s, j))));
  Eppm f = union_of(parts);
  if (!is_total(f) || !is_surjective(f)) throw NotBijective("fraction did not evaluate to a total bijection");
  return f;
}

Eppm evaluate_element(const RightVineClass &c, const ElementExpr &e) {
  if (auto w = std::get_if<SignedWord>(&e)) return evaluate_word(c, *w);
  return evaluate_fraction(c, std::get<Fraction>(e));
}

std::optional<long> is_power_of_A1(const Eppm &f) {
  auto img = try_evaluate(f, EvPeriodicWord::origin());
  if (!img || img->period() != "0" || img->pre().find('0') != std::string::npos) return std::nullopt;
  long j = len(img->pre());
  if (!equals(f, Eppm::piece("", ones(j)))) return std::nullopt;
  return j;
}

bool is_order_preserving(const Eppm &f) {
  if (!is_total(f)) throw NotTotal("order check needs a total map");
  auto items = scan_items(f);
  for (size_t k = 1; k < items.size(); ++k)
    if (!key_less(items[k - 1].ran_key, items[k].ran_key)) return false;
  return true;
}

bool is_cyclic_order_preserving(const Eppm &f) {
  if (!is_total(f)) throw NotTotal("order check needs a total map");
  auto items = scan_items(f);
  int descents = 0;
  for (size_t k = 1; k < items.size(); ++k)
    if (!key_less(items[k - 1].ran_key, items[k].ran_key)) ++descents;
  if (descents == 0) return true;
  return descents == 1 && key_less(items.back().ran_key, items.front().ran_key);
}

ElementType classify_element(const Eppm &f) {
  if (is_order_preserving(f)) return ElementType::F;
  if (is_cyclic_order_preserving(f)) return ElementType::T;
  return ElementType::V;
}

const char *to_string(ElementType t) {
  switch (t) {
  case ElementType::F: return "F";
  case ElementType::T: return "T";
  case ElementType::V: return "V";
  }
  return "?";
}

Support support(const Eppm &f) {
  if (!is_total(f)) throw NotTotal("support needs a total map");
  Support s;
  for (const auto &p : f.pieces) {
    if (p.dom == p.ran) {
      s.fixed_cones.push_back(p.dom);
      continue;
    }
    s.moved_cones.push_back(p.dom);
    if (auto q = piece_fixed_point(p.dom, p.ran)) s.fixed_points.push_back(*q);
  }
  for (const auto &F : f.families) {
    Eppm single;
    single.families.push_back(F);
    if (is_identity_on_domain(single)) {
      s.fixed_families.push_back(F);
      continue;
    }
    s.moved_family_bases.push_back(F.dom_base);
    if (strip_ones(F.dom_base) == strip_ones(F.ran_base)) s.fixed_points.emplace_back(F.dom_base, "1");
    long mb = 2;
    for (const auto &b : F.blocks)
      mb = std::max(mb, (len(F.dom_base) + len(F.ran_base) + len(b.dom) + len(b.ran)) / std::min(F.dom_step, F.ran_step) + 2);
    for (size_t j = 0; j < F.blocks.size(); ++j) {
      FixedPointFamily fam{F.dom_base, {}, false};
      bool at_mb = false, at_next = false;
      for (long m = 0; m <= mb + 1; ++m) {
        Piece g = F.generated(m, j);
        if (auto q = piece_fixed_point(g.dom, g.ran)) {
          fam.first.push_back(*q);
          if (m == mb) at_mb = true;
          if (m == mb + 1) at_next = true;
        }
      }
      fam.infinite = F.dom_step == F.ran_step && at_mb && at_next;
      if (!fam.first.empty()) s.fixed_point_families.push_back(std::move(fam));
    }
  }
  for (const auto &L : f.limits)
    if (L.dom == L.ran) s.fixed_points.emplace_back(L.dom, "1");
  std::sort(s.fixed_points.begin(), s.fixed_points.end());
  return s;
}

bool locally_prefix(const Family &F) {
  if (F.dom_step != F.ran_step) return false;
  std::optional<long> delta;
  Rational sum = 0;
  for (const auto &b : F.blocks) {
    long e = lead1(b.dom), er = lead1(b.ran);
    if (b.dom.substr(static_cast<size_t>(e)) != b.ran.substr(static_cast<size_t>(er))) return false;
    if (delta && *delta != er - e) return false;
    delta = er - e;
    sum += pow2neg(len(b.dom));
  }
  return delta && sum == 1 - pow2neg(F.dom_step);
}

std::vector<EvPeriodicWord> singular_points(const RightVineClass &, const Eppm &f) {
  if (!is_total(f)) throw NotTotal("singular points need a total map");
  Eppm g = canonicalize(f);
  std::vector<EvPeriodicWord> out;
  for (const auto &F : g.families)
    if (!locally_prefix(F)) out.emplace_back(F.dom_base, "1");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string GermDescriptor::to_string() const {
  std::string s = (kind == Prefix ? "prefix " : "periodic ") + point + "(1) -> " + image + "(1)";
  if (kind == Prefix) return s + " shift " + std::to_string(shift);
  s += " step " + std::to_string(dom_step) + "/" + std::to_string(ran_step) + " [";
  for (size_t k = 0; k < items.size(); ++k) {
    const auto &it = items[k];
    s += (k ? ", " : "") + std::to_string(it.dpos) + ":" + it.dtail + " -> " + std::to_string(it.rpos) + ":" + it.rtail;
  }
  return s + "]";
}

namespace {

void normalize_items(GermDescriptor &g) {
  for (auto &it : g.items) {
    long k = it.dpos >= 0 ? it.dpos / g.dom_step : -((-it.dpos + g.dom_step - 1) / g.dom_step);
    it.dpos -= k * g.dom_step;
    it.rpos -= k * g.ran_step;
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::sort(g.items.begin(), g.items.end());
    for (size_t i = 0; i < g.items.size() && !changed; ++i) {
      const auto &x = g.items[i];
      if (x.dtail.empty() || x.dtail.back() != '0' || x.rtail.empty() || x.rtail.back() != '0') continue;
      GermDescriptor::Item y{x.dpos, x.dtail.substr(0, x.dtail.size() - 1) + "1", x.rpos,
                             x.rtail.substr(0, x.rtail.size() - 1) + "1"};
      auto it = std::find(g.items.begin(), g.items.end(), y);
      if (it == g.items.end()) continue;
      GermDescriptor::Item z{x.dpos, x.dtail.substr(0, x.dtail.size() - 1), x.rpos, x.rtail.substr(0, x.rtail.size() - 1)};
      size_t yi = static_cast<size_t>(it - g.items.begin());
      g.items.erase(g.items.begin() + static_cast<long>(std::max(i, yi)));
      g.items.erase(g.items.begin() + static_cast<long>(std::min(i, yi)));
      g.items.push_back(z);
      changed = true;
    }
  }
  long gc = std::gcd(g.dom_step, g.ran_step);
  for (long q = gc; q >= 2; --q) {
    if (gc % q) continue;
    long sc = g.dom_step / q, sr = g.ran_step / q;
    std::vector<std::vector<GermDescriptor::Item>> layers(static_cast<size_t>(q));
    for (const auto &it : g.items) {
      long i = it.dpos / sc;
      layers[static_cast<size_t>(i)].push_back({it.dpos - i * sc, it.dtail, it.rpos - i * sr, it.rtail});
    }
    for (auto &l : layers) std::sort(l.begin(), l.end());
    if (!std::all_of(layers.begin(), layers.end(), [&](const auto &l) { return l == layers[0]; })) continue;
    g.dom_step = sc;
    g.ran_step = sr;
    g.items = layers[0];
    break;
  }
  std::sort(g.items.begin(), g.items.end());
}

} // namespace

GermDescriptor germ_at(const Eppm &f, const EvPeriodicWord &p) {
  if (!p.has_tail_ones()) throw WrongShape("germ descriptors are defined at points with tail (1)");
  auto img = try_evaluate(f, p);
  if (!img) throw UndefinedAt("map undefined at " + p.to_string());
  GermDescriptor g;
  g.point = p.pre();
  g.image = img->pre();
  const Word &P = g.point;
  for (const auto &pc : f.pieces)
    if (p.starts_with(pc.dom)) {
      g.shift = len(pc.ran) - len(pc.dom) + len(P) - len(g.image);
      return g;
    }
  for (const auto &F : f.families) {
    if (strip_ones(F.dom_base) != P) continue;
    long oD = len(F.dom_base) - len(P), oE = len(F.ran_base) - len(g.image);
    if (locally_prefix(F)) {
      const Block &b = F.blocks.front();
      g.shift = oE - oD + lead1(b.ran) - lead1(b.dom);
      return g;
    }
    g.kind = GermDescriptor::Periodic;
    g.dom_step = F.dom_step;
    g.ran_step = F.ran_step;
    for (const auto &b : F.blocks) {
      long e = lead1(b.dom), er = lead1(b.ran);
      g.items.push_back({oD + e, b.dom.substr(static_cast<size_t>(e + 1)), oE + er, b.ran.substr(static_cast<size_t>(er + 1))});
    }
    normalize_items(g);
    return g;
  }
  // a generated cone of some family, or an isolated limit
  for (const auto &F : f.families) {
    if (!p.starts_with(F.dom_base)) continue;
    EvPeriodicWord q = p.drop(F.dom_base.size());
    long t = static_cast<long>(q.leading_ones());
    for (long m = 0; F.dom_step * m <= t; ++m)
      for (size_t j = 0; j < F.blocks.size(); ++j) {
        Piece gp = F.generated(m, j);
        if (p.starts_with(gp.dom)) {
          g.shift = len(gp.ran) - len(gp.dom) + len(P) - len(g.image);
          return g;
        }
      }
  }
  g.kind = GermDescriptor::Periodic; // isolated limit: no open neighbourhood in the domain
  return g;
}

bool germ_equal(const Eppm &f, const Eppm &g, const EvPeriodicWord &p) {
  auto a = try_evaluate(f, p), b = try_evaluate(g, p);
  if (!a || !b || *a != *b) return false;
  return germ_at(compose(invert(g), f), p).is_identity();
}

const char *to_string(Ordering o) {
  switch (o) {
  case Ordering::Less: return "Less";
  case Ordering::Equal: return "Equal";
  case Ordering::Greater: return "Greater";
  }
  return "?";
}

Ordering bi_order_compare(const Eppm &f, const Eppm &g) {
  if (!is_order_preserving(f) || !is_order_preserving(g))
    throw NotOrderPreserving("bi-order comparison needs order-preserving elements");
  if (equals(f, g)) return Ordering::Equal;
  Eppm h = compose(f, invert(g));
  for (const auto &it : scan_items(h)) {
    if (it.identity) continue;
    if (it.limit) return key_less(it.dom_key, it.ran_key) ? Ordering::Greater : Ordering::Less;
    if (len(it.dom) != len(it.ran)) return len(it.dom) > len(it.ran) ? Ordering::Greater : Ordering::Less;
    return it.ran > it.dom ? Ordering::Greater : Ordering::Less;
  }
  return Ordering::Equal;
}

Eppm kappa_omega(const RightVineClass &c, const std::string &w) {
  Eppm A = caret_map(c, Gen::A1), B = caret_map(c, Gen::B1);
  Eppm r = Eppm::identity();
  for (char ch : w) {
    if (ch != 'a' && ch != 'b') throw ParseError("kappa words use letters a and b");
    r = compose(r, ch == 'a' ? A : B);
  }
  return r;
}

bool certificate_check(const RightVineClass &c, const std::string &w) {
  if (c.R != 2 || c.x.right() != ColouredTree::caret(c.a))
    throw WrongShape("certificate needs x = Y(s ⊗ Y)");
  if (!good_word_check(c, w)) throw WrongShape("certificate applies to good words only");
  // w = a^i (b^{m_1} a) ... (b^{m_k} a) (b^m)?
  size_t pos = 0;
  long i = 0;
  while (pos < w.size() && w[pos] == 'a') ++pos, ++i;
  if (pos == w.size()) throw WrongShape("trivial good word");
  std::vector<int> ms;
  std::optional<int> tail;
  while (pos < w.size()) {
    int run = 0;
    while (pos < w.size() && w[pos] == 'b') ++pos, ++run;
    if (pos < w.size()) {
      ms.push_back(run);
      ++pos; // the single a
    } else {
      tail = run;
    }
  }
  const ColouredTree &s = c.x.left();
  auto ell = [&](int m) { return leaf_address(s, m); };
  long k = static_cast<long>(ms.size());
  Word base = tail ? "10" : "0";
  Word mid = "0";
  for (int m : ms) mid += ell(m);
  if (tail) mid += ell(*tail);
  Word lead = ones(i + 2 * k + (tail ? 2 : 0));
  Eppm Y = kappa_omega(c, w);
  EvPeriodicWord at0 = evaluate(Y, EvPeriodicWord(base, "0"));
  EvPeriodicWord at1 = evaluate(Y, EvPeriodicWord(base, "1"));
  if (at0 != EvPeriodicWord(lead + mid, "0") || at1 != EvPeriodicWord(lead + mid, "1")) return false;
  // A1^j sends base·q to 1^j·base·q; the witnesses rule that out
  bool case1 = std::all_of(ms.begin(), ms.end(), [&](int m) { return m == s.leaf_count(); }) &&
               (!tail || *tail == s.leaf_count());
  if (case1) {
    Word pre = at0.pre();
    size_t t1 = static_cast<size_t>(lead1(pre));
    return EvPeriodicWord(pre.substr(t1), "0") != EvPeriodicWord(base.substr(base.find('0')), "0");
  }
  return std::count(at1.pre().begin(), at1.pre().end(), '0') >= 2;
}

} // namespace fskit
