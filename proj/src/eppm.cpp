#include "fskit/eppm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fskit/errors.hpp"

namespace fskit {

Word ones(long k) { return Word(static_cast<size_t>(std::max(0L, k)), '1'); }

Word strip_ones(const Word &w) {
  size_t e = w.find_last_not_of('1');
  return e == std::string::npos ? Word() : w.substr(0, e + 1);
}

std::string word_text(const Word &w) { return w.empty() ? "e" : w; }

Piece Family::generated(long m, size_t j) const {
  return {dom_base + ones(m * dom_step) + blocks[j].dom, ran_base + ones(m * ran_step) + blocks[j].ran};
}

Eppm Eppm::piece(const Word &dom, const Word &ran) {
  Eppm f;
  f.pieces.push_back({dom, ran});
  return f;
}

std::string Eppm::to_string() const {
  if (is_empty()) return "empty\n";
  std::ostringstream os;
  for (const auto &p : pieces) os << "piece " << word_text(p.dom) << " -> " << word_text(p.ran) << "\n";
  for (const auto &F : families) {
    os << "family " << word_text(F.dom_base) << " -> " << word_text(F.ran_base) << " step " << F.dom_step << "/"
       << F.ran_step << " [";
    for (size_t j = 0; j < F.blocks.size(); ++j)
      os << (j ? ", " : "") << F.blocks[j].dom << " -> " << F.blocks[j].ran;
    os << "]\n";
  }
  for (const auto &L : limits) os << "limit " << L.dom << "(1) -> " << L.ran << "(1)\n";
  return os.str();
}

namespace {

long len(const Word &w) { return static_cast<long>(w.size()); }

// index of the first 0 of a block word
long lead1(const Word &w) {
  size_t k = w.find('0');
  return k == std::string::npos ? len(w) : static_cast<long>(k);
}

char spine_letter(const Word &P, long k) { return k < len(P) ? P[static_cast<size_t>(k)] : '1'; }

// First index where x leaves P·1^∞, or -1 when x is a prefix of it.
long divergence(const Word &x, const Word &P) {
  for (long k = 0; k < len(x); ++k)
    if (x[static_cast<size_t>(k)] != spine_letter(P, k)) return k;
  return -1;
}

// First index where P·1^∞ and Q·1^∞ differ (they are assumed distinct).
long point_divergence(const Word &P, const Word &Q) {
  long n = std::max(len(P), len(Q));
  for (long k = 0; k < n; ++k)
    if (spine_letter(P, k) != spine_letter(Q, k)) return k;
  return n;
}

long ceil_div(long a, long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

Rational pow2neg(long n) { return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(n)); }

// Adds to out the map u·z ↦ f(r·z).
void restrict_then_prefix(const Eppm &f, const Word &r, const Word &u, Eppm &out) {
  for (const auto &p : f.pieces) {
    if (is_prefix(p.dom, r))
      out.pieces.push_back({u, p.ran + r.substr(p.dom.size())});
    else if (is_prefix(r, p.dom))
      out.pieces.push_back({u + p.dom.substr(r.size()), p.ran});
  }
  for (const auto &F : f.families) {
    const Word &D = F.dom_base;
    if (is_prefix(r, D)) {
      Family G = F;
      G.dom_base = u + D.substr(r.size());
      out.families.push_back(std::move(G));
      continue;
    }
    if (!is_prefix(D, r)) continue;
    Word s = r.substr(D.size());
    long t = lead1(s);
    long c = F.dom_step;
    if (t == len(s)) {
      long m0 = ceil_div(t, c);
      if (m0 > kMaxLayers) throw RepresentationOverflow("restriction needs too many layers");
      for (long m = 0; m < m0; ++m)
        for (size_t j = 0; j < F.blocks.size(); ++j)
          if (c * m + lead1(F.blocks[j].dom) >= t) {
            Piece g = F.generated(m, j);
            out.pieces.push_back({u + g.dom.substr(r.size()), g.ran});
          }
      Family G = F;
      G.dom_base = u + ones(c * m0 - t);
      G.ran_base = F.ran_base + ones(F.ran_step * m0);
      out.families.push_back(std::move(G));
    } else {
      for (long m = 0; c * m <= t; ++m)
        for (size_t j = 0; j < F.blocks.size(); ++j) {
          if (c * m + lead1(F.blocks[j].dom) != t) continue;
          Piece g = F.generated(m, j);
          if (is_prefix(g.dom, r))
            out.pieces.push_back({u, g.ran + r.substr(g.dom.size())});
          else if (is_prefix(r, g.dom))
            out.pieces.push_back({u + g.dom.substr(r.size()), g.ran});
        }
    }
  }
  for (const auto &L : f.limits) {
    if (divergence(r, L.dom) >= 0) continue;
    Word rest = len(L.dom) > len(r) ? L.dom.substr(r.size()) : Word();
    out.limits.push_back({strip_ones(u + rest), L.ran});
  }
}

struct Located {
  enum Kind { None, Cone, Spine, Lim } kind = None;
  Word d, e;                  // Cone
  const Family *fam = nullptr; // Spine
  Word lim_ran;               // Lim
  long K = 0;                 // beyond depth K only the located atom meets the spine
};

Located locate(const Eppm &f, const Word &P) {
  Located loc;
  auto bump = [&](long k) { loc.K = std::max(loc.K, k); };
  for (const auto &p : f.pieces) {
    long dv = divergence(p.dom, P);
    if (dv < 0) {
      loc.kind = Located::Cone;
      loc.d = p.dom;
      loc.e = p.ran;
      bump(len(p.dom));
    } else {
      bump(dv + 1);
    }
  }
  for (const auto &F : f.families) {
    const Word &D = F.dom_base;
    if (strip_ones(D) == P) {
      loc.kind = Located::Spine;
      loc.fam = &F;
      bump(len(D));
      continue;
    }
    long dv = divergence(D, P);
    if (dv >= 0) {
      bump(dv + 1);
      continue;
    }
    long t = 0;
    while (spine_letter(P, len(D) + t) == '1') ++t;
    bump(len(D) + t + 1);
    for (long m = 0; F.dom_step * m <= t; ++m)
      for (size_t j = 0; j < F.blocks.size(); ++j) {
        if (F.dom_step * m + lead1(F.blocks[j].dom) != t) continue;
        Piece g = F.generated(m, j);
        long dv2 = divergence(g.dom, P);
        if (dv2 < 0) {
          loc.kind = Located::Cone;
          loc.d = g.dom;
          loc.e = g.ran;
          bump(len(g.dom));
        } else {
          bump(dv2 + 1);
        }
      }
  }
  for (const auto &L : f.limits) {
    if (L.dom == P) {
      loc.kind = Located::Lim;
      loc.lim_ran = L.ran;
    } else {
      bump(point_divergence(L.dom, P) + 1);
    }
  }
  return loc;
}

void compose_family(const Eppm &f, const Family &G, Eppm &out) {
  Word P = strip_ones(G.ran_base);
  Located loc = locate(f, P);
  long need = loc.K;
  if (loc.kind == Located::Spine) {
    long emax = 0;
    for (const auto &b : loc.fam->blocks) emax = std::max(emax, lead1(b.dom));
    need = std::max(need, len(loc.fam->dom_base) + emax);
  }
  long cg = G.dom_step, cr = G.ran_step;
  long m_start = ceil_div(need - len(G.ran_base), cr);
  if (m_start > kMaxLayers) throw RepresentationOverflow("family alignment needs too many layers");
  for (long m = 0; m < m_start; ++m)
    for (size_t j = 0; j < G.blocks.size(); ++j) {
      Piece g = G.generated(m, j);
      restrict_then_prefix(f, g.ran, g.dom, out);
    }
  Word Dn = G.dom_base + ones(cg * m_start), En = G.ran_base + ones(cr * m_start);
  switch (loc.kind) {
  case Located::None:
    break;
  case Located::Lim:
    out.limits.push_back({strip_ones(Dn), loc.lim_ran});
    break;
  case Located::Cone:
    out.families.push_back({Dn, loc.e + En.substr(loc.d.size()), G.dom_step, G.ran_step, G.blocks});
    break;
  case Located::Spine: {
    const Family &F = *loc.fam;
    long oE = len(En) - len(P), oD = len(F.dom_base) - len(P);
    long d = F.dom_step, dr = F.ran_step;
    long L = std::lcm(cr, d);
    if (L > kMaxStep || cg * (L / cr) > kMaxStep || dr * (L / d) > kMaxStep)
      throw RepresentationOverflow("family steps do not align within the unfolding bound");
    long Mg = L / cr, Mf = L / d;
    struct Cand {
      Word dom;
      long mp;
      Word ran;
    };
    std::vector<Cand> cands;
    for (long k = 0; k < Mg; ++k)
      for (const auto &gb : G.blocks) {
        long eg = lead1(gb.ran);
        long gp = oE + cr * k + eg;
        Word wg = gb.ran.substr(static_cast<size_t>(eg + 1));
        for (const auto &fb : F.blocks) {
          long ef = lead1(fb.dom);
          long diff = gp - oD - ef;
          if (diff < 0 || diff % d) continue;
          Word wf = fb.dom.substr(static_cast<size_t>(ef + 1));
          Word gd = ones(cg * k) + gb.dom;
          if (is_prefix(wf, wg))
            cands.push_back({gd, diff / d, fb.ran + wg.substr(wf.size())});
          else if (is_prefix(wg, wf))
            cands.push_back({gd + wf.substr(wg.size()), diff / d, fb.ran});
        }
      }
    if (cands.empty()) {
      out.limits.push_back({strip_ones(Dn), strip_ones(F.ran_base)});
      break;
    }
    long mb = cands.front().mp;
    for (const auto &c : cands) mb = std::min(mb, c.mp);
    Family H{Dn, F.ran_base + ones(dr * mb), static_cast<int>(cg * Mg), static_cast<int>(dr * Mf), {}};
    for (const auto &c : cands) H.blocks.push_back({c.dom, ones(dr * (c.mp - mb)) + c.ran});
    out.families.push_back(std::move(H));
    break;
  }
  }
}

// Rewrites F so that every block starts inside the first layer; lower
// layers that no longer fit are emitted as pieces.
Family normalize_family(Family F, std::vector<Piece> &pieces) {
  long c = F.dom_step;
  long Q = 0;
  for (const auto &b : F.blocks) Q = std::max(Q, lead1(b.dom) / c);
  if (Q > 0) {
    std::vector<Block> nb;
    for (size_t j = 0; j < F.blocks.size(); ++j) {
      long q = lead1(F.blocks[j].dom) / c;
      for (long m = 0; m < Q - q; ++m) pieces.push_back(F.generated(m, j));
      nb.push_back({F.blocks[j].dom.substr(static_cast<size_t>(c * q)), ones(F.ran_step * (Q - q)) + F.blocks[j].ran});
    }
    F.dom_base += ones(c * Q);
    F.blocks = std::move(nb);
  }
  // shift ones common to every range block into the range base
  long z = len(F.blocks.front().ran);
  for (const auto &b : F.blocks) z = std::min(z, lead1(b.ran));
  if (z > 0) {
    F.ran_base += ones(z);
    for (auto &b : F.blocks) b.ran.erase(0, static_cast<size_t>(z));
  }
  std::sort(F.blocks.begin(), F.blocks.end());
  return F;
}

bool merge_sibling_blocks(Family &F) {
  bool any = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < F.blocks.size() && !changed; ++i) {
      const Block &x = F.blocks[i];
      if (x.dom.empty() || x.dom.back() != '0' || x.ran.empty() || x.ran.back() != '0') continue;
      Word du = x.dom.substr(0, x.dom.size() - 1), ru = x.ran.substr(0, x.ran.size() - 1);
      if (du.find('0') == std::string::npos || ru.find('0') == std::string::npos) continue;
      for (size_t k = 0; k < F.blocks.size(); ++k)
        if (F.blocks[k].dom == du + "1" && F.blocks[k].ran == ru + "1") {
          F.blocks.erase(F.blocks.begin() + static_cast<long>(std::max(i, k)));
          F.blocks.erase(F.blocks.begin() + static_cast<long>(std::min(i, k)));
          F.blocks.push_back({du, ru});
          changed = any = true;
          break;
        }
    }
  }
  std::sort(F.blocks.begin(), F.blocks.end());
  return any;
}

bool reduce_period(Family &F) {
  long g = std::gcd(static_cast<long>(F.dom_step), static_cast<long>(F.ran_step));
  for (long q = g; q >= 2; --q) {
    if (g % q) continue;
    long sc = F.dom_step / q, sr = F.ran_step / q;
    std::vector<std::vector<Block>> layers(static_cast<size_t>(q));
    bool ok = true;
    for (const auto &b : F.blocks) {
      long k = lead1(b.dom) / sc;
      if (k >= q || lead1(b.ran) < k * sr) {
        ok = false;
        break;
      }
      layers[static_cast<size_t>(k)].push_back({b.dom.substr(static_cast<size_t>(k * sc)), b.ran.substr(static_cast<size_t>(k * sr))});
    }
    if (!ok) continue;
    for (auto &l : layers) std::sort(l.begin(), l.end());
    if (!std::all_of(layers.begin(), layers.end(), [&](const auto &l) { return l == layers[0]; })) continue;
    F.dom_step = static_cast<int>(sc);
    F.ran_step = static_cast<int>(sr);
    F.blocks = layers[0];
    return true;
  }
  return false;
}

Rational block_sum(const Family &F) {
  Rational s = 0;
  for (const auto &b : F.blocks) s += pow2neg(len(b.dom));
  return s;
}

// A family that agrees with one prefix replacement on its whole base cone.
std::optional<Piece> collapse(const Family &F) {
  if (F.dom_step != F.ran_step) return std::nullopt;
  std::optional<long> delta;
  for (const auto &b : F.blocks) {
    long e = lead1(b.dom), er = lead1(b.ran);
    if (b.dom.substr(static_cast<size_t>(e)) != b.ran.substr(static_cast<size_t>(er))) return std::nullopt;
    if (delta && *delta != er - e) return std::nullopt;
    delta = er - e;
  }
  if (block_sum(F) != 1 - pow2neg(F.dom_step)) return std::nullopt;
  if (*delta >= 0) return Piece{F.dom_base, F.ran_base + ones(*delta)};
  long k = -*delta;
  if (len(F.ran_base) < k || F.ran_base.substr(F.ran_base.size() - static_cast<size_t>(k)) != ones(k)) return std::nullopt;
  return Piece{F.dom_base, F.ran_base.substr(0, F.ran_base.size() - static_cast<size_t>(k))};
}

bool comparable(const Word &a, const Word &b) { return is_prefix(a, b) || is_prefix(b, a); }

// Moves F down one layer while the pieces already realise that layer.
bool absorb(Eppm &f, size_t fi) {
  bool any = false;
  for (;;) {
    Family &F = f.families[fi];
    long c = F.dom_step, cr = F.ran_step;
    const Word &D = F.dom_base, &E = F.ran_base;
    if (len(D) < c || len(E) < cr || D.substr(D.size() - static_cast<size_t>(c)) != ones(c) ||
        E.substr(E.size() - static_cast<size_t>(cr)) != ones(cr))
      return any;
    Word Dl = D.substr(0, D.size() - static_cast<size_t>(c)), El = E.substr(0, E.size() - static_cast<size_t>(cr));
    std::vector<Piece> trial = f.pieces;
    bool ok = true;
    for (const auto &b : F.blocks) {
      Word T = Dl + b.dom, R = El + b.ran;
      for (size_t k = 0; k < f.families.size() && ok; ++k)
        if (k != fi && comparable(f.families[k].dom_base, T)) ok = false;
      for (const auto &L : f.limits)
        if (divergence(T, L.dom) < 0) ok = false;
      if (!ok) break;
      auto cover = std::find_if(trial.begin(), trial.end(), [&](const Piece &p) { return is_prefix(p.dom, T); });
      if (cover != trial.end()) {
        Piece p = *cover;
        if (p.ran + T.substr(p.dom.size()) != R) {
          ok = false;
          break;
        }
        trial.erase(cover);
        for (size_t k = p.dom.size(); k < T.size(); ++k) {
          Word w = T.substr(0, k) + (T[k] == '0' ? '1' : '0');
          trial.push_back({w, p.ran + w.substr(p.dom.size())});
        }
        continue;
      }
      Rational covered = 0;
      std::vector<Piece> keep;
      for (const auto &p : trial) {
        if (!is_prefix(T, p.dom)) {
          keep.push_back(p);
          continue;
        }
        if (p.ran != R + p.dom.substr(T.size())) ok = false;
        covered += pow2neg(len(p.dom));
      }
      if (!ok || covered != pow2neg(len(T))) {
        ok = false;
        break;
      }
      trial = std::move(keep);
    }
    if (!ok) return any;
    f.pieces = std::move(trial);
    F.dom_base = Dl;
    F.ran_base = El;
    any = true;
  }
}

bool merge_sibling_pieces(std::vector<Piece> &pieces) {
  std::map<Word, Word> m;
  for (const auto &p : pieces) m[p.dom] = p.ran;
  bool any = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = m.begin(); it != m.end(); ++it) {
      const Word &u = it->first, &v = it->second;
      if (u.empty() || u.back() != '0' || v.empty() || v.back() != '0') continue;
      Word up = u.substr(0, u.size() - 1), vp = v.substr(0, v.size() - 1);
      auto sib = m.find(up + "1");
      if (sib == m.end() || sib->second != vp + "1") continue;
      m.erase(sib);
      m.erase(it);
      m[up] = vp;
      changed = any = true;
      break;
    }
  }
  if (any) {
    pieces.clear();
    for (const auto &[u, v] : m) pieces.push_back({u, v});
  }
  return any;
}

} // namespace

Eppm canonicalize(Eppm f) {
  std::vector<Family> fams;
  for (auto &F : f.families) {
    if (F.blocks.empty()) {
      f.limits.push_back({strip_ones(F.dom_base), strip_ones(F.ran_base)});
      continue;
    }
    fams.push_back(normalize_family(std::move(F), f.pieces));
  }
  f.families = std::move(fams);
  for (auto &L : f.limits) {
    L.dom = strip_ones(L.dom);
    L.ran = strip_ones(L.ran);
  }
  for (int round = 0; round < 64; ++round) {
    bool changed = merge_sibling_pieces(f.pieces);
    for (size_t i = 0; i < f.families.size();) {
      Family &F = f.families[i];
      bool c1 = merge_sibling_blocks(F);
      bool c2 = reduce_period(F);
      if (c1 || c2) {
        F = normalize_family(std::move(F), f.pieces);
        changed = true;
      }
      if (auto p = collapse(F)) {
        f.pieces.push_back(*p);
        f.families.erase(f.families.begin() + static_cast<long>(i));
        changed = true;
        continue;
      }
      if (absorb(f, i)) changed = true;
      ++i;
    }
    if (!changed) break;
  }
  std::sort(f.pieces.begin(), f.pieces.end());
  f.pieces.erase(std::unique(f.pieces.begin(), f.pieces.end()), f.pieces.end());
  std::sort(f.families.begin(), f.families.end());
  std::sort(f.limits.begin(), f.limits.end());
  f.limits.erase(std::unique(f.limits.begin(), f.limits.end()), f.limits.end());
  return f;
}

Eppm union_of(const std::vector<Eppm> &parts) {
  Eppm u;
  for (const auto &p : parts) {
    u.pieces.insert(u.pieces.end(), p.pieces.begin(), p.pieces.end());
    u.families.insert(u.families.end(), p.families.begin(), p.families.end());
    u.limits.insert(u.limits.end(), p.limits.begin(), p.limits.end());
  }
  return canonicalize(std::move(u));
}

Eppm compose(const Eppm &f, const Eppm &g) {
  Eppm out;
  for (const auto &p : g.pieces) restrict_then_prefix(f, p.ran, p.dom, out);
  for (const auto &G : g.families) compose_family(f, G, out);
  for (const auto &L : g.limits)
    if (auto r = try_evaluate(f, EvPeriodicWord(L.ran, "1"))) out.limits.push_back({L.dom, strip_ones(r->pre())});
  return canonicalize(std::move(out));
}

Eppm invert(const Eppm &f) {
  Eppm g;
  for (const auto &p : f.pieces) g.pieces.push_back({p.ran, p.dom});
  for (const auto &F : f.families) {
    Family H{F.ran_base, F.dom_base, F.ran_step, F.dom_step, {}};
    for (const auto &b : F.blocks) H.blocks.push_back({b.ran, b.dom});
    g.families.push_back(std::move(H));
  }
  for (const auto &L : f.limits) g.limits.push_back({L.ran, L.dom});
  return canonicalize(std::move(g));
}

std::optional<EvPeriodicWord> try_evaluate(const Eppm &f, const EvPeriodicWord &p) {
  for (const auto &pc : f.pieces)
    if (p.starts_with(pc.dom)) return p.drop(pc.dom.size()).prepend(pc.ran);
  for (const auto &F : f.families) {
    if (!p.starts_with(F.dom_base)) continue;
    EvPeriodicWord q = p.drop(F.dom_base.size());
    if (q == EvPeriodicWord::omega()) return EvPeriodicWord(F.ran_base, "1");
    long t = static_cast<long>(q.leading_ones());
    for (long m = 0; F.dom_step * m <= t; ++m)
      for (const auto &b : F.blocks) {
        Word gd = ones(F.dom_step * m) + b.dom;
        if (q.starts_with(gd)) return q.drop(gd.size()).prepend(F.ran_base + ones(F.ran_step * m) + b.ran);
      }
  }
  for (const auto &L : f.limits)
    if (p == EvPeriodicWord(L.dom, "1")) return EvPeriodicWord(L.ran, "1");
  return std::nullopt;
}

EvPeriodicWord evaluate(const Eppm &f, const EvPeriodicWord &p) {
  if (auto r = try_evaluate(f, p)) return *r;
  throw UndefinedAt("map undefined at " + p.to_string());
}

Rational domain_measure(const Eppm &f) {
  Rational s = 0;
  for (const auto &p : f.pieces) s += pow2neg(len(p.dom));
  for (const auto &F : f.families) {
    Rational c = pow2neg(F.dom_step);
    s += pow2neg(len(F.dom_base)) * block_sum(F) / (1 - c);
  }
  return s;
}

Rational range_measure(const Eppm &f) {
  Rational s = 0;
  for (const auto &p : f.pieces) s += pow2neg(len(p.ran));
  for (const auto &F : f.families) {
    Rational b = 0;
    for (const auto &bl : F.blocks) b += pow2neg(len(bl.ran));
    s += pow2neg(len(F.ran_base)) * b / (1 - pow2neg(F.ran_step));
  }
  return s;
}

bool is_identity_on_domain(const Eppm &f) {
  for (const auto &p : f.pieces)
    if (p.dom != p.ran) return false;
  for (const auto &F : f.families) {
    if (F.dom_step != F.ran_step) return false;
    const Word *a = &F.dom_base, *b = &F.ran_base;
    bool swapped = len(*a) > len(*b);
    if (swapped) std::swap(a, b);
    long k = len(*b) - len(*a);
    if (*b != *a + ones(k)) return false;
    for (const auto &bl : F.blocks) {
      const Word &x = swapped ? bl.ran : bl.dom, &y = swapped ? bl.dom : bl.ran;
      if (x != ones(k) + y) return false;
    }
  }
  for (const auto &L : f.limits)
    if (L.dom != L.ran) return false;
  return true;
}

std::vector<EvPeriodicWord> domain_spines(const Eppm &f) {
  std::vector<EvPeriodicWord> out;
  for (const auto &F : f.families) out.emplace_back(F.dom_base, "1");
  for (const auto &L : f.limits) out.emplace_back(L.dom, "1");
  return out;
}

bool equals(const Eppm &f, const Eppm &g) {
  if (f == g) return true;
  Eppm h = compose(invert(g), f);
  if (!is_identity_on_domain(h)) return false;
  Rational mh = domain_measure(h);
  if (domain_measure(f) != mh || domain_measure(g) != mh) return false;
  auto spines = domain_spines(f);
  auto sg = domain_spines(g);
  spines.insert(spines.end(), sg.begin(), sg.end());
  for (const auto &s : spines) {
    auto a = try_evaluate(f, s), b = try_evaluate(g, s);
    if (a.has_value() != b.has_value()) return false;
    if (a && *a != *b) return false;
  }
  return true;
}

bool is_total(const Eppm &f) { return domain_measure(f) == 1; }
bool is_surjective(const Eppm &f) { return range_measure(f) == 1; }

} // namespace fskit
