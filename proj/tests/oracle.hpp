#pragma once

// Test-only reference: generators act on finite bit prefixes letter by
// letter, read straight off the infinite tree T_x.  Shares no code with
// the library beyond the point type used to produce input bits.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Bits = std::string;

struct Step {
  char colour;
  int dir;
};
using Path = std::vector<Step>;

// Leaf paths of the tree described by a caret word such as "a1 a1 a3".
inline std::vector<Path> leaf_paths(const std::string &caret_word) {
  std::vector<Path> leaves{Path{}};
  std::istringstream in(caret_word);
  std::string tok;
  while (in >> tok) {
    char c = tok[0];
    size_t i = std::stoul(tok.substr(1)) - 1;
    Path p = leaves.at(i);
    Path l = p, r = p;
    l.push_back({c, 0});
    r.push_back({c, 1});
    leaves[i] = l;
    leaves.insert(leaves.begin() + static_cast<long>(i) + 1, r);
  }
  return leaves;
}

inline Bits address(const Path &p) {
  Bits s;
  for (auto st : p) s += st.dir ? '1' : '0';
  return s;
}

struct Class {
  std::vector<Bits> leaves; // leaves of x
  size_t L, R, n;

  explicit Class(const std::string &x_word) {
    for (const auto &p : leaf_paths(x_word)) leaves.push_back(address(p));
    n = leaves.size();
    L = leaves.front().size();
    R = leaves.back().size();
  }

  // i-th leaf (1-based) of T_x, the tree obtained by grafting x at the
  // last leaf forever.
  Bits tree_leaf(long i) const {
    long per = static_cast<long>(n) - 1;
    long m = (i - 1) / per, k = (i - 1) % per;
    return Bits(static_cast<size_t>(m) * R, '1') + leaves[static_cast<size_t>(k)];
  }
};

// A partial result: nullopt means undefined, otherwise the bits that are
// determined by the available input.
using Out = std::optional<Bits>;

// Locate q in T_x: q = 1^{mR}·ℓ_k·z with k < n.  Returns false if the bits run out.
inline bool locate(const Class &c, const Bits &q, size_t &m, size_t &k, size_t &used) {
  size_t pos = 0;
  m = 0;
  for (;;) {
    bool found = false;
    for (size_t j = 0; j < c.n; ++j) {
      const Bits &l = c.leaves[j];
      if (q.size() - pos >= l.size() && q.compare(pos, l.size(), l) == 0) {
        found = true;
        if (j + 1 == c.n) {
          pos += l.size();
          ++m;
        } else {
          k = j + 1;
          used = pos + l.size();
          return true;
        }
        break;
      }
    }
    if (!found) return false; // m counts the 1^R blocks read so far
  }
}

enum class G { A0, A1, B0, B1 };

inline Out apply(const Class &c, G g, int exp, const Bits &q) {
  switch (g) {
  case G::A0:
  case G::A1: {
    char b = g == G::A0 ? '0' : '1';
    if (exp > 0) return Bits(1, b) + q;
    if (q.empty()) return Bits{};
    if (q[0] != b) return std::nullopt;
    return q.substr(1);
  }
  case G::B0: {
    Bits z(c.L, '0');
    if (exp > 0) return z + q;
    for (size_t i = 0; i < z.size(); ++i) {
      if (i >= q.size()) return Bits{};
      if (q[i] != '0') return std::nullopt;
    }
    return q.substr(z.size());
  }
  case G::B1: {
    size_t m, k, used;
    if (!locate(c, q, m, k, used)) {
      // only the leading 1^{mR} is determined
      size_t keep = exp > 0 ? m : (m > 0 ? m - 1 : 0);
      return Bits(keep * c.R, '1');
    }
    long per = static_cast<long>(c.n) - 1;
    long i = static_cast<long>(m) * per + static_cast<long>(k);
    Bits rest = q.substr(used);
    if (exp > 0) return c.tree_leaf(i + 1) + rest;
    if (i == 1) return std::nullopt;
    return c.tree_leaf(i - 1) + rest;
  }
  }
  return std::nullopt;
}

struct Letter {
  G g;
  int exp;
};

// Leftmost letter outermost: apply the rightmost first.
inline Out apply_word(const Class &c, const std::vector<Letter> &w, Bits q) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Out r = apply(c, it->g, it->exp, q);
    if (!r) return r;
    q = *r;
  }
  return q;
}

inline std::vector<Letter> path_word(const Path &p, char a) {
  std::vector<Letter> w;
  for (auto st : p) w.push_back({st.colour == a ? (st.dir ? G::A1 : G::A0) : (st.dir ? G::B1 : G::B0), 1});
  return w;
}

inline std::vector<Letter> inverse(std::vector<Letter> w) {
  std::vector<Letter> r(w.rbegin(), w.rend());
  for (auto &l : r) l.exp = -l.exp;
  return r;
}

// [t | pi | s]: find the j for which β(s,j)^{-1} is defined, then apply β(t,π(j)).
// pi[j-1] is the image of j; empty means identity.  Returns an empty result
// when the input bits cannot decide the branch.
inline Out apply_fraction(const Class &c, const std::string &t, const std::vector<int> &pi, const std::string &s,
                          const Bits &q, char a = 'a') {
  auto ts = leaf_paths(t), ss = leaf_paths(s);
  bool undecided = false;
  for (size_t j = 0; j < ss.size(); ++j) {
    Out z = apply_word(c, inverse(path_word(ss[j], a)), q);
    if (!z) continue;
    if (z->empty()) {
      undecided = true;
      continue;
    }
    size_t tj = pi.empty() ? j : static_cast<size_t>(pi[j] - 1);
    return apply_word(c, path_word(ts[tj], a), *z);
  }
  if (undecided) return Bits{};
  return std::nullopt;
}

} // namespace oracle
