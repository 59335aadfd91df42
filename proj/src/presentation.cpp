#include "fskit/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fskit/errors.hpp"

namespace fskit {

namespace {

std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ColouredTree recolour(const ColouredTree &t, const Colour &c) {
  if (t.is_leaf()) return t;
  return {c, recolour(t.left(), c), recolour(t.right(), c)};
}

bool monochrome(const ColouredTree &t, const Colour &c) {
  auto cc = colour_count(t);
  return cc.empty() || (cc.size() == 1 && cc.begin()->first == c);
}

} // namespace

SkeinPresentation parse_presentation(const std::string &text, const std::string &name) {
  SkeinPresentation p;
  p.name = name;
  std::istringstream in(text);
  std::string line;
  bool have_colours = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string where = " (line " + std::to_string(lineno) + ")";
    if (kw == "colors") {
      if (have_colours) throw ParseError("duplicate colors line" + where);
      std::string c;
      while (ls >> c) {
        if (!std::all_of(c.begin(), c.end(), [](char ch) { return ch >= 'a' && ch <= 'z'; }))
          throw ParseError("bad colour name '" + c + "'" + where);
        p.colours.push_back(c);
      }
      if (p.colours.empty()) throw ParseError("colors line lists no colours" + where);
      have_colours = true;
    } else if (kw == "rel") {
      if (!have_colours) throw ParseError("rel before colors" + where);
      std::string rest;
      std::getline(ls, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos || rest.find('=', eq + 1) != std::string::npos)
        throw ParseError("relation needs exactly one '='" + where);
      try {
        Relation r{build_tree(parse_caret_word(rest.substr(0, eq))),
                   build_tree(parse_caret_word(rest.substr(eq + 1)))};
        p.relations.push_back(std::move(r));
      } catch (const IndexOutOfRange &e) {
        throw ParseError(std::string(e.what()) + where);
      } catch (const ParseError &e) {
        throw ParseError(std::string(e.what()) + where);
      }
    } else {
      throw ParseError("unknown directive '" + kw + "'" + where);
    }
  }
  if (!have_colours) throw ParseError("missing colors line");
  return p;
}

SkeinPresentation load_presentation(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str(), path);
}

std::string format_presentation(const SkeinPresentation &p) {
  std::string s = "colors";
  for (const auto &c : p.colours) s += " " + c;
  s += "\n";
  for (const auto &r : p.relations)
    s += "rel " + format_caret_word(read_back(r.u)) + " = " + format_caret_word(read_back(r.v)) + "\n";
  return s;
}

void validate(const SkeinPresentation &p) {
  std::set<Colour> cs;
  for (const auto &c : p.colours) {
    if (c.empty()) throw UnknownColour("empty colour name");
    if (!cs.insert(c).second) throw UnknownColour("colour '" + c + "' declared twice");
  }
  for (size_t k = 0; k < p.relations.size(); ++k) {
    const auto &r = p.relations[k];
    for (const auto *t : {&r.u, &r.v})
      for (const auto &[c, n] : colour_count(*t))
        if (!cs.count(c)) throw UnknownColour("relation " + std::to_string(k + 1) + " uses undeclared colour '" + c + "'");
    if (r.u.leaf_count() != r.v.leaf_count())
      throw LeafCountMismatch("relation " + std::to_string(k + 1) + ": " + std::to_string(r.u.leaf_count()) +
                              " vs " + std::to_string(r.v.leaf_count()) + " leaves");
  }
}

bool RightVineClass::x_is_rho() const { return x == right_vine(M, a); }

std::optional<RightVineClass> classify(const SkeinPresentation &p) {
  if (p.colours.size() != 2 || p.relations.size() != 1) return std::nullopt;
  const Colour &a = p.colours[0], &b = p.colours[1];
  ColouredTree u = p.relations[0].u, v = p.relations[0].v;
  if (!(monochrome(u, a) && v == right_vine(v.caret_count(), b))) std::swap(u, v);
  if (!(monochrome(u, a) && v == right_vine(v.caret_count(), b))) return std::nullopt;
  if (u.leaf_count() != v.leaf_count() || u.caret_count() < 1) return std::nullopt;
  RightVineClass c;
  c.a = a;
  c.b = b;
  c.x = u;
  c.M = u.caret_count();
  c.n = u.leaf_count();
  c.leaves = leaf_addresses(u);
  c.L = static_cast<int>(c.leaves.front().size());
  c.R = static_cast<int>(c.leaves.back().size());
  return c;
}

RightVineClass require_class(const SkeinPresentation &p) {
  auto c = classify(p);
  if (!c) throw UnsupportedClass("presentation is not of the form <a,b | x(a) = right vine(b)>");
  return *c;
}

std::string AbelianInvariants::to_string() const {
  std::vector<std::string> parts;
  for (const auto &d : torsion) parts.push_back("Z/" + d.str());
  if (rank == 1) parts.push_back("Z");
  if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) s += " x " + parts[k];
  return s;
}

AbelianInvariants abelianisation(const SkeinPresentation &p) {
  validate(p);
  size_t n = p.colours.size();
  auto index = [&](const Colour &c) {
    return static_cast<size_t>(std::find(p.colours.begin(), p.colours.end(), c) - p.colours.begin());
  };
  Matrix A;
  for (const auto &r : p.relations) {
    std::vector<BigInt> row(n, 0);
    for (const auto &[c, k] : colour_count(r.u)) row[index(c)] += k;
    for (const auto &[c, k] : colour_count(r.v)) row[index(c)] -= k;
    A.push_back(row);
  }
  std::vector<BigInt> ea(n, 0);
  ea[0] = 1;
  A.push_back(ea);
  SmithForm s = smith_normal_form(A);
  AbelianInvariants out;
  int nonzero = 0;
  for (size_t k = 0; k < std::min(A.size(), n); ++k) {
    const BigInt &d = s.D[k][k];
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) out.torsion.push_back(d);
  }
  out.rank = static_cast<int>(n) - nonzero;
  return out;
}

std::string GroupPresentationOut::to_string() const {
  bool spaced = std::any_of(generators.begin(), generators.end(), [](const Colour &c) { return c.size() > 1; });
  auto word = [&](const std::vector<Colour> &w) {
    if (w.empty()) return std::string("1");
    std::string s;
    for (size_t k = 0; k < w.size();) {
      size_t e = k;
      while (e < w.size() && w[e] == w[k]) ++e;
      if (!s.empty() && spaced) s += ' ';
      s += w[k];
      if (e - k > 1) s += "^" + std::to_string(e - k);
      k = e;
    }
    return s;
  };
  std::string s = "<";
  for (size_t k = 0; k < generators.size(); ++k) s += (k ? "," : "") + generators[k];
  s += " |";
  for (size_t k = 0; k < relators.size(); ++k)
    s += (k ? ", " : " ") + word(relators[k].first) + " = " + word(relators[k].second);
  return s + ">";
}

GroupPresentationOut germ_presentation(const SkeinPresentation &p, End end) {
  validate(p);
  GroupPresentationOut g;
  g.generators = p.colours;
  for (const auto &r : p.relations) g.relators.emplace_back(prune_word(r.u, end), prune_word(r.v, end));
  return g;
}

bool good_word_check(const RightVineClass &c, const std::string &w) {
  if (w.empty()) return false;
  size_t i = 0;
  while (i < w.size() && w[i] == 'a') ++i;
  if (i == w.size()) return true;
  std::string rest = w.substr(i);
  if (rest.find_first_not_of("ab") != std::string::npos) return false;
  if (rest.find(std::string(static_cast<size_t>(c.R), 'a')) != std::string::npos) return false;
  if (rest.find(std::string(static_cast<size_t>(c.M), 'b')) != std::string::npos) return false;
  return true;
}

std::vector<std::string> enumerate_good_words(const RightVineClass &c, int max_len) {
  std::vector<std::string> out;
  std::string w;
  // run = length of the current trailing run inside w' (0 while still in the a-prefix)
  std::function<void(size_t, bool, char, int)> dfs = [&](size_t len, bool started, char last, int run) {
    if (w.size() == len) {
      if (started) out.push_back(w);
      return;
    }
    for (char ch : {'a', 'b'}) {
      bool st = started;
      int r = 1;
      if (!started) {
        if (ch == 'a') {
          w.push_back(ch);
          dfs(len, false, 'a', 0);
          w.pop_back();
          continue;
        }
        st = true;
      } else if (ch == last) {
        r = run + 1;
      }
      if (ch == 'a' && r >= c.R) continue;
      if (ch == 'b' && r >= c.M) continue;
      w.push_back(ch);
      dfs(len, st, ch, r);
      w.pop_back();
    }
  };
  for (int len = 1; len <= max_len; ++len) dfs(static_cast<size_t>(len), false, 0, 0);
  return out;
}

SkeinPresentation right_vine_presentation(const ColouredTree &x) {
  SkeinPresentation p;
  p.colours = {"a", "b"};
  ColouredTree xa = recolour(x, "a");
  p.relations.push_back({xa, right_vine(xa.caret_count(), "b")});
  return p;
}

SkeinPresentation g_family(const ColouredTree &t) {
  return right_vine_presentation(ColouredTree("a", t, {}));
}

SkeinPresentation j_family(const ColouredTree &s) {
  return right_vine_presentation(ColouredTree("a", s, ColouredTree::caret("a")));
}

SkeinPresentation h_family(int k) {
  if (k < 1 || k > 26) throw IndexOutOfRange("H_k needs 1 <= k <= 26");
  SkeinPresentation p;
  for (int i = 0; i < k; ++i) p.colours.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Colour &ci = p.colours[static_cast<size_t>(i)], &cj = p.colours[static_cast<size_t>(j)];
      p.relations.push_back({build_tree({{ci, 1}, {cj, 2}}), build_tree({{cj, 1}, {ci, 1}})});
    }
  return p;
}

} // namespace fskit
