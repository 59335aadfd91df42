#include "fskit/syntax.hpp"

#include <sstream>

#include "fskit/errors.hpp"

namespace fskit {

namespace {

const char *gen_name(Gen g) {
  switch (g) {
  case Gen::A0: return "A0";
  case Gen::A1: return "A1";
  case Gen::B0: return "B0";
  case Gen::B1: return "B1";
  }
  return "?";
}

} // namespace

SignedWord parse_signed_word(const std::string &text) {
  SignedWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int exp = 1;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      exp = -1;
      tok.resize(tok.size() - 3);
    }
    Gen g;
    if (tok == "A0") g = Gen::A0;
    else if (tok == "A1") g = Gen::A1;
    else if (tok == "B0") g = Gen::B0;
    else if (tok == "B1") g = Gen::B1;
    else throw ParseError("unknown generator '" + tok + "'");
    w.push_back({g, exp});
  }
  return w;
}

std::string format_signed_word(const SignedWord &w) {
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += gen_name(w[k].gen);
    if (w[k].exp < 0) s += "^-1";
  }
  return s;
}

Fraction parse_fraction(const std::string &text) {
  auto b = text.find('['), e = text.rfind(']');
  if (b == std::string::npos || e == std::string::npos || e < b) throw ParseError("fraction must be [ t | perm | s ]");
  if (text.find_first_not_of(" \t", e + 1) != std::string::npos || text.find_first_not_of(" \t") != b)
    throw ParseError("trailing text around fraction");
  std::string body = text.substr(b + 1, e - b - 1);
  auto p1 = body.find('|');
  auto p2 = p1 == std::string::npos ? p1 : body.find('|', p1 + 1);
  if (p2 == std::string::npos || body.find('|', p2 + 1) != std::string::npos)
    throw ParseError("fraction must have exactly three parts separated by '|'");
  Fraction f;
  try {
    f.t = build_tree(parse_caret_word(body.substr(0, p1)));
    f.s = build_tree(parse_caret_word(body.substr(p2 + 1)));
  } catch (const IndexOutOfRange &ex) {
    throw ParseError(ex.what());
  }
  f.pi = parse_permutation(body.substr(p1 + 1, p2 - p1 - 1));
  if (f.t.leaf_count() != f.s.leaf_count()) throw ParseError("fraction trees have different leaf counts");
  if (f.pi.size() && f.pi.size() != f.s.leaf_count()) throw ParseError("permutation size differs from the leaf count");
  return f;
}

std::string format_fraction(const Fraction &f) {
  return "[" + format_caret_word(read_back(f.t)) + " | " + (f.pi.size() ? f.pi.to_string() : "id") + " | " +
         format_caret_word(read_back(f.s)) + "]";
}

ElementExpr parse_element(const std::string &text) {
  auto k = text.find_first_not_of(" \t");
  if (k != std::string::npos && text[k] == '[') return parse_fraction(text);
  return parse_signed_word(text);
}

} // namespace fskit
