#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fskit/forest.hpp"

namespace fskit {

using BigInt = boost::multiprecision::cpp_int;

struct Relation {
  ColouredTree u, v;
};

struct SkeinPresentation {
  std::vector<Colour> colours; // colours[0] is the distinguished colour a
  std::vector<Relation> relations;
  std::string name;
};

SkeinPresentation parse_presentation(const std::string &text, const std::string &name = "");
SkeinPresentation load_presentation(const std::string &path);
std::string format_presentation(const SkeinPresentation &p);

// Throws LeafCountMismatch / UnknownColour on the first violation.
void validate(const SkeinPresentation &p);

// The supported class <a,b | x(a) = ρ(b)>.
struct RightVineClass {
  Colour a, b;
  ColouredTree x;
  int L = 0;             // depth of the first leaf of x
  int R = 0;             // depth of the last leaf of x
  int M = 0;             // caret count of x
  int n = 0;             // leaf count of x
  std::vector<Word> leaves;

  bool x_is_rho() const;
  const Word &leaf(int k) const { return leaves.at(static_cast<size_t>(k - 1)); }
};

std::optional<RightVineClass> classify(const SkeinPresentation &p);
// classify or throw UnsupportedClass
RightVineClass require_class(const SkeinPresentation &p);

struct AbelianInvariants {
  int rank = 0;
  std::vector<BigInt> torsion; // d1 | d2 | ..., each >= 2
  std::string to_string() const;
  friend bool operator==(const AbelianInvariants &, const AbelianInvariants &) = default;
};

AbelianInvariants abelianisation(const SkeinPresentation &p);

struct GroupPresentationOut {
  std::vector<Colour> generators;
  std::vector<std::pair<std::vector<Colour>, std::vector<Colour>>> relators;
  std::string to_string() const;
};

GroupPresentationOut germ_presentation(const SkeinPresentation &p, End end);

using Matrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
  Matrix U, D, V; // U * A * V == D
};

SmithForm smith_normal_form(const Matrix &A);
Matrix multiply(const Matrix &A, const Matrix &B);
BigInt determinant(const Matrix &A);

// Words over the two colours, written with letters 'a' and 'b'.
bool good_word_check(const RightVineClass &c, const std::string &w);
// Non-trivial good words of length <= max_len in length-then-lex order.
std::vector<std::string> enumerate_good_words(const RightVineClass &c, int max_len);

// Family constructors used by tests, the CLI corpus and the python module.
SkeinPresentation g_family(const ColouredTree &t);   // Y(a)(t(a) ⊗ I) = ρ(b)
SkeinPresentation j_family(const ColouredTree &s);   // Y(a)(s(a) ⊗ Y(a)) = ρ(b)
SkeinPresentation h_family(int k);                   // k colours
SkeinPresentation right_vine_presentation(const ColouredTree &x);

} // namespace fskit
