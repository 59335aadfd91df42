#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fskit/eppm.hpp"
#include "fskit/presentation.hpp"

namespace fskit {

enum class Gen { A0, A1, B0, B1 };

struct SignedLetter {
  Gen gen;
  int exp = 1; // +1 or -1
  friend bool operator==(const SignedLetter &, const SignedLetter &) = default;
};
using SignedWord = std::vector<SignedLetter>;

struct Fraction {
  ColouredTree t;
  Permutation pi; // empty means identity
  ColouredTree s;
};

using ElementExpr = std::variant<SignedWord, Fraction>;

Eppm caret_map(const RightVineClass &c, const Colour &colour, int direction);
Eppm caret_map(const RightVineClass &c, Gen g);

Eppm evaluate_word(const RightVineClass &c, const SignedWord &w);
SignedWord inverse_word(const SignedWord &w);

// β(t,i): composition of pointed caret maps along the root-to-leaf path.
Eppm beta(const RightVineClass &c, const ColouredTree &t, int leaf);
Eppm evaluate_fraction(const RightVineClass &c, const Fraction &fr);
Eppm evaluate_element(const RightVineClass &c, const ElementExpr &e);

std::optional<long> is_power_of_A1(const Eppm &f);

bool is_order_preserving(const Eppm &f);
bool is_cyclic_order_preserving(const Eppm &f);

enum class ElementType { F, T, V };
ElementType classify_element(const Eppm &f);
const char *to_string(ElementType t);

struct FixedPointFamily {
  Word dom_base;              // accumulates at dom_base·1^∞
  std::vector<EvPeriodicWord> first; // first members, in layer order
  bool infinite = false;
};

struct Support {
  std::vector<Word> fixed_cones;          // pieces acting as the identity
  std::vector<Family> fixed_families;     // families acting as the identity
  std::vector<EvPeriodicWord> fixed_points;
  std::vector<FixedPointFamily> fixed_point_families;
  std::vector<Word> moved_cones;          // domains of non-identity pieces
  std::vector<Word> moved_family_bases;   // bases of non-identity families
  bool everything_fixed() const { return moved_cones.empty() && moved_family_bases.empty(); }
};

Support support(const Eppm &f);

// True iff near its spine the family is a single prefix replacement.
bool locally_prefix(const Family &F);

std::vector<EvPeriodicWord> singular_points(const RightVineClass &c, const Eppm &f);

struct GermDescriptor {
  enum Kind { Prefix, Periodic } kind = Prefix;
  Word point, image; // the germ at point·1^∞ with image·1^∞
  long shift = 0;    // Prefix: point·1^k·z ↦ image·1^(k+shift)·z for large k
  long dom_step = 0, ran_step = 0;
  struct Item {
    long dpos;
    Word dtail;
    long rpos;
    Word rtail;
    friend auto operator<=>(const Item &, const Item &) = default;
  };
  std::vector<Item> items; // Periodic: branch positions relative to point/image
  bool is_identity() const { return kind == Prefix && point == image && shift == 0; }
  std::string to_string() const;
  friend bool operator==(const GermDescriptor &, const GermDescriptor &) = default;
};

GermDescriptor germ_at(const Eppm &f, const EvPeriodicWord &p);
bool germ_equal(const Eppm &f, const Eppm &g, const EvPeriodicWord &p);

enum class Ordering { Less, Equal, Greater };
const char *to_string(Ordering o);
Ordering bi_order_compare(const Eppm &f, const Eppm &g);

// Closed-form witness check for classes with R_x = 2 (x = Y(s ⊗ Y)).
bool certificate_check(const RightVineClass &c, const std::string &w);

Eppm kappa_omega(const RightVineClass &c, const std::string &w);

} // namespace fskit
