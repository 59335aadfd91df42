#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fskit/forest.hpp"
#include "fskit/point.hpp"

namespace fskit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// dom·z ↦ ran·z on the cone dom·𝒞
struct Piece {
  Word dom, ran;
  friend auto operator<=>(const Piece &, const Piece &) = default;
};

struct Block {
  Word dom, ran;
  friend auto operator<=>(const Block &, const Block &) = default;
};

// Generates dom_base·1^{m·dom_step}·b.dom ↦ ran_base·1^{m·ran_step}·b.ran for m >= 0,
// plus dom_base·1^∞ ↦ ran_base·1^∞.  Every block word contains a 0.
struct Family {
  Word dom_base, ran_base;
  int dom_step = 1, ran_step = 1;
  std::vector<Block> blocks;

  Piece generated(long m, size_t j) const;
  friend auto operator<=>(const Family &, const Family &) = default;
};

// dom·1^∞ ↦ ran·1^∞, words stored without trailing 1s.
struct Limit {
  Word dom, ran;
  friend auto operator<=>(const Limit &, const Limit &) = default;
};

struct Eppm {
  std::vector<Piece> pieces;
  std::vector<Family> families;
  std::vector<Limit> limits;

  static Eppm identity() { return piece("", ""); }
  static Eppm piece(const Word &dom, const Word &ran);
  static Eppm empty() { return {}; }

  bool is_empty() const { return pieces.empty() && families.empty() && limits.empty(); }
  size_t atom_count() const { return pieces.size() + families.size() + limits.size(); }
  std::string to_string() const;

  friend bool operator==(const Eppm &, const Eppm &) = default; // representation identity
};

// Caps guarding the unfolding used by compose.
inline constexpr long kMaxStep = 1 << 12;
inline constexpr long kMaxLayers = 1 << 14;

Eppm compose(const Eppm &f, const Eppm &g); // f ∘ g
Eppm invert(const Eppm &f);
Eppm canonicalize(Eppm f);
Eppm union_of(const std::vector<Eppm> &parts);

EvPeriodicWord evaluate(const Eppm &f, const EvPeriodicWord &p);
std::optional<EvPeriodicWord> try_evaluate(const Eppm &f, const EvPeriodicWord &p);

// Measure of the open part of the domain (union of generated cones).
Rational domain_measure(const Eppm &f);
Rational range_measure(const Eppm &f);

// True iff every atom acts as the identity on its cones.
bool is_identity_on_domain(const Eppm &f);

// Spine points of families and isolated limits on the domain side.
std::vector<EvPeriodicWord> domain_spines(const Eppm &f);

bool equals(const Eppm &f, const Eppm &g);
bool is_total(const Eppm &f);
bool is_surjective(const Eppm &f);

std::string word_text(const Word &w); // "e" for the empty word

Word ones(long k);
Word strip_ones(const Word &w);

} // namespace fskit
