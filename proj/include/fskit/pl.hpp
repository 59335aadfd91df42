#pragma once

#include <string>
#include <vector>

#include "fskit/eppm.hpp"

namespace fskit {

// numerator / 2^exponent, kept with an odd numerator unless the exponent is 0
class Dyadic {
public:
  Dyadic() = default;
  Dyadic(BigInt num, unsigned exp = 0);
  static Dyadic pow2(long e); // 2^e, e may be negative
  static Dyadic of_word(const Word &w); // j(w·0^∞)

  const BigInt &num() const { return num_; }
  unsigned exp() const { return exp_; }
  Rational to_rational() const;
  std::string to_string() const; // "p/q" or "p"

  Dyadic operator+(const Dyadic &o) const;
  Dyadic operator-(const Dyadic &o) const;
  Dyadic operator*(const Dyadic &o) const;
  friend bool operator==(const Dyadic &, const Dyadic &) = default;
  friend bool operator<(const Dyadic &a, const Dyadic &b) { return a.to_rational() < b.to_rational(); }
  friend bool operator<=(const Dyadic &a, const Dyadic &b) { return !(b < a); }

private:
  BigInt num_ = 0;
  unsigned exp_ = 0;
};

Rational j_value(const EvPeriodicWord &p); // Σ p_k / 2^k

struct PlPiece {
  Dyadic left, right;
  int slope_exp = 0;
  Dyadic intercept;
  Dyadic value_at(const Dyadic &x) const { return Dyadic::pow2(slope_exp) * x + intercept; }
  friend bool operator==(const PlPiece &, const PlPiece &) = default;
};

struct Accumulation {
  Dyadic point, image;
  friend bool operator==(const Accumulation &, const Accumulation &) = default;
};

struct PlMap {
  enum Kind { Interval, Circle } kind = Interval;
  std::vector<PlPiece> pieces;
  std::vector<Accumulation> accumulation_points;
  int truncation_depth = 12;
};

PlMap to_interval_map(const Eppm &f, int depth = 12);
PlMap to_circle_map(const Eppm &f, int depth = 12);

struct Breakpoint {
  Dyadic point;
  int left_slope_exp, right_slope_exp;
};
std::vector<Breakpoint> breakpoints(const PlMap &m);

struct FixedSet {
  Rational left, right; // equal for a point
  bool right_closed = true;
  bool is_point() const { return left == right; }
  std::string to_string() const;
};
std::vector<FixedSet> fixed_points(const PlMap &m);

std::string emit_csv(const PlMap &m);
PlMap parse_csv(const std::string &text);
std::string emit_svg(const PlMap &m, int width = 600, int height = 600);

// Fixed-precision decimal with round-half-even, used for SVG coordinates.
std::string decimal9(const Rational &x);

} // namespace fskit
