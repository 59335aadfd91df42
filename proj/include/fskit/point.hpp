#pragma once

#include <string>

#include "fskit/forest.hpp"

namespace fskit {

// The point pre·(period)^∞ of the Cantor space, kept in normal form:
// primitive period and minimal preperiod.
class EvPeriodicWord {
public:
  EvPeriodicWord() : EvPeriodicWord("", "0") {}
  EvPeriodicWord(Word pre, Word period);

  static EvPeriodicWord parse(const std::string &text); // "u(v)"
  static EvPeriodicWord omega() { return {"", "1"}; }
  static EvPeriodicWord origin() { return {"", "0"}; }

  const Word &pre() const { return pre_; }
  const Word &period() const { return period_; }

  char letter(size_t k) const;
  Word prefix(size_t n) const;
  bool starts_with(const Word &w) const;
  EvPeriodicWord drop(size_t n) const;
  EvPeriodicWord prepend(const Word &w) const { return {w + pre_, period_}; }
  bool has_tail_ones() const { return period_ == "1"; }
  // Number of leading 1s; only for points without tail 1^∞.
  size_t leading_ones() const;

  std::string to_string() const { return pre_ + "(" + period_ + ")"; }

  friend bool operator==(const EvPeriodicWord &, const EvPeriodicWord &) = default;
  friend auto operator<=>(const EvPeriodicWord &, const EvPeriodicWord &) = default;

private:
  Word pre_, period_;
};

bool tail_equivalent(const EvPeriodicWord &p, const EvPeriodicWord &q);

// Lexicographic comparison of the underlying sequences.
int compare_points(const EvPeriodicWord &p, const EvPeriodicWord &q);

bool is_binary_word(const std::string &w);

} // namespace fskit
