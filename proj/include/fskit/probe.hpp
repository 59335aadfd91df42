#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fskit/dynamics.hpp"

namespace fskit {

struct ProbeReport {
  enum Outcome { CollapseFound, NoCollapseUpTo, Inconclusive } outcome = NoCollapseUpTo;
  std::string presentation;
  int max_len = 0;
  std::string collapse_word;
  long collapse_j = 0;
  long tested = 0;
  std::vector<std::string> inconclusive;
  double seconds = 0;

  std::string outcome_label() const;
  std::string to_json() const; // stable schema, see README
};

// Tests every non-trivial good word of length <= max_len in length-then-lex
// order and reports the first word whose κ_ω image is a power of A1.
// The result does not depend on jobs.
ProbeReport probe(const RightVineClass &c, int max_len, int jobs = 1, const std::string &name = "");

} // namespace fskit
