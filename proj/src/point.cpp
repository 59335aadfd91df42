#include "fskit/point.hpp"

#include <algorithm>

#include "fskit/errors.hpp"

namespace fskit {

bool is_binary_word(const std::string &w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

EvPeriodicWord::EvPeriodicWord(Word pre, Word period) : pre_(std::move(pre)), period_(std::move(period)) {
  if (period_.empty()) throw ParseError("empty period");
  if (!is_binary_word(pre_) || !is_binary_word(period_)) throw ParseError("point letters must be 0 or 1");
  size_t n = period_.size();
  for (size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (size_t k = p; k < n && ok; ++k) ok = period_[k] == period_[k - p];
    if (ok) {
      period_.resize(p);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == period_.back()) {
    pre_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

EvPeriodicWord EvPeriodicWord::parse(const std::string &text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')' || s.find('(', open + 1) != std::string::npos)
    throw ParseError("point literal must look like u(v): '" + text + "'");
  Word u = s.substr(0, open), v = s.substr(open + 1, s.size() - open - 2);
  if (v.empty() || !is_binary_word(u) || !is_binary_word(v)) throw ParseError("bad point literal '" + text + "'");
  return {u, v};
}

char EvPeriodicWord::letter(size_t k) const {
  if (k < pre_.size()) return pre_[k];
  return period_[(k - pre_.size()) % period_.size()];
}

Word EvPeriodicWord::prefix(size_t n) const {
  Word w;
  w.reserve(n);
  for (size_t k = 0; k < n; ++k) w += letter(k);
  return w;
}

bool EvPeriodicWord::starts_with(const Word &w) const {
  for (size_t k = 0; k < w.size(); ++k)
    if (letter(k) != w[k]) return false;
  return true;
}

EvPeriodicWord EvPeriodicWord::drop(size_t n) const {
  if (n <= pre_.size()) return {pre_.substr(n), period_};
  size_t r = (n - pre_.size()) % period_.size();
  return {"", period_.substr(r) + period_.substr(0, r)};
}

size_t EvPeriodicWord::leading_ones() const {
  if (has_tail_ones() && pre_.find('0') == std::string::npos) throw UndefinedAt("point is 1^infinity");
  size_t k = 0;
  while (letter(k) == '1') ++k;
  return k;
}

bool tail_equivalent(const EvPeriodicWord &p, const EvPeriodicWord &q) {
  const Word &a = p.period(), &b = q.period();
  return a.size() == b.size() && (a + a).find(b) != std::string::npos;
}

int compare_points(const EvPeriodicWord &p, const EvPeriodicWord &q) {
  size_t bound = std::max(p.pre().size(), q.pre().size()) + p.period().size() * q.period().size() + 1;
  for (size_t k = 0; k < bound; ++k) {
    char a = p.letter(k), b = q.letter(k);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

} // namespace fskit
