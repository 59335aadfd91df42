#pragma once

#include <random>
#include <string>
#include <vector>

#include "fskit/dynamics.hpp"
#include "fskit/presentation.hpp"
#include "fskit/syntax.hpp"
#include "oracle.hpp"

namespace testing_support {

using namespace fskit;

struct Flagship {
  std::string name, text, x_word;
};

inline std::vector<Flagship> flagships() {
  return {{"nonsimple", "colors a b\nrel a1 a1 a3 a4 = b1 b2 b3 b4\n", "a1 a1 a3 a4"},
          {"j_caret", "colors a b\nrel a1 a1 a3 = b1 b2 b3\n", "a1 a1 a3"}};
}

inline RightVineClass class_of(const std::string &text) { return require_class(parse_presentation(text)); }

inline EvPeriodicWord random_point(std::mt19937_64 &rng, int max_pre = 8, int max_per = 4) {
  std::uniform_int_distribution<int> bit(0, 1), pre_len(0, max_pre), per_len(1, max_per);
  Word pre, per;
  for (int k = pre_len(rng); k > 0; --k) pre += bit(rng) ? '1' : '0';
  for (int k = per_len(rng); k > 0; --k) per += bit(rng) ? '1' : '0';
  return {pre, per};
}

inline EvPeriodicWord random_point_not_tail_one(std::mt19937_64 &rng) {
  for (;;) {
    auto p = random_point(rng);
    if (!p.has_tail_ones()) return p;
  }
}

struct RandomWord {
  SignedWord word;
  std::vector<oracle::Letter> letters;
};

inline RandomWord random_word(std::mt19937_64 &rng, int max_len) {
  std::uniform_int_distribution<int> gen(0, 3), sign(0, 1), len(1, max_len);
  RandomWord w;
  for (int k = len(rng); k > 0; --k) {
    int g = gen(rng), e = sign(rng) ? 1 : -1;
    w.word.push_back({static_cast<Gen>(g), e});
    w.letters.push_back({static_cast<oracle::G>(g), e});
  }
  return w;
}

inline std::string random_caret_word(std::mt19937_64 &rng, int carets, const std::string &colours = "ab") {
  std::string s;
  std::uniform_int_distribution<size_t> col(0, colours.size() - 1);
  for (int k = 0; k < carets; ++k) {
    std::uniform_int_distribution<int> leaf(1, k + 1);
    if (!s.empty()) s += ' ';
    s += colours[col(rng)] + std::to_string(leaf(rng));
  }
  return s;
}

struct RandomFraction {
  std::string t, s, text;
  std::vector<int> pi;
};

// permutation kinds: 0 identity, 1 rotation, 2 arbitrary
inline RandomFraction random_fraction(std::mt19937_64 &rng, int max_carets, int kind = 2) {
  std::uniform_int_distribution<int> k(0, max_carets);
  int n = k(rng);
  RandomFraction f{random_caret_word(rng, n), random_caret_word(rng, n), "", {}};
  std::string perm = "id";
  if (kind > 0) {
    for (int j = 1; j <= n + 1; ++j) f.pi.push_back(j);
    if (kind == 1)
      std::rotate(f.pi.begin(), f.pi.begin() + std::uniform_int_distribution<int>(0, n)(rng), f.pi.end());
    else
      std::shuffle(f.pi.begin(), f.pi.end(), rng);
    perm.clear();
    for (int v : f.pi) perm += (perm.empty() ? "" : " ") + std::to_string(v);
  }
  f.text = "[" + f.t + " | " + perm + " | " + f.s + "]";
  return f;
}

} // namespace testing_support
