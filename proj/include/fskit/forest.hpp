#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fskit {

using Colour = std::string;

// Binary word over {0,1}, stored as a string of '0'/'1'.
using Word = std::string;

enum class End { First, Last };

class ColouredTree {
public:
  ColouredTree() = default; // the trivial tree I
  ColouredTree(Colour colour, ColouredTree left, ColouredTree right);

  static ColouredTree caret(const Colour &c) { return {c, {}, {}}; }

  bool is_leaf() const { return !node_; }
  const Colour &colour() const;
  const ColouredTree &left() const;
  const ColouredTree &right() const;

  int leaf_count() const;
  int caret_count() const { return leaf_count() - 1; }

  friend bool operator==(const ColouredTree &a, const ColouredTree &b);
  friend bool operator!=(const ColouredTree &a, const ColouredTree &b) { return !(a == b); }

  // Replace leaf i (1-based) by the tree t.
  ColouredTree graft(int i, const ColouredTree &t) const;

  std::string to_string() const;

private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct ColouredTree::Node {
  Colour colour;
  ColouredTree left, right;
  int leaves;
};

inline int ColouredTree::leaf_count() const { return node_ ? node_->leaves : 1; }

struct Caret {
  Colour colour;
  int leaf = 1;
  friend bool operator==(const Caret &, const Caret &) = default;
};

using CaretWord = std::vector<Caret>;

struct Forest {
  std::vector<ColouredTree> trees;

  static Forest trivial(int width);
  int roots() const { return static_cast<int>(trees.size()); }
  int leaves() const;
  friend bool operator==(const Forest &, const Forest &) = default;
};

struct Permutation {
  std::vector<int> images; // images[j-1] = π(j)

  static Permutation identity(int n);
  int size() const { return static_cast<int>(images.size()); }
  int operator()(int j) const { return images.at(j - 1); }
  bool is_identity() const;
  bool is_cyclic() const; // a rotation j ↦ j+k mod n
  Permutation inverse() const;
  std::string to_string() const;
  friend bool operator==(const Permutation &, const Permutation &) = default;
};

ColouredTree build_tree(const CaretWord &w);
// Preorder read-back; build_tree(read_back(t)) == t.
CaretWord read_back(const ColouredTree &t);

Word leaf_address(const ColouredTree &t, int i);
std::vector<Word> leaf_addresses(const ColouredTree &t);

struct PathStep {
  Colour colour;
  int direction;
  friend bool operator==(const PathStep &, const PathStep &) = default;
};
std::vector<PathStep> leaf_path(const ColouredTree &t, int i);

Forest compose(const Forest &f, const Forest &g);
Forest tensor(const Forest &f, const Forest &g);

std::vector<Colour> prune_word(const ColouredTree &t, End end);

struct NarrowTree {
  ColouredTree shape;
  int leaf; // 1-based index of the distinguished leaf
};
NarrowTree narrow_tree(const Word &address, const Colour &colour = "a");

CaretWord vine_decomposition(CaretWord w);

std::map<Colour, int> colour_count(const ColouredTree &t);
std::map<Colour, int> colour_count(const Forest &f);

ColouredTree right_vine(int carets, const Colour &c);
ColouredTree left_vine(int carets, const Colour &c);

CaretWord parse_caret_word(const std::string &text);
std::string format_caret_word(const CaretWord &w);
Permutation parse_permutation(const std::string &text);

bool is_prefix(const Word &p, const Word &w);

} // namespace fskit
