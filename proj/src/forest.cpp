#include "fskit/forest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fskit/errors.hpp"

namespace fskit {

ColouredTree::ColouredTree(Colour colour, ColouredTree left, ColouredTree right) {
  int leaves = left.leaf_count() + right.leaf_count();
  node_ = std::make_shared<const Node>(Node{std::move(colour), std::move(left), std::move(right), leaves});
}

const Colour &ColouredTree::colour() const {
  if (!node_) throw IndexOutOfRange("trivial tree has no colour");
  return node_->colour;
}

const ColouredTree &ColouredTree::left() const {
  if (!node_) throw IndexOutOfRange("trivial tree has no children");
  return node_->left;
}

const ColouredTree &ColouredTree::right() const {
  if (!node_) throw IndexOutOfRange("trivial tree has no children");
  return node_->right;
}

bool operator==(const ColouredTree &a, const ColouredTree &b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->leaves == b.node_->leaves && a.node_->colour == b.node_->colour &&
         a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

ColouredTree ColouredTree::graft(int i, const ColouredTree &t) const {
  if (i < 1 || i > leaf_count())
    throw IndexOutOfRange("leaf " + std::to_string(i) + " of " + std::to_string(leaf_count()));
  if (!node_) return t;
  int nl = node_->left.leaf_count();
  if (i <= nl) return {node_->colour, node_->left.graft(i, t), node_->right};
  return {node_->colour, node_->left, node_->right.graft(i - nl, t)};
}

std::string ColouredTree::to_string() const {
  if (!node_) return "I";
  if (node_->left.is_leaf() && node_->right.is_leaf()) return "Y(" + node_->colour + ")";
  return "Y(" + node_->colour + ")(" + node_->left.to_string() + "," + node_->right.to_string() + ")";
}

Forest Forest::trivial(int width) {
  if (width < 1) throw ShapeMismatch("forests are non-empty");
  return Forest{std::vector<ColouredTree>(static_cast<size_t>(width))};
}

int Forest::leaves() const {
  int n = 0;
  for (const auto &t : trees) n += t.leaf_count();
  return n;
}

Permutation Permutation::identity(int n) {
  Permutation p;
  for (int j = 1; j <= n; ++j) p.images.push_back(j);
  return p;
}

bool Permutation::is_identity() const {
  for (int j = 0; j < size(); ++j)
    if (images[j] != j + 1) return false;
  return true;
}

bool Permutation::is_cyclic() const {
  int n = size();
  if (n == 0) return true;
  int k = images[0] - 1;
  for (int j = 0; j < n; ++j)
    if (images[j] - 1 != (j + k) % n) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images.assign(images.size(), 0);
  for (int j = 0; j < size(); ++j) p.images[images[j] - 1] = j + 1;
  return p;
}

std::string Permutation::to_string() const {
  if (is_identity()) return "id";
  std::string s;
  for (int j = 0; j < size(); ++j) {
    if (j) s += ' ';
    s += std::to_string(images[j]);
  }
  return s;
}

ColouredTree build_tree(const CaretWord &w) {
  ColouredTree t;
  for (const auto &c : w) t = t.graft(c.leaf, ColouredTree::caret(c.colour));
  return t;
}

namespace {

void read_back_into(const ColouredTree &t, int offset, CaretWord &out) {
  if (t.is_leaf()) return;
  out.push_back({t.colour(), offset});
  read_back_into(t.left(), offset, out);
  read_back_into(t.right(), offset + t.left().leaf_count(), out);
}

} // namespace

CaretWord read_back(const ColouredTree &t) {
  CaretWord w;
  read_back_into(t, 1, w);
  return w;
}

std::vector<PathStep> leaf_path(const ColouredTree &t, int i) {
  if (i < 1 || i > t.leaf_count())
    throw IndexOutOfRange("leaf " + std::to_string(i) + " of " + std::to_string(t.leaf_count()));
  std::vector<PathStep> path;
  const ColouredTree *cur = &t;
  while (!cur->is_leaf()) {
    int nl = cur->left().leaf_count();
    if (i <= nl) {
      path.push_back({cur->colour(), 0});
      cur = &cur->left();
    } else {
      path.push_back({cur->colour(), 1});
      i -= nl;
      cur = &cur->right();
    }
  }
  return path;
}

Word leaf_address(const ColouredTree &t, int i) {
  Word w;
  for (const auto &s : leaf_path(t, i)) w += static_cast<char>('0' + s.direction);
  return w;
}

std::vector<Word> leaf_addresses(const ColouredTree &t) {
  std::vector<Word> out;
  for (int i = 1; i <= t.leaf_count(); ++i) out.push_back(leaf_address(t, i));
  return out;
}

Forest compose(const Forest &f, const Forest &g) {
  if (f.leaves() != g.roots())
    throw ShapeMismatch("compose: " + std::to_string(f.leaves()) + " leaves vs " +
                        std::to_string(g.roots()) + " roots");
  Forest out;
  size_t k = 0;
  for (const auto &t : f.trees) {
    ColouredTree r = t;
    // graft right to left so earlier leaf indices stay valid
    int n = t.leaf_count();
    for (int i = n; i >= 1; --i) r = r.graft(i, g.trees[k + static_cast<size_t>(i - 1)]);
    k += static_cast<size_t>(n);
    out.trees.push_back(r);
  }
  return out;
}

Forest tensor(const Forest &f, const Forest &g) {
  Forest out = f;
  out.trees.insert(out.trees.end(), g.trees.begin(), g.trees.end());
  return out;
}

std::vector<Colour> prune_word(const ColouredTree &t, End end) {
  std::vector<Colour> w;
  const ColouredTree *cur = &t;
  while (!cur->is_leaf()) {
    w.push_back(cur->colour());
    cur = end == End::First ? &cur->left() : &cur->right();
  }
  return w;
}

NarrowTree narrow_tree(const Word &address, const Colour &colour) {
  ColouredTree t;
  for (auto it = address.rbegin(); it != address.rend(); ++it) {
    if (*it == '0')
      t = ColouredTree(colour, t, {});
    else
      t = ColouredTree(colour, {}, t);
  }
  int ones = static_cast<int>(std::count(address.begin(), address.end(), '1'));
  return {t, ones + 1};
}

CaretWord vine_decomposition(CaretWord w) {
  // x_i y_{j+1} -> y_j x_i for i < j; leftmost redex first
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t p = 0; p + 1 < w.size(); ++p) {
      int i = w[p].leaf, j = w[p + 1].leaf - 1;
      if (i < j) {
        Caret x = w[p];
        w[p] = {w[p + 1].colour, j};
        w[p + 1] = x;
        changed = true;
        break;
      }
    }
  }
  return w;
}

std::map<Colour, int> colour_count(const ColouredTree &t) {
  std::map<Colour, int> m;
  std::vector<const ColouredTree *> stack{&t};
  while (!stack.empty()) {
    const ColouredTree *c = stack.back();
    stack.pop_back();
    if (c->is_leaf()) continue;
    ++m[c->colour()];
    stack.push_back(&c->left());
    stack.push_back(&c->right());
  }
  return m;
}

std::map<Colour, int> colour_count(const Forest &f) {
  std::map<Colour, int> m;
  for (const auto &t : f.trees)
    for (const auto &[c, k] : colour_count(t)) m[c] += k;
  return m;
}

ColouredTree right_vine(int carets, const Colour &c) {
  ColouredTree t;
  for (int k = 0; k < carets; ++k) t = ColouredTree(c, {}, t);
  return t;
}

ColouredTree left_vine(int carets, const Colour &c) {
  ColouredTree t;
  for (int k = 0; k < carets; ++k) t = ColouredTree(c, t, {});
  return t;
}

CaretWord parse_caret_word(const std::string &text) {
  CaretWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    size_t k = 0;
    while (k < tok.size() && std::islower(static_cast<unsigned char>(tok[k]))) ++k;
    if (k == 0 || k == tok.size()) throw ParseError("bad caret token '" + tok + "'");
    for (size_t d = k; d < tok.size(); ++d)
      if (!std::isdigit(static_cast<unsigned char>(tok[d]))) throw ParseError("bad caret token '" + tok + "'");
    if (tok.size() - k > 6) throw ParseError("caret index too large in '" + tok + "'");
    int idx = std::stoi(tok.substr(k));
    if (idx < 1) throw ParseError("caret index must be >= 1 in '" + tok + "'");
    w.push_back({tok.substr(0, k), idx});
  }
  return w;
}

std::string format_caret_word(const CaretWord &w) {
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += w[k].colour + std::to_string(w[k].leaf);
  }
  return s;
}

Permutation parse_permutation(const std::string &text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<std::string> toks;
  while (in >> tok) toks.push_back(tok);
  if (toks.size() == 1 && toks[0] == "id") return {};
  Permutation p;
  for (const auto &t : toks) {
    if (t.empty() || t.size() > 6 || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw ParseError("bad permutation entry '" + t + "'");
    p.images.push_back(std::stoi(t));
  }
  std::set<int> seen(p.images.begin(), p.images.end());
  if (seen.size() != p.images.size() || (!seen.empty() && (*seen.begin() != 1 || *seen.rbegin() != p.size())))
    throw ParseError("permutation is not a bijection of 1..n: '" + text + "'");
  return p;
}

bool is_prefix(const Word &p, const Word &w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

} // namespace fskit
