#include "fskit/pl.hpp"

#include <algorithm>
#include <sstream>

#include "fskit/dynamics.hpp"
#include "fskit/errors.hpp"

namespace fskit {

Dyadic::Dyadic(BigInt num, unsigned exp) : num_(std::move(num)), exp_(exp) {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

Dyadic Dyadic::pow2(long e) {
  if (e >= 0) return Dyadic(BigInt(1) << static_cast<unsigned>(e), 0);
  return Dyadic(1, static_cast<unsigned>(-e));
}

Dyadic Dyadic::of_word(const Word &w) {
  BigInt n = 0;
  for (char c : w) n = n * 2 + (c == '1' ? 1 : 0);
  return Dyadic(n, static_cast<unsigned>(w.size()));
}

Rational Dyadic::to_rational() const { return Rational(num_, BigInt(1) << exp_); }

std::string Dyadic::to_string() const {
  if (exp_ == 0) return num_.str();
  return num_.str() + "/" + (BigInt(1) << exp_).str();
}

Dyadic Dyadic::operator+(const Dyadic &o) const {
  unsigned e = std::max(exp_, o.exp_);
  return Dyadic((num_ << (e - exp_)) + (o.num_ << (e - o.exp_)), e);
}

Dyadic Dyadic::operator-(const Dyadic &o) const {
  unsigned e = std::max(exp_, o.exp_);
  return Dyadic((num_ << (e - exp_)) - (o.num_ << (e - o.exp_)), e);
}

Dyadic Dyadic::operator*(const Dyadic &o) const { return Dyadic(num_ * o.num_, exp_ + o.exp_); }

Rational j_value(const EvPeriodicWord &p) {
  Rational head = Dyadic::of_word(p.pre()).to_rational();
  BigInt per = 0;
  for (char c : p.period()) per = per * 2 + (c == '1' ? 1 : 0);
  BigInt full = (BigInt(1) << static_cast<unsigned>(p.period().size())) - 1;
  return head + Rational(per, full) / Rational(BigInt(1) << static_cast<unsigned>(p.pre().size()));
}

namespace {

PlPiece make_piece(const Word &u, const Word &v) {
  PlPiece p;
  p.left = Dyadic::of_word(u);
  p.right = p.left + Dyadic::pow2(-static_cast<long>(u.size()));
  p.slope_exp = static_cast<int>(u.size()) - static_cast<int>(v.size());
  p.intercept = Dyadic::of_word(v) - Dyadic::pow2(p.slope_exp) * Dyadic::of_word(u);
  return p;
}

Dyadic spine_value(const Word &w) {
  return Dyadic::of_word(w) + Dyadic::pow2(-static_cast<long>(w.size()));
}

PlMap build(const Eppm &f, int depth, PlMap::Kind kind) {
  if (depth < 0) throw IndexOutOfRange("depth must be non-negative");
  PlMap m;
  m.kind = kind;
  m.truncation_depth = depth;
  for (const auto &p : f.pieces) m.pieces.push_back(make_piece(p.dom, p.ran));
  for (const auto &F : f.families) {
    // expand while the remaining cone dom_base·1^{m·step} is at least 2^-depth wide
    for (long layer = 0; static_cast<long>(F.dom_base.size()) + layer * F.dom_step <= depth; ++layer) {
      for (size_t j = 0; j < F.blocks.size(); ++j) {
        Piece g = F.generated(layer, j);
        m.pieces.push_back(make_piece(g.dom, g.ran));
      }
    }
    m.accumulation_points.push_back({spine_value(F.dom_base), spine_value(F.ran_base)});
  }
  std::sort(m.pieces.begin(), m.pieces.end(), [](const PlPiece &a, const PlPiece &b) { return a.left < b.left; });
  std::vector<PlPiece> merged;
  for (const auto &p : m.pieces) {
    if (!merged.empty() && merged.back().right == p.left && merged.back().slope_exp == p.slope_exp &&
        merged.back().intercept == p.intercept)
      merged.back().right = p.right;
    else
      merged.push_back(p);
  }
  m.pieces = std::move(merged);
  std::sort(m.accumulation_points.begin(), m.accumulation_points.end(),
            [](const Accumulation &a, const Accumulation &b) { return a.point < b.point; });
  return m;
}

} // namespace

PlMap to_interval_map(const Eppm &f, int depth) {
  if (!is_order_preserving(f)) throw NotOrderPreserving("interval rendering needs an order-preserving map");
  return build(f, depth, PlMap::Interval);
}

PlMap to_circle_map(const Eppm &f, int depth) {
  if (!is_cyclic_order_preserving(f)) throw NotCyclicOrderPreserving("circle rendering needs a cyclic-order-preserving map");
  PlMap m = build(f, depth, PlMap::Circle);
  auto same_mod1 = [](const Dyadic &a, const Dyadic &b) {
    Rational d = a.to_rational() - b.to_rational();
    return denominator(d) == 1;
  };
  for (size_t k = 1; k < m.pieces.size(); ++k) {
    const auto &a = m.pieces[k - 1], &b = m.pieces[k];
    if (a.right == b.left && !same_mod1(a.value_at(a.right), b.value_at(b.left)))
      throw NotCyclicOrderPreserving("circle map is discontinuous at " + a.right.to_string());
  }
  if (!m.pieces.empty() && m.pieces.front().left == Dyadic(0) && m.pieces.back().right == Dyadic(1) &&
      !same_mod1(m.pieces.back().value_at(Dyadic(1)), m.pieces.front().value_at(Dyadic(0))))
    throw NotCyclicOrderPreserving("circle map is discontinuous at 0");
  return m;
}

std::vector<Breakpoint> breakpoints(const PlMap &m) {
  std::vector<Breakpoint> out;
  for (size_t k = 1; k < m.pieces.size(); ++k) {
    const auto &a = m.pieces[k - 1], &b = m.pieces[k];
    if (a.right == b.left && (a.slope_exp != b.slope_exp || a.intercept != b.intercept))
      out.push_back({b.left, a.slope_exp, b.slope_exp});
  }
  return out;
}

std::string FixedSet::to_string() const {
  auto r = [](const Rational &x) { return denominator(x) == 1 ? numerator(x).str() : numerator(x).str() + "/" + denominator(x).str(); };
  if (is_point()) return r(left);
  return "[" + r(left) + ", " + r(right) + (right_closed ? "]" : ")");
}

std::vector<FixedSet> fixed_points(const PlMap &m) {
  std::vector<FixedSet> raw;
  for (const auto &p : m.pieces) {
    Rational l = p.left.to_rational(), r = p.right.to_rational(), b = p.intercept.to_rational();
    if (p.slope_exp == 0) {
      if (b == 0) raw.push_back({l, r, false});
      continue;
    }
    Rational x = b / (1 - Dyadic::pow2(p.slope_exp).to_rational());
    if (l <= x && x < r) raw.push_back({x, x, true});
  }
  for (const auto &a : m.accumulation_points)
    if (a.point == a.image) raw.push_back({a.point.to_rational(), a.point.to_rational(), true});
  if (m.kind == PlMap::Interval && !m.pieces.empty() && m.pieces.back().right == Dyadic(1) &&
      m.pieces.back().value_at(Dyadic(1)) == Dyadic(1))
    raw.push_back({1, 1, true});
  std::sort(raw.begin(), raw.end(), [](const FixedSet &a, const FixedSet &b) {
    return a.left < b.left || (a.left == b.left && a.right < b.right);
  });
  std::vector<FixedSet> out;
  for (const auto &s : raw) {
    if (!out.empty() && !out.back().is_point() && !out.back().right_closed && out.back().right == s.left) {
      out.back().right = s.right;
      out.back().right_closed = s.right_closed;
      continue;
    }
    if (!out.empty() && out.back().left == s.left && out.back().right == s.right) continue;
    out.push_back(s);
  }
  return out;
}

std::string emit_csv(const PlMap &m) {
  std::ostringstream os;
  os << "left,right,slope_exp,intercept_num,intercept_exp\n";
  for (const auto &p : m.pieces)
    os << p.left.to_string() << "," << p.right.to_string() << "," << p.slope_exp << "," << p.intercept.num().str()
       << "," << p.intercept.exp() << "\n";
  return os.str();
}

namespace {

Dyadic parse_dyadic(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Dyadic(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    unsigned e = 0;
    while (den > 1 && (den & 1) == 0) den >>= 1, ++e;
    if (den != 1) throw ParseError("not a dyadic: " + s);
    return Dyadic(num, e);
  } catch (const std::runtime_error &) {
    throw ParseError("bad dyadic '" + s + "'");
  }
}

} // namespace

PlMap parse_csv(const std::string &text) {
  PlMap m;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "left,right,slope_exp,intercept_num,intercept_exp")
    throw ParseError("missing CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cols.push_back(c);
    if (cols.size() != 5) throw ParseError("CSV row needs 5 columns: " + line);
    PlPiece p;
    p.left = parse_dyadic(cols[0]);
    p.right = parse_dyadic(cols[1]);
    try {
      p.slope_exp = std::stoi(cols[2]);
      p.intercept = Dyadic(BigInt(cols[3]), static_cast<unsigned>(std::stoul(cols[4])));
    } catch (const std::exception &) {
      throw ParseError("bad CSV row: " + line);
    }
    m.pieces.push_back(p);
  }
  return m;
}

std::string decimal9(const Rational &x) {
  static const BigInt scale("1000000000");
  BigInt n = numerator(x) * scale, d = denominator(x);
  bool neg = n < 0;
  if (neg) n = -n;
  BigInt q = n / d, r = n % d;
  if (2 * r > d || (2 * r == d && (q & 1) == 1)) ++q;
  std::string digits = q.str();
  if (digits.size() < 10) digits.insert(0, 10 - digits.size(), '0');
  std::string s = digits.substr(0, digits.size() - 9) + "." + digits.substr(digits.size() - 9);
  return (neg && q != 0 ? "-" : "") + s;
}

std::string emit_svg(const PlMap &m, int width, int height) {
  Rational W(width), H(height);
  auto X = [&](const Rational &x) { return decimal9(x * W); };
  auto Y = [&](const Rational &y) { return decimal9((1 - y) * H); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"0\" y1=\"" << height << "\" x2=\"" << width
     << "\" y2=\"0\" stroke=\"#bbbbbb\" stroke-width=\"0.5\" stroke-dasharray=\"4 4\"/>\n";
  os << "<g stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";
  for (const auto &p : m.pieces) {
    Rational l = p.left.to_rational(), r = p.right.to_rational();
    os << "<polyline points=\"" << X(l) << "," << Y(p.value_at(p.left).to_rational()) << " " << X(r) << ","
       << Y(p.value_at(p.right).to_rational()) << "\"/>\n";
  }
  os << "</g>\n";
  if (!m.accumulation_points.empty()) {
    os << "<g fill=\"red\" stroke=\"none\">\n";
    for (const auto &a : m.accumulation_points)
      os << "<circle cx=\"" << X(a.point.to_rational()) << "\" cy=\"" << Y(a.image.to_rational()) << "\" r=\"3\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace fskit
