#include "fskit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "fskit/dynamics.hpp"
#include "fskit/errors.hpp"
#include "fskit/pl.hpp"
#include "fskit/presentation.hpp"
#include "fskit/probe.hpp"
#include "fskit/syntax.hpp"

namespace fskit {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string path;
  std::vector<std::string> exprs;
  std::string point;
  std::string end = "last";
  int max_len = 8;
  int jobs = 1;
  int depth = 12;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 0;
  int count = 200;
  bool json = false;
};

RightVineClass load_class(const Options &o, SkeinPresentation *pres = nullptr) {
  SkeinPresentation p = load_presentation(o.path);
  validate(p);
  if (pres) *pres = p;
  return require_class(p);
}

Eppm element(const RightVineClass &c, const std::string &text) { return evaluate_element(c, parse_element(text)); }

std::string point_list(const std::vector<EvPeriodicWord> &ps) {
  std::string s;
  for (const auto &p : ps) s += p.to_string() + "\n";
  return s.empty() ? "none\n" : s;
}

EvPeriodicWord random_point(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> bit(0, 1), pre_len(0, 8), per_len(1, 4);
  Word pre, per;
  for (int k = pre_len(rng); k > 0; --k) pre += bit(rng) ? '1' : '0';
  for (int k = per_len(rng); k > 0; --k) per += bit(rng) ? '1' : '0';
  return {pre, per};
}

// Pointwise consistency: the composed map agrees with applying the letters
// one at a time, and w·w⁻¹ is the identity on the range of w.
int selftest(const RightVineClass &c, const Options &o, std::ostream &out) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> gen(0, 3), sign(0, 1), len(1, 8);
  long failures = 0, checks = 0;
  for (int t = 0; t < o.count; ++t) {
    SignedWord w;
    for (int k = len(rng); k > 0; --k) w.push_back({static_cast<Gen>(gen(rng)), sign(rng) ? 1 : -1});
    Eppm f = evaluate_word(c, w);
    for (int k = 0; k < 5; ++k) {
      EvPeriodicWord p = random_point(rng);
      std::optional<EvPeriodicWord> q = p;
      for (auto it = w.rbegin(); it != w.rend() && q; ++it) {
        Eppm g = caret_map(c, it->gen);
        q = try_evaluate(it->exp > 0 ? g : invert(g), *q);
      }
      ++checks;
      if (try_evaluate(f, p) != q) {
        ++failures;
        out << "mismatch: " << format_signed_word(w) << " at " << p.to_string() << "\n";
      }
    }
    SignedWord ww = w;
    for (const auto &l : inverse_word(w)) ww.push_back(l);
    Eppm h = evaluate_word(c, ww);
    ++checks;
    if (!is_identity_on_domain(h) || domain_measure(h) != range_measure(f)) {
      ++failures;
      out << "w w^-1 != id for " << format_signed_word(w) << "\n";
    }
  }
  out << "seed " << o.seed << ": " << checks << " checks, " << failures << " failures\n";
  return failures ? kExitUsage : kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Forest-skein category toolkit", "fskit"};
  app.require_subcommand(1, 1);
  Options o;

  std::map<CLI::App *, size_t> arity;
  auto add_file = [&](CLI::App *s) { s->add_option("presentation", o.path, "presentation file (.fsp)")->required(); };
  auto add_expr = [&](CLI::App *s, size_t n) {
    // one value per flag; fractions start with '[' and must not be split as lists
    s->add_option("-e,--expr", o.exprs, "element expression (repeat the flag for each element)")
        ->required()
        ->allow_extra_args(false);
    arity[s] = n;
  };
  auto add_json = [&](CLI::App *s) { s->add_flag("--json", o.json, "machine-readable output"); };

  auto *validate_cmd = app.add_subcommand("validate", "check a presentation file");
  add_file(validate_cmd);
  auto *classify_cmd = app.add_subcommand("classify", "recognise the right-vine class");
  add_file(classify_cmd);
  add_json(classify_cmd);
  auto *abel_cmd = app.add_subcommand("abelianize", "abelianisation of the fraction group");
  add_file(abel_cmd);
  add_json(abel_cmd);
  auto *germs_cmd = app.add_subcommand("germs", "germ group presentation at one end");
  add_file(germs_cmd);
  germs_cmd->add_option("--end", o.end, "first or last")->check(CLI::IsMember({"first", "last"}));
  auto *simple_cmd = app.add_subcommand("check-simple", "search for a collapsing good word");
  add_file(simple_cmd);
  simple_cmd->add_option("--max-len", o.max_len, "longest word tested")->check(CLI::Range(1, 64));
  simple_cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256));
  auto *eval_cmd = app.add_subcommand("eval", "image of a point");
  add_file(eval_cmd);
  add_expr(eval_cmd, 1);
  eval_cmd->add_option("-p,--point", o.point, "eventually periodic point u(v)")->required();
  auto *equal_cmd = app.add_subcommand("equal", "decide equality of two elements");
  add_file(equal_cmd);
  add_expr(equal_cmd, 2);
  auto *canon_cmd = app.add_subcommand("canon", "canonical representation of an element");
  add_file(canon_cmd);
  add_expr(canon_cmd, 1);
  add_json(canon_cmd);
  auto *ctype_cmd = app.add_subcommand("classify-element", "F, T or V");
  add_file(ctype_cmd);
  add_expr(ctype_cmd, 1);
  auto *sing_cmd = app.add_subcommand("singular", "singular points of an element");
  add_file(sing_cmd);
  add_expr(sing_cmd, 1);
  auto *cmp_cmd = app.add_subcommand("compare", "bi-order comparison");
  add_file(cmp_cmd);
  add_expr(cmp_cmd, 2);
  auto *plot_cmd = app.add_subcommand("plot", "render as a PL map");
  add_file(plot_cmd);
  add_expr(plot_cmd, 1);
  plot_cmd->add_option("--depth", o.depth, "truncation depth")->check(CLI::Range(0, 40));
  plot_cmd->add_option("--format", o.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  plot_cmd->add_option("-o,--output", o.output, "output path (default stdout)");
  auto *self_cmd = app.add_subcommand("selftest", "randomised pointwise consistency check");
  add_file(self_cmd);
  self_cmd->add_option("--seed", o.seed, "random seed");
  self_cmd->add_option("--count", o.count, "number of random words")->check(CLI::Range(1, 100000));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (const auto &[cmd, n] : arity)
    if (cmd->parsed() && o.exprs.size() != n) {
      err << cmd->get_name() << " takes exactly " << n << " -e option" << (n > 1 ? "s" : "") << "\n";
      return kExitUsage;
    }

  try {
    if (validate_cmd->parsed()) {
      SkeinPresentation p = load_presentation(o.path);
      validate(p);
      out << "ok: " << p.colours.size() << " colours, " << p.relations.size() << " relations\n";
      return kExitOk;
    }
    if (classify_cmd->parsed()) {
      SkeinPresentation p = load_presentation(o.path);
      validate(p);
      auto c = classify(p);
      if (o.json) {
        ordered_json j;
        j["supported"] = c.has_value();
        if (c) {
          j["x"] = c->x.to_string();
          j["L"] = c->L;
          j["R"] = c->R;
          j["M"] = c->M;
          j["x_is_rho"] = c->x_is_rho();
        }
        out << j.dump(2) << "\n";
      } else if (c) {
        out << "right-vine class: x = " << c->x.to_string() << ", L = " << c->L << ", R = " << c->R
            << ", M = " << c->M << (c->x_is_rho() ? ", x = rho" : "") << "\n";
      } else {
        out << "unsupported\n";
      }
      return kExitOk;
    }
    if (abel_cmd->parsed()) {
      SkeinPresentation p = load_presentation(o.path);
      validate(p);
      AbelianInvariants ab = abelianisation(p);
      if (o.json) {
        ordered_json j;
        j["rank"] = ab.rank;
        j["torsion"] = ordered_json::array();
        for (const auto &d : ab.torsion) j["torsion"].push_back(d.str());
        j["group"] = ab.to_string();
        out << j.dump(2) << "\n";
      } else {
        out << ab.to_string() << "\n";
      }
      return kExitOk;
    }
    if (germs_cmd->parsed()) {
      SkeinPresentation p = load_presentation(o.path);
      validate(p);
      out << germ_presentation(p, o.end == "first" ? End::First : End::Last).to_string() << "\n";
      return kExitOk;
    }
    if (simple_cmd->parsed()) {
      RightVineClass c = load_class(o);
      ProbeReport rep = probe(c, o.max_len, o.jobs, o.path);
      out << rep.to_json() << "\n";
      if (rep.outcome == ProbeReport::CollapseFound) return kExitCollapse;
      if (rep.outcome == ProbeReport::Inconclusive) return kExitOverflow;
      return kExitOk;
    }
    if (self_cmd->parsed()) return selftest(load_class(o), o, out);

    RightVineClass c = load_class(o);
    if (eval_cmd->parsed()) {
      out << evaluate(element(c, o.exprs[0]), EvPeriodicWord::parse(o.point)).to_string() << "\n";
    } else if (equal_cmd->parsed()) {
      out << (equals(element(c, o.exprs[0]), element(c, o.exprs[1])) ? "true" : "false") << "\n";
    } else if (canon_cmd->parsed()) {
      Eppm f = canonicalize(element(c, o.exprs[0]));
      if (o.json) {
        ordered_json j;
        j["pieces"] = ordered_json::array();
        for (const auto &p : f.pieces) j["pieces"].push_back({{"dom", p.dom}, {"ran", p.ran}});
        j["families"] = ordered_json::array();
        for (const auto &F : f.families) {
          ordered_json blocks = ordered_json::array();
          for (const auto &b : F.blocks) blocks.push_back({{"dom", b.dom}, {"ran", b.ran}});
          j["families"].push_back({{"dom_base", F.dom_base},
                                   {"ran_base", F.ran_base},
                                   {"dom_step", F.dom_step},
                                   {"ran_step", F.ran_step},
                                   {"blocks", blocks}});
        }
        j["limits"] = ordered_json::array();
        for (const auto &l : f.limits) j["limits"].push_back({{"dom", l.dom}, {"ran", l.ran}});
        out << j.dump(2) << "\n";
      } else {
        out << f.to_string();
      }
    } else if (ctype_cmd->parsed()) {
      out << to_string(classify_element(element(c, o.exprs[0]))) << "\n";
    } else if (sing_cmd->parsed()) {
      out << point_list(singular_points(c, element(c, o.exprs[0])));
    } else if (cmp_cmd->parsed()) {
      out << to_string(bi_order_compare(element(c, o.exprs[0]), element(c, o.exprs[1]))) << "\n";
    } else if (plot_cmd->parsed()) {
      Eppm f = element(c, o.exprs[0]);
      PlMap m = is_order_preserving(f) ? to_interval_map(f, o.depth) : to_circle_map(f, o.depth);
      std::string text = o.format == "svg" ? emit_svg(m) : emit_csv(m);
      if (o.output.empty()) {
        out << text;
      } else {
        std::ofstream file(o.output, std::ios::binary);
        if (!file) throw ParseError("cannot write " + o.output);
        file << text;
      }
    }
    return kExitOk;
  } catch (const RepresentationOverflow &e) {
    err << "error: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const ValidationError &e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedClass &e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

} // namespace fskit
