#include "fskit/probe.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>

#include "json.hpp"

#include "fskit/errors.hpp"

namespace fskit {

std::string ProbeReport::outcome_label() const {
  switch (outcome) {
  case CollapseFound: return "CollapseFound";
  case NoCollapseUpTo: return "NoCollapseUpTo(" + std::to_string(max_len) + ")";
  case Inconclusive: return "InconclusiveUpTo(" + std::to_string(max_len) + ")";
  }
  return "?";
}

std::string ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["presentation"] = presentation;
  j["max_len"] = max_len;
  j["outcome"] = outcome_label();
  if (outcome == CollapseFound) j["collapse"] = {{"word", collapse_word}, {"j", collapse_j}};
  j["tested"] = tested;
  j["inconclusive"] = inconclusive;
  j["seconds"] = seconds;
  if (outcome != CollapseFound) j["note"] = "absence of a collapse up to max_len is evidence, not a proof of simplicity";
  return j.dump(2);
}

namespace {

struct WordResult {
  enum { None, Collapse, Overflow } kind = None;
  long j = 0;
  Eppm image;
};

} // namespace

ProbeReport probe(const RightVineClass &c, int max_len, int jobs, const std::string &name) {
  auto start = std::chrono::steady_clock::now();
  ProbeReport rep;
  rep.presentation = name;
  rep.max_len = max_len;
  jobs = std::max(1, jobs);
  Eppm A = caret_map(c, Gen::A1), B = caret_map(c, Gen::B1);

  // κ_ω images of the previous length, reused as prefixes
  std::map<std::string, Eppm> prev;
  auto words = enumerate_good_words(c, max_len);
  size_t cursor = 0;
  for (int L = 1; L <= max_len && rep.outcome != ProbeReport::CollapseFound; ++L) {
    std::vector<std::string> level;
    while (cursor < words.size() && static_cast<int>(words[cursor].size()) == L) level.push_back(words[cursor++]);
    std::vector<WordResult> results(level.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t k; (k = next.fetch_add(1)) < level.size();) {
        const std::string &w = level[k];
        std::string head = w.substr(0, w.size() - 1);
        try {
          Eppm base;
          if (auto it = prev.find(head); it != prev.end())
            base = it->second;
          else
            base = kappa_omega(c, head); // trivial prefix a^i, or a prefix that overflowed
          Eppm img = compose(base, w.back() == 'a' ? A : B);
          results[k].image = img;
          if (auto j = is_power_of_A1(img)) {
            results[k].kind = WordResult::Collapse;
            results[k].j = *j;
          }
        } catch (const RepresentationOverflow &) {
          results[k].kind = WordResult::Overflow;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();

    std::map<std::string, Eppm> cur;
    for (size_t k = 0; k < level.size(); ++k) {
      ++rep.tested;
      const auto &r = results[k];
      if (r.kind == WordResult::Overflow) {
        rep.inconclusive.push_back(level[k]);
        continue;
      }
      if (r.kind == WordResult::Collapse) {
        rep.outcome = ProbeReport::CollapseFound;
        rep.collapse_word = level[k];
        rep.collapse_j = r.j;
        rep.tested = static_cast<long>(cursor - level.size() + k + 1);
        break;
      }
      if (L < max_len) cur.emplace(level[k], r.image);
    }
    prev = std::move(cur);
  }
  if (rep.outcome != ProbeReport::CollapseFound && !rep.inconclusive.empty()) rep.outcome = ProbeReport::Inconclusive;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace fskit
