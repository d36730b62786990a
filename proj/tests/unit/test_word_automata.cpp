#include "doctest.h"

#include <map>

#include "oracles.hpp"
#include "qctl/word_automata.hpp"
#include "random.hpp"

using namespace qctl;

namespace {

formula_ptr path(const std::string& text) { return parse_formula("E (" + text + ")")->lhs; }

lasso_word lasso(std::vector<std::set<std::string>> prefix, std::vector<std::set<std::string>> loop) {
  return {std::move(prefix), std::move(loop)};
}

// Runs a deterministic automaton on prefix·loop^ω; true iff the maximal
// colour on the eventual cycle is even.
bool dpw_accepts(const dpw& a, const std::vector<unsigned>& prefix, const std::vector<unsigned>& loop) {
  int q = a.initial;
  for (unsigned l : prefix) q = a.delta[q][l];
  std::map<std::pair<int, int>, int> seen;
  std::vector<int> colours;
  for (int i = 0;; i = (i + 1) % static_cast<int>(loop.size())) {
    if (auto it = seen.find({q, i}); it != seen.end()) {
      int top = 0;
      for (std::size_t j = it->second; j < colours.size(); ++j) top = std::max(top, colours[j]);
      return top % 2 == 0;
    }
    seen[{q, i}] = static_cast<int>(colours.size());
    colours.push_back(a.colour[q][loop[i]]);
    q = a.delta[q][loop[i]];
  }
}

bool oracle_letters(int q_count, const std::vector<int>& colours, const std::vector<int>& start,
                    const std::vector<unsigned>& prefix, const std::vector<unsigned>& loop) {
  std::vector<annotation> p, l;
  for (unsigned x : prefix) p.push_back(annotation_of_letter(q_count, x));
  for (unsigned x : loop) l.push_back(annotation_of_letter(q_count, x));
  return testing::oracle_all_traces(q_count, colours, start, p, l);
}

}  // namespace

TEST_CASE("ltl_eval_lasso") {
  CHECK(ltl_eval_lasso(path("G p"), lasso({}, {{"p"}})));
  CHECK(ltl_eval_lasso(path("X q"), lasso({{"p"}}, {{"q"}})));
  CHECK_FALSE(ltl_eval_lasso(path("F p"), lasso({}, {{}})));
  CHECK(ltl_eval_lasso(path("G F p"), lasso({{}}, {{}, {"p"}, {}})));
  CHECK_FALSE(ltl_eval_lasso(path("F G p"), lasso({{}}, {{}, {"p"}})));
  CHECK(ltl_eval_lasso(path("p U q"), lasso({{"p"}, {"p"}}, {{"q"}})));
  CHECK_FALSE(ltl_eval_lasso(path("p U q"), lasso({{"p"}, {}}, {{"q"}})));
  CHECK_THROWS_AS(ltl_eval_lasso(path("p"), lasso({}, {{}}), {"q"}), unsupported_formula);
}

TEST_CASE("ltl_to_nbw: small automata") {
  auto xp = ltl_to_nbw(path("X p"), {"p"});
  int live = 0;
  for (int q = 0; q < xp.num_states; ++q) {
    bool sink = !xp.accepting[q];
    for (int l = 0; l < xp.num_letters(); ++l) sink = sink && xp.delta[q][l] == std::vector<int>{q};
    if (!sink) ++live;
  }
  CHECK(live == 3);
  auto tt = ltl_to_nbw(make_true(), {});
  CHECK(tt.num_states <= 2);
  CHECK(nbw_accepts_lasso(tt, lasso({}, {{}})));
  auto fp = ltl_to_nbw(path("F p"), {"p"});
  CHECK_FALSE(nbw_accepts_lasso(fp, lasso({}, {{}})));
  CHECK(nbw_accepts_lasso(fp, lasso({{}, {}}, {{"p"}})));
}

TEST_CASE("nbw_accepts_lasso: empty language") {
  nbw a;
  a.alphabet = {"p"};
  a.num_states = 1;
  a.accepting = {false};
  a.delta = {{{0}, {0}}};
  CHECK_FALSE(nbw_accepts_lasso(a, lasso({{"p"}}, {{}})));
}

TEST_CASE("nbw dump lists transitions") {
  auto a = ltl_to_nbw(path("p U q"), {"p", "q"});
  auto text = dump(a);
  CHECK(text.find("initial") != std::string::npos);
}

TEST_CASE("property: ltl_to_nbw agrees with lasso evaluation") {
  testing::rng r(41);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 150; ++i) {
    auto psi = testing::random_ltl(r, atoms, testing::uniform(r, 1, 6));
    auto a = ltl_to_nbw(psi, atoms);
    for (int j = 0; j < 20; ++j) {
      auto w = testing::random_lasso(r, atoms);
      CAPTURE(to_string(make_E(psi)));
      CHECK(nbw_accepts_lasso(a, w) == ltl_eval_lasso(psi, w));
      CHECK(ltl_eval_lasso(make_not(psi), w) == !ltl_eval_lasso(psi, w));
    }
  }
}

TEST_CASE("det_all_traces: one state") {
  auto even = det_all_traces(1, {2});
  auto odd = det_all_traces(1, {1});
  // letter 1 carries the self pair (0,0); letter 0 kills every trace
  CHECK(dpw_accepts(even, {}, {1}));
  CHECK(dpw_accepts(even, {}, {0}));
  CHECK_FALSE(dpw_accepts(odd, {}, {1}));
  CHECK(dpw_accepts(odd, {1, 1}, {0}));
  CHECK(dpw_accepts(odd, {0}, {1}));  // the only trace dies at the first letter
}

TEST_CASE("det_all_traces: deterministic and total") {
  auto a = det_all_traces(2, {1, 2});
  for (int q = 0; q < a.num_states; ++q) {
    REQUIRE(a.delta[q].size() == 16u);
    for (int l = 0; l < 16; ++l) {
      CHECK(a.delta[q][l] >= 0);
      CHECK(a.delta[q][l] < a.num_states);
    }
  }
}

TEST_CASE("property: det_all_traces against trace enumeration, exhaustive short lassos") {
  std::vector<std::vector<int>> colourings{{1, 2}, {2, 1}, {0, 3}, {3, 2}, {2, 2}};
  for (const auto& colours : colourings) {
    auto a = det_all_traces(2, colours);
    for (int plen = 0; plen <= 1; ++plen)
      for (int llen = 1; llen <= 2; ++llen)
        for (unsigned code = 0; code < (1u << (4 * (plen + llen))); ++code) {
          std::vector<unsigned> pre, loop;
          for (int i = 0; i < plen + llen; ++i) (i < plen ? pre : loop).push_back(code >> (4 * i) & 15);
          if (dpw_accepts(a, pre, loop) != oracle_letters(2, colours, {0, 1}, pre, loop)) {
            CAPTURE(code);
            FAIL("mismatch");
          }
        }
  }
}

TEST_CASE("property: det_all_traces against trace enumeration, random longer lassos") {
  testing::rng r(42);
  for (int i = 0; i < 3000; ++i) {
    std::vector<int> colours{testing::uniform(r, 0, 4), testing::uniform(r, 0, 4)};
    std::vector<int> start = testing::coin(r) ? std::vector<int>{0, 1} : std::vector<int>{testing::uniform(r, 0, 1)};
    auto a = det_all_traces(2, colours, start);
    std::vector<unsigned> pre, loop;
    for (int k = testing::uniform(r, 0, 3); k > 0; --k) pre.push_back(testing::uniform(r, 0, 15));
    for (int k = testing::uniform(r, 1, 3); k > 0; --k) loop.push_back(testing::uniform(r, 0, 15));
    CHECK(dpw_accepts(a, pre, loop) == oracle_letters(2, colours, start, pre, loop));
  }
}

TEST_CASE("property: all_traces_automaton with three states") {
  testing::rng r(43);
  for (int i = 0; i < 400; ++i) {
    std::vector<int> colours{testing::uniform(r, 0, 5), testing::uniform(r, 0, 5), testing::uniform(r, 0, 5)};
    all_traces_automaton a(3, colours);
    auto random_annotation = [&] {
      annotation x;
      for (int q = 0; q < 3; ++q)
        for (int q2 = 0; q2 < 3; ++q2)
          if (testing::coin(r, 0.3)) x.emplace_back(q, q2);
      return x;
    };
    std::vector<annotation> pre, loop;
    for (int k = testing::uniform(r, 0, 2); k > 0; --k) pre.push_back(random_annotation());
    for (int k = testing::uniform(r, 1, 3); k > 0; --k) loop.push_back(random_annotation());
    int s = a.initial({0});
    for (const auto& x : pre) s = a.step(s, x).first;
    std::map<std::pair<int, int>, int> seen;
    std::vector<int> cols;
    bool accepted = false;
    for (int j = 0;; j = (j + 1) % static_cast<int>(loop.size())) {
      if (auto it = seen.find({s, j}); it != seen.end()) {
        int top = 0;
        for (std::size_t m = it->second; m < cols.size(); ++m) top = std::max(top, cols[m]);
        accepted = top % 2 == 0;
        break;
      }
      seen[{s, j}] = static_cast<int>(cols.size());
      auto [next, c] = a.step(s, loop[j]);
      CHECK(c <= a.max_colour());
      cols.push_back(c);
      s = next;
    }
    CHECK(accepted == testing::oracle_all_traces(3, colours, {0}, pre, loop));
  }
}
