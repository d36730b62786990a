#include "doctest.h"

#include <filesystem>
#include <functional>

#include "qctl/mc_structure.hpp"
#include "qctl/mc_tree.hpp"
#include "random.hpp"

using namespace qctl;
namespace fs = std::filesystem;

namespace {

cks load(const std::string& name) { return load_model(std::string(QCTL_TEST_DATA) + "/" + name); }

bool holds_t(const cks& k, const std::string& s, const std::string& f) {
  return check_tree(k, k.state_index(s), parse_formula(f));
}

const std::string line_q = "(A F q & A G (q -> A X A G !q))";

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("qctl_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("atomic cases") {
  cks k = load("k2.cks");
  auto Phi = parse_formula("p | exists q^{1,2}. q");
  auto free_p = build_automaton(Phi, k, 1, Phi->lhs);
  CHECK(free_p.num_states == 1);
  CHECK(membership(free_p, full_tree(free_p.dirs)));
  CHECK_FALSE(membership(build_automaton(Phi, k, 0, Phi->lhs), full_tree(free_p.dirs)));

  auto q = build_automaton(Phi, k, 0, Phi->rhs->lhs);
  REQUIRE(q.atoms.size() == 1);
  const std::string name = q.atoms[0];
  testing::rng r(81);
  for (int i = 0; i < 20; ++i) {
    auto t = testing::random_regular_tree(r, q.dirs, {name}, 4, 0.1);
    CHECK(membership(q, t) == static_cast<bool>(t.labels[t.root].count(name)));
  }
}

TEST_CASE("E X p on K0 for every labelling") {
  for (unsigned mask = 0; mask < 4; ++mask) {
    cks k = load("k0.cks");
    for (int s = 0; s < 2; ++s)
      if (mask >> s & 1) k.labels[s].insert("p");
    for (int s = 0; s < 2; ++s) CHECK(check_tree(k, s, parse_formula("E X p")) == (mask != 0));
    CHECK(check_tree(k, 0, parse_formula("A X p")) == (mask == 3));
  }
}

TEST_CASE("hierarchy gate fires before any construction") {
  cks k = load("k2.cks");
  auto dir = fresh_dir("gate");
  tree_check_options opts;
  opts.dump_dir = dir.string();
  auto f = parse_formula("exists q^{1,2}. exists r^{1}. E F (q & r)");
  try {
    tree_checker c(k, f, opts);
    FAIL("expected a hierarchy error");
  } catch (const hierarchy_error& e) {
    CHECK(e.violation().outer == observation{1, 2});
    CHECK(e.violation().inner == observation{1});
    CHECK(std::string(e.what()).find("{1,2}") != std::string::npos);
  }
  CHECK(fs::is_empty(dir));
  // plain quantifiers observe [n]
  CHECK_THROWS_AS(check_tree(k, 0, parse_formula("exists q. exists r^{2}. r")), hierarchy_error);
  CHECK_NOTHROW(check_tree(k, 0, parse_formula("exists q^{2}. exists r. (q & r)")));
}

TEST_CASE("guards") {
  cks k = load("k0.cks");
  CHECK_THROWS_AS(check_tree(k, 0, parse_formula("E X nowhere")), model_error);
  CHECK_THROWS_AS(check_tree(k, 0, parse_formula("exists a^{1}. exists b^{1}. exists c^{1}. a")), resource_error);
  tree_check_options deep;
  deep.max_quantifier_depth = 3;
  CHECK_NOTHROW(check_tree(k, 0, parse_formula("exists a^{1}. exists b^{1}. exists c^{1}. a"), deep));
  CHECK_THROWS_AS(check_tree(k, 9, parse_formula("true")), model_error);
}

TEST_CASE("dump directory receives every automaton") {
  cks k = load("k0.cks");
  auto dir = fresh_dir("dump");
  tree_check_options opts;
  opts.dump_dir = dir.string();
  tree_check_stats stats;
  check_tree(k, 0, parse_formula("exists q^{1}. (q & E X !q)"), opts, &stats);
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == stats.automata_built);
  CHECK(files > 0);
}

TEST_CASE("direction-space law") {
  cks k = load("k2.cks");
  auto Phi = parse_formula("E X (exists q^{1}. (q & exists r^{1,2}. E (r U q))) | (exists z^{}. A X z)");
  tree_checker c(k, Phi);
  std::function<void(const formula_ptr&)> walk = [&](const formula_ptr& g) {
    if (is_state_formula(*g)) {
      CHECK(c.family(g).automaton.dirs.coords() == obs_intersection(*g, k.dimension()));
      if (g->kind == op::exists_prop) CHECK(c.family(g).automaton.dirs.coords() == g->obs);
    }
    if (g->lhs) walk(g->lhs);
    if (g->rhs) walk(g->rhs);
  };
  walk(c.formula());
  CHECK(c.check(0) == check_tree(k, 0, Phi));
}

TEST_CASE("tree versus structure semantics") {
  cks k1 = load("k1.cks");
  CHECK(holds_t(k1, "s", "exists q^{1}. (q & A X A G !q)"));
  CHECK_FALSE(check_structure(k1, 0, parse_formula("exists q^{1}. (q & A X A G !q)")));
  cks k0 = load("k0.cks");
  // blind labellings are constant on each level of the unfolding
  CHECK_FALSE(holds_t(k0, "u", "exists q^{}. (E X q & E X !q)"));
  CHECK(holds_t(k0, "u", "exists q^{1}. (E X q & E X !q)"));
  CHECK(holds_t(k0, "u", "exists q^{}. (q & E X !q)"));
}

TEST_CASE("blind line of q on every model") {
  for (auto [file, state] : {std::pair{"k0.cks", "u"}, {"k1.cks", "s"}, {"k2.cks", "s0"}, {"k2.cks", "s2"}}) {
    cks k = load(file);
    CHECK(holds_t(k, state, "exists q^{}. " + line_q));
    CHECK_FALSE(holds_t(k, state, "!exists q^{}. " + line_q));
  }
}

TEST_CASE("property: quantifier-free formulas do not see the unfolding") {
  testing::rng r(82);
  testing::formula_params fp;
  fp.max_quantifiers = 0;
  fp.depth = 2;
  for (int i = 0; i < 60; ++i) {
    cks k = testing::random_model(r);
    auto f = testing::random_state_formula(r, fp);
    int s = testing::uniform(r, 0, k.num_states() - 1);
    CAPTURE(to_string(f));
    CHECK(check_tree(k, s, f) == check_structure(k, s, f));
  }
}

TEST_CASE("property: negation duality and observation monotonicity") {
  testing::rng r(83);
  testing::formula_params fp;
  fp.max_quantifiers = 0;
  fp.depth = 2;
  fp.free_props = {"p", "q"};
  for (int i = 0; i < 25; ++i) {
    cks k = testing::random_model(r);
    auto body = testing::random_state_formula(r, fp);
    CAPTURE(to_string(body));
    auto blind = make_exists("q", observation{}, body);
    auto one = make_exists("q", observation{1}, body);
    auto full = make_exists("q", observation::full(k.dimension()), body);
    bool b = check_tree(k, 0, blind), o = check_tree(k, 0, one), f = check_tree(k, 0, full);
    if (b) CHECK(o);
    if (o) CHECK(f);
    CHECK(check_tree(k, 0, make_not(one)) == !o);
  }
}
