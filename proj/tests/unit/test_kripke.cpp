#include "doctest.h"

#include "qctl/kripke.hpp"
#include "random.hpp"

using namespace qctl;

namespace {

const char* k0_text = R"(
locals 1: l1 l2
state u = (l1)
state v = (l2)
edge u -> u
edge u -> v
edge v -> u
edge v -> v
)";

local_tuple tup(std::vector<int> coords, std::vector<int> values) { return {std::move(coords), std::move(values)}; }

}  // namespace

TEST_CASE("parse_model: desk structure K0") {
  cks k = parse_model(k0_text);
  CHECK(k.dimension() == 1);
  CHECK(k.num_states() == 2);
  CHECK(k.succ[0] == std::vector<int>{0, 1});
  CHECK(k.state_index("v") == 1);
  CHECK(k.holds(0, "at_l1"));
  CHECK_FALSE(k.holds(1, "at_l1"));
  CHECK(parse_model(to_string(k)).succ == k.succ);
}

TEST_CASE("parse_model: errors") {
  CHECK_THROWS_AS(parse_model("locals 1: a b\nstate s = (a,a)\nedge s -> s\n"), model_error);
  CHECK_THROWS_AS(parse_model("locals 1: a b\nstate s = (a)\nstate t = (b)\nedge s -> t\n"), model_error);
  CHECK_THROWS_AS(parse_model("locals 1: a b\nlocals 2: b c\nstate s = (a,c)\nedge s -> s\n"), model_error);
  CHECK_THROWS_AS(parse_model("locals 1: a\nstate s = (a)\nedge s -> t\n"), model_error);
  CHECK_THROWS_AS(parse_model("locals 1: a\nstate s = (a)\nedge s -> s\nlabel t: p\n"), model_error);
  CHECK_THROWS_AS(parse_model("locals 1: a b\nstate s = (a)\nstate t = (a)\nedge s -> t\nedge t -> s\n"),
                  model_error);
  CHECK_THROWS_AS(parse_model("locals 1: a\nstate s = (a)\nedge s -> s\nlabel s: at_a\n"), model_error);
  try {
    parse_model("locals 1: a\nstate s = (a)\nfrobnicate\n");
    FAIL("expected an error");
  } catch (const model_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("project_state") {
  auto ax = tup({1, 2}, {0, 0});
  CHECK(project_state(ax, std::vector<int>{1}) == tup({1}, {0}));
  CHECK(project_state(ax, std::vector<int>{}).is_blank());
  CHECK(project_state(ax, std::vector<int>{1, 2}) == ax);
  CHECK_THROWS_AS(project_state(tup({1}, {0}), std::vector<int>{2}), shape_error);
}

TEST_CASE("obs_equiv_states") {
  auto ax = tup({1, 2}, {0, 0}), ay = tup({1, 2}, {0, 1});
  CHECK(obs_equiv_states(ax, ay, {1}));
  CHECK_FALSE(obs_equiv_states(ax, ay, {1, 2}));
  CHECK(obs_equiv_states(ax, tup({1, 2}, {1, 1}), {}));
  CHECK(obs_equiv_states(ax, ay, {1, 7}));
  CHECK_THROWS_AS(obs_equiv_states(ax, tup({1}, {0}), {1}), shape_error);
}

TEST_CASE("is_uniform_labelling on K0") {
  cks k = parse_model(k0_text);
  k.atoms.insert("p");
  k.labels[0].insert("p");
  CHECK_FALSE(is_uniform_labelling(k, "p", {}));
  CHECK(is_uniform_labelling(k, "p", {1}));
  CHECK(is_uniform_labelling(k, "q", {}));
}

TEST_CASE("unfold_bounded") {
  cks k = parse_model(k0_text);
  k.atoms.insert("p");
  k.labels[1].insert("p");
  auto t0 = unfold_bounded(k, 0, 0);
  CHECK(t0.nodes.size() == 1);
  auto t1 = unfold_bounded(k, 0, 1);
  CHECK(t1.nodes.size() == 3);
  tree_node uv{k.tuple(0), k.tuple(1)};
  CHECK(t1.label(uv) == label_set{"p"});
  CHECK(t1.label({k.tuple(0)}).empty());
  t1.validate();
  CHECK_THROWS_AS(unfold_bounded(k, 5, 1), model_error);
}

TEST_CASE("property: projection composes and equivalence is an equivalence") {
  testing::rng r(21);
  for (int i = 0; i < 200; ++i) {
    auto locals = testing::random_locals(r, 2, 2);
    direction_space all(locals, observation::full(locals.dimension()));
    auto d = all.at(testing::uniform(r, 0, all.size() - 1));
    auto e = all.at(testing::uniform(r, 0, all.size() - 1));
    auto f = all.at(testing::uniform(r, 0, all.size() - 1));
    std::vector<int> J, J2;
    for (int c : d.coords)
      if (testing::coin(r)) J.push_back(c);
    for (int c : J)
      if (testing::coin(r)) J2.push_back(c);
    CHECK(project_state(project_state(d, J), J2) == project_state(d, J2));
    observation o(J);
    CHECK(obs_equiv_states(d, d, o));
    CHECK(obs_equiv_states(d, e, o) == obs_equiv_states(e, d, o));
    if (obs_equiv_states(d, e, o) && obs_equiv_states(e, f, o)) CHECK(obs_equiv_states(d, f, o));
  }
}

TEST_CASE("property: uniformity under finer observations") {
  testing::rng r(22);
  for (int i = 0; i < 200; ++i) {
    cks k = testing::random_model(r);
    const int n = k.dimension();
    CHECK(is_uniform_labelling(k, "p", observation::full(n)));
    std::vector<int> o, o2;
    for (int c = 1; c <= n; ++c) {
      bool in = testing::coin(r);
      if (in) o.push_back(c);
      if (in || testing::coin(r)) o2.push_back(c);
    }
    if (is_uniform_labelling(k, "p", observation(o))) CHECK(is_uniform_labelling(k, "p", observation(o2)));
  }
}
