#include <benchmark/benchmark.h>

#include <random>

#include "qctl/kripke.hpp"
#include "qctl/mc_structure.hpp"
#include "qctl/mc_tree.hpp"
#include "qctl/parity_game.hpp"
#include "qctl/tree_automata.hpp"

using namespace qctl;

namespace {

parity_game random_game(std::mt19937& rng, int n, int colours) {
  std::uniform_int_distribution<int> pos(0, n - 1), col(0, colours), coin(0, 1);
  parity_game g;
  for (int v = 0; v < n; ++v) g.add_position(coin(rng) ? player::eve : player::adam, col(rng));
  for (int v = 0; v < n; ++v)
    for (int e = 0; e < 3; ++e) g.succ[v].push_back(pos(rng));
  return g;
}

pbf_store::id random_pbf(std::mt19937& rng, ata& a, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 3), dir(0, a.dirs.size() - 1), q(0, a.num_states - 1);
  int k = pick(rng);
  if (k == 0) return pbf_store::bottom;
  if (k <= 3) return a.pbf.atom(dir(rng), q(rng));
  auto x = random_pbf(rng, a, depth - 1);
  auto y = random_pbf(rng, a, depth - 1);
  return k <= 5 ? a.pbf.conj(x, y) : a.pbf.disj(x, y);
}

ata random_ata(std::mt19937& rng, int states) {
  ata a;
  a.dirs = direction_space(local_alphabets(std::vector<std::vector<std::string>>{{"a", "b"}}), {1});
  a.atoms = {"p"};
  std::uniform_int_distribution<int> col(0, 3), coin(0, 1);
  for (int q = 0; q < states; ++q) a.add_state(col(rng), coin(rng));
  for (int q = 0; q < states; ++q)
    for (unsigned l = 0; l < a.num_letters(); ++l) a.set_transition(q, l, random_pbf(rng, a, 2));
  return a;
}

// n ≤ 4 states on a ring, each with a self-loop
std::string ring_model(int n) {
  std::string text = "locals 1: a b\nlocals 2: x y\n";
  const char* names[] = {"(a,x)", "(b,x)", "(a,y)", "(b,y)"};
  for (int s = 0; s < n; ++s) text += "state s" + std::to_string(s) + " = " + names[s] + "\n";
  for (int s = 0; s < n; ++s) {
    text += "edge s" + std::to_string(s) + " -> s" + std::to_string((s + 1) % n) + "\n";
    text += "edge s" + std::to_string(s) + " -> s" + std::to_string(s) + "\n";
  }
  text += "label s0: p\n";
  return text;
}

}  // namespace

static void BM_zielonka(benchmark::State& state) {
  std::mt19937 rng(7);
  auto g = random_game(rng, static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(solve_zielonka(g));
  state.counters["positions"] = static_cast<double>(g.size());
}
BENCHMARK(BM_zielonka)->RangeMultiplier(4)->Range(16, 4096);

static void BM_simulate(benchmark::State& state) {
  std::mt19937 rng(11);
  auto a = random_ata(rng, static_cast<int>(state.range(0)));
  int out = 0;
  for (auto _ : state) {
    auto n = simulate(a);
    out = n.num_states;
    benchmark::DoNotOptimize(n);
  }
  state.counters["nta_states"] = out;
}
BENCHMARK(BM_simulate)->DenseRange(1, 4);

static void BM_check_structure(benchmark::State& state) {
  cks k = parse_model(ring_model(4));
  auto f = parse_formula("exists q^{1}. exists r^{1,2}. (E X (q & !r) & E F (!q & r) & A G (p -> q))");
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_structure(k, f));
}
BENCHMARK(BM_check_structure);

static void BM_check_tree_line(benchmark::State& state) {
  cks k = parse_model(ring_model(static_cast<int>(state.range(0))));
  auto f = parse_formula("exists q^{}. (A F q & A G (q -> A X A G !q))");
  for (auto _ : state) benchmark::DoNotOptimize(check_tree(k, 0, f));
}
BENCHMARK(BM_check_tree_line)->DenseRange(1, 4);

BENCHMARK_MAIN();
