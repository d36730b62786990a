#include "random.hpp"

#include <algorithm>
#include <set>

namespace qctl::testing {

int uniform(rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }

bool coin(rng& r, double p) { return std::bernoulli_distribution(p)(r); }

local_alphabets random_locals(rng& r, int max_dimension, int max_alphabet) {
  static const char* letters[] = {"a", "b", "c", "x", "y", "z"};
  int n = uniform(r, 1, max_dimension);
  std::vector<std::vector<std::string>> names;
  for (int i = 0; i < n; ++i) {
    int m = uniform(r, 1, max_alphabet);
    std::vector<std::string> alpha;
    for (int j = 0; j < m; ++j) alpha.push_back(std::string(letters[3 * i + j]) + std::to_string(i + 1));
    names.push_back(alpha);
  }
  return local_alphabets(names);
}

cks random_model(rng& r, const model_params& mp) {
  cks k;
  // single-state models say nothing about observations; keep a few
  do k.locals = random_locals(r, mp.max_dimension, mp.max_alphabet);
  while (direction_space(k.locals, observation::full(k.dimension())).size() < 2 && !coin(r, 0.1));
  direction_space all(k.locals, observation::full(k.dimension()));
  std::vector<int> pool(all.size());
  for (int i = 0; i < all.size(); ++i) pool[i] = i;
  std::shuffle(pool.begin(), pool.end(), r);
  int most = std::min<int>(mp.max_states, all.size());
  int ns = uniform(r, std::min(2, most), most);
  for (int s = 0; s < ns; ++s) {
    k.state_names.push_back("s" + std::to_string(s));
    k.tuples.push_back(all.at(pool[s]).values);
  }
  k.succ.assign(ns, {});
  k.labels.assign(ns, {});
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < ns; ++t)
      if (coin(r, 0.4)) k.succ[s].push_back(t);
    if (k.succ[s].empty()) k.succ[s].push_back(uniform(r, 0, ns - 1));
    for (const auto& p : mp.props)
      if (coin(r, 0.4)) k.labels[s].insert(p);
  }
  k.atoms.insert(mp.props.begin(), mp.props.end());
  k.validate();
  return k;
}

namespace {

struct formula_gen {
  rng& r;
  const formula_params& fp;

  observation random_obs(const observation& outer) {
    std::vector<int> idx;
    for (int i = 1; i <= fp.dimension + 1; ++i)
      if (outer.contains(i) || coin(r, 0.35)) idx.push_back(i);
    return observation(idx);
  }

  formula_ptr leaf(const std::vector<std::string>& bound) {
    if (!bound.empty() && coin(r, 0.5)) {
      // bias towards the innermost binders
      int i = static_cast<int>(bound.size()) - 1;
      while (i > 0 && coin(r, 0.3)) --i;
      auto p = make_prop(bound[i]);
      return coin(r, 0.4) ? make_not(p) : p;
    }
    int pick = uniform(r, 0, 19);
    if (pick == 0) return make_true();
    if (pick == 1) return make_false();
    const auto& pool = fp.free_props;
    return make_prop(pool[uniform(r, 0, static_cast<int>(pool.size()) - 1)]);
  }

  formula_ptr ctl(int depth, std::vector<std::string>& bound, int quants, const observation& outer) {
    auto sub = [&] { return state(depth - 1, bound, quants, outer); };
    switch (uniform(r, 0, 5)) {
      case 0: return make_E(make_next(sub()));
      case 1: return make_A(make_next(sub()));
      case 2: { auto a = sub(); return make_E(make_until(a, sub())); }
      case 3: { auto a = sub(); return make_A(make_until(a, sub())); }
      case 4: return coin(r) ? make_E(make_F(sub())) : make_A(make_F(sub()));
      default: return coin(r) ? make_E(make_G(sub())) : make_A(make_G(sub()));
    }
  }

  formula_ptr context(int depth, formula_ptr core, std::vector<std::string>& bound, int quants, const observation& outer) {
    if (depth <= 0) return core;
    if (depth >= 2 && coin(r, 0.3)) core = context(depth - 1, core, bound, quants, outer);
    if (coin(r, 0.3)) {
      auto side = state(depth - 1, bound, quants, outer);
      core = coin(r) ? make_and(core, side) : make_or(core, side);
    }
    switch (uniform(r, 0, 7)) {
      case 0: return make_E(make_next(core));
      case 1: return make_A(make_next(core));
      case 2: return make_E(make_F(core));
      case 3: return make_A(make_F(core));
      case 4: return make_E(make_G(core));
      case 5: return make_A(make_G(core));
      case 6: return make_E(make_until(state(depth - 1, bound, quants, outer), core));
      default: return make_A(make_until(state(depth - 1, bound, quants, outer), core));
    }
  }

  formula_ptr path(int depth, std::vector<std::string>& bound, int quants, const observation& outer) {
    if (depth <= 1) {
      auto a = leaf(bound);
      switch (uniform(r, 0, 3)) {
        case 0: return make_next(a);
        case 1: return make_until(a, leaf(bound));
        case 2: return make_F(a);
        default: return make_G(a);
      }
    }
    if (coin(r, 0.25)) return state(depth - 1, bound, quants, outer);
    auto sub = [&] { return path(depth - 1, bound, quants, outer); };
    switch (uniform(r, 0, 5)) {
      case 0: return make_not(sub());
      case 1: return make_next(sub());
      case 2: { auto a = sub(); return make_until(a, sub()); }
      case 3: { auto a = sub(); return make_and(a, sub()); }
      case 4: { auto a = sub(); return make_or(a, sub()); }
      default: return coin(r) ? make_F(sub()) : make_G(sub());
    }
  }

  formula_ptr state(int depth, std::vector<std::string>& bound, int quants, const observation& outer) {
    if (depth <= 0) return leaf(bound);
    int pick = uniform(r, 0, 9);
    if (pick <= 1) return make_not(state(depth - 1, bound, quants, outer));
    if (pick == 2) {
      auto a = state(depth - 1, bound, quants, outer);
      return coin(r) ? make_and(a, state(depth - 1, bound, quants, outer))
                     : make_or(a, state(depth - 1, bound, quants, outer));
    }
    if (pick <= 5 && quants < fp.max_quantifiers) {
      std::string p = fp.binders[uniform(r, 0, static_cast<int>(fp.binders.size()) - 1)];
      if (coin(r, 0.3)) p = fp.free_props[0];  // shadow a free proposition now and then
      observation o = fp.hierarchical ? random_obs(outer) : random_obs({});
      bool plain = coin(r, 0.15);
      if (plain) o = observation::full(fp.dimension + 1);
      bound.push_back(p);
      formula_ptr body;
      if (depth >= 2 && coin(r, 0.6)) {
        // p and ¬p in two temporal contexts: the shape observations constrain
        auto a = context(depth - 1, make_prop(p), bound, quants + 1, o);
        auto b = context(depth - 1, make_not(make_prop(p)), bound, quants + 1, o);
        body = coin(r, 0.8) ? make_and(a, b) : make_or(a, b);
      } else {
        body = state(depth - 1, bound, quants + 1, o);
      }
      bound.pop_back();
      return plain ? make_exists(p, body) : make_exists(p, o, body);
    }
    if (fp.ctl_only || coin(r)) return ctl(depth, bound, quants, outer);
    return coin(r) ? make_E(path(depth, bound, quants, outer)) : make_A(path(depth, bound, quants, outer));
  }
};

formula_ptr ltl_of_size(rng& r, const std::vector<std::string>& atoms, int size) {
  if (size <= 1) return coin(r, 0.1) ? make_true() : make_prop(atoms[uniform(r, 0, static_cast<int>(atoms.size()) - 1)]);
  if (size == 2 || coin(r, 0.4)) {
    auto sub = ltl_of_size(r, atoms, size - 1);
    switch (uniform(r, 0, 3)) {
      case 0: return make_not(sub);
      case 1: return make_next(sub);
      case 2: return make_F(sub);
      default: return make_G(sub);
    }
  }
  int left = uniform(r, 1, size - 2);
  auto a = ltl_of_size(r, atoms, left);
  auto b = ltl_of_size(r, atoms, size - 1 - left);
  switch (uniform(r, 0, 2)) {
    case 0: return make_until(a, b);
    case 1: return make_and(a, b);
    default: return make_or(a, b);
  }
}

pbf_store::id random_pbf(rng& r, ata& a, int depth) {
  int pick = uniform(r, 0, depth > 0 ? 9 : 5);
  if (pick == 0) return pbf_store::top;
  if (pick == 1) return pbf_store::bottom;
  if (pick <= 5) return a.pbf.atom(uniform(r, 0, a.dirs.size() - 1), uniform(r, 0, a.num_states - 1));
  auto x = random_pbf(r, a, depth - 1);
  auto y = random_pbf(r, a, depth - 1);
  return pick <= 7 ? a.pbf.conj(x, y) : a.pbf.disj(x, y);
}

}  // namespace

formula_ptr random_state_formula(rng& r, const formula_params& fp) {
  formula_gen g{r, fp};
  std::vector<std::string> bound;
  return g.state(fp.depth, bound, 0, {});
}

formula_ptr random_ltl(rng& r, const std::vector<std::string>& atoms, int size) { return ltl_of_size(r, atoms, size); }

lasso_word random_lasso(rng& r, const std::vector<std::string>& atoms, int max_prefix, int max_loop) {
  auto letter = [&] {
    std::set<std::string> l;
    for (const auto& a : atoms)
      if (coin(r)) l.insert(a);
    return l;
  };
  lasso_word w;
  for (int i = uniform(r, 0, max_prefix); i > 0; --i) w.prefix.push_back(letter());
  for (int i = uniform(r, 1, max_loop); i > 0; --i) w.loop.push_back(letter());
  return w;
}

ata random_ata(rng& r, const direction_space& dirs, const std::vector<std::string>& atoms, int max_states) {
  ata a;
  a.dirs = dirs;
  a.atoms = atoms;
  int ns = uniform(r, 1, max_states);
  for (int q = 0; q < ns; ++q) a.add_state(uniform(r, 0, 3), coin(r));
  for (int q = 0; q < ns; ++q)
    for (unsigned l = 0; l < a.num_letters(); ++l) a.set_transition(q, l, random_pbf(r, a, 2));
  a.validate();
  return a;
}

regular_tree random_regular_tree(rng& r, const direction_space& dirs, const std::vector<std::string>& atoms,
                                 int max_vertices, double missing) {
  regular_tree t;
  t.dirs = dirs;
  int nv = uniform(r, 1, max_vertices);
  for (int v = 0; v < nv; ++v) {
    std::set<std::string> label;
    for (const auto& p : atoms)
      if (coin(r)) label.insert(p);
    t.add_vertex(label);
  }
  for (int v = 0; v < nv; ++v) {
    for (int d = 0; d < dirs.size(); ++d) t.child[v][d] = coin(r, missing) ? -1 : uniform(r, 0, nv - 1);
    int keep = uniform(r, 0, dirs.size() - 1);
    if (t.child[v][keep] < 0) t.child[v][keep] = uniform(r, 0, nv - 1);
  }
  t.validate();
  return t;
}

parity_game random_game(rng& r, int max_positions, int max_colour) {
  parity_game g;
  int n = uniform(r, 1, max_positions);
  for (int v = 0; v < n; ++v) g.add_position(coin(r) ? player::eve : player::adam, uniform(r, 0, max_colour));
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w)
      if (coin(r, 0.35)) g.succ[v].push_back(w);
    if (g.succ[v].empty()) {
      if (coin(r, 0.25))
        g.deadlock[v] = coin(r) ? player::eve : player::adam;
      else
        g.succ[v].push_back(uniform(r, 0, n - 1));
    }
  }
  g.validate();
  return g;
}

}  // namespace qctl::testing
