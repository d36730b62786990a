#include "qctl/translate.hpp"

namespace qctl {

namespace {

// AG x as ¬E(true U ¬x).
formula_ptr always(formula_ptr x) { return make_not(make_E(make_until(make_true(), make_not(std::move(x))))); }

formula_ptr uniformity(const std::string& p, const observation& J, const local_alphabets& locals) {
  direction_space classes(locals, J);
  std::vector<formula_ptr> clauses;
  for (int c = 0; c < classes.size(); ++c) {
    local_tuple t = classes.at(c);
    std::vector<formula_ptr> at;
    for (std::size_t k = 0; k < t.coords.size(); ++k)
      at.push_back(make_prop(local_prop_name(locals.alphabet(t.coords[k])[t.values[k]])));
    formula_ptr in_class = make_and_all(at);
    clauses.push_back(make_or(always(make_implies(in_class, make_prop(p))),
                              always(make_implies(in_class, make_not(make_prop(p))))));
  }
  return make_and_all(clauses);
}

formula_ptr go(const formula_ptr& f, const local_alphabets& locals) {
  const int n = locals.dimension();
  switch (f->kind) {
    case op::tt:
    case op::prop:
      return f;
    case op::neg:
      return make_not(go(f->lhs, locals));
    case op::disj:
      return make_or(go(f->lhs, locals), go(f->rhs, locals));
    case op::conj:
      return make_and(go(f->lhs, locals), go(f->rhs, locals));
    case op::exists_path: {
      auto m = match_ctl(*f);
      if (!m) throw unsupported_formula("not a QCTL_ii formula: '" + to_string(f) + "' is not a CTL path quantifier");
      formula_ptr a = go(m->first, locals);
      formula_ptr path;
      if (m->shape == ctl_shape::ex || m->shape == ctl_shape::ax) {
        path = make_next(a);
      } else {
        path = make_until(a, go(m->second, locals));
      }
      return make_E(m->negated_operand ? make_not(path) : path);
    }
    case op::exists_prop: {
      observation J = f->full_obs ? observation::full(n) : f->obs.restrict_to(n);
      return make_exists(f->name, make_and(uniformity(f->name, J, locals), go(f->lhs, locals)));
    }
    case op::next:
    case op::until:
      break;
  }
  throw unsupported_formula("translation expects a state formula");
}

}  // namespace

formula_ptr translate_structural(const formula_ptr& f, const local_alphabets& locals) {
  if (!is_state_formula(*f)) throw unsupported_formula("translation expects a state formula");
  return go(f, locals);
}

}  // namespace qctl
