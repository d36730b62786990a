#include "qctl/kripke.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace qctl {

int cks::state_index(const std::string& name) const {
  auto it = std::find(state_names.begin(), state_names.end(), name);
  if (it == state_names.end()) throw model_error("unknown state '" + name + "'");
  return static_cast<int>(it - state_names.begin());
}

local_tuple cks::tuple(int s) const {
  local_tuple t;
  t.coords = observation::full(dimension()).indices();
  t.values = tuples.at(s);
  return t;
}

bool cks::holds(int s, const std::string& p) const {
  if (labels[s].count(p)) return true;
  if (auto l = local_of_prop(p)) {
    if (auto where = locals.find(*l)) return tuples[s][where->first - 1] == where->second;
  }
  return false;
}

bool cks::knows(const std::string& p) const {
  if (atoms.count(p)) return true;
  auto l = local_of_prop(p);
  return l && locals.find(*l).has_value();
}

void cks::validate() const {
  const int n = dimension();
  if (n < 1) throw model_error("model declares no local alphabets");
  const auto ns = state_names.size();
  if (ns == 0) throw model_error("model has no states");
  if (tuples.size() != ns || succ.size() != ns || labels.size() != ns)
    throw model_error("inconsistent state tables");
  std::map<std::vector<int>, int> seen;
  for (std::size_t s = 0; s < ns; ++s) {
    if (static_cast<int>(tuples[s].size()) != n)
      throw model_error("state '" + state_names[s] + "' has arity " + std::to_string(tuples[s].size()) +
                        ", expected " + std::to_string(n));
    for (int i = 0; i < n; ++i)
      if (tuples[s][i] < 0 || tuples[s][i] >= locals.alphabet_size(i + 1))
        throw model_error("state '" + state_names[s] + "' has an ill-typed coordinate " + std::to_string(i + 1));
    auto [it, fresh] = seen.emplace(tuples[s], static_cast<int>(s));
    if (!fresh)
      throw model_error("states '" + state_names[it->second] + "' and '" + state_names[s] +
                        "' are the same tuple");
    if (succ[s].empty())
      throw model_error("transition relation is not left-total: state '" + state_names[s] +
                        "' has no successor");
    for (int t : succ[s])
      if (t < 0 || t >= static_cast<int>(ns)) throw model_error("edge to an unknown state");
    for (const auto& p : labels[s])
      if (!atoms.count(p)) throw model_error("label '" + p + "' is not a declared atom");
  }
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw model_error("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

cks parse_model(std::string_view text) {
  std::map<int, std::vector<std::string>> alphabets;
  struct state_decl {
    std::string name;
    std::vector<std::string> locals;
    int line;
  };
  std::vector<state_decl> states;
  std::vector<std::tuple<std::string, std::string, int>> edges;
  std::vector<std::tuple<std::string, std::vector<std::string>, int>> label_lines;
  std::set<std::string> extra_atoms;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto sp = line.find_first_of(" \t");
    std::string keyword = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
    if (keyword == "locals") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) fail(lineno, "expected 'locals <i>: names'");
      int idx = 0;
      try {
        idx = std::stoi(trim(rest.substr(0, colon)));
      } catch (const std::exception&) {
        fail(lineno, "bad coordinate index");
      }
      if (idx < 1) fail(lineno, "coordinates start at 1");
      if (alphabets.count(idx)) fail(lineno, "alphabet " + std::to_string(idx) + " declared twice");
      alphabets[idx] = words(rest.substr(colon + 1));
      if (alphabets[idx].empty()) fail(lineno, "empty alphabet");
    } else if (keyword == "state") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail(lineno, "expected 'state <name> = (l1,...,ln)'");
      std::string name = trim(rest.substr(0, eq));
      std::string tup = trim(rest.substr(eq + 1));
      if (name.empty() || words(name).size() != 1) fail(lineno, "bad state name");
      if (tup.size() < 2 || tup.front() != '(' || tup.back() != ')') fail(lineno, "state tuple must be parenthesised");
      std::vector<std::string> comps;
      std::string inner = tup.substr(1, tup.size() - 2);
      std::istringstream cs(inner);
      std::string c;
      while (std::getline(cs, c, ',')) comps.push_back(trim(c));
      for (const auto& x : comps)
        if (x.empty()) fail(lineno, "empty tuple component");
      states.push_back({name, comps, lineno});
    } else if (keyword == "edge") {
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) fail(lineno, "expected 'edge <s> -> <t>'");
      edges.emplace_back(trim(rest.substr(0, arrow)), trim(rest.substr(arrow + 2)), lineno);
    } else if (keyword == "label") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) fail(lineno, "expected 'label <s>: props'");
      label_lines.emplace_back(trim(rest.substr(0, colon)), words(rest.substr(colon + 1)), lineno);
    } else if (keyword == "atoms") {
      for (auto& w : words(rest)) extra_atoms.insert(w);
    } else {
      fail(lineno, "unknown directive '" + keyword + "'");
    }
  }

  std::vector<std::vector<std::string>> names;
  for (int i = 1; i <= static_cast<int>(alphabets.size()); ++i) {
    auto it = alphabets.find(i);
    if (it == alphabets.end()) throw model_error("local alphabets must be numbered 1.." + std::to_string(alphabets.size()));
    names.push_back(it->second);
  }
  cks k;
  k.locals = local_alphabets(std::move(names));
  const int n = k.dimension();

  std::map<std::string, int> index;
  for (const auto& st : states) {
    if (index.count(st.name)) fail(st.line, "state '" + st.name + "' declared twice");
    if (static_cast<int>(st.locals.size()) != n)
      fail(st.line, "state '" + st.name + "' has arity " + std::to_string(st.locals.size()) + ", expected " +
                        std::to_string(n));
    std::vector<int> tup;
    for (int i = 0; i < n; ++i) {
      auto where = k.locals.find(st.locals[i]);
      if (!where) fail(st.line, "unknown local state '" + st.locals[i] + "'");
      if (where->first != i + 1)
        fail(st.line, "local state '" + st.locals[i] + "' belongs to coordinate " + std::to_string(where->first));
      tup.push_back(where->second);
    }
    index[st.name] = k.num_states();
    k.state_names.push_back(st.name);
    k.tuples.push_back(std::move(tup));
  }
  k.succ.assign(k.num_states(), {});
  k.labels.assign(k.num_states(), {});
  for (const auto& [from, to, line] : edges) {
    if (!index.count(from)) fail(line, "unknown state '" + from + "' in edge");
    if (!index.count(to)) fail(line, "unknown state '" + to + "' in edge");
    k.succ[index[from]].push_back(index[to]);
  }
  for (auto& s : k.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (const auto& [st, props, line] : label_lines) {
    if (!index.count(st)) fail(line, "unknown state '" + st + "' in label");
    for (const auto& p : props) {
      if (local_of_prop(p)) fail(line, "proposition '" + p + "' uses the reserved prefix 'at_'");
      k.labels[index[st]].insert(p);
      k.atoms.insert(p);
    }
  }
  k.atoms.insert(extra_atoms.begin(), extra_atoms.end());
  k.validate();
  return k;
}

cks load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw model_error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string to_string(const cks& k) {
  std::ostringstream out;
  for (int i = 1; i <= k.dimension(); ++i) {
    out << "locals " << i << ":";
    for (const auto& l : k.locals.alphabet(i)) out << " " << l;
    out << "\n";
  }
  for (int s = 0; s < k.num_states(); ++s) out << "state " << k.state_names[s] << " = " << to_string(k.locals, k.tuple(s)) << "\n";
  for (int s = 0; s < k.num_states(); ++s)
    for (int t : k.succ[s]) out << "edge " << k.state_names[s] << " -> " << k.state_names[t] << "\n";
  std::set<std::string> used;
  for (int s = 0; s < k.num_states(); ++s) {
    if (k.labels[s].empty()) continue;
    out << "label " << k.state_names[s] << ":";
    for (const auto& p : k.labels[s]) {
      out << " " << p;
      used.insert(p);
    }
    out << "\n";
  }
  std::string unused;
  for (const auto& p : k.atoms)
    if (!used.count(p)) unused += " " + p;
  if (!unused.empty()) out << "atoms" << unused << "\n";
  return out.str();
}

bool is_uniform_labelling(const cks& k, const std::string& p, const observation& o) {
  for (int s = 0; s < k.num_states(); ++s)
    for (int t = s + 1; t < k.num_states(); ++t)
      if (obs_equiv_states(k.tuple(s), k.tuple(t), o) && k.holds(s, p) != k.holds(t, p)) return false;
  return true;
}

finite_tree unfold_bounded(const cks& k, int s, int depth) {
  if (s < 0 || s >= k.num_states()) throw model_error("state index out of range");
  finite_tree t;
  t.locals = k.locals;
  t.coords = observation::full(k.dimension());
  t.depth = depth;
  std::vector<std::pair<tree_node, int>> frontier{{tree_node{k.tuple(s)}, s}};
  t.nodes[frontier[0].first] = k.labels[s];
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<tree_node, int>> next;
    for (const auto& [u, last] : frontier) {
      for (int v : k.succ[last]) {
        tree_node child = u;
        child.push_back(k.tuple(v));
        t.nodes[child] = k.labels[v];
        next.emplace_back(std::move(child), v);
      }
    }
    frontier = std::move(next);
  }
  return t;
}

}  // namespace qctl
