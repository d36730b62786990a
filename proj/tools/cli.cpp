#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qctl/kripke.hpp"
#include "qctl/mc_structure.hpp"
#include "qctl/mc_tree.hpp"
#include "qctl/translate.hpp"

#ifdef QCTL_HAVE_SELFTEST
#include "suites.hpp"
#endif

namespace qctl::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct formula_source {
  std::string text;
  std::string file;

  void add_to(CLI::App* cmd) {
    auto* f = cmd->add_option("--formula", text, "Formula text");
    auto* ff = cmd->add_option("--formula-file", file, "File holding the formula");
    f->excludes(ff);
  }
  formula_ptr load() const {
    if (text.empty() && file.empty()) throw CLI::RequiredError("--formula or --formula-file");
    return parse_formula(file.empty() ? text : read_file(file));
  }
};

local_alphabets parse_locals(const std::string& spec) {
  std::vector<std::vector<std::string>> names;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::istringstream words(part);
    std::vector<std::string> alphabet;
    for (std::string w; words >> w;) alphabet.push_back(w);
    names.push_back(std::move(alphabet));
  }
  return local_alphabets(std::move(names));
}

int check(const std::string& model, const std::string& state, const formula_source& src, const std::string& semantics,
          tree_check_options opts, std::ostream& out) {
  cks k = load_model(model);
  int s = k.state_index(state);
  formula_ptr f = src.load();
  auto start = std::chrono::steady_clock::now();
  bool result;
  std::ostringstream details;
  if (semantics == "structure") {
    result = check_structure(k, s, f);
  } else {
    tree_check_stats stats;
    result = check_tree(k, s, f, opts, &stats);
    details << "automata built: " << stats.automata_built << "\n"
            << "largest automaton: " << stats.largest_automaton << " states\n"
            << "final automaton: " << stats.final_states << " states\n"
            << "game positions: " << stats.game_positions << "\n";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "RESULT: " << (result ? "TRUE" : "FALSE") << "\n"
      << "semantics: " << semantics << "\n"
      << "formula size: " << formula_size(*f) << "\n"
      << "model states: " << k.num_states() << "\n"
      << details.str() << "time: " << std::fixed << std::setprecision(3) << secs << " s\n";
  return result ? holds : fails;
}

int dump_automata(const std::string& model, const std::string& state, const formula_source& src,
                  tree_check_options opts, std::ostream& out) {
  cks k = load_model(model);
  int s = k.state_index(state);
  tree_checker checker(k, src.load(), opts);
  ata a = checker.automaton(checker.formula(), s);
  out << "# " << to_string(checker.formula()) << "\n" << dump(a);
  return holds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checker for quantified CTL* with imperfect information", "qctl"};
  app.require_subcommand(1);

  std::string model, state, semantics, dump_dir, locals_spec;
  tree_check_options opts;
  formula_source check_src, translate_src, dump_src;

  auto* c = app.add_subcommand("check", "Decide K, s |= formula");
  c->add_option("--model", model, "Model file")->required();
  c->add_option("--state", state, "State name")->required();
  check_src.add_to(c);
  c->add_option("--semantics", semantics, "structure or tree")
      ->required()
      ->check(CLI::IsMember({"structure", "tree"}));
  c->add_option("--dump-automata", opts.dump_dir, "Write every built automaton to this directory");
  c->add_option("--max-states", opts.max_simulated_states, "Size limit for simulated automata");
  c->add_option("--max-quantifier-depth", opts.max_quantifier_depth, "Nesting limit for quantifiers");

  auto* t = app.add_subcommand("translate", "Rewrite a QCTL_ii formula into plain QCTL");
  translate_src.add_to(t);
  auto* tm = t->add_option("--model", model, "Take the local alphabets from a model file");
  auto* tl = t->add_option("--locals", locals_spec, "Local alphabets, e.g. \"a b; x y\"");
  tm->excludes(tl);

  auto* d = app.add_subcommand("dump-automata", "Print the automaton built for a formula");
  d->add_option("--model", model, "Model file")->required();
  d->add_option("--state", state, "State name")->required();
  dump_src.add_to(d);
  d->add_option("--out", opts.dump_dir, "Also write every intermediate automaton here");
  d->add_option("--max-states", opts.max_simulated_states, "Size limit for simulated automata");
  d->add_option("--max-quantifier-depth", opts.max_quantifier_depth, "Nesting limit for quantifiers");

  auto* st = app.add_subcommand("selftest", "Run the acceptance suites");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? holds : usage;
  }

  try {
    if (c->parsed()) return check(model, state, check_src, semantics, opts, out);
    if (t->parsed()) {
      if (model.empty() && locals_spec.empty()) throw CLI::RequiredError("--model or --locals");
      local_alphabets locals = model.empty() ? parse_locals(locals_spec) : load_model(model).locals;
      out << to_string(translate_structural(translate_src.load(), locals)) << "\n";
      return holds;
    }
    if (d->parsed()) return dump_automata(model, state, dump_src, opts, out);
    if (st->parsed()) {
#ifdef QCTL_HAVE_SELFTEST
      auto results = acceptance::run_all(out);
      for (const auto& r : results)
        if (!r.passed) return fails;
      return holds;
#else
      err << "selftest is not available in this build\n";
      return usage;
#endif
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const resource_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return resource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace qctl::cli
