#include "formal/cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "formal/bridge.hpp"
#include "formal/combinator.hpp"
#include "formal/derivation.hpp"
#include "formal/string_system.hpp"

namespace formal::cli {

namespace {

using nlohmann::json;

/// Usage, I/O and budget failures; always exit 2.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::optional<std::size_t> max_steps;
};

bool is_builtin(const std::string& source) {
  return source == "builtin" || source == "builtin-increment" || source == "increment";
}

StringSystem load_system(const std::string& source) {
  if (is_builtin(source)) return increment_system();
  try {
    return load_string_system(source);
  } catch (const SyntaxError& e) {
    throw Failure(source + ": " + e.what());
  } catch (const std::exception& e) {
    throw Failure(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t budget(const std::optional<std::size_t>& local, const Options& opt, std::size_t fallback) {
  if (local) return *local;
  if (opt.max_steps) return *opt.max_steps;
  return fallback;
}

template <class A>
void emit_transcript(const Derivation<A>& d, const Options& opt, std::ostream& out) {
  if (opt.json)
    out << derivation_to_json(d).dump(2) << "\n";
  else
    out << serialize_derivation(d);
}

Word word_arg(const std::string& text) {
  try {
    return Word::from_text(text);
  } catch (const std::exception& e) {
    throw Failure("invalid word '" + text + "': " + e.what());
  }
}

Term term_arg(const std::string& text) {
  try {
    return parse_term(text);
  } catch (const SyntaxError& e) {
    throw Failure("invalid term '" + text + "': " + e.what());
  }
}

int report_search(const DeriveResult& r, const Options& opt, std::ostream& out, std::ostream& err) {
  switch (r.status) {
    case SearchStatus::found:
      emit_transcript(*r.derivation, opt, out);
      return kOk;
    case SearchStatus::not_found:
      if (opt.json) out << json{{"result", "not-found"}, {"explored", r.explored}}.dump() << "\n";
      err << "not found: goal is unreachable (" << r.explored << " arrangements explored)\n";
      return kRejected;
    case SearchStatus::budget_exhausted:
      if (opt.json) out << json{{"result", "budget-exhausted"}, {"explored", r.explored}}.dump() << "\n";
      err << "budget exhausted after " << r.explored << " arrangements\n";
      return kFailure;
  }
  return kFailure;
}

int cmd_increment(std::uint64_t n, const Options& opt, std::ostream& out, std::ostream& err) {
  if (n == std::numeric_limits<std::uint64_t>::max()) throw Failure("n is too large");
  const StringSystem sys = increment_system();
  const Word bumped = to_binary_word(n).concat(Word(U"↑"));
  const Word start = instantiate_axiom(sys.axioms().front(), {{"x", bumped}});
  const Word goal = bumped.concat(Word(U"=")).concat(to_binary_word(n + 1));
  return report_search(derive(sys, start, goal, budget(std::nullopt, opt, kDefaultSearchBudget)), opt,
                       out, err);
}

int cmd_derive(const std::string& source, const std::string& start, const std::string& goal,
               std::optional<std::size_t> max, const Options& opt, std::ostream& out,
               std::ostream& err) {
  const StringSystem sys = load_system(source);
  const Word s = word_arg(start);
  const Word g = word_arg(goal);
  if (!s.over(sys.alphabet()) || !g.over(sys.alphabet()))
    throw Failure("start and goal must use only the system alphabet");
  return report_search(derive(sys, s, g, budget(max, opt, kDefaultSearchBudget)), opt, out, err);
}

int cmd_verify(const std::string& source, const std::string& path, bool any_start, const Options& opt,
               std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  AnyDerivation d = [&] {
    try {
      return parse_derivation(text);
    } catch (const SyntaxError& e) {
      throw Failure(path + ": " + e.what());
    }
  }();
  Verdict v;
  if (auto* wd = std::get_if<WordDerivation>(&d)) {
    v = verify(load_system(source), *wd, any_start ? StartMode::any : StartMode::axiom);
  } else {
    if (!is_builtin(source) && source != "sk" && source != "builtin-sk")
      throw Failure("term transcripts are checked against the built-in combinator rules; use 'builtin'");
    v = verify_derivation(std::get<TermDerivation>(d));
  }
  if (opt.json) out << v.to_json().dump() << "\n";
  if (v) {
    if (!opt.json) out << "accept\n";
    return kOk;
  }
  err << v.str() << "\n";
  return kRejected;
}

int cmd_normalize(const std::string& text, std::optional<std::size_t> max, bool trace, const Options& opt,
                  std::ostream& out, std::ostream& err) {
  const Term t = term_arg(text);
  const auto res = normalize(t, budget(max, opt, kDefaultNormalizeBudget));
  if (!res) {
    err << "budget exceeded after " << res.derivation.size() << " steps\n";
    return kFailure;
  }
  if (trace) {
    emit_transcript(res.derivation, opt, out);
  } else if (opt.json) {
    out << json{{"normal_form", print_term(res.term)}, {"steps", res.derivation.size()}}.dump() << "\n";
  } else {
    out << print_term(res.term) << "\n";
  }
  return kOk;
}

int cmd_abstract(const std::string& var, const std::string& text, const Options& opt, std::ostream& out) {
  if (!is_variable_name(var)) throw Failure("'" + var + "' is not a variable name");
  const Term result = abstract_var(var, term_arg(text));
  if (opt.json)
    out << json{{"term", print_term(result)}}.dump() << "\n";
  else
    out << print_term(result) << "\n";
  return kOk;
}

int cmd_compile(const std::string& text, const Options& opt, std::ostream& out) {
  const Term result = [&] {
    try {
      return compile_lambda(parse_lambda(text));
    } catch (const SyntaxError& e) {
      throw Failure("invalid lambda expression: " + std::string(e.what()));
    }
  }();
  if (opt.json)
    out << json{{"term", print_term(result)}, {"ground", result.ground()}}.dump() << "\n";
  else
    out << print_term(result) << "\n";
  return kOk;
}

inline constexpr std::uint64_t kArithLimit = 64;

std::uint64_t arith_int(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Failure("arith: expected a decimal integer, got '" + std::string(s) + "'");
  if (v > kArithLimit) throw Failure("arith: integers are limited to " + std::to_string(kArithLimit));
  return v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int cmd_arith(const std::string& expr, const Options& opt, std::ostream& out, std::ostream& err) {
  std::string_view e = strip(expr);
  Term program = Term::S();
  if (e.substr(0, 4) == "succ" && (e.size() == 4 || std::isspace(static_cast<unsigned char>(e[4])))) {
    program = Term::app(succ_term(), church(arith_int(strip(e.substr(4)))));
  } else if (auto plus = e.find('+'); plus != std::string_view::npos) {
    program = Term::app(Term::app(add_term(), church(arith_int(strip(e.substr(0, plus))))),
                        church(arith_int(strip(e.substr(plus + 1)))));
  } else {
    throw Failure("arith: expected '<int> + <int>' or 'succ <int>'");
  }
  const std::size_t steps = budget(std::nullopt, opt, kDefaultNormalizeBudget);
  auto nf = normal_form(program, steps);
  if (!nf) {
    err << "budget exceeded after " << steps << " steps\n";
    return kFailure;
  }
  std::uint64_t value = 0;
  try {
    value = unchurch(*nf, steps);
  } catch (const BudgetExceeded& ex) {
    err << ex.what() << "\n";
    return kFailure;
  }
  if (opt.json)
    out << json{{"value", value}, {"normal_form", print_term(*nf)}}.dump() << "\n";
  else
    out << value << "\n";
  return kOk;
}

// Kind-erased view of a derivation under construction, for the REPL.
struct Session {
  std::function<std::string()> show;
  std::function<std::vector<std::string>()> choices;
  std::function<void(std::size_t)> select;
  std::function<bool()> undo;
  std::function<std::string()> transcript;
};

Session word_session(StringSystem sys, const Word& start) {
  auto st = std::make_shared<std::pair<StringSystem, WordDerivation>>(std::move(sys), WordDerivation(start));
  Session s;
  s.show = [st] { return st->second.last().str(); };
  s.choices = [st] {
    std::vector<std::string> out;
    for (const auto& rx : find_redexes(st->first, st->second.last())) out.push_back(rx.rule + " @ " + rx.span.str());
    return out;
  };
  s.select = [st](std::size_t i) {
    const auto rx = find_redexes(st->first, st->second.last()).at(i);
    Word next = apply_rule(st->second.last(), *st->first.rule(rx.rule), rx.span);
    st->second.push({rx.rule, rx.span, {}}, std::move(next));
  };
  s.undo = [st] {
    if (st->second.size() == 0) return false;
    st->second.pop();
    return true;
  };
  s.transcript = [st] { return serialize_derivation(st->second); };
  return s;
}

Session term_session(const Term& start) {
  auto st = std::make_shared<TermDerivation>(start);
  Session s;
  s.show = [st] { return print_term(st->last()); };
  s.choices = [st] {
    std::vector<std::string> out;
    for (const auto& rx : find_redexes(st->last()))
      out.push_back(std::string(rule_name(rx.rule)) + " @ " + rx.path.str());
    return out;
  };
  s.select = [st](std::size_t i) {
    const auto rx = find_redexes(st->last()).at(i);
    const Term redex = *subterm_at(st->last(), rx.path);
    Term next = contract(st->last(), rx.rule, rx.path);
    st->push({std::string(rule_name(rx.rule)), rx.path, redex_bindings(redex, rx.rule)}, std::move(next));
  };
  s.undo = [st] {
    if (st->size() == 0) return false;
    st->pop();
    return true;
  };
  s.transcript = [st] { return serialize_derivation(*st); };
  return s;
}

int cmd_repl(const std::string& kind, const std::string& start, const std::string& system, std::istream& in,
             std::ostream& out) {
  Session s;
  if (kind == "word")
    s = word_session(load_system(system), word_arg(start));
  else if (kind == "term")
    s = term_session(term_arg(start));
  else
    throw Failure("repl kind must be 'word' or 'term'");

  out << "commands: <index> contract, u undo, w <path> write transcript, q quit\n";
  std::size_t step = 0;
  std::string line;
  while (true) {
    const auto choices = s.choices();
    out << "[" << step << "] " << s.show() << "\n";
    if (choices.empty()) out << "  (normal form)\n";
    for (std::size_t i = 0; i < choices.size(); ++i) out << "  " << i << ": " << choices[i] << "\n";
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    const std::string_view cmd = strip(line);
    if (cmd.empty()) continue;
    if (cmd == "q") break;
    if (cmd == "u") {
      if (s.undo())
        --step;
      else
        out << "nothing to undo\n";
      continue;
    }
    if (cmd.front() == 'w' && (cmd.size() == 1 || std::isspace(static_cast<unsigned char>(cmd[1])))) {
      const std::string path(strip(cmd.substr(1)));
      if (path.empty()) {
        out << "usage: w <path>\n";
        continue;
      }
      std::ofstream file(path, std::ios::binary);
      if (!(file << s.transcript())) {
        out << "cannot write '" << path << "'\n";
        continue;
      }
      out << "wrote " << path << "\n";
      continue;
    }
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(cmd.data(), cmd.data() + cmd.size(), index);
    if (ec != std::errc{} || ptr != cmd.data() + cmd.size() || index >= choices.size()) {
      out << "invalid selection '" << cmd << "'\n";
      continue;
    }
    s.select(index);
    ++step;
  }
  out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for string-rewriting systems and the S/K combinator calculus", "formal"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::size_t max_steps = 0;
  app.add_flag("--json", opt.json, "Emit JSON instead of text");
  auto* max_opt = app.add_option("--max-steps", max_steps, "Budget for search and normalization");

  std::uint64_t n = 0;
  auto* increment = app.add_subcommand("increment", "Derive bin(n)↑=bin(n)↑ to bin(n)↑=bin(n+1)");
  increment->add_option("n", n, "Nonnegative integer")->required();

  std::string source, start, goal, path;
  std::optional<std::size_t> max;
  auto* derive_cmd = app.add_subcommand("derive", "Shortest derivation between two words");
  derive_cmd->add_option("system", source, "System file, or 'builtin'")->required();
  derive_cmd->add_option("start", start)->required();
  derive_cmd->add_option("goal", goal)->required();
  derive_cmd->add_option("max", max, "Arrangement budget");

  bool any_start = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check a transcript step by step");
  verify_cmd->add_option("system", source, "System file, or 'builtin'")->required();
  verify_cmd->add_option("transcript", path)->required();
  verify_cmd->add_flag("--from-any-start", any_start, "Do not require the initial word to be an axiom");

  std::string text;
  bool trace = false;
  auto* normalize_cmd = app.add_subcommand("normalize", "Leftmost-outermost normal form of a term");
  normalize_cmd->add_option("term", text)->required();
  normalize_cmd->add_option("max", max, "Step budget");
  normalize_cmd->add_flag("--trace", trace, "Print the full derivation");

  std::string var;
  auto* abstract_cmd = app.add_subcommand("abstract", "Bracket abstraction of one variable");
  abstract_cmd->add_option("var", var)->required();
  abstract_cmd->add_option("term", text)->required();

  auto* compile_cmd = app.add_subcommand("compile", "Compile a lambda expression to S/K");
  compile_cmd->add_option("expr", text)->required();

  auto* arith_cmd = app.add_subcommand("arith", "Evaluate 'm + n' or 'succ n' by S/K reduction");
  arith_cmd->add_option("expr", text)->required();

  std::string kind, system = "builtin";
  auto* repl_cmd = app.add_subcommand("repl", "Contract redexes interactively");
  repl_cmd->add_option("kind", kind, "word or term")->required();
  repl_cmd->add_option("start", start)->required();
  repl_cmd->add_option("--system", system, "System file for word sessions");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kFailure;
  }
  if (max_opt->count()) opt.max_steps = max_steps;

  try {
    if (increment->parsed()) return cmd_increment(n, opt, out, err);
    if (derive_cmd->parsed()) return cmd_derive(source, start, goal, max, opt, out, err);
    if (verify_cmd->parsed()) return cmd_verify(source, path, any_start, opt, out, err);
    if (normalize_cmd->parsed()) return cmd_normalize(text, max, trace, opt, out, err);
    if (abstract_cmd->parsed()) return cmd_abstract(var, text, opt, out);
    if (compile_cmd->parsed()) return cmd_compile(text, opt, out);
    if (arith_cmd->parsed()) return cmd_arith(text, opt, out, err);
    if (repl_cmd->parsed()) return cmd_repl(kind, start, system, in, out);
  } catch (const Failure& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace formal::cli
