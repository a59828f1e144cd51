#include "formal/bridge.hpp"

#include <vector>

#include "formal/word.hpp"

namespace formal {

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  collect_vars(t.left(), out);
  collect_vars(t.right(), out);
}

bool occurs(const Term& t, std::string_view x) {
  if (t.ground()) return false;
  if (t.is_var()) return t.name() == x;
  return occurs(t.left(), x) || occurs(t.right(), x);
}

template <class Lookup>
Term substitute_with(const Term& t, const Lookup& lookup) {
  if (t.ground()) return t;
  if (t.is_var()) {
    const Term* n = lookup(t.name());
    return n ? *n : t;
  }
  Term l = substitute_with(t.left(), lookup);
  Term r = substitute_with(t.right(), lookup);
  if (l.same_node(t.left()) && r.same_node(t.right())) return t;
  return Term::app(std::move(l), std::move(r));
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

Term substitute(const Term& t, std::string_view x, const Term& n) {
  return substitute_with(t, [&](const std::string& name) { return name == x ? &n : nullptr; });
}

Term substitute(const Term& t, const std::map<std::string, Term>& sub) {
  return substitute_with(t, [&](const std::string& name) -> const Term* {
    auto it = sub.find(name);
    return it == sub.end() ? nullptr : &it->second;
  });
}

Term abstract_var(std::string_view x, const Term& t) {
  if (t.is_var() && t.name() == x) return Term::app(Term::app(Term::S(), Term::K()), Term::K());
  if (!occurs(t, x)) return Term::app(Term::K(), t);
  return Term::app(Term::app(Term::S(), abstract_var(x, t.left())), abstract_var(x, t.right()));
}

LambdaExpr LambdaExpr::var(std::string name) {
  if (!is_variable_name(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
  return LambdaExpr(Var{std::move(name)});
}

LambdaExpr LambdaExpr::apply(LambdaExpr fun, LambdaExpr arg) {
  return LambdaExpr(Apply{std::make_shared<const LambdaExpr>(std::move(fun)),
                          std::make_shared<const LambdaExpr>(std::move(arg))});
}

LambdaExpr LambdaExpr::bind(std::string name, LambdaExpr body) {
  if (!is_variable_name(name)) throw std::invalid_argument("invalid binder name '" + name + "'");
  return LambdaExpr(Bind{std::move(name), std::make_shared<const LambdaExpr>(std::move(body))});
}

namespace {

class LambdaParser {
 public:
  explicit LambdaParser(std::string_view text) : text_(text) {}

  LambdaExpr parse() {
    LambdaExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, 1, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool at_lambda() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    return text_[pos_] == '\\' || text_.substr(pos_, 2) == "λ";
  }

  bool at_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == 'S' || c == 'K' || (c >= 'a' && c <= 'z');
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
    if (pos_ == start) fail("expected a variable name");
    return std::string(text_.substr(start, pos_ - start));
  }

  LambdaExpr expr() {
    if (at_lambda()) return lambda();
    if (!at_atom()) fail("expected an expression");
    LambdaExpr e = atom();
    while (true) {
      if (at_atom()) {
        e = LambdaExpr::apply(std::move(e), atom());
      } else if (at_lambda()) {
        return LambdaExpr::apply(std::move(e), lambda());
      } else {
        return e;
      }
    }
  }

  LambdaExpr lambda() {
    pos_ += text_[pos_] == '\\' ? 1 : 2;
    std::vector<std::string> names{ident()};
    while (true) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '.') break;
      if (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') {
        names.push_back(ident());
        continue;
      }
      fail("expected '.' after binder");
    }
    ++pos_;
    LambdaExpr body = expr();
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = LambdaExpr::bind(*it, std::move(body));
    return body;
  }

  LambdaExpr atom() {
    char c = text_[pos_];
    if (c == 'S') {
      ++pos_;
      return LambdaExpr::s();
    }
    if (c == 'K') {
      ++pos_;
      return LambdaExpr::k();
    }
    if (c == '(') {
      ++pos_;
      LambdaExpr e = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    return LambdaExpr::var(ident());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LambdaExpr parse_lambda(std::string_view text) { return LambdaParser(text).parse(); }

std::string print_lambda(const LambdaExpr& e) {
  struct Printer {
    std::string operator()(const LambdaExpr::Var& v) const { return v.name; }
    std::string operator()(const LambdaExpr::ConstS&) const { return "S"; }
    std::string operator()(const LambdaExpr::ConstK&) const { return "K"; }
    std::string operator()(const LambdaExpr::Bind& b) const {
      return "\\" + b.name + ". " + print_lambda(*b.body);
    }
    std::string operator()(const LambdaExpr::Apply& a) const {
      std::string f = print_lambda(*a.fun);
      if (std::holds_alternative<LambdaExpr::Bind>(a.fun->node())) f = "(" + f + ")";
      std::string x = print_lambda(*a.arg);
      if (std::holds_alternative<LambdaExpr::Apply>(a.arg->node()) ||
          std::holds_alternative<LambdaExpr::Bind>(a.arg->node()))
        x = "(" + x + ")";
      return f + " " + x;
    }
  };
  return std::visit(Printer{}, e.node());
}

Term compile_lambda(const LambdaExpr& e) {
  struct Compiler {
    Term operator()(const LambdaExpr::Var& v) const { return Term::var(v.name); }
    Term operator()(const LambdaExpr::ConstS&) const { return Term::S(); }
    Term operator()(const LambdaExpr::ConstK&) const { return Term::K(); }
    Term operator()(const LambdaExpr::Bind& b) const {
      return abstract_var(b.name, compile_lambda(*b.body));
    }
    Term operator()(const LambdaExpr::Apply& a) const {
      return Term::app(compile_lambda(*a.fun), compile_lambda(*a.arg));
    }
  };
  return std::visit(Compiler{}, e.node());
}

Term church(std::uint64_t n) {
  LambdaExpr body = LambdaExpr::var("x");
  for (std::uint64_t i = 0; i < n; ++i) body = LambdaExpr::apply(LambdaExpr::var("f"), std::move(body));
  return compile_lambda(LambdaExpr::bind("f", LambdaExpr::bind("x", std::move(body))));
}

std::uint64_t unchurch(const Term& t, std::size_t max_steps) {
  if (!t.ground()) throw std::invalid_argument("unchurch expects a ground term");
  auto nf = normal_form(Term::app(Term::app(t, Term::var("f")), Term::var("x")), max_steps);
  if (!nf) throw BudgetExceeded("numeral readback exceeded " + std::to_string(max_steps) + " steps");
  std::uint64_t count = 0;
  const Term* cur = &*nf;
  while (cur->is_app() && cur->left().is_var() && cur->left().name() == "f") {
    ++count;
    cur = &cur->right();
  }
  if (!cur->is_var() || cur->name() != "x")
    throw NotANumeral("normal form '" + print_term(*nf) + "' is not f applied n times to x");
  return count;
}

Term succ_term() {
  static const Term t = compile_lambda(parse_lambda("\\n f x. f (n f x)"));
  return t;
}

Term add_term() {
  static const Term t = compile_lambda(parse_lambda("\\m n f x. m f (n f x)"));
  return t;
}

}  // namespace formal
