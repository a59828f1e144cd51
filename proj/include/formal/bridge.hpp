#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "formal/combinator.hpp"
#include "formal/term.hpp"

namespace formal {

std::set<std::string> free_vars(const Term& t);

/// Replaces every occurrence of variable `x`. Terms have no binders, so
/// nothing can be captured.
Term substitute(const Term& t, std::string_view x, const Term& n);
Term substitute(const Term& t, const std::map<std::string, Term>& sub);

/// Plain three-clause bracket abstraction:
///   [x] x       = S K K
///   [x] t       = K t             (x not free in t)
///   [x] (u v)   = S ([x] u) ([x] v)
Term abstract_var(std::string_view x, const Term& t);

/// Source language with binders, compiled away by abstraction.
class LambdaExpr {
 public:
  struct Var {
    std::string name;
  };
  struct Apply {
    std::shared_ptr<const LambdaExpr> fun;
    std::shared_ptr<const LambdaExpr> arg;
  };
  struct Bind {
    std::string name;
    std::shared_ptr<const LambdaExpr> body;
  };
  struct ConstS {};
  struct ConstK {};
  using Node = std::variant<Var, Apply, Bind, ConstS, ConstK>;

  static LambdaExpr var(std::string name);
  static LambdaExpr apply(LambdaExpr fun, LambdaExpr arg);
  static LambdaExpr bind(std::string name, LambdaExpr body);
  static LambdaExpr s() { return LambdaExpr(ConstS{}); }
  static LambdaExpr k() { return LambdaExpr(ConstK{}); }

  const Node& node() const noexcept { return node_; }

 private:
  explicit LambdaExpr(Node n) : node_(std::move(n)) {}
  Node node_;
};

/// `\x. body` (or `λx. body`), `\x y. body` as sugar, juxtaposition is
/// left-associative application, `S` and `K` are constants.
LambdaExpr parse_lambda(std::string_view text);
std::string print_lambda(const LambdaExpr& e);

Term compile_lambda(const LambdaExpr& e);

Term church(std::uint64_t n);

class NotANumeral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies `t` to the inert variables f and x, normalizes, and counts the
/// f's wrapped around x. Throws BudgetExceeded or NotANumeral.
std::uint64_t unchurch(const Term& t, std::size_t max_steps = kDefaultNormalizeBudget);

/// λn.λf.λx. f (n f x)
Term succ_term();
/// λm.λn.λf.λx. m f (n f x)
Term add_term();

}  // namespace formal
