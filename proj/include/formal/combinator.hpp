#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "formal/derivation.hpp"
#include "formal/term.hpp"

namespace formal {

/// Rule1: K x y → x.  Rule2: S x y z → x z (y z).
enum class RuleId { rule1, rule2 };

std::string_view rule_name(RuleId r) noexcept;
std::optional<RuleId> parse_rule_id(std::string_view text) noexcept;

class NoRedexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TermRedex {
  RuleId rule;
  Path path;
  friend bool operator==(const TermRedex&, const TermRedex&) = default;
};

/// The rule whose left-hand side `t` matches at its root, if any.
std::optional<RuleId> redex_at_root(const Term& t) noexcept;

/// Metavariable bindings (x, y and for Rule2 z) of a root redex.
Substitution<Term> redex_bindings(const Term& t, RuleId r);

/// All redexes in pre-order: outermost first, left before right.
std::vector<TermRedex> find_redexes(const Term& t);

/// Leftmost-outermost redex.
std::optional<TermRedex> first_redex(const Term& t);

Term contract(const Term& t, RuleId r, const Path& p);

/// One leftmost-outermost contraction; nullopt iff `t` is a normal form.
std::optional<Term> step_normal_order(const Term& t);

inline constexpr std::size_t kDefaultNormalizeBudget = 10000;

struct NormalizeResult {
  Term term;                  // normal form, or the last term reached
  TermDerivation derivation;  // full (or partial) transcript
  bool complete = false;      // false: budget exceeded

  explicit operator bool() const noexcept { return complete; }
};

NormalizeResult normalize(const Term& t, std::size_t max_steps = kDefaultNormalizeBudget);

/// Normal form only, without recording the transcript.
std::optional<Term> normal_form(const Term& t, std::size_t max_steps = kDefaultNormalizeBudget);

/// Step-exact check; variables are opaque leaves, so schematic derivations
/// verify as they stand.
Verdict verify_derivation(const TermDerivation& d);

/// Uniformly replaces every variable in every arrangement and binding.
/// Throws std::invalid_argument naming a variable left unbound.
TermDerivation instantiate_schematic(const TermDerivation& d, const std::map<std::string, Term>& sub);

struct ReductionGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    RuleId rule;
    Path path;
  };

  std::vector<Term> nodes;  // nodes[0] is the root term
  std::vector<Edge> edges;
  bool truncated = false;

  /// Nodes in normal form.
  std::vector<std::size_t> sinks() const;
  std::optional<std::size_t> find(const Term& t) const;
};

inline constexpr std::size_t kDefaultGraphBudget = 2000;

/// Closure of `t` under single contractions at every redex, stopping once
/// `max_nodes` distinct terms exist.
ReductionGraph reduction_graph(const Term& t, std::size_t max_nodes = kDefaultGraphBudget);

}  // namespace formal
