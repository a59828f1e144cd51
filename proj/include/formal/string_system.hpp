#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "formal/derivation.hpp"
#include "formal/word.hpp"

namespace formal {

/// Thrown when a rule is applied where its left-hand side does not occur.
class NoMatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for unbound metavariables and out-of-range instantiations.
class SubstitutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A literal symbol or a metavariable occurrence in an axiom template.
struct Metavar {
  std::string name;
  friend bool operator==(const Metavar&, const Metavar&) = default;
};
using TemplateItem = std::variant<Symbol, Metavar>;

/// Start rule of the form `x = x`: every occurrence of a metavariable
/// receives the same instantiation, drawn from that metavariable's range.
struct AxiomSchema {
  std::vector<TemplateItem> items;
  std::map<std::string, Alphabet> ranges;

  AxiomSchema(std::vector<TemplateItem> items, std::map<std::string, Alphabet> ranges);

  friend bool operator==(const AxiomSchema&, const AxiomSchema&) = default;
};

struct RewriteRule {
  std::string id;
  Word lhs;
  Word rhs;

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

class StringSystem {
 public:
  StringSystem(Alphabet alphabet, std::vector<AxiomSchema> axioms, std::vector<RewriteRule> rules);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<AxiomSchema>& axioms() const noexcept { return axioms_; }
  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  const RewriteRule* rule(std::string_view id) const noexcept;

  friend bool operator==(const StringSystem&, const StringSystem&) = default;

 private:
  Alphabet alphabet_;
  std::vector<AxiomSchema> axioms_;
  std::vector<RewriteRule> rules_;
};

/// The binary increment system: alphabet {0,1,↑,=}, axiom x=x with x over
/// {0,1,↑}, rules zero-up (0↑→1), one-up (1↑→↑0), eq-up (=↑→=1).
StringSystem increment_system();

Word instantiate_axiom(const AxiomSchema& schema, const Substitution<Word>& sub);

/// All bindings under which `w` instantiates `schema`, or nullopt.
std::optional<Substitution<Word>> match_axiom(const AxiomSchema& schema, const Word& w);

struct Redex {
  std::string rule;
  Span span;
  friend bool operator==(const Redex&, const Redex&) = default;
};

/// Every occurrence of every rule's lhs, offset-major then declaration order.
std::vector<Redex> find_redexes(const StringSystem& sys, const Word& w);

Word apply_rule(const Word& w, const RewriteRule& r, Span p);

/// Distinct one-step successors, in redex order.
std::vector<Word> successors(const StringSystem& sys, const Word& w);

enum class SearchStatus { found, not_found, budget_exhausted };

struct DeriveResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<WordDerivation> derivation;
  std::size_t explored = 0;
};

inline constexpr std::size_t kDefaultSearchBudget = 100000;

/// Breadth-first search from `start` to `goal`. The returned derivation has
/// minimal length; among minimal ones the (rule id, offset) sequence is
/// lexicographically smallest. The budget counts distinct arrangements.
DeriveResult derive(const StringSystem& sys, const Word& start, const Word& goal,
                    std::size_t max_arrangements = kDefaultSearchBudget);

enum class StartMode { axiom, any };

Verdict verify(const StringSystem& sys, const WordDerivation& d, StartMode mode = StartMode::axiom);

Word to_binary_word(std::uint64_t n);

/// Left fold: a digit d maps v to 2v+d, '↑' maps v to v+1. Throws
/// std::invalid_argument on other symbols, an empty word, or overflow.
std::uint64_t word_value(const Word& w);

// System-definition files:
//   alphabet: 0 1 ↑ =
//   axiom: x = x  where x over {0 1 ↑}
//   rule one-up: 1 ↑ => ↑ 0
StringSystem parse_string_system(std::string_view text);
StringSystem load_string_system(const std::filesystem::path& path);

}  // namespace formal
