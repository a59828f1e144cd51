#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "formal/position.hpp"
#include "formal/term.hpp"
#include "formal/word.hpp"

namespace formal {

enum class Kind { word, term };

std::string_view kind_name(Kind k) noexcept;

template <class A>
struct ArrangementTraits;

template <>
struct ArrangementTraits<Word> {
  using Position = Span;
  static constexpr Kind kind = Kind::word;
  static std::string print(const Word& w) { return w.str(); }
  static Word parse(std::string_view text) { return Word::from_text(text); }
};

template <>
struct ArrangementTraits<Term> {
  using Position = Path;
  static constexpr Kind kind = Kind::term;
  static std::string print(const Term& t) { return print_term(t); }
  static Term parse(std::string_view text) { return parse_term(text); }
};

template <class A>
using PositionOf = typename ArrangementTraits<A>::Position;

/// Metavariable name to arrangement; ordered so transcripts are stable.
template <class A>
using Substitution = std::map<std::string, A>;

template <class A>
struct StepJustification {
  std::string rule;
  PositionOf<A> position;
  Substitution<A> substitution;

  friend bool operator==(const StepJustification&, const StepJustification&) = default;
};

template <class A>
struct Step {
  StepJustification<A> justification;
  A result;

  friend bool operator==(const Step&, const Step&) = default;
};

/// An initial arrangement plus every justified step and its result. Kind
/// homogeneity is enforced by the type: a Derivation<Word> holds only words.
template <class A>
class Derivation {
 public:
  explicit Derivation(A initial) : initial_(std::move(initial)) {}
  Derivation(A initial, std::vector<Step<A>> steps)
      : initial_(std::move(initial)), steps_(std::move(steps)) {}

  const A& initial() const noexcept { return initial_; }
  const std::vector<Step<A>>& steps() const noexcept { return steps_; }
  std::vector<Step<A>>& steps() noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }

  /// Arrangement after `k` steps; 0 is the initial arrangement.
  const A& arrangement(std::size_t k) const { return k == 0 ? initial_ : steps_.at(k - 1).result; }
  const A& last() const { return steps_.empty() ? initial_ : steps_.back().result; }

  void push(StepJustification<A> j, A result) {
    steps_.push_back(Step<A>{std::move(j), std::move(result)});
  }
  void pop() { steps_.pop_back(); }

  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  A initial_;
  std::vector<Step<A>> steps_;
};

using WordDerivation = Derivation<Word>;
using TermDerivation = Derivation<Term>;
using AnyDerivation = std::variant<WordDerivation, TermDerivation>;

/// Why a verifier rejected a derivation.
enum class RejectReason {
  axiom_violation,
  unknown_rule,
  bad_position,
  no_match,
  substitution_mismatch,
  result_mismatch,
};

std::string_view reason_name(RejectReason r) noexcept;

/// Verifier outcome. `step` is 1-based for steps; 0 denotes the initial
/// arrangement.
struct Verdict {
  bool accepted = true;
  std::size_t step = 0;
  RejectReason reason = RejectReason::result_mismatch;
  std::string detail;

  static Verdict accept() { return {}; }
  static Verdict reject(std::size_t step, RejectReason reason, std::string detail = {}) {
    return {false, step, reason, std::move(detail)};
  }
  explicit operator bool() const noexcept { return accepted; }

  std::string str() const;
  nlohmann::json to_json() const;
};

// Line-oriented transcript:
//   kind: word|term
//   init: <arrangement>
//   step: <rule> @ <position> [<var>=<value>, ...]
//   to: <arrangement>
template <class A>
std::string serialize_derivation(const Derivation<A>& d);
std::string serialize_derivation(const AnyDerivation& d);

/// Syntax only; rule validity is the verifiers' job. Throws SyntaxError
/// naming the offending line, including a `kind:` header that disagrees
/// with `kind`.
AnyDerivation parse_derivation(std::string_view text, Kind kind);
/// Reads the kind from the header line.
AnyDerivation parse_derivation(std::string_view text);

template <class A>
nlohmann::json derivation_to_json(const Derivation<A>& d);
nlohmann::json derivation_to_json(const AnyDerivation& d);
AnyDerivation derivation_from_json(const nlohmann::json& j);

extern template std::string serialize_derivation(const Derivation<Word>&);
extern template std::string serialize_derivation(const Derivation<Term>&);
extern template nlohmann::json derivation_to_json(const Derivation<Word>&);
extern template nlohmann::json derivation_to_json(const Derivation<Term>&);

}  // namespace formal
