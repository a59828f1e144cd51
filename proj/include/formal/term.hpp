#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "formal/position.hpp"

namespace formal {

/// Immutable binary tree over the leaves S, K and named variables.
///
/// Nodes are shared, so copying a Term is O(1) and duplicating a subtree
/// during contraction does not copy it. Each node caches its leaf count,
/// a structural hash, whether it is ground, and whether a redex occurs
/// anywhere beneath it; the last one makes leftmost-outermost search
/// proportional to the depth of the redex rather than the size of the term.
class Term {
 public:
  enum class Tag : std::uint8_t { s, k, var, app };

  static Term S();
  static Term K();
  static Term var(std::string name);
  static Term app(Term fun, Term arg);

  Tag tag() const noexcept;
  bool is_s() const noexcept { return tag() == Tag::s; }
  bool is_k() const noexcept { return tag() == Tag::k; }
  bool is_var() const noexcept { return tag() == Tag::var; }
  bool is_app() const noexcept { return tag() == Tag::app; }

  // Preconditions: is_app() for left/right, is_var() for name.
  const Term& left() const;
  const Term& right() const;
  const std::string& name() const;

  /// Number of leaves, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept;
  std::size_t hash() const noexcept;
  bool ground() const noexcept;
  bool has_redex() const noexcept;
  std::size_t depth() const noexcept;

  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Subtree at `p`, or nullopt if the path leaves the tree.
std::optional<Term> subterm_at(const Term& t, const Path& p);

/// `t` with the subtree at `p` replaced. Throws std::out_of_range when the
/// path does not address a subtree.
Term replace_at(const Term& t, const Path& p, const Term& replacement);

/// Left-associative juxtaposition syntax; throws SyntaxError with a
/// 1-based column.
Term parse_term(std::string_view text);

/// Minimal parentheses: only argument-position applications are wrapped.
std::string print_term(const Term& t);

bool is_variable_name(std::string_view name) noexcept;

}  // namespace formal

template <>
struct std::hash<formal::Term> {
  std::size_t operator()(const formal::Term& t) const noexcept { return t.hash(); }
};
