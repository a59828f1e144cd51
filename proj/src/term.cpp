#include "formal/term.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

#include "formal/word.hpp"

namespace formal {

struct Term::Node {
  Tag tag;
  std::string name;
  std::optional<Term> left;
  std::optional<Term> right;
  std::uint64_t size = 1;
  std::size_t hash = 0;
  std::size_t depth = 0;
  bool ground = true;
  bool has_redex = false;
};

namespace {

std::size_t mix(std::size_t h) {
  std::uint64_t z = h + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return static_cast<std::size_t>(z ^ (z >> 31));
}

std::shared_ptr<const Term::Node> make_leaf(Term::Tag tag, std::string name = {}) {
  auto n = std::make_shared<Term::Node>();
  n->tag = tag;
  n->ground = tag != Term::Tag::var;
  n->hash = mix(static_cast<std::size_t>(tag) * 0x100000001b3ULL ^ std::hash<std::string>{}(name));
  n->name = std::move(name);
  return n;
}

bool is_redex_shape(const Term& fun, const Term& /*arg*/) {
  // App(App(K,x),y) or App(App(App(S,x),y),z), seen from the outer node.
  if (!fun.is_app()) return false;
  if (fun.left().is_k()) return true;
  return fun.left().is_app() && fun.left().left().is_s();
}

}  // namespace

Term Term::S() {
  static const Term leaf(make_leaf(Tag::s));
  return leaf;
}

Term Term::K() {
  static const Term leaf(make_leaf(Tag::k));
  return leaf;
}

Term Term::var(std::string name) {
  if (!is_variable_name(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
  return Term(make_leaf(Tag::var, std::move(name)));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::app;
  const auto& f = *fun.node_;
  const auto& a = *arg.node_;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  n->size = f.size > kMax - a.size ? kMax : f.size + a.size;
  n->hash = mix(f.hash * 31 + mix(a.hash + 0x51ed27));
  n->depth = 1 + std::max(f.depth, a.depth);
  n->ground = f.ground && a.ground;
  n->has_redex = f.has_redex || a.has_redex || is_redex_shape(fun, arg);
  n->left = std::move(fun);
  n->right = std::move(arg);
  return Term(std::move(n));
}

Term::Tag Term::tag() const noexcept { return node_->tag; }

const Term& Term::left() const {
  if (!is_app()) throw std::logic_error("left() of a leaf");
  return *node_->left;
}

const Term& Term::right() const {
  if (!is_app()) throw std::logic_error("right() of a leaf");
  return *node_->right;
}

const std::string& Term::name() const {
  if (!is_var()) throw std::logic_error("name() of a non-variable");
  return node_->name;
}

std::uint64_t Term::size() const noexcept { return node_->size; }
std::size_t Term::hash() const noexcept { return node_->hash; }
bool Term::ground() const noexcept { return node_->ground; }
bool Term::has_redex() const noexcept { return node_->has_redex; }
std::size_t Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.tag != y.tag || x.hash != y.hash || x.size != y.size) return false;
  switch (x.tag) {
    case Term::Tag::s:
    case Term::Tag::k:
      return true;
    case Term::Tag::var:
      return x.name == y.name;
    case Term::Tag::app:
      return *x.left == *y.left && *x.right == *y.right;
  }
  return false;
}

std::optional<Term> subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (Dir d : p.steps()) {
    if (!cur->is_app()) return std::nullopt;
    cur = d == Dir::left ? &cur->left() : &cur->right();
  }
  return *cur;
}

Term replace_at(const Term& t, const Path& p, const Term& replacement) {
  std::vector<const Term*> spine;
  spine.reserve(p.size());
  const Term* cur = &t;
  for (Dir d : p.steps()) {
    if (!cur->is_app()) throw std::out_of_range("path " + p.str() + " leaves the term");
    spine.push_back(cur);
    cur = d == Dir::left ? &cur->left() : &cur->right();
  }
  Term out = replacement;
  for (std::size_t i = spine.size(); i-- > 0;) {
    const Term& parent = *spine[i];
    out = p[i] == Dir::left ? Term::app(std::move(out), parent.right())
                            : Term::app(parent.left(), std::move(out));
  }
  return out;
}

bool is_variable_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  for (char c : name)
    if (c < 'a' || c > 'z') return false;
  return true;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty term");
    Term t = sequence();
    skip_space();
    if (pos_ != text_.size()) fail(text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == 'S' || c == 'K' || (c >= 'a' && c <= 'z');
  }

  Term sequence() {
    if (!at_atom_start()) fail("expected a term");
    Term t = atom();
    while (at_atom_start()) t = Term::app(std::move(t), atom());
    return t;
  }

  Term atom() {
    char c = text_[pos_];
    if (c == 'S') {
      ++pos_;
      return Term::S();
    }
    if (c == 'K') {
      ++pos_;
      return Term::K();
    }
    if (c == '(') {
      ++pos_;
      Term t = sequence();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
    return Term::var(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out) {
  // Walk the left spine iteratively; only arguments recurse.
  std::vector<const Term*> args;
  const Term* head = &t;
  while (head->is_app()) {
    args.push_back(&head->right());
    head = &head->left();
  }
  switch (head->tag()) {
    case Term::Tag::s:
      out += 'S';
      break;
    case Term::Tag::k:
      out += 'K';
      break;
    default:
      out += head->name();
      break;
  }
  for (std::size_t i = args.size(); i-- > 0;) {
    out += ' ';
    if (args[i]->is_app()) {
      out += '(';
      print_into(*args[i], out);
      out += ')';
    } else {
      print_into(*args[i], out);
    }
  }
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

}  // namespace formal
