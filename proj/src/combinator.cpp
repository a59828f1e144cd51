#include "formal/combinator.hpp"

#include <unordered_map>

#include "formal/bridge.hpp"

namespace formal {

std::string_view rule_name(RuleId r) noexcept { return r == RuleId::rule1 ? "rule1" : "rule2"; }

std::optional<RuleId> parse_rule_id(std::string_view text) noexcept {
  if (text == "rule1") return RuleId::rule1;
  if (text == "rule2") return RuleId::rule2;
  return std::nullopt;
}

std::optional<RuleId> redex_at_root(const Term& t) noexcept {
  if (!t.is_app() || !t.left().is_app()) return std::nullopt;
  const Term& head = t.left().left();
  if (head.is_k()) return RuleId::rule1;
  if (head.is_app() && head.left().is_s()) return RuleId::rule2;
  return std::nullopt;
}

Substitution<Term> redex_bindings(const Term& t, RuleId r) {
  if (redex_at_root(t) != r) throw NoRedexError("term is not a " + std::string(rule_name(r)) + " redex");
  if (r == RuleId::rule1) return {{"x", t.left().right()}, {"y", t.right()}};
  return {{"x", t.left().left().right()}, {"y", t.left().right()}, {"z", t.right()}};
}

namespace {

Term contract_root(const Term& t, RuleId r) {
  if (r == RuleId::rule1) return t.left().right();
  const Term& x = t.left().left().right();
  const Term& y = t.left().right();
  const Term& z = t.right();
  return Term::app(Term::app(x, z), Term::app(y, z));
}

void collect_redexes(const Term& t, Path& here, std::vector<TermRedex>& out) {
  if (!t.has_redex()) return;
  if (auto r = redex_at_root(t)) out.push_back({*r, here});
  here.push(Dir::left);
  collect_redexes(t.left(), here, out);
  here.pop();
  here.push(Dir::right);
  collect_redexes(t.right(), here, out);
  here.pop();
}

}  // namespace

std::vector<TermRedex> find_redexes(const Term& t) {
  std::vector<TermRedex> out;
  Path here;
  collect_redexes(t, here, out);
  return out;
}

std::optional<TermRedex> first_redex(const Term& t) {
  if (!t.has_redex()) return std::nullopt;
  Path here;
  const Term* cur = &t;
  while (true) {
    if (auto r = redex_at_root(*cur)) return TermRedex{*r, here};
    // has_redex holds for *cur, and the root is not one, so a child has one.
    if (cur->left().has_redex()) {
      here.push(Dir::left);
      cur = &cur->left();
    } else {
      here.push(Dir::right);
      cur = &cur->right();
    }
  }
}

Term contract(const Term& t, RuleId r, const Path& p) {
  auto sub = subterm_at(t, p);
  if (!sub || redex_at_root(*sub) != r)
    throw NoRedexError("no " + std::string(rule_name(r)) + " redex at " + p.str());
  return replace_at(t, p, contract_root(*sub, r));
}

std::optional<Term> step_normal_order(const Term& t) {
  auto rx = first_redex(t);
  if (!rx) return std::nullopt;
  return contract(t, rx->rule, rx->path);
}

NormalizeResult normalize(const Term& t, std::size_t max_steps) {
  NormalizeResult res{t, TermDerivation(t), false};
  for (std::size_t i = 0;; ++i) {
    auto rx = first_redex(res.term);
    if (!rx) {
      res.complete = true;
      return res;
    }
    if (i == max_steps) return res;
    Term redex = *subterm_at(res.term, rx->path);
    Term next = replace_at(res.term, rx->path, contract_root(redex, rx->rule));
    res.derivation.push({std::string(rule_name(rx->rule)), rx->path, redex_bindings(redex, rx->rule)}, next);
    res.term = std::move(next);
  }
}

std::optional<Term> normal_form(const Term& t, std::size_t max_steps) {
  Term cur = t;
  for (std::size_t i = 0;; ++i) {
    auto rx = first_redex(cur);
    if (!rx) return cur;
    if (i == max_steps) return std::nullopt;
    cur = replace_at(cur, rx->path, contract_root(*subterm_at(cur, rx->path), rx->rule));
  }
}

Verdict verify_derivation(const TermDerivation& d) {
  for (std::size_t k = 1; k <= d.size(); ++k) {
    const Term& before = d.arrangement(k - 1);
    const auto& step = d.steps()[k - 1];
    const auto& j = step.justification;
    auto rule = parse_rule_id(j.rule);
    if (!rule) return Verdict::reject(k, RejectReason::unknown_rule, "no rule named '" + j.rule + "'");
    auto sub = subterm_at(before, j.position);
    if (!sub) return Verdict::reject(k, RejectReason::bad_position, j.position.str());
    if (redex_at_root(*sub) != rule)
      return Verdict::reject(k, RejectReason::no_match,
                             std::string(rule_name(*rule)) + " does not match at " + j.position.str());
    if (!j.substitution.empty() && j.substitution != redex_bindings(*sub, *rule))
      return Verdict::reject(k, RejectReason::substitution_mismatch);
    if (replace_at(before, j.position, contract_root(*sub, *rule)) != step.result)
      return Verdict::reject(k, RejectReason::result_mismatch);
  }
  return Verdict::accept();
}

TermDerivation instantiate_schematic(const TermDerivation& d, const std::map<std::string, Term>& sub) {
  auto check = [&](const Term& t) {
    for (const auto& name : free_vars(t))
      if (!sub.contains(name)) throw std::invalid_argument("unbound variable '" + name + "'");
  };
  check(d.initial());
  for (const auto& s : d.steps()) {
    check(s.result);
    for (const auto& [_, v] : s.justification.substitution) check(v);
  }

  TermDerivation out(substitute(d.initial(), sub));
  for (const auto& s : d.steps()) {
    auto j = s.justification;
    for (auto& [_, v] : j.substitution) v = substitute(v, sub);
    out.push(std::move(j), substitute(s.result, sub));
  }
  return out;
}

std::vector<std::size_t> ReductionGraph::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!nodes[i].has_redex()) out.push_back(i);
  return out;
}

std::optional<std::size_t> ReductionGraph::find(const Term& t) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == t) return i;
  return std::nullopt;
}

ReductionGraph reduction_graph(const Term& t, std::size_t max_nodes) {
  ReductionGraph g;
  std::unordered_map<Term, std::size_t> index;
  g.nodes.push_back(t);
  index.emplace(t, 0);
  for (std::size_t head = 0; head < g.nodes.size(); ++head) {
    const Term current = g.nodes[head];
    for (auto& rx : find_redexes(current)) {
      Term next = contract(current, rx.rule, rx.path);
      auto it = index.find(next);
      std::size_t to;
      if (it != index.end()) {
        to = it->second;
      } else {
        if (g.nodes.size() >= max_nodes) {
          g.truncated = true;
          return g;
        }
        to = g.nodes.size();
        index.emplace(next, to);
        g.nodes.push_back(std::move(next));
      }
      g.edges.push_back({head, to, rx.rule, std::move(rx.path)});
    }
  }
  return g;
}

}  // namespace formal
