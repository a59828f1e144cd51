#include "formal/string_system.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace formal {

AxiomSchema::AxiomSchema(std::vector<TemplateItem> items_, std::map<std::string, Alphabet> ranges_)
    : items(std::move(items_)), ranges(std::move(ranges_)) {
  for (const auto& item : items)
    if (const auto* mv = std::get_if<Metavar>(&item); mv && !ranges.contains(mv->name))
      throw std::invalid_argument("metavariable '" + mv->name + "' has no range");
}

StringSystem::StringSystem(Alphabet alphabet, std::vector<AxiomSchema> axioms,
                           std::vector<RewriteRule> rules)
    : alphabet_(std::move(alphabet)), axioms_(std::move(axioms)), rules_(std::move(rules)) {
  std::set<std::string> ids;
  for (const auto& r : rules_) {
    if (r.id.empty()) throw std::invalid_argument("rule id must be nonempty");
    if (!ids.insert(r.id).second) throw std::invalid_argument("duplicate rule id '" + r.id + "'");
    if (r.lhs.empty()) throw std::invalid_argument("rule '" + r.id + "' has an empty left-hand side");
    if (!r.lhs.over(alphabet_) || !r.rhs.over(alphabet_))
      throw std::invalid_argument("rule '" + r.id + "' uses a symbol outside the alphabet");
  }
  for (const auto& a : axioms_) {
    for (const auto& item : a.items)
      if (const auto* s = std::get_if<Symbol>(&item); s && !alphabet_.contains(*s))
        throw std::invalid_argument("axiom uses a symbol outside the alphabet: " + s->str());
    for (const auto& [name, range] : a.ranges)
      for (Symbol s : range.symbols())
        if (!alphabet_.contains(s))
          throw std::invalid_argument("range of '" + name + "' leaves the alphabet: " + s.str());
  }
}

const RewriteRule* StringSystem::rule(std::string_view id) const noexcept {
  for (const auto& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

StringSystem increment_system() {
  Alphabet alphabet{U'0', U'1', kUpArrow, U'='};
  AxiomSchema axiom({Metavar{"x"}, Symbol(U'='), Metavar{"x"}},
                    {{"x", Alphabet{U'0', U'1', kUpArrow}}});
  std::vector<RewriteRule> rules{
      {"zero-up", Word(U"0↑"), Word(U"1")},
      {"one-up", Word(U"1↑"), Word(U"↑0")},
      {"eq-up", Word(U"=↑"), Word(U"=1")},
  };
  return StringSystem(std::move(alphabet), {std::move(axiom)}, std::move(rules));
}

Word instantiate_axiom(const AxiomSchema& schema, const Substitution<Word>& sub) {
  std::u32string out;
  for (const auto& item : schema.items) {
    if (const auto* s = std::get_if<Symbol>(&item)) {
      out.push_back(s->glyph());
      continue;
    }
    const auto& name = std::get<Metavar>(item).name;
    auto it = sub.find(name);
    if (it == sub.end()) throw SubstitutionError("unbound metavariable '" + name + "'");
    const auto& range = schema.ranges.at(name);
    for (char32_t g : it->second.glyphs())
      if (!range.contains(g))
        throw SubstitutionError("binding of '" + name + "' uses '" + utf8_encode(g) +
                                "', outside its range");
    out += it->second.glyphs();
  }
  return Word(std::move(out));
}

namespace {

bool match_items(const AxiomSchema& schema, std::size_t item, const std::u32string& w,
                 std::size_t at, Substitution<Word>& sub) {
  if (item == schema.items.size()) return at == w.size();
  if (const auto* s = std::get_if<Symbol>(&schema.items[item]))
    return at < w.size() && w[at] == s->glyph() && match_items(schema, item + 1, w, at + 1, sub);
  const auto& name = std::get<Metavar>(schema.items[item]).name;
  if (auto it = sub.find(name); it != sub.end()) {
    const auto& bound = it->second.glyphs();
    return w.compare(at, bound.size(), bound) == 0 && at + bound.size() <= w.size() &&
           match_items(schema, item + 1, w, at + bound.size(), sub);
  }
  const auto& range = schema.ranges.at(name);
  // Try every prefix that stays inside the range.
  std::size_t max_len = 0;
  while (at + max_len < w.size() && range.contains(w[at + max_len])) ++max_len;
  for (std::size_t len = 0; len <= max_len; ++len) {
    sub.emplace(name, Word(w.substr(at, len)));
    if (match_items(schema, item + 1, w, at + len, sub)) return true;
    sub.erase(name);
  }
  return false;
}

}  // namespace

std::optional<Substitution<Word>> match_axiom(const AxiomSchema& schema, const Word& w) {
  Substitution<Word> sub;
  if (match_items(schema, 0, w.glyphs(), 0, sub)) return sub;
  return std::nullopt;
}

std::vector<Redex> find_redexes(const StringSystem& sys, const Word& w) {
  std::vector<Redex> out;
  for (std::size_t off = 0; off < w.size(); ++off)
    for (const auto& r : sys.rules())
      if (w.matches_at(r.lhs, off)) out.push_back({r.id, Span{off, r.lhs.size()}});
  return out;
}

Word apply_rule(const Word& w, const RewriteRule& r, Span p) {
  if (p.length != r.lhs.size() || !w.matches_at(r.lhs, p.offset))
    throw NoMatchError("rule '" + r.id + "' does not match '" + w.str() + "' at " + p.str());
  return w.splice(p.offset, p.length, r.rhs);
}

std::vector<Word> successors(const StringSystem& sys, const Word& w) {
  std::vector<Word> out;
  for (const auto& rx : find_redexes(sys, w)) {
    Word next = apply_rule(w, *sys.rule(rx.rule), rx.span);
    if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(std::move(next));
  }
  return out;
}

DeriveResult derive(const StringSystem& sys, const Word& start, const Word& goal,
                    std::size_t max_arrangements) {
  if (!start.over(sys.alphabet()) || !goal.over(sys.alphabet()))
    throw std::invalid_argument("start and goal must be words over the system alphabet");

  struct Node {
    Word word;
    std::size_t parent;
    Redex via;
  };
  std::vector<Node> nodes;
  std::unordered_map<Word, std::size_t> seen;

  auto trace = [&](std::size_t idx) {
    std::vector<std::size_t> chain;
    for (std::size_t i = idx; i != 0; i = nodes[i].parent) chain.push_back(i);
    WordDerivation d(start);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      d.push({nodes[*it].via.rule, nodes[*it].via.span, {}}, nodes[*it].word);
    return d;
  };

  nodes.push_back({start, 0, {}});
  seen.emplace(start, 0);
  if (start == goal) return {SearchStatus::found, WordDerivation(start), 1};

  std::size_t head = 0;
  while (head < nodes.size()) {
    const std::size_t current = head++;
    auto redexes = find_redexes(sys, nodes[current].word);
    std::stable_sort(redexes.begin(), redexes.end(), [](const Redex& a, const Redex& b) {
      return std::tie(a.rule, a.span.offset) < std::tie(b.rule, b.span.offset);
    });
    for (auto& rx : redexes) {
      Word next = apply_rule(nodes[current].word, *sys.rule(rx.rule), rx.span);
      if (seen.contains(next)) continue;
      if (next != goal && nodes.size() >= max_arrangements)
        return {SearchStatus::budget_exhausted, std::nullopt, nodes.size()};
      seen.emplace(next, nodes.size());
      nodes.push_back({std::move(next), current, std::move(rx)});
      if (nodes.back().word == goal)
        return {SearchStatus::found, trace(nodes.size() - 1), nodes.size()};
    }
  }
  return {SearchStatus::not_found, std::nullopt, nodes.size()};
}

Verdict verify(const StringSystem& sys, const WordDerivation& d, StartMode mode) {
  if (!d.initial().over(sys.alphabet()))
    return Verdict::reject(0, RejectReason::axiom_violation, "initial word leaves the alphabet");
  if (mode == StartMode::axiom &&
      std::none_of(sys.axioms().begin(), sys.axioms().end(),
                   [&](const AxiomSchema& a) { return match_axiom(a, d.initial()).has_value(); }))
    return Verdict::reject(0, RejectReason::axiom_violation,
                           "'" + d.initial().str() + "' is not an axiom instance");

  for (std::size_t k = 1; k <= d.size(); ++k) {
    const Word& before = d.arrangement(k - 1);
    const auto& step = d.steps()[k - 1];
    const auto& j = step.justification;
    const RewriteRule* r = sys.rule(j.rule);
    if (!r) return Verdict::reject(k, RejectReason::unknown_rule, "no rule named '" + j.rule + "'");
    if (j.position.length != r->lhs.size() || j.position.offset > before.size() ||
        j.position.length > before.size() - j.position.offset)
      return Verdict::reject(k, RejectReason::bad_position, j.position.str());
    if (!j.substitution.empty())
      return Verdict::reject(k, RejectReason::substitution_mismatch,
                             "rewrite rules take no metavariables");
    if (!before.matches_at(r->lhs, j.position.offset))
      return Verdict::reject(k, RejectReason::no_match,
                             "'" + r->lhs.str() + "' not at " + j.position.str());
    if (before.splice(j.position.offset, j.position.length, r->rhs) != step.result)
      return Verdict::reject(k, RejectReason::result_mismatch);
  }
  return Verdict::accept();
}

Word to_binary_word(std::uint64_t n) {
  if (n == 0) return Word(U"0");
  std::u32string out;
  for (; n; n >>= 1) out.push_back(n & 1 ? U'1' : U'0');
  std::reverse(out.begin(), out.end());
  return Word(std::move(out));
}

std::uint64_t word_value(const Word& w) {
  if (w.empty()) throw std::invalid_argument("word_value of an empty word");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = 0;
  for (char32_t g : w.glyphs()) {
    if (g == U'0' || g == U'1') {
      const std::uint64_t d = g == U'1';
      if (v > (kMax - d) / 2) throw std::invalid_argument("word_value overflows 64 bits");
      v = 2 * v + d;
    } else if (g == kUpArrow) {
      if (v == kMax) throw std::invalid_argument("word_value overflows 64 bits");
      ++v;
    } else {
      throw std::invalid_argument("word_value: symbol '" + utf8_encode(g) + "' is not 0, 1 or ↑");
    }
  }
  return v;
}

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Symbol symbol_token(std::string_view tok, std::size_t line) {
  try {
    return parse_symbol(tok);
  } catch (const std::exception& e) {
    throw SyntaxError(e.what(), line);
  }
}

Word word_tokens(std::string_view s, std::size_t line) {
  std::u32string out;
  for (auto tok : tokens(s)) out.push_back(symbol_token(tok, line).glyph());
  return Word(std::move(out));
}

std::map<std::string, Alphabet> parse_ranges(std::string_view s, std::size_t line) {
  // x over {0 1 ↑}[, y over {...}] ; "and" also separates clauses.
  std::map<std::string, Alphabet> ranges;
  while (true) {
    auto toks = tokens(s.substr(0, s.find('{')));
    if (toks.empty()) break;
    if (toks.size() != 2 || toks[1] != "over" || toks[0].size() != 1 || toks[0][0] < 'a' ||
        toks[0][0] > 'z')
      throw SyntaxError("range clause must read '<x> over {...}'", line);
    auto open = s.find('{');
    auto close = s.find('}', open);
    if (open == std::string_view::npos || close == std::string_view::npos)
      throw SyntaxError("range must be enclosed in braces", line);
    std::vector<Symbol> syms;
    for (auto tok : tokens(s.substr(open + 1, close - open - 1))) syms.push_back(symbol_token(tok, line));
    try {
      if (!ranges.emplace(std::string(toks[0]), Alphabet(std::move(syms))).second)
        throw SyntaxError("metavariable range declared twice", line);
    } catch (const std::invalid_argument& e) {
      throw SyntaxError(e.what(), line);
    }
    s.remove_prefix(close + 1);
    auto rest = tokens(s);
    if (rest.empty()) break;
    if (rest[0] == "," || rest[0] == "and") {
      s.remove_prefix(s.find(rest[0]) + rest[0].size());
    } else if (rest[0].front() == ',') {
      s.remove_prefix(s.find(',') + 1);
    } else {
      throw SyntaxError("unexpected text after range", line);
    }
  }
  return ranges;
}

}  // namespace

StringSystem parse_string_system(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::vector<AxiomSchema> axioms;
  std::vector<RewriteRule> rules;
  std::size_t line_no = 0;
  std::size_t alphabet_line = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (tokens(line).empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw SyntaxError("expected '<directive>:'", line_no);
    auto head = tokens(line.substr(0, colon));
    auto body = line.substr(colon + 1);

    if (head.size() == 1 && head[0] == "alphabet") {
      if (alphabet) throw SyntaxError("alphabet declared twice", line_no);
      std::vector<Symbol> syms;
      for (auto tok : tokens(body)) syms.push_back(symbol_token(tok, line_no));
      try {
        alphabet.emplace(std::move(syms));
      } catch (const std::invalid_argument& e) {
        throw SyntaxError(e.what(), line_no);
      }
      alphabet_line = line_no;
    } else if (!alphabet) {
      throw SyntaxError("'alphabet:' must come before axioms and rules", line_no);
    } else if (head.size() == 1 && head[0] == "axiom") {
      std::string_view tmpl = body;
      std::map<std::string, Alphabet> ranges;
      if (auto where = body.find(" where "); where != std::string_view::npos) {
        tmpl = body.substr(0, where);
        ranges = parse_ranges(body.substr(where + 7), line_no);
      }
      std::vector<TemplateItem> items;
      for (auto tok : tokens(tmpl)) {
        if (ranges.contains(std::string(tok)))
          items.emplace_back(Metavar{std::string(tok)});
        else
          items.emplace_back(symbol_token(tok, line_no));
      }
      try {
        AxiomSchema axiom(std::move(items), std::move(ranges));
        StringSystem(*alphabet, {axiom}, {});
        axioms.push_back(std::move(axiom));
      } catch (const std::invalid_argument& e) {
        throw SyntaxError(e.what(), line_no);
      }
    } else if (head.size() == 2 && head[0] == "rule") {
      auto arrow = body.find("=>");
      if (arrow == std::string_view::npos) throw SyntaxError("rule needs '=>'", line_no);
      rules.push_back({std::string(head[1]), word_tokens(body.substr(0, arrow), line_no),
                       word_tokens(body.substr(arrow + 2), line_no)});
      try {
        StringSystem(*alphabet, {}, rules);
      } catch (const std::invalid_argument& e) {
        throw SyntaxError(e.what(), line_no);
      }
    } else {
      throw SyntaxError("unknown directive '" + std::string(line.substr(0, colon)) + "'", line_no);
    }
  }
  if (!alphabet) throw SyntaxError("missing 'alphabet:' line", line_no ? line_no : 1);
  try {
    return StringSystem(std::move(*alphabet), std::move(axioms), std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw SyntaxError(e.what(), alphabet_line);
  }
}

StringSystem load_string_system(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open system file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string_system(buf.str());
}

}  // namespace formal
