#include "formal/derivation.hpp"

#include <charconv>
#include <optional>

namespace formal {

std::string Span::str() const { return std::to_string(offset) + "+" + std::to_string(length); }

namespace {

std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Span Span::parse(std::string_view text) {
  const auto plus = text.find('+');
  if (plus == std::string_view::npos) throw SyntaxError("word position must be <offset>+<length>", 0);
  auto off = parse_count(text.substr(0, plus));
  auto len = parse_count(text.substr(plus + 1));
  if (!off || !len) throw SyntaxError("malformed word position '" + std::string(text) + "'", 0);
  if (*len == 0) throw SyntaxError("word position length must be at least 1", 0);
  return Span{*off, *len};
}

Path Path::child(Dir d) const {
  Path p = *this;
  p.push(d);
  return p;
}

std::string Path::str() const {
  if (steps_.empty()) return std::string(kRootPath);
  std::string out;
  out.reserve(steps_.size());
  for (Dir d : steps_) out += d == Dir::left ? 'L' : 'R';
  return out;
}

Path Path::parse(std::string_view text) {
  if (text == kRootPath) return Path{};
  if (text.empty()) throw SyntaxError("empty term position (use ε for the root)", 0);
  std::vector<Dir> steps;
  steps.reserve(text.size());
  for (char c : text) {
    if (c == 'L')
      steps.push_back(Dir::left);
    else if (c == 'R')
      steps.push_back(Dir::right);
    else
      throw SyntaxError("malformed term position '" + std::string(text) + "'", 0);
  }
  return Path(std::move(steps));
}

std::string_view kind_name(Kind k) noexcept { return k == Kind::word ? "word" : "term"; }

std::string_view reason_name(RejectReason r) noexcept {
  switch (r) {
    case RejectReason::axiom_violation:
      return "axiom-violation";
    case RejectReason::unknown_rule:
      return "unknown-rule";
    case RejectReason::bad_position:
      return "bad-position";
    case RejectReason::no_match:
      return "no-match";
    case RejectReason::substitution_mismatch:
      return "substitution-mismatch";
    case RejectReason::result_mismatch:
      return "result-mismatch";
  }
  return "unknown";
}

std::string Verdict::str() const {
  if (accepted) return "accept";
  std::string out = "step " + std::to_string(step) + ": " + std::string(reason_name(reason));
  for (char& c : out)
    if (c == '-') c = ' ';
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

nlohmann::json Verdict::to_json() const {
  if (accepted) return {{"verdict", "accept"}};
  return {{"verdict", "reject"},
          {"step", step},
          {"reason", std::string(reason_name(reason))},
          {"detail", detail}};
}

template <class A>
std::string serialize_derivation(const Derivation<A>& d) {
  using Traits = ArrangementTraits<A>;
  std::string out = "kind: " + std::string(kind_name(Traits::kind)) + "\n";
  out += "init: " + Traits::print(d.initial()) + "\n";
  for (const auto& s : d.steps()) {
    const auto& j = s.justification;
    out += "step: " + j.rule + " @ " + j.position.str();
    if (!j.substitution.empty()) {
      out += " [";
      bool first = true;
      for (const auto& [name, value] : j.substitution) {
        if (!first) out += ", ";
        first = false;
        out += name + "=" + Traits::print(value);
      }
      out += "]";
    }
    out += "\nto: " + Traits::print(s.result) + "\n";
  }
  return out;
}

template std::string serialize_derivation(const Derivation<Word>&);
template std::string serialize_derivation(const Derivation<Term>&);

std::string serialize_derivation(const AnyDerivation& d) {
  return std::visit([](const auto& x) { return serialize_derivation(x); }, d);
}

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t n = 0;
  while (!text.empty()) {
    ++n;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.push_back({n, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

// Returns the payload after `key:` or throws naming the line.
std::string_view field(const Line& line, std::string_view key) {
  auto t = line.text;
  if (t.substr(0, key.size()) != key || t.size() <= key.size() || t[key.size()] != ':')
    throw SyntaxError("expected '" + std::string(key) + ":'", line.number);
  t.remove_prefix(key.size() + 1);
  if (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  return t;
}

template <class A>
A parse_arrangement(std::string_view text, std::size_t line) {
  try {
    return ArrangementTraits<A>::parse(text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.what(), line, e.column());
  } catch (const std::invalid_argument& e) {
    throw SyntaxError(e.what(), line);
  }
}

bool starts_binding(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] >= 'a' && s[i] <= 'z') ++i;
  return i > 0 && i < s.size() && s[i] == '=';
}

template <class A>
Substitution<A> parse_bindings(std::string_view body, std::size_t line) {
  Substitution<A> sub;
  body = trim(body);
  while (!body.empty()) {
    if (!starts_binding(body)) throw SyntaxError("malformed substitution binding", line);
    auto eq = body.find('=');
    std::string name(body.substr(0, eq));
    body.remove_prefix(eq + 1);
    // The value runs to the next ", <name>=" or the end.
    std::size_t cut = body.size();
    for (std::size_t i = body.find(", "); i != std::string_view::npos; i = body.find(", ", i + 1)) {
      if (starts_binding(body.substr(i + 2))) {
        cut = i;
        break;
      }
    }
    auto value = trim(body.substr(0, cut));
    if (!sub.emplace(name, parse_arrangement<A>(value, line)).second)
      throw SyntaxError("metavariable '" + name + "' bound twice", line);
    body = cut == body.size() ? std::string_view{} : body.substr(cut + 2);
  }
  return sub;
}

template <class A>
StepJustification<A> parse_step(const Line& line) {
  auto t = trim(field(line, "step"));
  auto at = t.find(" @ ");
  if (at == std::string_view::npos) throw SyntaxError("step line must read '<rule> @ <position>'", line.number);
  auto rule = trim(t.substr(0, at));
  if (rule.empty() || rule.find_first_of(" \t") != std::string_view::npos)
    throw SyntaxError("malformed rule id", line.number);
  auto rest = trim(t.substr(at + 3));
  std::string_view pos_text = rest;
  std::string_view subst_text;
  if (auto br = rest.find('['); br != std::string_view::npos) {
    if (rest.back() != ']') throw SyntaxError("unterminated substitution", line.number);
    pos_text = trim(rest.substr(0, br));
    subst_text = rest.substr(br + 1, rest.size() - br - 2);
  } else if (rest.find_first_of(" \t") != std::string_view::npos) {
    throw SyntaxError("unexpected text after position", line.number);
  }
  StepJustification<A> j;
  j.rule = std::string(rule);
  try {
    j.position = PositionOf<A>::parse(pos_text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.what(), line.number);
  }
  j.substitution = parse_bindings<A>(subst_text, line.number);
  return j;
}

template <class A>
Derivation<A> parse_body(const std::vector<Line>& lines) {
  if (lines.size() < 2) throw SyntaxError("missing 'init:' line", lines.empty() ? 1 : lines[0].number + 1);
  Derivation<A> d(parse_arrangement<A>(trim(field(lines[1], "init")), lines[1].number));
  for (std::size_t i = 2; i < lines.size(); i += 2) {
    auto j = parse_step<A>(lines[i]);
    if (i + 1 >= lines.size()) throw SyntaxError("step without a 'to:' line", lines[i].number);
    auto to = parse_arrangement<A>(trim(field(lines[i + 1], "to")), lines[i + 1].number);
    d.push(std::move(j), std::move(to));
  }
  return d;
}

Kind parse_kind_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw SyntaxError("empty transcript", 1);
  auto k = trim(field(lines[0], "kind"));
  if (k == "word") return Kind::word;
  if (k == "term") return Kind::term;
  throw SyntaxError("unknown kind '" + std::string(k) + "'", lines[0].number);
}

}  // namespace

AnyDerivation parse_derivation(std::string_view text, Kind kind) {
  const auto lines = split_lines(text);
  const Kind declared = parse_kind_header(lines);
  if (declared != kind)
    throw SyntaxError("kind mismatch: transcript is '" + std::string(kind_name(declared)) +
                          "', expected '" + std::string(kind_name(kind)) + "'",
                      lines[0].number);
  if (kind == Kind::word) return parse_body<Word>(lines);
  return parse_body<Term>(lines);
}

AnyDerivation parse_derivation(std::string_view text) {
  const auto lines = split_lines(text);
  return parse_derivation(text, parse_kind_header(lines));
}

template <class A>
nlohmann::json derivation_to_json(const Derivation<A>& d) {
  using Traits = ArrangementTraits<A>;
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : d.steps()) {
    nlohmann::json subst = nlohmann::json::object();
    for (const auto& [name, value] : s.justification.substitution) subst[name] = Traits::print(value);
    steps.push_back({{"rule", s.justification.rule},
                     {"pos", s.justification.position.str()},
                     {"subst", subst},
                     {"to", Traits::print(s.result)}});
  }
  return {{"kind", std::string(kind_name(Traits::kind))},
          {"init", Traits::print(d.initial())},
          {"steps", steps}};
}

template nlohmann::json derivation_to_json(const Derivation<Word>&);
template nlohmann::json derivation_to_json(const Derivation<Term>&);

nlohmann::json derivation_to_json(const AnyDerivation& d) {
  return std::visit([](const auto& x) { return derivation_to_json(x); }, d);
}

namespace {

template <class A>
Derivation<A> body_from_json(const nlohmann::json& j) {
  using Traits = ArrangementTraits<A>;
  Derivation<A> d(Traits::parse(j.at("init").get<std::string>()));
  for (const auto& s : j.at("steps")) {
    StepJustification<A> just;
    just.rule = s.at("rule").get<std::string>();
    just.position = PositionOf<A>::parse(s.at("pos").get<std::string>());
    for (const auto& [name, value] : s.at("subst").items())
      just.substitution.emplace(name, Traits::parse(value.template get<std::string>()));
    d.push(std::move(just), Traits::parse(s.at("to").get<std::string>()));
  }
  return d;
}

}  // namespace

AnyDerivation derivation_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "word") return body_from_json<Word>(j);
  if (kind == "term") return body_from_json<Term>(j);
  throw SyntaxError("unknown kind '" + kind + "'", 0);
}

}  // namespace formal
