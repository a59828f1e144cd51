#include "formal/word.hpp"

#include <algorithm>

namespace formal {

SyntaxError::SyntaxError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(
          line == 0 ? what
                    : "line " + std::to_string(line) +
                          (column ? ", column " + std::to_string(column) : std::string{}) + ": " +
                          what),
      line_(line),
      column_(column) {}

std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw SyntaxError("invalid UTF-8 lead byte", 0);
    }
    if (i + extra >= text.size() && extra > 0)
      throw SyntaxError("truncated UTF-8 sequence", 0);
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto c = static_cast<unsigned char>(text[i + k]);
      if ((c & 0xC0) != 0x80) throw SyntaxError("invalid UTF-8 continuation byte", 0);
      cp = (cp << 6) | (c & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string utf8_encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string utf8_encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) out += utf8_encode(cp);
  return out;
}

bool is_printable_glyph(char32_t g) noexcept {
  if (g < 0x80) return g > 0x20 && g < 0x7F;
  if (g < 0xA0 || g > 0x10FFFF) return false;
  switch (g) {
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
    case 0xFEFF:
      return false;
    default:
      break;
  }
  if (g >= 0x2000 && g <= 0x200B) return false;
  if (g >= 0xD800 && g <= 0xDFFF) return false;
  return true;
}

Symbol::Symbol(char32_t glyph) : glyph_(glyph) {
  if (!is_printable_glyph(glyph))
    throw std::invalid_argument("symbol glyph must be printable and not whitespace");
}

Symbol parse_symbol(std::string_view text) {
  const auto cps = utf8_decode(text);
  if (cps.size() != 1) throw SyntaxError("expected a single glyph, got '" + std::string(text) + "'", 0);
  return Symbol(cps[0] == U'^' ? kUpArrow : cps[0]);
}

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    for (std::size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j])
        throw std::invalid_argument("duplicate glyph in alphabet: " + symbols_[i].str());
}

Alphabet::Alphabet(std::initializer_list<char32_t> glyphs)
    : Alphabet([&] {
        std::vector<Symbol> v;
        for (char32_t g : glyphs) v.emplace_back(g);
        return v;
      }()) {}

bool Alphabet::contains(Symbol s) const noexcept {
  return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
}

bool Alphabet::contains(char32_t glyph) const noexcept {
  return std::any_of(symbols_.begin(), symbols_.end(),
                     [glyph](Symbol s) { return s.glyph() == glyph; });
}

Word::Word(std::u32string glyphs) : glyphs_(std::move(glyphs)) {
  for (char32_t g : glyphs_)
    if (!is_printable_glyph(g)) throw std::invalid_argument("word contains a non-printable glyph");
}

Word Word::from_text(std::string_view text) {
  auto cps = utf8_decode(text);
  auto is_space = [](char32_t c) { return c == U' ' || c == U'\t' || c == U'\r' || c == U'\n'; };
  while (!cps.empty() && is_space(cps.back())) cps.pop_back();
  std::size_t first = 0;
  while (first < cps.size() && is_space(cps[first])) ++first;
  cps.erase(0, first);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] == U'^') cps[i] = kUpArrow;
    if (!is_printable_glyph(cps[i]))
      throw SyntaxError("word contains whitespace or a non-printable glyph", 0, i + 1);
  }
  return Word(std::move(cps));
}

bool Word::over(const Alphabet& alphabet) const noexcept {
  return std::all_of(glyphs_.begin(), glyphs_.end(),
                     [&](char32_t g) { return alphabet.contains(g); });
}

bool Word::matches_at(const Word& pattern, std::size_t offset) const noexcept {
  if (offset > glyphs_.size() || pattern.size() > glyphs_.size() - offset) return false;
  return glyphs_.compare(offset, pattern.size(), pattern.glyphs_) == 0;
}

Word Word::splice(std::size_t offset, std::size_t length, const Word& replacement) const {
  if (offset > glyphs_.size() || length > glyphs_.size() - offset)
    throw std::out_of_range("splice range outside word");
  std::u32string out;
  out.reserve(glyphs_.size() - length + replacement.size());
  out.append(glyphs_, 0, offset);
  out.append(replacement.glyphs_);
  out.append(glyphs_, offset + length);
  Word w;
  w.glyphs_ = std::move(out);
  return w;
}

Word Word::concat(const Word& other) const {
  Word w;
  w.glyphs_ = glyphs_ + other.glyphs_;
  return w;
}

}  // namespace formal
