#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace formal {

/// Raised for malformed text: transcripts, terms, lambda expressions and
/// system definitions. `line` and `column` are 1-based; 0 means unknown.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// UTF-8 helpers. Decoding rejects malformed sequences with SyntaxError.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);
std::string utf8_encode(char32_t cp);

inline constexpr char32_t kUpArrow = U'↑';

/// A single printable, non-whitespace glyph.
class Symbol {
 public:
  explicit Symbol(char32_t glyph);

  char32_t glyph() const noexcept { return glyph_; }
  std::string str() const { return utf8_encode(glyph_); }

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  char32_t glyph_;
};

bool is_printable_glyph(char32_t glyph) noexcept;

/// Parses one glyph from text. '^' is accepted as the up arrow.
Symbol parse_symbol(std::string_view text);

/// Ordered, duplicate-free, nonempty set of symbols.
class Alphabet {
 public:
  explicit Alphabet(std::vector<Symbol> symbols);
  Alphabet(std::initializer_list<char32_t> glyphs);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool contains(Symbol s) const noexcept;
  bool contains(char32_t glyph) const noexcept;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// A finite sequence of symbols. Alphabet membership is checked by the
/// operations that own an alphabet (see StringSystem).
class Word {
 public:
  Word() = default;
  explicit Word(std::u32string glyphs);

  /// Decodes UTF-8; '^' maps to the up arrow, surrounding whitespace is
  /// dropped, interior whitespace is rejected.
  static Word from_text(std::string_view text);

  const std::u32string& glyphs() const noexcept { return glyphs_; }
  std::size_t size() const noexcept { return glyphs_.size(); }
  bool empty() const noexcept { return glyphs_.empty(); }
  Symbol operator[](std::size_t i) const { return Symbol(glyphs_[i]); }

  bool over(const Alphabet& alphabet) const noexcept;

  /// True iff `pattern` occurs at `offset`.
  bool matches_at(const Word& pattern, std::size_t offset) const noexcept;
  Word splice(std::size_t offset, std::size_t length, const Word& replacement) const;
  Word concat(const Word& other) const;

  std::string str() const { return utf8_encode(glyphs_); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::u32string glyphs_;
};

}  // namespace formal

template <>
struct std::hash<formal::Word> {
  std::size_t operator()(const formal::Word& w) const noexcept {
    return std::hash<std::u32string>{}(w.glyphs());
  }
};
