#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace formal {

/// Contiguous segment of a word: `offset+length`, 0-based.
struct Span {
  std::size_t offset = 0;
  std::size_t length = 1;

  std::string str() const;
  static Span parse(std::string_view text);

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

enum class Dir : std::uint8_t { left, right };

/// Route from the root of a term: L selects the function child, R the
/// argument child. The empty path is the root, printed as "ε".
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Dir> steps) : steps_(std::move(steps)) {}

  const std::vector<Dir>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  Dir operator[](std::size_t i) const { return steps_[i]; }

  Path child(Dir d) const;
  void push(Dir d) { steps_.push_back(d); }
  void pop() { steps_.pop_back(); }

  std::string str() const;
  static Path parse(std::string_view text);

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<Dir> steps_;
};

inline constexpr std::string_view kRootPath = "ε";

}  // namespace formal
