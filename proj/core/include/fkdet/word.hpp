#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fkdet {

/// A generator letter x_i^{+1} or x_i^{-1}. Generators are 1-based.
class Letter {
 public:
  Letter(int generator, int sign);

  /// +i encodes x_i, -i encodes x_i^{-1}.
  static Letter from_signed(int value);

  int generator() const noexcept { return value_ < 0 ? -value_ : value_; }
  int sign() const noexcept { return value_ < 0 ? -1 : 1; }
  int to_signed() const noexcept { return value_; }
  Letter inverse() const noexcept { return Letter(-value_); }
  bool cancels(Letter other) const noexcept { return value_ == -other.value_; }

  friend auto operator<=>(const Letter&, const Letter&) = default;

 private:
  explicit Letter(std::int32_t value) noexcept : value_(value) {}
  std::int32_t value_;
};

/// A finite product of generator letters. Equality compares the letter
/// sequences only, not the group elements they represent.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters, bool reduced = false);

  /// Builds a word from signed generator indices, e.g. {1, 2, -1}.
  static Word from_signed(std::span<const int> values);
  static Word from_signed(std::initializer_list<int> values);

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Set only by reduce_free (or for words known to be reduced).
  bool is_reduced() const noexcept { return reduced_ || letters_.empty(); }

  /// Largest generator index used, 0 for the empty word.
  int max_generator() const noexcept;

  std::vector<int> to_signed() const;

  /// Generators 1..4 render as x, y, z, w and higher ones as x5, x6, ...;
  /// inverses as e.g. "y^-1". The empty word renders as "1".
  std::string to_string() const;

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::vector<Letter> letters_;
  bool reduced_ = false;
};

/// Free reduction: repeatedly cancels adjacent inverse pairs.
Word reduce_free(const Word& w);

Word invert(const Word& w);

/// Plain concatenation; the result is not marked reduced.
Word concat(const Word& a, const Word& b);

/// Signed occurrence count of each generator 1..rank. Throws
/// std::out_of_range if a letter exceeds rank.
std::vector<std::int64_t> abelianize(const Word& w, int rank);

}  // namespace fkdet

template <>
struct std::hash<fkdet::Word> {
  std::size_t operator()(const fkdet::Word& w) const noexcept;
};
