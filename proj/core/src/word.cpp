#include "fkdet/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace fkdet {

Letter::Letter(int generator, int sign) : value_(generator) {
  if (generator < 1) {
    throw std::invalid_argument("generator index must be >= 1");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("letter sign must be +1 or -1");
  }
  value_ = sign * generator;
}

Letter Letter::from_signed(int value) {
  if (value == 0) {
    throw std::invalid_argument("0 is not a letter");
  }
  return Letter(static_cast<std::int32_t>(value));
}

Word::Word(std::vector<Letter> letters, bool reduced)
    : letters_(std::move(letters)), reduced_(reduced) {}

Word Word::from_signed(std::span<const int> values) {
  std::vector<Letter> letters;
  letters.reserve(values.size());
  for (int v : values) letters.push_back(Letter::from_signed(v));
  return Word(std::move(letters));
}

Word Word::from_signed(std::initializer_list<int> values) {
  return from_signed(std::span<const int>(values.begin(), values.size()));
}

int Word::max_generator() const noexcept {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l.generator());
  return m;
}

std::vector<int> Word::to_signed() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(l.to_signed());
  return out;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  static constexpr const char* kNames[] = {"x", "y", "z", "w"};
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const Letter l = letters_[i];
    if (i) out += '.';
    if (l.generator() <= 4) {
      out += kNames[l.generator() - 1];
    } else {
      out += "x" + std::to_string(l.generator());
    }
    if (l.sign() < 0) out += "^-1";
  }
  return out;
}

Word reduce_free(const Word& w) {
  if (w.is_reduced()) return w;
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack), true);
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out), w.is_reduced());
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters().begin(), a.letters().end());
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(out));
}

std::vector<std::int64_t> abelianize(const Word& w, int rank) {
  std::vector<std::int64_t> exps(static_cast<std::size_t>(std::max(rank, 0)), 0);
  for (Letter l : w.letters()) {
    if (l.generator() > rank) {
      throw std::out_of_range("letter x" + std::to_string(l.generator()) +
                              " exceeds rank " + std::to_string(rank));
    }
    exps[static_cast<std::size_t>(l.generator() - 1)] += l.sign();
  }
  return exps;
}

}  // namespace fkdet

std::size_t std::hash<fkdet::Word>::operator()(const fkdet::Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (fkdet::Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l.to_signed()));
    h *= 0x100000001b3ULL;
  }
  return h;
}
