#include "fkdet/laurent.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fkdet/errors.hpp"

namespace fkdet {

void LaurentPoly::add(const std::vector<int>& exponent, Complex c) {
  std::vector<int> e = exponent;
  e.resize(static_cast<std::size_t>(dims), 0);
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0)) terms.erase(it);
}

Complex LaurentPoly::evaluate(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != dims) {
    throw std::invalid_argument("evaluation point has the wrong dimension");
  }
  Complex sum = 0.0;
  for (const auto& [e, c] : terms) {
    Complex v = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) v *= std::pow(point[i], e[i]);
    }
    sum += v;
  }
  return sum;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  LaurentPoly parse() {
    struct RawTerm {
      Complex coeff;
      std::map<int, int> powers;
    };
    std::vector<RawTerm> raw;
    int dims = 1;
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      RawTerm t{Complex(sign), {}};
      bool any = false;
      while (!at_end() && peek() != '+' && peek() != '-') {
        if (peek() == '*') {
          if (!any) fail("dangling *");
          ++pos_;
          skip_space();
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
          t.coeff *= number();
        } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
          const int var = variable();
          int power = 1;
          skip_space();
          if (!at_end() && peek() == '^') {
            ++pos_;
            skip_space();
            power = integer();
          }
          t.powers[var] += power;
          dims = std::max(dims, var);
        } else {
          fail(std::string("unexpected character '") + peek() + "'");
        }
        any = true;
        skip_space();
      }
      if (!any) fail("missing term");
      raw.push_back(std::move(t));
    }
    LaurentPoly p;
    p.dims = dims;
    for (const auto& t : raw) {
      std::vector<int> e(static_cast<std::size_t>(dims), 0);
      for (auto [var, power] : t.powers) e[static_cast<std::size_t>(var - 1)] += power;
      p.add(e, t.coeff);
    }
    if (p.is_zero()) fail("polynomial is zero");
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("polynomial \"" + std::string(s_) + "\": " + msg + " at position " +
                          std::to_string(pos_));
  }

  double number() {
    const char* begin = s_.data() + pos_;
    std::size_t len = 0;
    while (pos_ + len < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_ + len])) || s_[pos_ + len] == '.')) {
      ++len;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, begin + len, v);
    if (ec != std::errc() || ptr != begin + len) fail("bad number");
    pos_ += len;
    return v;
  }

  int integer() {
    bool neg = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    int v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 100000) fail("exponent too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  int variable() {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
    ++pos_;
    if (c == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      int index = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        index = index * 10 + (peek() - '0');
        if (index > 64) fail("variable index too large");
        ++pos_;
      }
      if (index < 1) fail("variable index must be >= 1");
      return index;
    }
    switch (c) {
      case 'x': return 1;
      case 'y': return 2;
      case 'z': return 3;
      case 'w': return 4;
      default: fail(std::string("unknown variable '") + c + "'");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

LaurentPoly parse_laurent(std::string_view text) {
  const std::string t = trim(text);
  if (t == "lehmer" || t == "Lehmer") return lehmer_polynomial();
  return Parser(t).parse();
}

LaurentPoly lehmer_polynomial() {
  LaurentPoly p;
  for (int e : {10, 9, 1, 0}) p.add({e}, 1.0);
  for (int e : {7, 6, 5, 4, 3}) p.add({e}, -1.0);
  return p;
}

std::string to_string(const LaurentPoly& p) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0) {
      os << c.real();
    } else {
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (p.dims <= 4) {
        os << '*' << names[i];
      } else {
        os << "*x" << i + 1;
      }
      if (e[i] != 1) os << '^' << e[i];
    }
  }
  return first ? "0" : os.str();
}

namespace {

Word monomial_word(const std::vector<int>& e) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int n = 0; n < std::abs(e[i]); ++n) {
      letters.emplace_back(static_cast<int>(i) + 1, e[i] < 0 ? -1 : 1);
    }
  }
  return Word(std::move(letters));
}

void check_spec(const LaurentPoly& p, const GroupSpec& spec) {
  if (spec.kind() != GroupKind::FreeAbelian || spec.rank() != p.dims) {
    throw SpecMismatch("Laurent polynomial needs FreeAbelian(" + std::to_string(p.dims) + ")");
  }
}

}  // namespace

FloatElement to_float_element(const LaurentPoly& p, const GroupSpec& spec) {
  check_spec(p, spec);
  FloatElement a(spec);
  for (const auto& [e, c] : p.terms) a.add_term(monomial_word(e), c);
  return a;
}

ExactElement to_exact_element(const LaurentPoly& p, const GroupSpec& spec) {
  check_spec(p, spec);
  ExactElement a(spec);
  for (const auto& [e, c] : p.terms) {
    if (c.imag() != 0.0) throw ValidationError("exact conversion needs real coefficients");
    a.add_term(monomial_word(e), Rational(c.real()));
  }
  return a;
}

}  // namespace fkdet
