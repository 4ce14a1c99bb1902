#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fkdet/algebra.hpp"

namespace fkdet {

/// Sparse Laurent polynomial in X_1..X_dims with complex coefficients.
struct LaurentPoly {
  int dims = 1;
  std::map<std::vector<int>, Complex> terms;

  /// Adds c X^e, dropping the term if it cancels to zero.
  void add(const std::vector<int>& exponent, Complex c);
  bool is_zero() const { return terms.empty(); }
  Complex evaluate(std::span<const Complex> point) const;
};

/// Parses text such as "1+x+y", "x-2", "1-1.5x", "x^10+x^9-x^7", "2*x*y^-1"
/// or "x1*x3^2". Variables x,y,z,w are X_1..X_4; x<k> is X_k. The keyword
/// "lehmer" yields Lehmer's polynomial. Throws ValidationError.
LaurentPoly parse_laurent(std::string_view text);

/// X^10 + X^9 - X^7 - X^6 - X^5 - X^4 - X^3 + X + 1.
LaurentPoly lehmer_polynomial();

std::string to_string(const LaurentPoly& p);

/// The group-ring element sum c_e R_{X^e} over FreeAbelian(dims). The exact
/// version requires real coefficients and converts them exactly.
FloatElement to_float_element(const LaurentPoly& p, const GroupSpec& spec);
ExactElement to_exact_element(const LaurentPoly& p, const GroupSpec& spec);

}  // namespace fkdet
