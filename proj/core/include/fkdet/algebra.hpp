#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "fkdet/group.hpp"
#include "fkdet/word.hpp"

namespace fkdet {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class CoeffMode { Exact, Float };

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  using Real = Rational;
  static constexpr CoeffMode mode = CoeffMode::Exact;
  static bool negligible(const Rational& c, double /*tol*/) { return sgn(c) == 0; }
  static Rational conj(const Rational& c) { return c; }
  static Real modulus(const Rational& c) { return abs(c); }
  static Real real_part(const Rational& c) { return c; }
  static double to_double(const Rational& c) { return c.get_d(); }
};

template <>
struct CoeffTraits<Complex> {
  using Real = double;
  static constexpr CoeffMode mode = CoeffMode::Float;
  static bool negligible(const Complex& c, double tol) { return std::abs(c) <= tol; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Real modulus(const Complex& c) { return std::abs(c); }
  static Real real_part(const Complex& c) { return c.real(); }
  static double to_double(const Complex& c) { return c.real(); }
};

/// A finitely supported function G -> coefficients, i.e. the right
/// multiplication operator R_a on l^2(G). Terms are keyed by the group's
/// canonical key; each keeps a representative word.
///
/// The coefficient type fixes the mode: Rational for exact arithmetic,
/// Complex for double precision. A drop tolerance applies to the float mode
/// only; anything above zero voids the certified upper-bound property.
template <class C>
class GroupAlgebraElement {
 public:
  using Coefficient = C;
  using Traits = CoeffTraits<C>;
  using Real = typename Traits::Real;

  struct Term {
    Word word;
    C coeff;
  };
  using TermMap = std::unordered_map<CanonicalKey, Term, CanonicalKeyHash>;

  explicit GroupAlgebraElement(GroupSpec spec, double drop_tolerance = 0.0);

  static GroupAlgebraElement identity(GroupSpec spec, const C& c = C(1));
  static GroupAlgebraElement monomial(GroupSpec spec, const Word& w, const C& c);

  /// Accumulates c * R_w onto the term for w's group element.
  GroupAlgebraElement& add_term(const Word& w, const C& c);
  /// Same, for a key already produced by spec().
  GroupAlgebraElement& add_keyed(const CanonicalKey& key, const C& c);

  const GroupSpec& spec() const noexcept { return spec_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  double drop_tolerance() const noexcept { return drop_tolerance_; }

  /// Coefficient of R_w (zero when absent).
  C coefficient(const Word& w) const;

  /// Removes zero terms, or terms with modulus <= drop tolerance.
  void prune();

  /// Terms sorted by key, for deterministic printing.
  std::vector<const typename TermMap::value_type*> sorted_terms() const;

 private:
  GroupSpec spec_;
  TermMap terms_;
  double drop_tolerance_ = 0.0;
};

using ExactElement = GroupAlgebraElement<Rational>;
using FloatElement = GroupAlgebraElement<Complex>;

struct MultiplyOptions {
  /// Worker threads for the term-pair loop. MatrixRep groups always use one
  /// worker so key assignment stays deterministic.
  unsigned threads = 1;
};

struct PowerOptions {
  /// Largest term count allowed for any materialized power.
  std::size_t budget = 50'000'000;
  unsigned threads = 1;
};

/// tr((a^* a)^k) for k = 0..N, or tr(e^k) for trace_powers.
template <class C>
struct TraceSchedule {
  std::vector<typename CoeffTraits<C>::Real> values;
};

template <class C>
GroupAlgebraElement<C> add(const GroupAlgebraElement<C>& a, const GroupAlgebraElement<C>& b);
template <class C>
GroupAlgebraElement<C> subtract(const GroupAlgebraElement<C>& a,
                                const GroupAlgebraElement<C>& b);
template <class C>
GroupAlgebraElement<C> scale(const C& c, const GroupAlgebraElement<C>& a);

/// Convolution: the composition R_b o R_a = R_{ab}.
template <class C>
GroupAlgebraElement<C> multiply(const GroupAlgebraElement<C>& a,
                                const GroupAlgebraElement<C>& b,
                                const MultiplyOptions& options = {});

/// Each term (g, c) becomes (g^-1, conj(c)).
template <class C>
GroupAlgebraElement<C> adjoint(const GroupAlgebraElement<C>& a);

/// a^* a.
template <class C>
GroupAlgebraElement<C> gram(const GroupAlgebraElement<C>& a, const MultiplyOptions& options = {});

/// von Neumann trace: the identity coefficient.
template <class C>
C trace(const GroupAlgebraElement<C>& a);

/// Sum of coefficient moduli; dominates the operator norm of R_a.
template <class C>
typename CoeffTraits<C>::Real one_norm(const GroupAlgebraElement<C>& a);

/// tr(a b) evaluated as a sum over a's terms of c * b[g^-1], without
/// forming the product.
template <class C>
C pair_trace(const GroupAlgebraElement<C>& a, const GroupAlgebraElement<C>& b);

/// tr(e^k) for k = 0..N. Powers up to ceil(N/2) are materialized and the
/// rest come from pair_trace of two half powers. Throws BudgetExceeded.
template <class C>
TraceSchedule<C> trace_powers(const GroupAlgebraElement<C>& e, int N,
                              const PowerOptions& options = {});

/// tr((a^* a)^k) for k = 0..N.
template <class C>
TraceSchedule<C> power_traces(const GroupAlgebraElement<C>& a, int N,
                              const PowerOptions& options = {});

FloatElement to_float(const ExactElement& a);

template <class C>
std::string to_string(const GroupAlgebraElement<C>& a);

}  // namespace fkdet
