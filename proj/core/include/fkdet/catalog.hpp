#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fkdet/algebra.hpp"
#include "fkdet/rep_file.hpp"

namespace fkdet {

/// A named group-ring operator with the lambda that provably satisfies
/// lambda < ||A||^-2 (the reciprocal square of its 1-norm).
template <class C>
struct NamedOperator {
  std::string name;
  std::map<std::string, double> parameters;
  GroupSpec spec;
  GroupAlgebraElement<C> element;
  Rational certified_lambda;
};

/// Id + R_{x_1} + ... + R_{x_{d-1}} over F_{d-1}, exact mode.
NamedOperator<Rational> free_operator(int d);
/// Id + zeta_1 R_{x_1} + ... over F_{d-1}; each |zeta_i| = 1 within 1e-12.
NamedOperator<Complex> free_operator(int d, std::span<const Complex> zeta);

/// R_{x_1} + R_{x_1^-1} + ... + R_{x_d} + R_{x_d^-1} over F_d, exact mode.
NamedOperator<Rational> symmetric_operator(int d);
NamedOperator<Complex> symmetric_operator(int d, std::span<const Complex> zeta,
                                          std::span<const Complex> xi);

/// Id - t R_g over Z (the ring C[X^{+-1}] element 1 - tX).
NamedOperator<Rational> cyclic_operator(const Rational& t);

/// A_t = Id - t R_y - t R_{x y x^-1} - t R_{y x y^-1} + t^2 R_{x y x^-1 y}
/// over the Wirtinger presentation of the figure-eight knot group. Builds a
/// fresh group (and key table) from `rep` on every call.
template <class C>
NamedOperator<C> fig8_wirtinger(const typename CoeffTraits<C>::Real& t, const RepFile& rep);

/// A'_t = Id - R_{a1 alpha a1^-1} - (1/t) R_{[a1,alpha] a1^-1}
///        + (1/t) R_{[a1,alpha] a1^-1 alpha}
/// over the twist presentation with beta eliminated. The reported
/// invariant is det(t A'_t) * max(1, t); certified_lambda refers to t A'_t.
template <class C>
NamedOperator<C> fig8_twist(const typename CoeffTraits<C>::Real& t, const RepFile& rep);

/// [a, [a,b][a,b^-1]] with [g,h] = g h g^-1 h^-1, over generators a=1, b=2.
Word whitehead_relator();

struct ManifoldEntry {
  std::string name;
  double volume = 0.0;
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::string note;
};

struct LehmerRow {
  std::string name;
  double volume = 0.0;       // 0 for the generic free-group row
  double bound = 0.0;
  bool beats_free_bound = false;
};

/// Directory holding fig8_wirtinger.rep, fig8_twist.rep and manifolds.tsv.
std::filesystem::path default_data_dir();

std::vector<ManifoldEntry> manifold_table(const std::filesystem::path& tsv =
                                              default_data_dir() / "manifolds.tsv");

/// One row per manifold with its exp(vol/6 pi) bound, followed by the
/// generic free-group row 2/sqrt(3) and Lehmer's polynomial M(L).
std::vector<LehmerRow> lehmer_rows(const std::vector<ManifoldEntry>& manifolds);

/// Formats rows as an aligned text table. Values are truncated (not
/// rounded) to `digits` significant digits.
std::string lehmer_report(const std::vector<LehmerRow>& rows, int digits = 6);

/// Writes x truncated to `digits` significant digits, e.g. 1.11369 -> "1.113".
std::string truncate_digits(double x, int digits);

}  // namespace fkdet
