#include "fkdet/series.hpp"

#include <stdexcept>

#include "fkdet/catalog.hpp"

namespace fkdet {

namespace {

// Taylor coefficients of numerator / (p + q sqrt(1 - r t)) up to t^K.
std::vector<Rational> expand_sqrt_quotient(const Rational& numerator, const Rational& p,
                                           const Rational& q, const Rational& r, int K) {
  const auto n = static_cast<std::size_t>(K) + 1;

  // sqrt(1 - r t) = sum_k binom(1/2, k) (-r)^k t^k
  std::vector<Rational> root(n);
  root[0] = 1;
  const Rational half(1, 2);
  for (std::size_t k = 1; k < n; ++k) {
    root[k] = root[k - 1] * (half - Rational(static_cast<long>(k) - 1)) /
              Rational(static_cast<long>(k)) * (-r);
  }

  std::vector<Rational> denom(n);
  for (std::size_t k = 0; k < n; ++k) denom[k] = q * root[k];
  denom[0] += p;
  if (sgn(denom[0]) == 0) throw std::domain_error("series denominator vanishes at t = 0");

  // 1/denom by the usual recurrence on coefficients
  std::vector<Rational> inv(n);
  inv[0] = 1 / denom[0];
  for (std::size_t k = 1; k < n; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += denom[j] * inv[k - j];
    inv[k] = -s / denom[0];
  }
  for (auto& c : inv) c *= numerator;
  return inv;
}

void require_integral(const std::vector<Rational>& coeffs) {
  for (const auto& c : coeffs) {
    if (c.get_den() != 1 || sgn(c) < 0) {
      throw std::logic_error("closed-path count is not a nonnegative integer: " + c.get_str());
    }
  }
}

}  // namespace

SeriesCoeffs free_series(int d, int K) {
  if (d < 3) throw std::invalid_argument("free_series requires d >= 3");
  if (K < 0) throw std::invalid_argument("free_series requires K >= 0");
  SeriesCoeffs out{SeriesFamily::Free, d,
                   expand_sqrt_quotient(Rational(2 * d - 2), Rational(d - 2), Rational(d),
                                        Rational(4 * (d - 1)), K)};
  require_integral(out.coeffs);
  return out;
}

SeriesCoeffs symmetric_free_series(int d, int K) {
  if (d < 2) throw std::invalid_argument("symmetric_free_series requires d >= 2");
  if (K < 0) throw std::invalid_argument("symmetric_free_series requires K >= 0");
  SeriesCoeffs out{SeriesFamily::SymmetricFree, d,
                   expand_sqrt_quotient(Rational(4 * d - 2), Rational(2 * d - 2),
                                        Rational(2 * d), Rational(4 * (2 * d - 1)), K)};
  require_integral(out.coeffs);
  return out;
}

SeriesCoeffs raw_series(std::vector<Rational> coeffs) {
  return SeriesCoeffs{SeriesFamily::Raw, 0, std::move(coeffs)};
}

std::vector<Rational> w_from_u(std::span<const Rational> u, const Rational& lambda,
                               const Rational& eps, int N) {
  if (N < 0) throw std::invalid_argument("w_from_u: N must be >= 0");
  if (u.size() < static_cast<std::size_t>(N) + 1) {
    throw std::invalid_argument("w_from_u: need " + std::to_string(N + 1) +
                                " trace coefficients, have " + std::to_string(u.size()));
  }
  if (sgn(lambda) <= 0) throw std::invalid_argument("w_from_u: lambda must be positive");
  if (sgn(eps) < 0) throw std::invalid_argument("w_from_u: eps must be >= 0");

  // Work over a common denominator so the O(N^2) inner loop is integer-only.
  // With c = 1 - lambda eps = a/b, lambda = p/q and u_k = U_k / D:
  //   tr(B^n) (b q)^n D = sum_k C(n,k) (a q)^(n-k) (-p b)^k U_k.
  const Rational c = 1 - lambda * eps;
  const mpz_class a = c.get_num(), b = c.get_den();
  const mpz_class p = lambda.get_num(), q = lambda.get_den();

  mpz_class D = 1;
  for (int k = 0; k <= N; ++k) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), u[k].get_den().get_mpz_t());
  std::vector<mpz_class> U(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) U[k] = u[k].get_num() * (D / u[k].get_den());

  const mpz_class aq = a * q, pb = -(p * b), bq = b * q;
  std::vector<mpz_class> pow_aq(static_cast<std::size_t>(N) + 1), pow_pb(pow_aq.size());
  pow_aq[0] = 1;
  pow_pb[0] = 1;
  for (int k = 1; k <= N; ++k) {
    pow_aq[k] = pow_aq[k - 1] * aq;
    pow_pb[k] = pow_pb[k - 1] * pb;
  }
  // pb_U[k] = (-p b)^k U_k is shared by every n
  std::vector<mpz_class> pb_U(pow_aq.size());
  for (int k = 0; k <= N; ++k) pb_U[k] = pow_pb[k] * U[k];

  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(N) + 1);
  mpz_class bq_pow = 1, binom, sum;
  for (int n = 0; n <= N; ++n) {
    sum = 0;
    binom = 1;
    for (int k = 0; k <= n; ++k) {
      sum += binom * pow_aq[n - k] * pb_U[k];
      binom = binom * (n - k) / (k + 1);
    }
    Rational value(sum, bq_pow * D);
    value.canonicalize();
    out.push_back(std::move(value));
    bq_pow *= bq;
  }
  return out;
}

BruteforceReport verify_bruteforce(int d, int K, const PowerOptions& options) {
  if (d < 3 || d > 6) throw std::invalid_argument("verify_bruteforce requires 3 <= d <= 6");
  if (K < 0 || K > 6) throw std::invalid_argument("verify_bruteforce requires 0 <= K <= 6");
  BruteforceReport report;
  report.series = free_series(d, K).coeffs;
  const auto op = free_operator(d);
  report.algebra = power_traces(op.element, K, options).values;
  report.agrees = report.series == report.algebra;
  return report;
}

}  // namespace fkdet
