#pragma once

#include <span>
#include <vector>

#include "fkdet/algebra.hpp"

namespace fkdet {

enum class SeriesFamily { Free, SymmetricFree, Raw };

/// Exact Taylor coefficients of a path-counting generating function;
/// coeffs[k] multiplies t^k. For the two free families `d` records the
/// family parameter.
struct SeriesCoeffs {
  SeriesFamily family = SeriesFamily::Raw;
  int d = 0;
  std::vector<Rational> coeffs;
};

/// Coefficients of u(t) = (2d-2) / (d-2 + d sqrt(1 - 4(d-1)t)), the series
/// sum_k tr((A^*A)^k) t^k for A = Id + R_{x_1} + ... + R_{x_{d-1}} over
/// F_{d-1}. Requires d >= 3.
SeriesCoeffs free_series(int d, int K);

/// Coefficients of (4d-2) / (2d-2 + 2d sqrt(1 - 4(2d-1)t)), the series for
/// R_{x_1} + R_{x_1^-1} + ... + R_{x_d} + R_{x_d^-1} over F_d. Requires d >= 2.
SeriesCoeffs symmetric_free_series(int d, int K);

/// Wraps raw trace values (e.g. from power_traces in exact mode).
SeriesCoeffs raw_series(std::vector<Rational> coeffs);

/// tr(B^n) for B = (1 - lambda eps) Id - lambda A^*A, n = 0..N, from the
/// traces u_k = tr((A^*A)^k) by the binomial transform
///   tr(B^n) = sum_k C(n,k) (1 - lambda eps)^(n-k) (-lambda)^k u_k.
/// Runs entirely in exact arithmetic. Throws std::invalid_argument when u
/// has fewer than N+1 coefficients or lambda <= 0 or eps < 0.
std::vector<Rational> w_from_u(std::span<const Rational> u, const Rational& lambda,
                               const Rational& eps, int N);
inline std::vector<Rational> w_from_u(const SeriesCoeffs& u, const Rational& lambda,
                                      const Rational& eps, int N) {
  return w_from_u(std::span<const Rational>(u.coeffs), lambda, eps, N);
}

struct BruteforceReport {
  bool agrees = false;
  std::vector<Rational> series;
  std::vector<Rational> algebra;
};

/// Compares free_series(d, K) against exact power_traces of the free
/// operator Id + R_{x_1} + ... + R_{x_{d-1}}. Requires 3 <= d <= 6, 0 <= K <= 6.
BruteforceReport verify_bruteforce(int d, int K, const PowerOptions& options = {});

}  // namespace fkdet
