#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fkdet/algebra.hpp"
#include "fkdet/laurent.hpp"
#include "fkdet/series.hpp"

namespace fkdet {

/// Safe: lambda = one_norm(A)^-2, which provably lies below ||A||^-2.
/// PaperVerbatim: caller-supplied lambda reproducing published choices.
/// Explicit: any other caller-supplied lambda.
enum class LambdaPolicy { Safe, PaperVerbatim, Explicit };

struct ApproxParams {
  Rational lambda = 0;  // ignored under Safe when an element is available
  int N = 6;
  LambdaPolicy policy = LambdaPolicy::Safe;
  std::vector<Rational> eps_schedule = {Rational(1, 100), Rational(1, 1000),
                                        Rational(1, 10000)};
  int quadrature_panels = 64;
  PowerOptions power;
};

/// bounds[n] = sqrt((1/lambda) exp(-sum_{m=1}^{n} tr(B^m)/m)) for
/// B = Id - lambda A^*A and n = 0..N, so bounds[0] = 1/sqrt(lambda).
struct DetEstimate {
  std::vector<double> bounds;
  Rational lambda;
  bool certified = false;
  std::optional<double> exact_value;
};

struct IntegralEstimate {
  Rational eps;
  double value = 0.0;
};

/// Partial-sum bounds from tr(B^n), n = 0..N (entry 0 is ignored).
std::vector<double> bounds_from_b_traces(std::span<const double> b_traces, double lambda);

/// Exact route: tr(B^n) from the binomial transform of exact traces, with
/// exact partial sums; only the final exp and sqrt use doubles.
DetEstimate upper_bounds(const TraceSchedule<Rational>& traces, const ApproxParams& params);
/// Same for series coefficients; attaches the closed form for the two
/// free families.
DetEstimate upper_bounds(const SeriesCoeffs& u, const ApproxParams& params);

/// one_norm(a)^-2.
Rational safe_lambda(const ExactElement& a);
Rational safe_lambda(const FloatElement& a);

/// power_traces followed by upper_bounds.
DetEstimate det_upper_bound(const ExactElement& a, const ApproxParams& params);
/// Float route: tr(B^n) from direct powers of B = Id - lambda a^*a.
DetEstimate det_upper_bound(const FloatElement& a, const ApproxParams& params);

/// (1/sqrt(lambda)) exp(-1/2 int_0^1 (w(t) - 1)/t dt) for each eps in the
/// schedule, with w = w_{lambda,eps}. The free families use the composed
/// closed form of w; raw coefficients use the truncated series.
std::vector<IntegralEstimate> det_via_integral(const SeriesCoeffs& u, const ApproxParams& params);

/// (d-1)^((d-1)/2) / d^((d-2)/2), d >= 3.
double free_closed_form(int d);
/// (2d-1)^((2d-1)/2) / (2d)^(d-1), d >= 2.
double symmetric_free_closed_form(int d);

/// exp(vol / 6 pi).
double lehmer_vol_bound(double volume);

/// |C| prod max(1, |alpha_j|) over the roots of a one-variable polynomial,
/// via companion-matrix eigenvalues and one Newton step per root.
double mahler_1d(const LaurentPoly& p);

/// exp of the mean of ln|p| over a grid^dims tensor grid on the torus,
/// skipping nodes where |p| < 1e-13. Requires grid >= 8.
double mahler_nd(const LaurentPoly& p, int grid);

}  // namespace fkdet
