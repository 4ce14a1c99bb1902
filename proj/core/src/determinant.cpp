#include "fkdet/determinant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fkdet/quadrature.hpp"

namespace fkdet {

namespace {

double bound_from_sum(double log_lambda, double partial_sum) {
  return std::exp(0.5 * (-log_lambda - partial_sum));
}

void require_lambda(const Rational& lambda) {
  if (sgn(lambda) <= 0) throw std::invalid_argument("lambda must be positive");
}

Rational resolve_lambda(const Rational& safe, const ApproxParams& params, bool& certified) {
  if (params.policy == LambdaPolicy::Safe) {
    certified = true;
    return safe;
  }
  require_lambda(params.lambda);
  certified = params.lambda <= safe;
  if (params.policy == LambdaPolicy::PaperVerbatim) certified = false;
  return params.lambda;
}

}  // namespace

std::vector<double> bounds_from_b_traces(std::span<const double> b_traces, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (b_traces.empty()) throw std::invalid_argument("need at least tr(B^0)");
  const double log_lambda = std::log(lambda);
  std::vector<double> out;
  out.reserve(b_traces.size());
  double sum = 0.0;
  out.push_back(bound_from_sum(log_lambda, 0.0));
  for (std::size_t n = 1; n < b_traces.size(); ++n) {
    sum += b_traces[n] / static_cast<double>(n);
    out.push_back(bound_from_sum(log_lambda, sum));
  }
  return out;
}

DetEstimate upper_bounds(const TraceSchedule<Rational>& traces, const ApproxParams& params) {
  require_lambda(params.lambda);
  if (params.N < 0) throw std::invalid_argument("N must be >= 0");
  if (traces.values.size() < static_cast<std::size_t>(params.N) + 1) {
    throw std::invalid_argument("upper_bounds: need traces for k = 0.." +
                                std::to_string(params.N));
  }
  const auto w = w_from_u(std::span<const Rational>(traces.values), params.lambda, Rational(0),
                          params.N);
  DetEstimate est;
  est.lambda = params.lambda;
  est.certified = params.policy == LambdaPolicy::Safe;
  const double log_lambda = std::log(params.lambda.get_d());
  Rational sum = 0;
  est.bounds.push_back(bound_from_sum(log_lambda, 0.0));
  for (int n = 1; n <= params.N; ++n) {
    sum += w[static_cast<std::size_t>(n)] / n;
    est.bounds.push_back(bound_from_sum(log_lambda, sum.get_d()));
  }
  return est;
}

DetEstimate upper_bounds(const SeriesCoeffs& u, const ApproxParams& params) {
  DetEstimate est = upper_bounds(TraceSchedule<Rational>{u.coeffs}, params);
  if (u.family == SeriesFamily::Free) est.exact_value = free_closed_form(u.d);
  if (u.family == SeriesFamily::SymmetricFree) est.exact_value = symmetric_free_closed_form(u.d);
  return est;
}

Rational safe_lambda(const ExactElement& a) {
  const Rational norm = one_norm(a);
  if (sgn(norm) == 0) throw std::invalid_argument("zero operator has no admissible lambda");
  return 1 / (norm * norm);
}

Rational safe_lambda(const FloatElement& a) {
  const double norm = one_norm(a);
  if (!(norm > 0)) throw std::invalid_argument("zero operator has no admissible lambda");
  // Rounding the norm up keeps the exact rational at or below one_norm^-2.
  const Rational n(std::nextafter(norm, INFINITY));
  return 1 / (n * n);
}

DetEstimate det_upper_bound(const ExactElement& a, const ApproxParams& params) {
  if (a.is_zero()) throw std::invalid_argument("det_upper_bound needs a nonzero element");
  ApproxParams p = params;
  bool certified = false;
  p.lambda = resolve_lambda(safe_lambda(a), params, certified);
  DetEstimate est = upper_bounds(power_traces(a, p.N, p.power), p);
  est.certified = certified;
  return est;
}

DetEstimate det_upper_bound(const FloatElement& a, const ApproxParams& params) {
  if (a.is_zero()) throw std::invalid_argument("det_upper_bound needs a nonzero element");
  if (params.N < 0) throw std::invalid_argument("N must be >= 0");
  bool certified = false;
  const Rational lambda = resolve_lambda(safe_lambda(a), params, certified);
  const double lam = lambda.get_d();
  const FloatElement g = gram(a, MultiplyOptions{params.power.threads});
  const FloatElement b = subtract(FloatElement::identity(a.spec()), scale(Complex(lam), g));
  const auto traces = trace_powers(b, params.N, params.power);
  DetEstimate est;
  est.lambda = lambda;
  est.certified = certified && a.drop_tolerance() == 0.0;
  est.bounds = bounds_from_b_traces(traces.values, lam);
  return est;
}

std::vector<IntegralEstimate> det_via_integral(const SeriesCoeffs& u, const ApproxParams& params) {
  require_lambda(params.lambda);
  if (params.eps_schedule.empty()) throw std::invalid_argument("empty eps schedule");
  if (u.coeffs.size() < 2) throw std::invalid_argument("det_via_integral needs u_0 and u_1");
  const double lam = params.lambda.get_d();
  const double u1 = u.coeffs[1].get_d();
  const double d = u.d;

  std::function<double(double)> u_closed;
  if (u.family == SeriesFamily::Free) {
    u_closed = [d](double s) {
      return (2 * d - 2) / (d - 2 + d * std::sqrt(1 - 4 * (d - 1) * s));
    };
  } else if (u.family == SeriesFamily::SymmetricFree) {
    u_closed = [d](double s) {
      return (4 * d - 2) / (2 * d - 2 + 2 * d * std::sqrt(1 - 4 * (2 * d - 1) * s));
    };
  }

  QuadratureOptions q;
  q.panels = params.quadrature_panels;
  std::vector<IntegralEstimate> out;
  for (const Rational& eps : params.eps_schedule) {
    if (sgn(eps) < 0) throw std::invalid_argument("eps must be nonnegative");
    const double c = 1.0 - lam * eps.get_d();
    const double slope = c - lam * u1;
    std::function<double(double)> integrand;
    if (u_closed) {
      integrand = [&, c, slope](double t) {
        if (t == 0.0) return slope;
        const double denom = 1.0 - c * t;
        const double w = u_closed(-lam * t / denom) / denom;
        return (w - 1.0) / t;
      };
    } else {
      const int n = static_cast<int>(u.coeffs.size()) - 1;
      const auto w_exact = w_from_u(u, params.lambda, eps, n);
      std::vector<double> w;
      for (const auto& x : w_exact) w.push_back(x.get_d());
      integrand = [w](double t) {
        // (w(t) - 1)/t = sum_{n>=1} w_n t^(n-1), by Horner
        double acc = 0.0;
        for (std::size_t k = w.size() - 1; k >= 1; --k) acc = acc * t + w[k];
        return acc;
      };
    }
    const double integral = integrate_unit_interval(integrand, q);
    out.push_back({eps, bound_from_sum(std::log(lam), integral)});
  }
  return out;
}

double free_closed_form(int d) {
  if (d < 3) throw std::invalid_argument("free_closed_form requires d >= 3");
  const double dd = d;
  return std::pow(dd - 1, (dd - 1) / 2) / std::pow(dd, (dd - 2) / 2);
}

double symmetric_free_closed_form(int d) {
  if (d < 2) throw std::invalid_argument("symmetric_free_closed_form requires d >= 2");
  const double dd = d;
  return std::pow(2 * dd - 1, (2 * dd - 1) / 2) / std::pow(2 * dd, dd - 1);
}

double lehmer_vol_bound(double volume) {
  if (!(volume > 0)) throw std::invalid_argument("volume must be positive");
  return std::exp(volume / (6 * std::numbers::pi));
}

}  // namespace fkdet
