#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fkdet/catalog.hpp"
#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/laurent.hpp"
#include "fkdet/quadrature.hpp"

using namespace fkdet;

namespace {

ApproxParams explicit_lambda(const Rational& lambda, int N) {
  ApproxParams p;
  p.policy = LambdaPolicy::Explicit;
  p.lambda = lambda;
  p.N = N;
  return p;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  const auto rule = gauss_legendre(8);
  double sum = 0;
  for (double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  double m14 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) m14 += rule.weights[i] * std::pow(rule.nodes[i], 14);
  CHECK(m14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));

  CHECK(integrate_unit_interval([](double t) { return t * t; }) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // Integrable endpoint singularity.
  CHECK(integrate_unit_interval([](double t) { return 1.0 / std::sqrt(1.0 - t); }) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(integrate_unit_interval([](double t) { return 1.0 / (1.0 - t); }),
                  ConvergenceError);
}

TEST_CASE("upper bounds for the free operator") {
  const auto est = upper_bounds(free_series(3, 40), explicit_lambda(Rational(1, 9), 40));
  REQUIRE(est.bounds.size() == 41);
  CHECK(est.bounds[0] == doctest::Approx(3.0));
  CHECK(est.bounds[1] == doctest::Approx(3.0 * std::exp(-1.0 / 3.0)).epsilon(1e-14));
  CHECK(est.bounds[1] == doctest::Approx(2.149593931721368).epsilon(1e-13));
  CHECK(est.bounds[6] == doctest::Approx(1.5746920697818396).epsilon(1e-13));
  CHECK(est.bounds[40] == doctest::Approx(1.3087242518543105).epsilon(1e-12));
  REQUIRE(est.exact_value);
  CHECK(*est.exact_value == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  for (std::size_t n = 1; n < est.bounds.size(); ++n) {
    CHECK(est.bounds[n] <= est.bounds[n - 1]);
    CHECK(est.bounds[n] >= *est.exact_value - 1e-9);
  }
}

TEST_CASE("safe-lambda bounds are monotone and sound for the free families") {
  for (int d = 3; d <= 6; ++d) {
    const auto est = upper_bounds(free_series(d, 60), explicit_lambda(Rational(1, d * d), 60));
    for (std::size_t n = 1; n < est.bounds.size(); ++n) {
      CHECK(est.bounds[n] <= est.bounds[n - 1] + 1e-12);
      CHECK(est.bounds[n] >= free_closed_form(d) - 1e-9);
    }
  }
  for (int d = 2; d <= 4; ++d) {
    const auto est =
        upper_bounds(symmetric_free_series(d, 40), explicit_lambda(Rational(1, 4 * d * d), 40));
    for (std::size_t n = 1; n < est.bounds.size(); ++n) {
      CHECK(est.bounds[n] <= est.bounds[n - 1] + 1e-12);
      CHECK(est.bounds[n] >= symmetric_free_closed_form(d) - 1e-9);
    }
  }
}

TEST_CASE("series route and algebra route give the same bounds") {
  ApproxParams p;
  p.N = 6;
  const auto via_algebra = det_upper_bound(free_operator(3).element, p);
  const auto via_series = upper_bounds(free_series(3, 6), explicit_lambda(Rational(1, 9), 6));
  CHECK(via_algebra.lambda == Rational(1, 9));
  CHECK(via_algebra.certified);
  for (std::size_t n = 0; n <= 6; ++n) {
    CHECK(via_algebra.bounds[n] == doctest::Approx(via_series.bounds[n]).epsilon(1e-14));
  }
  const auto via_float = det_upper_bound(to_float(free_operator(3).element), p);
  for (std::size_t n = 0; n <= 6; ++n) {
    CHECK(via_float.bounds[n] == doctest::Approx(via_series.bounds[n]).epsilon(1e-9));
  }
}

TEST_CASE("identity and dilations") {
  const auto f1 = GroupSpec::free_group(1);
  ApproxParams p;
  p.N = 200;
  const auto est = det_upper_bound(ExactElement::identity(f1), p);
  CHECK(est.bounds[0] == doctest::Approx(1.0));
  CHECK(est.bounds.back() == doctest::Approx(1.0).epsilon(1e-12));

  const auto id_bound = upper_bounds(TraceSchedule<Rational>{std::vector<Rational>(31, Rational(1))},
                                     explicit_lambda(Rational(1, 4), 30));
  double sum = 0;
  for (int n = 1; n <= 30; ++n) {
    sum += std::pow(0.75, n) / n;
    CHECK(id_bound.bounds[static_cast<std::size_t>(n)] ==
          doctest::Approx(2.0 * std::exp(-0.5 * sum)).epsilon(1e-13));
  }

  for (int c : {2, 5}) {
    const auto dilated = det_upper_bound(ExactElement::identity(f1, Rational(c)), p);
    CHECK(dilated.bounds.back() == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("bounds on Z against the one-variable Mahler measure") {
  SUBCASE("Id - 2 R_g with lambda 1/9") {
    const auto est = det_upper_bound(cyclic_operator(Rational(2)).element,
                                     explicit_lambda(Rational(1, 9), 2));
    CHECK(est.bounds[1] == doctest::Approx(2.4022122087504245).epsilon(1e-13));
    CHECK(est.bounds[2] == doctest::Approx(2.230701237617719).epsilon(1e-13));
    CHECK(est.certified);
  }
  SUBCASE("safe lambda, N = 50") {
    const double finals[] = {1.0000141913597151, 1.5023314555619778, 3.0000000036396037};
    int i = 0;
    for (double t : {0.5, 1.5, 3.0}) {
      ApproxParams p;
      p.N = 50;
      const auto est = det_upper_bound(cyclic_operator(Rational(t)).element, p);
      const double target = mahler_1d(parse_laurent(t == 0.5 ? "1-0.5x" : t == 1.5 ? "1-1.5x" : "1-3x"));
      CHECK(target == doctest::Approx(std::max(1.0, t)).epsilon(1e-12));
      for (std::size_t n = 1; n < est.bounds.size(); ++n) {
        CHECK(est.bounds[n] <= est.bounds[n - 1] + 1e-12);
        CHECK(est.bounds[n] >= target - 1e-9);
      }
      CHECK(est.bounds.back() == doctest::Approx(finals[i++]).epsilon(1e-12));
    }
  }
}

TEST_CASE("paper-verbatim lambda is never certified") {
  ApproxParams p = explicit_lambda(Rational(1, 3), 4);
  p.policy = LambdaPolicy::PaperVerbatim;
  CHECK_FALSE(det_upper_bound(free_operator(3).element, p).certified);
  p.policy = LambdaPolicy::Explicit;
  CHECK_FALSE(det_upper_bound(free_operator(3).element, p).certified);
  p.lambda = Rational(1, 10);
  CHECK(det_upper_bound(free_operator(3).element, p).certified);
}

TEST_CASE("integral route") {
  ApproxParams p;
  p.lambda = Rational(1, 9);
  const auto est = det_via_integral(free_series(3, 2), p);
  REQUIRE(est.size() == 3);
  const double target = 2.0 / std::sqrt(3.0);
  CHECK(est[0].value > est[1].value);
  CHECK(est[1].value > est[2].value);
  CHECK(est[2].value >= target);
  CHECK(est[2].value == doctest::Approx(target).epsilon(5e-3 / target));

  SUBCASE("w identically one gives 1/sqrt(lambda)") {
    std::vector<Rational> u;
    Rational power = 1;
    for (int k = 0; k <= 8; ++k) {
      u.push_back(power);
      power *= 9;
    }
    ApproxParams q;
    q.lambda = Rational(1, 9);
    q.eps_schedule = {Rational(0)};
    const auto flat = det_via_integral(raw_series(u), q);
    CHECK(flat[0].value == doctest::Approx(3.0).epsilon(1e-14));
  }

  SUBCASE("truncated raw series integrate to the partial sum") {
    ApproxParams q;
    q.lambda = Rational(1, 9);
    q.eps_schedule = {Rational(0)};
    const auto raw = det_via_integral(raw_series(free_series(3, 12).coeffs), q);
    const auto partial = upper_bounds(free_series(3, 12), explicit_lambda(Rational(1, 9), 12));
    CHECK(raw[0].value == doctest::Approx(partial.bounds[12]).epsilon(1e-10));
  }

  SUBCASE("symmetric family") {
    ApproxParams q;
    q.lambda = Rational(1, 16);
    const auto sym = det_via_integral(symmetric_free_series(2, 2), q);
    CHECK(sym[2].value == doctest::Approx(symmetric_free_closed_form(2)).epsilon(1e-2));
  }
}

TEST_CASE("closed forms") {
  CHECK(free_closed_form(3) == doctest::Approx(1.1547005383792517).epsilon(1e-15));
  CHECK(free_closed_form(4) == doctest::Approx(1.299038105676658).epsilon(1e-15));
  for (int d = 3; d < 30; ++d) CHECK(free_closed_form(d + 1) > free_closed_form(d));
  CHECK(symmetric_free_closed_form(2) == doctest::Approx(1.299038105676658).epsilon(1e-15));
  CHECK(symmetric_free_closed_form(3) == doctest::Approx(1.5528249843748538).epsilon(1e-14));
  for (int d = 2; d < 10; ++d) {
    CHECK(symmetric_free_closed_form(d) == doctest::Approx(free_closed_form(2 * d)).epsilon(1e-14));
  }
  CHECK_THROWS(free_closed_form(2));
  CHECK_THROWS(symmetric_free_closed_form(1));
}

TEST_CASE("volume bounds") {
  CHECK(lehmer_vol_bound(0.942707) == doctest::Approx(1.0512838795).epsilon(1e-9));
  CHECK(lehmer_vol_bound(2.0298) == doctest::Approx(1.1136960).epsilon(1e-6));
  const double threshold = 6 * std::numbers::pi * std::log(2.0 / std::sqrt(3.0));
  CHECK(threshold == doctest::Approx(2.711).epsilon(1e-3));
  CHECK(lehmer_vol_bound(threshold) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS(lehmer_vol_bound(0.0));
}

TEST_CASE("Laurent parsing") {
  auto p = parse_laurent("1+x+y");
  CHECK(p.dims == 2);
  CHECK(p.terms.size() == 3);
  p = parse_laurent("x-2");
  CHECK(p.dims == 1);
  CHECK(p.terms.at({0}) == Complex(-2));
  p = parse_laurent("1 - 1.5x");
  CHECK(p.terms.at({1}) == Complex(-1.5));
  p = parse_laurent("2*x*y^-1 + x3^2");
  CHECK(p.dims == 3);
  CHECK(p.terms.at({1, -1, 0}) == Complex(2));
  CHECK(p.terms.at({0, 0, 2}) == Complex(1));
}

TEST_CASE("Laurent parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_laurent(""), ValidationError);
  CHECK_THROWS_AS(parse_laurent("1++x"), ValidationError);
  CHECK_THROWS_AS(parse_laurent("q+1"), ValidationError);
  CHECK_THROWS_AS(parse_laurent("x^"), ValidationError);
  CHECK_THROWS_AS(parse_laurent("x - x"), ValidationError);
}

TEST_CASE("one-variable Mahler measure") {
  CHECK(mahler_1d(parse_laurent("x-2")) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(mahler_1d(lehmer_polynomial()) == doctest::Approx(1.176280818).epsilon(1e-9));
  CHECK(mahler_1d(lehmer_polynomial()) == doctest::Approx(1.1762808182599176).epsilon(1e-13));
  CHECK(mahler_1d(parse_laurent("1-0.5x")) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mahler_1d(parse_laurent("1-3x")) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(mahler_1d(parse_laurent("7")) == doctest::Approx(7.0));
  CHECK(mahler_1d(parse_laurent("2x^-3 + 4x^2")) == doctest::Approx(4.0));
  CHECK(mahler_1d(parse_laurent("x-1")) == doctest::Approx(1.0));
}

TEST_CASE("torus-grid Mahler measure") {
  CHECK(mahler_nd(parse_laurent("1+x+y"), 2048) == doctest::Approx(1.38135).epsilon(5e-3 / 1.38135));
  CHECK(mahler_nd(parse_laurent("3"), 16) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(mahler_nd(parse_laurent("x"), 16) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mahler_nd(parse_laurent("x1*x2^-1"), 16) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(mahler_nd(parse_laurent("x"), 4));
  const double first = mahler_nd(parse_laurent("1+x+y"), 64);
  CHECK(mahler_nd(parse_laurent("1+x+y"), 64) == first);
}

TEST_CASE("torus grid agrees with roots in one variable") {
  for (const char* text : {"1-1.5x", "x-2", "1+x+x^2", "2-x+3x^3", "1-0.5x", "x^-1+5+x"}) {
    const auto p = parse_laurent(text);
    CHECK(mahler_nd(p, 4096) == doctest::Approx(mahler_1d(p)).epsilon(5e-3 / mahler_1d(p)));
  }
}
