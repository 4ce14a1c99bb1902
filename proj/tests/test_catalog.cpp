#include <cmath>

#include "doctest.h"
#include "fkdet/catalog.hpp"
#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"

using namespace fkdet;

namespace {

RepFile wirtinger_rep() { return read_rep_file(default_data_dir() / "fig8_wirtinger.rep"); }
RepFile twist_rep() { return read_rep_file(default_data_dir() / "fig8_twist.rep"); }

}  // namespace

TEST_CASE("free operators") {
  const auto op = free_operator(3);
  CHECK(op.element.size() == 3);
  CHECK(one_norm(op.element) == 3);
  CHECK(trace(op.element) == 1);
  CHECK(op.certified_lambda == Rational(1, 9));
  for (int d = 3; d <= 7; ++d) {
    const auto o = free_operator(d);
    CHECK(o.element.size() == static_cast<std::size_t>(d));
    CHECK(one_norm(o.element) == d);
    CHECK(o.certified_lambda == Rational(1, d * d));
  }
  const std::vector<Complex> zeta{Complex(0, 1), Complex(-1, 0)};
  CHECK(one_norm(free_operator(3, zeta).element) == doctest::Approx(3.0));
  CHECK_THROWS(free_operator(2));
  CHECK_THROWS(free_operator(3, std::vector<Complex>{Complex(1, 0)}));
}

TEST_CASE("symmetric operators") {
  const auto op = symmetric_operator(2);
  CHECK(op.element.size() == 4);
  CHECK(trace(op.element) == 0);
  CHECK(one_norm(op.element) == 4);
  CHECK(trace(gram(op.element)) == 4);
  CHECK(op.certified_lambda == Rational(1, 16));
  const std::vector<Complex> zeta{Complex(0, 1), Complex(1, 0)};
  const std::vector<Complex> xi{Complex(-1, 0), Complex(0, -1)};
  const auto traces = power_traces(symmetric_operator(2, zeta, xi).element, 4);
  const auto ref = symmetric_free_series(2, 4);
  for (std::size_t k = 0; k <= 4; ++k) {
    CHECK(traces.values[k] == doctest::Approx(ref.coeffs[k].get_d()).epsilon(1e-12));
  }
}

TEST_CASE("cyclic operator") {
  const auto op = cyclic_operator(Rational(3, 2));
  CHECK(one_norm(op.element) == Rational(5, 2));
  CHECK(op.certified_lambda == Rational(4, 25));
}

TEST_CASE("Wirtinger operator for the figure-eight knot") {
  const auto rep = wirtinger_rep();
  for (const Rational& t : {Rational(1), Rational(1, 2), Rational(7, 3)}) {
    const auto op = fig8_wirtinger<Rational>(t, rep);
    CHECK(op.element.size() == 5);
    CHECK(one_norm(op.element) == 1 + 3 * t + t * t);
    CHECK(trace(op.element) == 1);
    CHECK(op.certified_lambda * (1 + 3 * t + t * t) * (1 + 3 * t + t * t) == 1);
  }
  const auto op = fig8_wirtinger<Complex>(1.0, rep);
  CHECK(one_norm(op.element) == doctest::Approx(5.0));
  CHECK_THROWS(fig8_wirtinger<Complex>(0.0, rep));
}

TEST_CASE("Gram moments of the Wirtinger operator") {
  const auto op = fig8_wirtinger<Rational>(Rational(1), wirtinger_rep());
  const auto traces = power_traces(op.element, 4);
  const std::vector<Rational> expected{1, 5, 53, 695, 10133};
  CHECK(traces.values == expected);
}

TEST_CASE("twist operator for the figure-eight knot") {
  const auto rep = twist_rep();
  for (const Rational& t : {Rational(1), Rational(1, 3), Rational(5, 2)}) {
    const auto op = fig8_twist<Rational>(t, rep);
    CHECK(op.element.size() == 4);
    CHECK(trace(op.element) == 1);
    CHECK(one_norm(op.element) == 2 + 2 / t);
    const auto scaled = scale(Rational(t), op.element);
    CHECK(one_norm(scaled) == 2 * t + 2);
    CHECK(op.certified_lambda == 1 / ((2 * t + 2) * (2 * t + 2)));
  }
}

TEST_CASE("catalog operators reject foreign representations") {
  RepFile rep = wirtinger_rep();
  rep.data.relators.push_back(Word::from_signed({1, 2}));
  CHECK_THROWS_AS(fig8_wirtinger<Complex>(1.0, rep), ValidationError);
}

TEST_CASE("safe-lambda bounds for the Wirtinger operator stay above the volume value") {
  const auto op = fig8_wirtinger<Complex>(1.0, wirtinger_rep());
  ApproxParams p;
  p.N = 6;
  const auto est = det_upper_bound(op.element, p);
  CHECK(est.certified);
  CHECK(est.lambda.get_d() == doctest::Approx(1.0 / 25.0).epsilon(1e-14));
  for (std::size_t n = 1; n < est.bounds.size(); ++n) {
    CHECK(est.bounds[n] <= est.bounds[n - 1] + 1e-12);
    CHECK(est.bounds[n] >= 1.113);
  }
}

TEST_CASE("manifold table and Lehmer report") {
  const auto table = manifold_table();
  REQUIRE(table.size() == 3);
  CHECK(table[0].name == "Weeks");
  CHECK(table[1].name == "m004");
  CHECK(table[1].relators.size() == 1);
  CHECK(table[2].relators[0] == whitehead_relator());
  for (const auto& m : table) CHECK(m.volume > 0);

  const auto rows = lehmer_rows(table);
  REQUIRE(rows.size() == 5);
  CHECK(truncate_digits(rows[0].bound, 6) == "1.05128");
  CHECK(rows[0].beats_free_bound);
  CHECK(truncate_digits(rows[1].bound, 4) == "1.113");
  CHECK(rows[1].beats_free_bound);
  CHECK_FALSE(rows[2].beats_free_bound);
  CHECK(rows[3].bound == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(rows[4].bound == doctest::Approx(1.17628081826));
  CHECK(rows[3].bound < rows[4].bound);

  const std::string report = lehmer_report(rows);
  CHECK(report.find("1.05128") != std::string::npos);
  CHECK(report.find("1.11370") != std::string::npos);
  CHECK(report.find("1.15470") != std::string::npos);
  CHECK(report.find("1.17628") != std::string::npos);
}

TEST_CASE("truncation") {
  CHECK(truncate_digits(1.1136960, 4) == "1.113");
  CHECK(truncate_digits(1.0512816, 6) == "1.05128");
  CHECK(truncate_digits(1.5, 3) == "1.50");
  CHECK(truncate_digits(123.456, 4) == "123.4");
  CHECK(truncate_digits(0.0123456, 3) == "0.0123");
}

TEST_CASE("manifold table errors") {
  CHECK_THROWS_AS(manifold_table("/nonexistent/manifolds.tsv"), ValidationError);
}
