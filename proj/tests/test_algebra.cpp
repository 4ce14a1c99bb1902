#include <random>

#include "doctest.h"
#include "fkdet/algebra.hpp"
#include "fkdet/catalog.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/laurent.hpp"
#include "oracles/closed_paths.hpp"

using namespace fkdet;

namespace {

Word W(std::initializer_list<int> letters) { return Word::from_signed(letters); }

ExactElement random_exact(const GroupSpec& spec, std::mt19937& rng, int terms, int len) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> length(0, len);
  std::uniform_int_distribution<int> gen(1, spec.rank());
  std::bernoulli_distribution inv;
  ExactElement a(spec);
  for (int i = 0; i < terms; ++i) {
    std::vector<int> v;
    for (int k = length(rng); k > 0; --k) v.push_back(inv(rng) ? -gen(rng) : gen(rng));
    a.add_term(Word::from_signed(v), Rational(coeff(rng), 1 + (i % 3)));
  }
  return a;
}

std::vector<long> as_longs(const TraceSchedule<Rational>& s) {
  std::vector<long> out;
  for (const auto& v : s.values) {
    REQUIRE(v.get_den() == 1);
    out.push_back(v.get_num().get_si());
  }
  return out;
}

}  // namespace

TEST_CASE("addition and scaling") {
  const auto f2 = GroupSpec::free_group(2);
  const auto id = ExactElement::identity(f2);
  CHECK(add(id, scale(Rational(-1), id)).is_zero());
  const auto a = free_operator(3).element;
  CHECK(scale(Rational(0), a).is_zero());
  const auto twice = scale(Rational(2), ExactElement::identity(f2).add_term(W({1}), Rational(1)));
  CHECK(twice.size() == 2);
  CHECK(twice.coefficient(Word{}) == 2);
  CHECK(twice.coefficient(W({1})) == 2);
}

TEST_CASE("mixing groups is rejected") {
  const auto a = ExactElement::identity(GroupSpec::free_group(2));
  const auto b = ExactElement::identity(GroupSpec::free_abelian(2));
  CHECK_THROWS_AS(add(a, b), SpecMismatch);
  CHECK_THROWS_AS(multiply(a, b), SpecMismatch);
  CHECK_THROWS_AS(pair_trace(a, b), SpecMismatch);
}

TEST_CASE("convolution") {
  const auto f2 = GroupSpec::free_group(2);
  auto plus = ExactElement::identity(f2);
  plus.add_term(W({1}), Rational(1));
  auto minus = ExactElement::identity(f2);
  minus.add_term(W({1}), Rational(-1));
  const auto prod = multiply(plus, minus);
  CHECK(prod.size() == 2);
  CHECK(prod.coefficient(Word{}) == 1);
  CHECK(prod.coefficient(W({1, 1})) == -1);

  const auto a = free_operator(3).element;
  const auto g = gram(a);
  CHECK(g.size() == 7);
  CHECK(g.coefficient(Word{}) == 3);
  for (auto w : {W({1}), W({2}), W({-1}), W({-2}), W({-1, 2}), W({-2, 1})}) {
    CHECK(g.coefficient(w) == 1);
  }
  const auto id = ExactElement::identity(f2);
  CHECK(to_string(multiply(id, a)) == to_string(a));
}

TEST_CASE("adjoint") {
  const auto a = free_operator(3).element;
  const auto adj = adjoint(a);
  CHECK(adj.coefficient(W({-1})) == 1);
  CHECK(adj.coefficient(W({-2})) == 1);
  CHECK(to_string(adjoint(adj)) == to_string(a));

  const auto f1 = GroupSpec::free_group(1);
  const auto ig = FloatElement::monomial(f1, W({1}), Complex(0, 1));
  CHECK(adjoint(ig).coefficient(W({-1})) == Complex(0, -1));

  const auto g = gram(a);
  CHECK(to_string(adjoint(g)) == to_string(g));
}

TEST_CASE("trace and norms") {
  const auto f2 = GroupSpec::free_group(2);
  CHECK(trace(ExactElement::identity(f2)) == 1);
  CHECK(trace(ExactElement::monomial(f2, W({1, 2}), Rational(5))) == 0);
  CHECK(trace(gram(free_operator(3).element)) == 3);
  CHECK(one_norm(free_operator(3).element) == 3);
  CHECK(one_norm(ExactElement(f2)) == 0);
}

TEST_CASE("pair_trace matches the trace of the product") {
  const auto f2 = GroupSpec::free_group(2);
  const auto a = free_operator(3).element;
  CHECK(pair_trace(ExactElement::identity(f2), a) == trace(a));
  CHECK(pair_trace(a, adjoint(a)) == 3);

  const auto b = subtract(ExactElement::identity(f2), scale(Rational(1, 9), gram(a)));
  CHECK(pair_trace(b, b) == trace(multiply(b, b)));

  std::mt19937 rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_exact(f2, rng, 6, 4);
    const auto y = random_exact(f2, rng, 6, 4);
    CHECK(pair_trace(x, y) == trace(multiply(x, y)));
  }
}

TEST_CASE("trace is commutative and positive on Gram elements") {
  std::mt19937 rng(23);
  for (const auto& spec : {GroupSpec::free_group(2), GroupSpec::free_abelian(2)}) {
    for (int i = 0; i < 40; ++i) {
      const auto x = random_exact(spec, rng, 5, 5);
      const auto y = random_exact(spec, rng, 5, 5);
      CHECK(trace(multiply(x, y)) == trace(multiply(y, x)));
      CHECK(trace(adjoint(x)) == trace(x));
      const Rational t = trace(gram(x));
      CHECK(sgn(t) >= 0);
      CHECK((sgn(t) == 0) == x.is_zero());
    }
  }
}

TEST_CASE("power traces of the free operator") {
  CHECK(as_longs(power_traces(free_operator(3).element, 3)) == std::vector<long>{1, 3, 15, 87});
  CHECK(as_longs(power_traces(free_operator(3).element, 4)) ==
        std::vector<long>{1, 3, 15, 87, 543});
  const auto id = ExactElement::identity(GroupSpec::free_group(3));
  CHECK(as_longs(power_traces(id, 5)) == std::vector<long>(6, 1));
}

TEST_CASE("power traces agree with independent closed-path counts") {
  for (int d : {3, 4, 5}) {
    const int K = d == 3 ? 6 : 5;
    const auto got = as_longs(power_traces(free_operator(d).element, K));
    for (int k = 0; k <= K; ++k) {
      CHECK(got[static_cast<std::size_t>(k)] ==
            static_cast<long>(oracle::closed_paths(oracle::free_family(d), k)));
    }
  }
}

TEST_CASE("power traces on Z match Laurent convolution") {
  const auto z = GroupSpec::free_abelian(1);
  auto a = ExactElement::identity(z);
  a.add_term(W({1}), Rational(-2));
  // The constant terms of (5 - 2X - 2X^-1)^k.
  const auto got = as_longs(power_traces(a, 3));
  oracle::Laurent p{{{0}, 1}, {{1}, -2}};
  for (int k = 0; k <= 3; ++k) {
    CHECK(got[static_cast<std::size_t>(k)] == oracle::constant_term_power(p, k));
  }
  CHECK(got == std::vector<long>{1, 5, 33, 245});
}

TEST_CASE("trace/torus duality on Z^2") {
  const auto spec = GroupSpec::free_abelian(2);
  for (const char* text : {"1+x+y", "x-2", "3-x*y+2y^-1", "1+x+x^-1*y^2-y"}) {
    const LaurentPoly p = parse_laurent(text);
    LaurentPoly p2 = p;
    p2.dims = 2;
    p2.terms.clear();
    oracle::Laurent q;
    for (const auto& [e, c] : p.terms) {
      std::vector<int> e2 = e;
      e2.resize(2, 0);
      p2.add(e2, c);
      q[e2] = static_cast<std::int64_t>(c.real());
    }
    const auto got = as_longs(power_traces(to_exact_element(p2, spec), 4));
    for (int k = 0; k <= 4; ++k) {
      CHECK(got[static_cast<std::size_t>(k)] == oracle::constant_term_power(q, k));
    }
  }
}

TEST_CASE("unit-modulus coefficients do not change the traces") {
  const std::vector<Complex> zetas[] = {{Complex(0, 1), Complex(-1, 0)},
                                        {std::polar(1.0, 0.3), std::polar(1.0, 2.1)}};
  const auto ref = power_traces(free_operator(3).element, 6);
  for (const auto& zeta : zetas) {
    const auto got = power_traces(free_operator(3, zeta).element, 6);
    for (std::size_t k = 0; k < got.values.size(); ++k) {
      CHECK(got.values[k] == doctest::Approx(ref.values[k].get_d()).epsilon(1e-12));
    }
  }
  CHECK_THROWS(free_operator(3, std::vector<Complex>{Complex(1.0001, 0), Complex(1, 0)}));
}

TEST_CASE("budget is enforced") {
  PowerOptions tight;
  tight.budget = 100;
  CHECK_THROWS_AS(power_traces(free_operator(4).element, 8, tight), BudgetExceeded);
}

TEST_CASE("representative words round-trip through their keys") {
  const auto rep = read_rep_file(default_data_dir() / "fig8_wirtinger.rep");
  const auto op = fig8_wirtinger<Complex>(1.0, rep);
  const auto g = gram(op.element);
  const auto g2 = multiply(g, g);
  for (const auto* e : {&op.element, &g, &g2}) {
    for (const auto& [key, term] : e->terms()) CHECK(e->spec().canonical_key(term.word) == key);
  }
  const auto f2 = GroupSpec::free_group(2);
  std::mt19937 rng(29);
  const auto x = random_exact(f2, rng, 8, 4);
  for (const auto& [key, term] : multiply(x, x).terms()) {
    CHECK(f2.canonical_key(term.word) == key);
  }
}

TEST_CASE("float mode with a drop tolerance prunes small terms") {
  const auto f1 = GroupSpec::free_group(1);
  FloatElement a(f1, 1e-3);
  a.add_term(Word{}, 1.0);
  a.add_term(W({1}), 1e-4);
  CHECK(a.size() == 1);
  CHECK_THROWS(ExactElement(f1, 1e-3));
}

TEST_CASE("exact and float routes agree") {
  const auto a = free_operator(3).element;
  const auto exact = power_traces(a, 6);
  const auto fl = power_traces(to_float(a), 6);
  for (std::size_t k = 0; k < exact.values.size(); ++k) {
    CHECK(fl.values[k] == doctest::Approx(exact.values[k].get_d()).epsilon(1e-12));
  }
}

TEST_CASE("threaded multiplication is deterministic") {
  const auto g = gram(free_operator(4).element);
  const auto g2 = multiply(g, g);
  const auto serial = multiply(g2, g, MultiplyOptions{1});
  const auto threaded = multiply(g2, g, MultiplyOptions{4});
  CHECK(to_string(serial) == to_string(threaded));
}
