#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"

namespace fkdet {

namespace {

Complex horner(const std::vector<Complex>& c, Complex x) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double mahler_1d(const LaurentPoly& p) {
  if (p.dims != 1) throw std::invalid_argument("mahler_1d needs a one-variable polynomial");
  if (p.is_zero()) throw std::invalid_argument("mahler_1d needs a nonzero polynomial");
  const int low = p.terms.begin()->first[0];
  const int high = p.terms.rbegin()->first[0];
  const auto degree = static_cast<Eigen::Index>(high - low);
  if (degree > 4096) throw std::invalid_argument("mahler_1d: degree too large");

  // c[k] multiplies X^(low + k); c[0] and c[degree] are nonzero.
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, 0.0);
  for (const auto& [e, v] : p.terms) c[static_cast<std::size_t>(e[0] - low)] = v;
  const Complex lead = c.back();
  double measure = std::abs(lead);
  if (degree == 0) return measure;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -c[static_cast<std::size_t>(i)] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("companion eigenvalue solver did not converge");
  }

  std::vector<Complex> deriv(static_cast<std::size_t>(degree));
  for (std::size_t k = 1; k < c.size(); ++k) deriv[k - 1] = c[k] * static_cast<double>(k);

  for (Eigen::Index i = 0; i < degree; ++i) {
    Complex root = solver.eigenvalues()(i);
    const Complex slope = horner(deriv, root);
    if (std::abs(slope) > 0.0) {
      const Complex polished = root - horner(c, root) / slope;
      if (std::isfinite(polished.real()) && std::isfinite(polished.imag()) &&
          std::abs(horner(c, polished)) <= std::abs(horner(c, root))) {
        root = polished;
      }
    }
    measure *= std::max(1.0, std::abs(root));
  }
  return measure;
}

double mahler_nd(const LaurentPoly& p, int grid) {
  if (p.is_zero()) throw std::invalid_argument("mahler_nd needs a nonzero polynomial");
  if (grid < 8) throw std::invalid_argument("mahler_nd needs grid >= 8");
  const int dims = p.dims;
  double total_nodes = std::pow(static_cast<double>(grid), dims);
  if (total_nodes > 4.0e9) throw std::invalid_argument("mahler_nd: grid too large");

  std::vector<Complex> roots_of_unity(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) {
    roots_of_unity[static_cast<std::size_t>(j)] =
        std::polar(1.0, 2.0 * std::numbers::pi * j / grid);
  }
  struct Term {
    std::vector<int> exponent;
    Complex coeff;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : p.terms) {
    std::vector<int> reduced(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) reduced[i] = ((e[i] % grid) + grid) % grid;
    terms.push_back({std::move(reduced), c});
  }

  // Nodes are visited in lexicographic order, so the sum is deterministic.
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  double sum = 0.0;
  std::uint64_t used = 0;
  const auto g = static_cast<std::int64_t>(grid);
  while (true) {
    Complex value = 0.0;
    for (const auto& t : terms) {
      Complex v = t.coeff;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (t.exponent[i] != 0) {
          v *= roots_of_unity[static_cast<std::size_t>(
              (static_cast<std::int64_t>(t.exponent[i]) * idx[i]) % g)];
        }
      }
      value += v;
    }
    const double modulus = std::abs(value);
    if (modulus >= 1e-13) {
      sum += std::log(modulus);
      ++used;
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == grid) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  if (used == 0) throw ConvergenceError("polynomial vanishes at every grid node");
  return std::exp(sum / static_cast<double>(used));
}

}  // namespace fkdet
