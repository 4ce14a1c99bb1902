#include "fkdet/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/laurent.hpp"

namespace fkdet {

namespace {

void require_unit(std::span<const Complex> zs, const char* what) {
  for (const auto& z : zs) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
      throw std::invalid_argument(std::string(what) + " coefficients must have modulus 1");
    }
  }
}

Rational inverse_square(const Rational& x) { return 1 / (x * x); }

Rational to_rational(double x) { return Rational(x); }
const Rational& to_rational(const Rational& x) { return x; }

GroupSpec rep_group(const RepFile& rep, const char* expected) {
  if (rep.data.rank != 2) {
    throw ValidationError(std::string(expected) + " needs a rank-2 representation");
  }
  return GroupSpec::matrix_rep(rep.data, rep.name.empty() ? expected : rep.name);
}

void require_distinct_terms(std::size_t got, std::size_t want, const char* name) {
  if (got != want) {
    throw ValidationError(std::string(name) + ": expected " + std::to_string(want) +
                          " distinct group elements, representation merged some (" +
                          std::to_string(got) + ")");
  }
}

}  // namespace

NamedOperator<Rational> free_operator(int d) {
  if (d < 3) throw std::invalid_argument("free_operator requires d >= 3");
  auto spec = GroupSpec::free_group(d - 1);
  auto a = ExactElement::identity(spec);
  for (int i = 1; i < d; ++i) a.add_term(Word({Letter(i, 1)}), Rational(1));
  return {"free", {{"d", d}}, spec, std::move(a), Rational(1, d * d)};
}

NamedOperator<Complex> free_operator(int d, std::span<const Complex> zeta) {
  if (d < 3) throw std::invalid_argument("free_operator requires d >= 3");
  if (static_cast<int>(zeta.size()) != d - 1) {
    throw std::invalid_argument("free_operator needs d-1 coefficients");
  }
  require_unit(zeta, "free_operator");
  auto spec = GroupSpec::free_group(d - 1);
  auto a = FloatElement::identity(spec);
  for (int i = 1; i < d; ++i) a.add_term(Word({Letter(i, 1)}), zeta[static_cast<std::size_t>(i - 1)]);
  return {"free", {{"d", d}}, spec, std::move(a), Rational(1, d * d)};
}

NamedOperator<Rational> symmetric_operator(int d) {
  if (d < 2) throw std::invalid_argument("symmetric_operator requires d >= 2");
  auto spec = GroupSpec::free_group(d);
  ExactElement a(spec);
  for (int i = 1; i <= d; ++i) {
    a.add_term(Word({Letter(i, 1)}), Rational(1));
    a.add_term(Word({Letter(i, -1)}), Rational(1));
  }
  return {"symmetric", {{"d", d}}, spec, std::move(a), Rational(1, 4 * d * d)};
}

NamedOperator<Complex> symmetric_operator(int d, std::span<const Complex> zeta,
                                          std::span<const Complex> xi) {
  if (d < 2) throw std::invalid_argument("symmetric_operator requires d >= 2");
  if (static_cast<int>(zeta.size()) != d || static_cast<int>(xi.size()) != d) {
    throw std::invalid_argument("symmetric_operator needs d coefficients in each list");
  }
  require_unit(zeta, "symmetric_operator");
  require_unit(xi, "symmetric_operator");
  auto spec = GroupSpec::free_group(d);
  FloatElement a(spec);
  for (int i = 1; i <= d; ++i) {
    a.add_term(Word({Letter(i, 1)}), zeta[static_cast<std::size_t>(i - 1)]);
    a.add_term(Word({Letter(i, -1)}), xi[static_cast<std::size_t>(i - 1)]);
  }
  return {"symmetric", {{"d", d}}, spec, std::move(a), Rational(1, 4 * d * d)};
}

NamedOperator<Rational> cyclic_operator(const Rational& t) {
  auto spec = GroupSpec::free_abelian(1, "Z");
  auto a = ExactElement::identity(spec);
  a.add_term(Word({Letter(1, 1)}), Rational(-t));
  return {"cyclic", {{"t", t.get_d()}}, spec, a, inverse_square(one_norm(a))};
}

template <class C>
NamedOperator<C> fig8_wirtinger(const typename CoeffTraits<C>::Real& t, const RepFile& rep) {
  if (!(t > 0)) throw std::invalid_argument("fig8_wirtinger requires t > 0");
  auto spec = rep_group(rep, "fig8_wirtinger");
  const C ct(t);
  GroupAlgebraElement<C> a(spec);
  a.add_term(Word{}, C(1));
  a.add_term(Word::from_signed({2}), C(-ct));
  a.add_term(Word::from_signed({1, 2, -1}), C(-ct));
  a.add_term(Word::from_signed({2, 1, -2}), C(-ct));
  a.add_term(Word::from_signed({1, 2, -1, 2}), C(ct * ct));
  require_distinct_terms(a.size(), 5, "fig8_wirtinger");
  const Rational tq = to_rational(t);
  const Rational norm = 1 + 3 * tq + tq * tq;
  return {"fig8-wirtinger", {{"t", static_cast<double>(CoeffTraits<C>::to_double(C(t)))}},
          spec, std::move(a), inverse_square(norm)};
}

template <class C>
NamedOperator<C> fig8_twist(const typename CoeffTraits<C>::Real& t, const RepFile& rep) {
  if (!(t > 0)) throw std::invalid_argument("fig8_twist requires t > 0");
  auto spec = rep_group(rep, "fig8_twist");
  const C inv_t = C(1) / C(t);
  GroupAlgebraElement<C> a(spec);
  a.add_term(Word{}, C(1));
  a.add_term(Word::from_signed({1, 2, -1}), C(-1));
  a.add_term(Word::from_signed({1, 2, -1, -2, -1}), C(-inv_t));
  a.add_term(Word::from_signed({1, 2, -1, -2, -1, 2}), inv_t);
  require_distinct_terms(a.size(), 4, "fig8_twist");
  const Rational tq = to_rational(t);
  const Rational scaled_norm = 2 * tq + 2;
  return {"fig8-twist", {{"t", static_cast<double>(CoeffTraits<C>::to_double(C(t)))}},
          spec, std::move(a), inverse_square(scaled_norm)};
}

template NamedOperator<Rational> fig8_wirtinger<Rational>(const Rational&, const RepFile&);
template NamedOperator<Complex> fig8_wirtinger<Complex>(const double&, const RepFile&);
template NamedOperator<Rational> fig8_twist<Rational>(const Rational&, const RepFile&);
template NamedOperator<Complex> fig8_twist<Complex>(const double&, const RepFile&);

Word whitehead_relator() {
  const Word a = Word::from_signed({1});
  const Word b = Word::from_signed({2});
  auto commutator = [](const Word& g, const Word& h) {
    return concat(concat(g, h), concat(invert(g), invert(h)));
  };
  const Word inner = concat(commutator(a, b), commutator(a, invert(b)));
  return commutator(a, inner);
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("FKDET_DATA_DIR"); env && *env) return env;
  const std::filesystem::path source = FKDET_SOURCE_DATA_DIR;
  if (std::filesystem::exists(source / "manifolds.tsv")) return source;
  return FKDET_INSTALL_DATA_DIR;
}

std::vector<ManifoldEntry> manifold_table(const std::filesystem::path& tsv) {
  std::ifstream in(tsv);
  if (!in) throw ValidationError("cannot open manifold table " + tsv.string());
  std::vector<ManifoldEntry> out;
  std::string line;
  bool header = true;
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto cols = split(line, '\t');
    if (cols.size() < 2) throw ValidationError("manifold table row needs name and volume");
    ManifoldEntry e;
    e.name = cols[0];
    try {
      e.volume = std::stod(cols[1]);
    } catch (const std::exception&) {
      throw ValidationError("bad volume for " + e.name);
    }
    if (!(e.volume > 0)) throw ValidationError("volume must be positive for " + e.name);
    if (cols.size() > 2 && !cols[2].empty()) e.generators = split(cols[2], ',');
    if (cols.size() > 3 && !cols[3].empty()) {
      for (const auto& rel : split(cols[3], ';')) {
        std::vector<int> letters;
        for (const auto& tok : split(rel, ',')) letters.push_back(std::stoi(tok));
        e.relators.push_back(Word::from_signed(letters));
      }
    }
    if (cols.size() > 4) e.note = cols[4];
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LehmerRow> lehmer_rows(const std::vector<ManifoldEntry>& manifolds) {
  const double free_bound = free_closed_form(3);
  std::vector<LehmerRow> rows;
  for (const auto& m : manifolds) {
    const double b = lehmer_vol_bound(m.volume);
    rows.push_back({m.name, m.volume, b, b < free_bound});
  }
  rows.push_back({"free group F2 (2/sqrt 3)", 0.0, free_bound, false});
  rows.push_back({"Lehmer polynomial M(L)", 0.0, mahler_1d(lehmer_polynomial()), false});
  return rows;
}

std::string truncate_digits(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0 || digits < 1) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = std::max(0, digits - 1 - exponent);
  const double scale = std::pow(10.0, decimals);
  // The small nudge keeps exact decimal values like 1.5 from truncating to 1.4999.
  const double truncated = std::trunc(x * scale * (1.0 + 1e-15)) / scale;
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << truncated;
  return os.str();
}

std::string lehmer_report(const std::vector<LehmerRow>& rows, int digits) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "name" << std::setw(14) << "volume" << std::setw(14)
     << "bound" << "beats 2/sqrt(3)\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(28) << r.name << std::setw(14)
       << (r.volume > 0 ? truncate_digits(r.volume, digits) : std::string("-")) << std::setw(14)
       << truncate_digits(r.bound, digits) << (r.volume > 0 ? (r.beats_free_bound ? "yes" : "no") : "")
       << '\n';
  }
  return os.str();
}

}  // namespace fkdet
