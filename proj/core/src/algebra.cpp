#include "fkdet/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "fkdet/errors.hpp"

namespace fkdet {

namespace {

template <class C>
using Accumulator = std::unordered_map<CanonicalKey, C, CanonicalKeyHash>;

template <class C>
void require_same(const GroupAlgebraElement<C>& a, const GroupAlgebraElement<C>& b,
                  const char* op) {
  if (!(a.spec() == b.spec())) {
    throw SpecMismatch(std::string(op) + ": operands live over different groups (" +
                       a.spec().name() + " vs " + b.spec().name() + ")");
  }
}

template <class C>
GroupAlgebraElement<C> from_accumulator(const GroupSpec& spec, Accumulator<C>&& acc,
                                        double tol) {
  GroupAlgebraElement<C> out(spec, tol);
  for (auto& [key, c] : acc) {
    if (CoeffTraits<C>::negligible(c, tol)) continue;
    out.add_keyed(key, c);
  }
  return out;
}

}  // namespace

template <class C>
GroupAlgebraElement<C>::GroupAlgebraElement(GroupSpec spec, double drop_tolerance)
    : spec_(std::move(spec)), drop_tolerance_(drop_tolerance) {
  if (drop_tolerance < 0.0) throw std::invalid_argument("drop tolerance must be >= 0");
  if (CoeffTraits<C>::mode == CoeffMode::Exact && drop_tolerance != 0.0) {
    throw std::invalid_argument("exact elements do not take a drop tolerance");
  }
}

template <class C>
GroupAlgebraElement<C> GroupAlgebraElement<C>::identity(GroupSpec spec, const C& c) {
  GroupAlgebraElement out(std::move(spec));
  out.add_keyed(out.spec().identity_key(), c);
  return out;
}

template <class C>
GroupAlgebraElement<C> GroupAlgebraElement<C>::monomial(GroupSpec spec, const Word& w,
                                                        const C& c) {
  GroupAlgebraElement out(std::move(spec));
  out.add_term(w, c);
  return out;
}

template <class C>
GroupAlgebraElement<C>& GroupAlgebraElement<C>::add_term(const Word& w, const C& c) {
  return add_keyed(spec_.canonical_key(w), c);
}

template <class C>
GroupAlgebraElement<C>& GroupAlgebraElement<C>::add_keyed(const CanonicalKey& key,
                                                          const C& c) {
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (CoeffTraits<C>::negligible(c, drop_tolerance_)) return *this;
    terms_.emplace(key, Term{spec_.representative(key), c});
    return *this;
  }
  it->second.coeff += c;
  if (CoeffTraits<C>::negligible(it->second.coeff, drop_tolerance_)) terms_.erase(it);
  return *this;
}

template <class C>
C GroupAlgebraElement<C>::coefficient(const Word& w) const {
  auto it = terms_.find(spec_.canonical_key(w));
  return it == terms_.end() ? C(0) : it->second.coeff;
}

template <class C>
void GroupAlgebraElement<C>::prune() {
  std::erase_if(terms_, [&](const auto& kv) {
    return CoeffTraits<C>::negligible(kv.second.coeff, drop_tolerance_);
  });
}

template <class C>
std::vector<const typename GroupAlgebraElement<C>::TermMap::value_type*>
GroupAlgebraElement<C>::sorted_terms() const {
  std::vector<const typename TermMap::value_type*> out;
  out.reserve(terms_.size());
  for (const auto& kv : terms_) out.push_back(&kv);
  std::sort(out.begin(), out.end(), [](const auto* x, const auto* y) {
    if (x->first.data.size() != y->first.data.size()) {
      return x->first.data.size() < y->first.data.size();
    }
    return x->first.data < y->first.data;
  });
  return out;
}

template <class C>
GroupAlgebraElement<C> add(const GroupAlgebraElement<C>& a, const GroupAlgebraElement<C>& b) {
  require_same(a, b, "add");
  GroupAlgebraElement<C> out = a;
  for (const auto& [key, term] : b.terms()) out.add_keyed(key, term.coeff);
  return out;
}

template <class C>
GroupAlgebraElement<C> subtract(const GroupAlgebraElement<C>& a,
                                const GroupAlgebraElement<C>& b) {
  require_same(a, b, "subtract");
  GroupAlgebraElement<C> out = a;
  for (const auto& [key, term] : b.terms()) out.add_keyed(key, C(-term.coeff));
  return out;
}

template <class C>
GroupAlgebraElement<C> scale(const C& c, const GroupAlgebraElement<C>& a) {
  GroupAlgebraElement<C> out(a.spec(), a.drop_tolerance());
  for (const auto& [key, term] : a.terms()) out.add_keyed(key, C(c * term.coeff));
  return out;
}

template <class C>
GroupAlgebraElement<C> multiply(const GroupAlgebraElement<C>& a,
                                const GroupAlgebraElement<C>& b,
                                const MultiplyOptions& options) {
  require_same(a, b, "multiply");
  const GroupSpec& spec = a.spec();
  const double tol = std::max(a.drop_tolerance(), b.drop_tolerance());

  std::vector<std::pair<const CanonicalKey*, const C*>> rhs;
  rhs.reserve(b.size());
  for (const auto& [key, term] : b.terms()) rhs.emplace_back(&key, &term.coeff);

  std::vector<std::pair<const CanonicalKey*, const C*>> lhs;
  lhs.reserve(a.size());
  for (const auto& [key, term] : a.terms()) lhs.emplace_back(&key, &term.coeff);

  auto run = [&](std::size_t begin, std::size_t end, Accumulator<C>& acc) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& [ka, ca] = lhs[i];
      for (const auto& [kb, cb] : rhs) {
        auto [it, inserted] = acc.try_emplace(spec.product_key(*ka, *kb), *ca * *cb);
        if (!inserted) it->second += *ca * *cb;
      }
    }
  };

  unsigned threads = std::max(1u, options.threads);
  if (spec.kind() == GroupKind::MatrixRep || lhs.size() * rhs.size() < 20000) threads = 1;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(lhs.size(), 1)));

  Accumulator<C> acc;
  acc.reserve(lhs.size() * rhs.size() / 2 + 1);
  if (threads == 1) {
    run(0, lhs.size(), acc);
    return from_accumulator(spec, std::move(acc), tol);
  }

  // Fixed partition and fixed merge order keep results reproducible for a
  // given thread count.
  std::vector<Accumulator<C>> partial(threads);
  std::vector<std::thread> workers;
  const std::size_t chunk = (lhs.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(lhs.size(), t * chunk);
    const std::size_t end = std::min(lhs.size(), begin + chunk);
    workers.emplace_back([&, begin, end, t] { run(begin, end, partial[t]); });
  }
  for (auto& w : workers) w.join();
  for (auto& p : partial) {
    for (auto& [key, c] : p) {
      auto [it, inserted] = acc.try_emplace(key, c);
      if (!inserted) it->second += c;
    }
  }
  return from_accumulator(spec, std::move(acc), tol);
}

template <class C>
GroupAlgebraElement<C> adjoint(const GroupAlgebraElement<C>& a) {
  GroupAlgebraElement<C> out(a.spec(), a.drop_tolerance());
  for (const auto& [key, term] : a.terms()) {
    out.add_keyed(a.spec().inverse_key(key), CoeffTraits<C>::conj(term.coeff));
  }
  return out;
}

template <class C>
GroupAlgebraElement<C> gram(const GroupAlgebraElement<C>& a, const MultiplyOptions& options) {
  return multiply(adjoint(a), a, options);
}

template <class C>
C trace(const GroupAlgebraElement<C>& a) {
  auto it = a.terms().find(a.spec().identity_key());
  return it == a.terms().end() ? C(0) : it->second.coeff;
}

template <class C>
typename CoeffTraits<C>::Real one_norm(const GroupAlgebraElement<C>& a) {
  typename CoeffTraits<C>::Real sum(0);
  for (const auto& [key, term] : a.terms()) sum += CoeffTraits<C>::modulus(term.coeff);
  return sum;
}

template <class C>
C pair_trace(const GroupAlgebraElement<C>& a, const GroupAlgebraElement<C>& b) {
  require_same(a, b, "pair_trace");
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  C sum(0);
  for (const auto& [key, term] : small.terms()) {
    auto it = large.terms().find(small.spec().inverse_key(key));
    if (it != large.terms().end()) sum += term.coeff * it->second.coeff;
  }
  return sum;
}

template <class C>
TraceSchedule<C> trace_powers(const GroupAlgebraElement<C>& e, int N,
                              const PowerOptions& options) {
  if (N < 0) throw std::invalid_argument("trace_powers: N must be >= 0");
  const int half = (N + 1) / 2;
  std::vector<GroupAlgebraElement<C>> powers;
  powers.reserve(static_cast<std::size_t>(half) + 1);
  powers.push_back(GroupAlgebraElement<C>::identity(e.spec()));
  const MultiplyOptions mul{options.threads};
  for (int j = 1; j <= half; ++j) {
    powers.push_back(j == 1 ? e : multiply(powers.back(), e, mul));
    if (powers.back().size() > options.budget) {
      throw BudgetExceeded(powers.back().size(), options.budget);
    }
  }
  TraceSchedule<C> out;
  out.values.reserve(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    const auto& hi = powers[static_cast<std::size_t>((k + 1) / 2)];
    const auto& lo = powers[static_cast<std::size_t>(k / 2)];
    out.values.push_back(CoeffTraits<C>::real_part(pair_trace(hi, lo)));
  }
  return out;
}

template <class C>
TraceSchedule<C> power_traces(const GroupAlgebraElement<C>& a, int N,
                              const PowerOptions& options) {
  return trace_powers(gram(a, MultiplyOptions{options.threads}), N, options);
}

FloatElement to_float(const ExactElement& a) {
  FloatElement out(a.spec());
  for (const auto& [key, term] : a.terms()) out.add_keyed(key, Complex(term.coeff.get_d(), 0.0));
  return out;
}

namespace {

std::string coeff_string(const Rational& c) { return c.get_str(); }

std::string coeff_string(const Complex& c) {
  std::ostringstream os;
  os.precision(12);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

template <class C>
std::string to_string(const GroupAlgebraElement<C>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto* kv : a.sorted_terms()) {
    if (!out.empty()) out += " + ";
    out += coeff_string(kv->second.coeff);
    if (!kv->second.word.empty()) out += "*" + kv->second.word.to_string();
  }
  return out;
}

#define FKDET_INSTANTIATE(C)                                                                   \
  template class GroupAlgebraElement<C>;                                                       \
  template GroupAlgebraElement<C> add(const GroupAlgebraElement<C>&,                           \
                                      const GroupAlgebraElement<C>&);                          \
  template GroupAlgebraElement<C> subtract(const GroupAlgebraElement<C>&,                      \
                                           const GroupAlgebraElement<C>&);                     \
  template GroupAlgebraElement<C> scale(const C&, const GroupAlgebraElement<C>&);              \
  template GroupAlgebraElement<C> multiply(const GroupAlgebraElement<C>&,                      \
                                           const GroupAlgebraElement<C>&,                      \
                                           const MultiplyOptions&);                            \
  template GroupAlgebraElement<C> adjoint(const GroupAlgebraElement<C>&);                      \
  template GroupAlgebraElement<C> gram(const GroupAlgebraElement<C>&, const MultiplyOptions&); \
  template C trace(const GroupAlgebraElement<C>&);                                             \
  template typename CoeffTraits<C>::Real one_norm(const GroupAlgebraElement<C>&);              \
  template C pair_trace(const GroupAlgebraElement<C>&, const GroupAlgebraElement<C>&);         \
  template TraceSchedule<C> trace_powers(const GroupAlgebraElement<C>&, int,                   \
                                         const PowerOptions&);                                 \
  template TraceSchedule<C> power_traces(const GroupAlgebraElement<C>&, int,                   \
                                         const PowerOptions&);                                 \
  template std::string to_string(const GroupAlgebraElement<C>&);

FKDET_INSTANTIATE(Rational)
FKDET_INSTANTIATE(Complex)

#undef FKDET_INSTANTIATE

}  // namespace fkdet
