#include "fkdet/group.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/LU>

#include "fkdet/errors.hpp"

namespace fkdet {

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ k.data.size();
  for (std::int32_t v : k.data) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 0x100000001b3ULL;
  }
  return h;
}

double identity_distance(const Mat2& m, bool projective) {
  const double plus = (m - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (!projective) return plus;
  return std::min(plus, (m + Mat2::Identity()).cwiseAbs().maxCoeff());
}

namespace detail {

// Keys matrices by their entries rounded to a fixed decimal grid. A lookup
// probes the neighbouring grid cell in every coordinate that lies within
// epsilon of a rounding boundary, so two matrices within epsilon of each
// other always meet; candidates are confirmed by max-entry distance.
class MatrixBucketTable {
 public:
  MatrixBucketTable(double epsilon, bool projective)
      : epsilon_(epsilon), projective_(projective) {
    const int digits =
        std::max(1, static_cast<int>(std::ceil(-std::log10(epsilon))) - 1);
    scale_ = std::pow(10.0, digits);
    slack_ = epsilon_ * scale_;
  }

  std::int32_t find(const Mat2& m) const {
    std::shared_lock lock(mu_);
    return find_locked(m);
  }

  template <class MakeWord>
  std::int32_t insert_or_get(const Mat2& m, MakeWord&& make_word) {
    {
      std::shared_lock lock(mu_);
      if (auto id = find_locked(m); id >= 0) return id;
    }
    Word w = make_word();
    std::unique_lock lock(mu_);
    if (auto id = find_locked(m); id >= 0) return id;
    const auto id = static_cast<std::int32_t>(entries_.size());
    entries_.push_back({m, std::move(w)});
    buckets_[primary_cell(m)].push_back(id);
    return id;
  }

  Mat2 matrix(std::int32_t id) const {
    std::shared_lock lock(mu_);
    return entries_.at(static_cast<std::size_t>(id)).matrix;
  }

  Word word(std::int32_t id) const {
    std::shared_lock lock(mu_);
    return entries_.at(static_cast<std::size_t>(id)).word;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
  }

 private:
  using Cell = std::array<std::int64_t, 8>;
  struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
      std::size_t h = 0x9e3779b97f4a7c15ULL;
      for (auto v : c) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };
  struct Entry {
    Mat2 matrix;
    Word word;
  };

  static std::array<double, 8> components(const Mat2& m) {
    return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
            m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag()};
  }

  std::int64_t round_component(double x) const {
    const double scaled = x * scale_;
    if (!std::isfinite(scaled) || std::abs(scaled) > 9.0e18) {
      throw std::overflow_error("matrix entry too large to bucket");
    }
    return std::llround(scaled);
  }

  Cell primary_cell(const Mat2& m) const {
    Cell c{};
    const auto comps = components(m);
    for (std::size_t i = 0; i < 8; ++i) c[i] = round_component(comps[i]);
    return c;
  }

  std::int32_t find_exact_sign(const Mat2& m) const {
    const auto comps = components(m);
    Cell base{};
    std::array<int, 8> alt{};  // 0 none, +1 or -1 neighbour to probe
    int ambiguous = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      base[i] = round_component(comps[i]);
      const double frac = comps[i] * scale_ - static_cast<double>(base[i]);
      if (frac > 0.5 - slack_) {
        alt[i] = 1;
      } else if (frac < -0.5 + slack_) {
        alt[i] = -1;
      }
      if (alt[i] != 0) ++ambiguous;
    }
    std::array<std::size_t, 8> idx{};
    std::size_t n_alt = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      if (alt[i] != 0) idx[n_alt++] = i;
    }
    for (std::uint32_t mask = 0; mask < (1u << ambiguous); ++mask) {
      Cell cell = base;
      for (std::size_t j = 0; j < n_alt; ++j) {
        if (mask & (1u << j)) cell[idx[j]] += alt[idx[j]];
      }
      auto it = buckets_.find(cell);
      if (it == buckets_.end()) continue;
      for (std::int32_t id : it->second) {
        const Mat2& stored = entries_[static_cast<std::size_t>(id)].matrix;
        if ((stored - m).cwiseAbs().maxCoeff() < epsilon_) return id;
      }
    }
    return -1;
  }

  std::int32_t find_locked(const Mat2& m) const {
    if (auto id = find_exact_sign(m); id >= 0) return id;
    if (projective_) return find_exact_sign(-m);
    return -1;
  }

  double epsilon_;
  bool projective_;
  double scale_ = 1.0;
  double slack_ = 0.0;
  mutable std::shared_mutex mu_;
  std::unordered_map<Cell, std::vector<std::int32_t>, CellHash> buckets_;
  std::deque<Entry> entries_;
};

}  // namespace detail

struct GroupSpec::Impl {
  GroupKind kind;
  int rank;
  std::string name;
  MatrixRepData rep;
  std::vector<Mat2> inverses;
  std::unique_ptr<detail::MatrixBucketTable> table;
};

namespace {

std::vector<std::int32_t> reduced_letters(const Word& w) {
  std::vector<std::int32_t> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!out.empty() && out.back() == -l.to_signed()) {
      out.pop_back();
    } else {
      out.push_back(l.to_signed());
    }
  }
  return out;
}

void check_rank(const Word& w, int rank) {
  if (w.max_generator() > rank) {
    throw std::out_of_range("word " + w.to_string() + " uses a generator beyond rank " +
                            std::to_string(rank));
  }
}

}  // namespace

GroupSpec GroupSpec::free_group(int rank, std::string name) {
  if (rank < 1) throw std::invalid_argument("free group rank must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::Free;
  impl->rank = rank;
  impl->name = name.empty() ? "F" + std::to_string(rank) : std::move(name);
  return GroupSpec(std::move(impl));
}

GroupSpec GroupSpec::free_abelian(int rank, std::string name) {
  if (rank < 1) throw std::invalid_argument("free abelian rank must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::FreeAbelian;
  impl->rank = rank;
  impl->name = name.empty() ? "Z^" + std::to_string(rank) : std::move(name);
  return GroupSpec(std::move(impl));
}

GroupSpec GroupSpec::matrix_rep(MatrixRepData data, std::string name) {
  if (data.rank < 1) throw ValidationError("representation rank must be >= 1");
  if (static_cast<int>(data.generators.size()) != data.rank) {
    throw ValidationError("representation has " + std::to_string(data.generators.size()) +
                          " generator matrices but rank " + std::to_string(data.rank));
  }
  if (!(data.epsilon_id > 0.0)) throw ValidationError("epsilon_id must be positive");

  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::MatrixRep;
  impl->rank = data.rank;
  impl->name = name.empty() ? "rep" : std::move(name);
  for (std::size_t i = 0; i < data.generators.size(); ++i) {
    const Mat2& g = data.generators[i];
    if (std::abs(g.determinant()) < 1e-12) {
      throw ValidationError("generator matrix " + std::to_string(i + 1) + " is singular");
    }
    impl->inverses.push_back(g.inverse());
  }
  impl->table =
      std::make_unique<detail::MatrixBucketTable>(data.epsilon_id, data.projective);
  impl->rep = std::move(data);

  GroupSpec spec(impl);
  for (const Word& r : spec.rep().relators) {
    check_rank(r, spec.rank());
    const double dist = identity_distance(spec.matrix_of(r), spec.rep().projective);
    if (!(dist < spec.rep().epsilon_id)) {
      throw ValidationError("relator " + r.to_string() + " is not " +
                            (spec.rep().projective ? "+-" : "") +
                            "identity under the representation (distance " +
                            std::to_string(dist) + ")");
    }
  }
  impl->table->insert_or_get(Mat2::Identity(), [] { return Word({}, true); });
  return spec;
}

GroupKind GroupSpec::kind() const noexcept { return impl_->kind; }
int GroupSpec::rank() const noexcept { return impl_->rank; }
const std::string& GroupSpec::name() const noexcept { return impl_->name; }

const MatrixRepData& GroupSpec::rep() const {
  if (impl_->kind != GroupKind::MatrixRep) {
    throw std::logic_error("group " + impl_->name + " has no matrix representation");
  }
  return impl_->rep;
}

Mat2 GroupSpec::matrix_of(const Word& w) const {
  if (impl_->kind != GroupKind::MatrixRep) {
    throw std::invalid_argument("matrix_of requires a matrix representation group");
  }
  check_rank(w, impl_->rank);
  Mat2 m = Mat2::Identity();
  for (Letter l : w.letters()) {
    const auto i = static_cast<std::size_t>(l.generator() - 1);
    m = m * (l.sign() > 0 ? impl_->rep.generators[i] : impl_->inverses[i]);
  }
  return m;
}

bool GroupSpec::is_identity(const Word& w) const {
  switch (impl_->kind) {
    case GroupKind::Free:
      return reduce_free(w).empty();
    case GroupKind::FreeAbelian: {
      for (auto e : abelianize(w, impl_->rank)) {
        if (e != 0) return false;
      }
      return true;
    }
    case GroupKind::MatrixRep:
      return identity_distance(matrix_of(w), impl_->rep.projective) < impl_->rep.epsilon_id;
  }
  return false;
}

CanonicalKey GroupSpec::canonical_key(const Word& w) const {
  switch (impl_->kind) {
    case GroupKind::Free:
      check_rank(w, impl_->rank);
      return {reduced_letters(w)};
    case GroupKind::FreeAbelian: {
      CanonicalKey k;
      for (auto e : abelianize(w, impl_->rank)) k.data.push_back(static_cast<std::int32_t>(e));
      return k;
    }
    case GroupKind::MatrixRep: {
      const Mat2 m = matrix_of(w);
      return {{impl_->table->insert_or_get(m, [&] { return reduce_free(w); })}};
    }
  }
  return {};
}

CanonicalKey GroupSpec::identity_key() const {
  switch (impl_->kind) {
    case GroupKind::Free:
      return {};
    case GroupKind::FreeAbelian:
      return {std::vector<std::int32_t>(static_cast<std::size_t>(impl_->rank), 0)};
    case GroupKind::MatrixRep:
      return {{0}};
  }
  return {};
}

CanonicalKey GroupSpec::product_key(const CanonicalKey& a, const CanonicalKey& b) const {
  switch (impl_->kind) {
    case GroupKind::Free: {
      // Both inputs are reduced, so cancellation happens only at the seam.
      std::size_t cancel = 0;
      const std::size_t na = a.data.size();
      const std::size_t nb = b.data.size();
      while (cancel < na && cancel < nb && a.data[na - 1 - cancel] == -b.data[cancel]) {
        ++cancel;
      }
      CanonicalKey out;
      out.data.reserve(na + nb - 2 * cancel);
      out.data.insert(out.data.end(), a.data.begin(),
                      a.data.begin() + static_cast<std::ptrdiff_t>(na - cancel));
      out.data.insert(out.data.end(), b.data.begin() + static_cast<std::ptrdiff_t>(cancel),
                      b.data.end());
      return out;
    }
    case GroupKind::FreeAbelian: {
      CanonicalKey out = a;
      for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
      return out;
    }
    case GroupKind::MatrixRep: {
      auto& table = *impl_->table;
      const Mat2 m = table.matrix(a.data[0]) * table.matrix(b.data[0]);
      return {{table.insert_or_get(m, [&] {
        return reduce_free(concat(table.word(a.data[0]), table.word(b.data[0])));
      })}};
    }
  }
  return {};
}

CanonicalKey GroupSpec::inverse_key(const CanonicalKey& k) const {
  switch (impl_->kind) {
    case GroupKind::Free: {
      CanonicalKey out;
      out.data.reserve(k.data.size());
      for (auto it = k.data.rbegin(); it != k.data.rend(); ++it) out.data.push_back(-*it);
      return out;
    }
    case GroupKind::FreeAbelian: {
      CanonicalKey out = k;
      for (auto& v : out.data) v = -v;
      return out;
    }
    case GroupKind::MatrixRep: {
      auto& table = *impl_->table;
      const Mat2 m = table.matrix(k.data[0]).inverse();
      return {{table.insert_or_get(m, [&] { return invert(table.word(k.data[0])); })}};
    }
  }
  return {};
}

Word GroupSpec::representative(const CanonicalKey& k) const {
  switch (impl_->kind) {
    case GroupKind::Free: {
      std::vector<Letter> letters;
      letters.reserve(k.data.size());
      for (auto v : k.data) letters.push_back(Letter::from_signed(v));
      return Word(std::move(letters), true);
    }
    case GroupKind::FreeAbelian: {
      std::vector<Letter> letters;
      for (std::size_t i = 0; i < k.data.size(); ++i) {
        const int gen = static_cast<int>(i) + 1;
        const int sign = k.data[i] < 0 ? -1 : 1;
        for (std::int32_t n = 0; n < std::abs(k.data[i]); ++n) letters.emplace_back(gen, sign);
      }
      return Word(std::move(letters), true);
    }
    case GroupKind::MatrixRep:
      return impl_->table->word(k.data.at(0));
  }
  return {};
}

std::size_t GroupSpec::known_elements() const {
  return impl_->table ? impl_->table->size() : 0;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  if (a.impl_->kind == GroupKind::MatrixRep || b.impl_->kind == GroupKind::MatrixRep) {
    return false;
  }
  return a.impl_->kind == b.impl_->kind && a.impl_->rank == b.impl_->rank;
}

}  // namespace fkdet
