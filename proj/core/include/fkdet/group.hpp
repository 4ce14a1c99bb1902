#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fkdet/word.hpp"

namespace fkdet {

using Mat2 = Eigen::Matrix2cd;

enum class GroupKind { Free, FreeAbelian, MatrixRep };

/// Generator matrices of a faithful linear representation, plus the
/// presentation relators used to validate them.
struct MatrixRepData {
  int rank = 0;
  std::vector<Mat2> generators;
  double epsilon_id = 1e-8;
  std::vector<Word> relators;
  bool projective = true;
};

/// Term-combination key. Free: the reduced word as signed letters.
/// FreeAbelian: the exponent vector. MatrixRep: a single bucket id.
struct CanonicalKey {
  std::vector<std::int32_t> data;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept;
};

namespace detail {
class MatrixBucketTable;
}

/// A group together with the strategy used to solve its word problem.
///
/// GroupSpec is a cheap, shareable handle. Copies refer to the same group;
/// for matrix representations that includes the bucket table that assigns
/// keys, so elements built from copies of one spec can be combined.
class GroupSpec {
 public:
  static GroupSpec free_group(int rank, std::string name = {});
  static GroupSpec free_abelian(int rank, std::string name = {});
  /// Validates generator determinants and relators; throws ValidationError.
  static GroupSpec matrix_rep(MatrixRepData data, std::string name = {});

  GroupKind kind() const noexcept;
  int rank() const noexcept;
  const std::string& name() const noexcept;
  /// Only valid for MatrixRep specs.
  const MatrixRepData& rep() const;

  /// Ordered product of generator matrices (and inverses) along w.
  Mat2 matrix_of(const Word& w) const;
  bool is_identity(const Word& w) const;

  CanonicalKey canonical_key(const Word& w) const;
  CanonicalKey identity_key() const;

  /// Key of the product of two already-canonicalized elements.
  CanonicalKey product_key(const CanonicalKey& a, const CanonicalKey& b) const;
  CanonicalKey inverse_key(const CanonicalKey& k) const;

  /// A representative word for a key produced by this spec. For FreeAbelian
  /// keys the exponent vector is spelled out generator by generator.
  Word representative(const CanonicalKey& k) const;

  /// Number of distinct elements seen so far (MatrixRep), 0 otherwise.
  std::size_t known_elements() const;

  /// Same underlying group (and, for MatrixRep, the same key table).
  friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept;

 private:
  struct Impl;
  explicit GroupSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Max-entry distance between two matrices, modulo sign when projective.
double identity_distance(const Mat2& m, bool projective);

}  // namespace fkdet
