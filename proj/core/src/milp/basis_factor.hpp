#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace potts_forge::detail {

/// Column-compressed matrix.
struct CscMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> start;  // n_cols + 1
  std::vector<int> index;
  std::vector<double> value;

  int nnz(int col) const { return start[static_cast<std::size_t>(col) + 1] - start[static_cast<std::size_t>(col)]; }
};

/// Factorization of a basis matrix B (columns of a CscMatrix picked by
/// `basic`) plus product-form eta updates.
///
/// Row and column singletons are peeled off first, which handles logical
/// columns and the very sparse binary columns of big-M models; the remaining
/// bump goes to a sparse LU.
class BasisFactor {
 public:
  BasisFactor();
  ~BasisFactor();
  BasisFactor(BasisFactor&&) noexcept;
  BasisFactor& operator=(BasisFactor&&) noexcept;

  /// Factorizes. Returns (position, row) pairs for a singular basis: each
  /// listed position should be replaced by the logical of the given row and
  /// the basis refactorized.
  std::vector<std::pair<int, int>> factor(const CscMatrix& mat, std::span<const int> basic);

  /// In place: y indexed by row becomes B^-1 y indexed by basis position.
  void ftran(std::vector<double>& y) const;
  /// In place: z indexed by position becomes B^-T z indexed by row.
  void btran(std::vector<double>& z) const;

  /// Column `position` of B is replaced; alpha = B^-1 a_entering.
  void update(int position, const std::vector<double>& alpha);
  int n_updates() const noexcept;
  int bump_size() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace potts_forge::detail
