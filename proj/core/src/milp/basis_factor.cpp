#include "basis_factor.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <cmath>

namespace potts_forge::detail {

namespace {

constexpr double kSingletonTol = 1e-9;
constexpr double kEtaDrop = 1e-14;

enum Role : unsigned char { kRowPivot, kColPivot, kBump };

struct Pivot {
  int row;
  int pos;
  double value;
};

struct Eta {
  int pos;
  double pivot;
  std::vector<int> index;
  std::vector<double> value;
};

}  // namespace

struct BasisFactor::Impl {
  int m = 0;
  // Basis columns by position.
  std::vector<int> col_start, col_row;
  std::vector<double> col_val;
  // Basis rows: (position, value) lists.
  std::vector<int> row_start, row_pos;
  std::vector<double> row_val;

  std::vector<unsigned char> pos_role, row_role;
  std::vector<Pivot> row_pivots;  // solved forward in FTRAN
  std::vector<Pivot> col_pivots;  // solved backward in FTRAN
  std::vector<int> bump_rows, bump_pos;
  // Sparse LU of the bump; the dense full-pivot LU is only used when the
  // sparse factorization fails, to locate dependent columns.
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> sparse_lu;
  Eigen::FullPivLU<Eigen::MatrixXd> dense_lu;
  bool dense = false;
  std::vector<Eta> etas;

  void base_ftran(const std::vector<double>& y, std::vector<double>& x) const;
  void base_btran(const std::vector<double>& z, std::vector<double>& pi) const;
};

BasisFactor::BasisFactor() : impl_(std::make_unique<Impl>()) {}
BasisFactor::~BasisFactor() = default;
BasisFactor::BasisFactor(BasisFactor&&) noexcept = default;
BasisFactor& BasisFactor::operator=(BasisFactor&&) noexcept = default;

int BasisFactor::n_updates() const noexcept { return static_cast<int>(impl_->etas.size()); }
int BasisFactor::bump_size() const noexcept { return static_cast<int>(impl_->bump_pos.size()); }

std::vector<std::pair<int, int>> BasisFactor::factor(const CscMatrix& mat, std::span<const int> basic) {
  Impl& f = *impl_;
  const int m = mat.n_rows;
  const auto um = static_cast<std::size_t>(m);
  f.m = m;
  f.etas.clear();
  f.row_pivots.clear();
  f.col_pivots.clear();
  f.bump_rows.clear();
  f.bump_pos.clear();

  f.col_start.assign(um + 1, 0);
  f.col_row.clear();
  f.col_val.clear();
  std::vector<int> row_count(um, 0);
  for (int p = 0; p < m; ++p) {
    const int j = basic[static_cast<std::size_t>(p)];
    for (int k = mat.start[static_cast<std::size_t>(j)]; k < mat.start[static_cast<std::size_t>(j) + 1]; ++k) {
      const int r = mat.index[static_cast<std::size_t>(k)];
      f.col_row.push_back(r);
      f.col_val.push_back(mat.value[static_cast<std::size_t>(k)]);
      ++row_count[static_cast<std::size_t>(r)];
    }
    f.col_start[static_cast<std::size_t>(p) + 1] = static_cast<int>(f.col_row.size());
  }
  f.row_start.assign(um + 1, 0);
  for (int r = 0; r < m; ++r) f.row_start[static_cast<std::size_t>(r) + 1] = f.row_start[static_cast<std::size_t>(r)] + row_count[static_cast<std::size_t>(r)];
  f.row_pos.assign(f.col_row.size(), 0);
  f.row_val.assign(f.col_row.size(), 0.0);
  {
    std::vector<int> fill(f.row_start.begin(), f.row_start.end() - 1);
    for (int p = 0; p < m; ++p) {
      for (int k = f.col_start[static_cast<std::size_t>(p)]; k < f.col_start[static_cast<std::size_t>(p) + 1]; ++k) {
        const auto r = static_cast<std::size_t>(f.col_row[static_cast<std::size_t>(k)]);
        const auto slot = static_cast<std::size_t>(fill[r]++);
        f.row_pos[slot] = p;
        f.row_val[slot] = f.col_val[static_cast<std::size_t>(k)];
      }
    }
  }

  // Singleton peeling.
  std::vector<char> row_active(um, 1), pos_active(um, 1);
  std::vector<int> col_count(um);
  for (int p = 0; p < m; ++p) col_count[static_cast<std::size_t>(p)] = f.col_start[static_cast<std::size_t>(p) + 1] - f.col_start[static_cast<std::size_t>(p)];
  std::vector<int> col_stack, row_stack;
  for (int p = 0; p < m; ++p)
    if (col_count[static_cast<std::size_t>(p)] == 1) col_stack.push_back(p);
  for (int r = 0; r < m; ++r)
    if (row_count[static_cast<std::size_t>(r)] == 1) row_stack.push_back(r);

  f.pos_role.assign(um, kBump);
  f.row_role.assign(um, kBump);

  auto deactivate = [&](int r, int p) {
    row_active[static_cast<std::size_t>(r)] = 0;
    pos_active[static_cast<std::size_t>(p)] = 0;
    for (int k = f.row_start[static_cast<std::size_t>(r)]; k < f.row_start[static_cast<std::size_t>(r) + 1]; ++k) {
      const int q = f.row_pos[static_cast<std::size_t>(k)];
      if (pos_active[static_cast<std::size_t>(q)] && --col_count[static_cast<std::size_t>(q)] == 1) col_stack.push_back(q);
    }
    for (int k = f.col_start[static_cast<std::size_t>(p)]; k < f.col_start[static_cast<std::size_t>(p) + 1]; ++k) {
      const int s = f.col_row[static_cast<std::size_t>(k)];
      if (row_active[static_cast<std::size_t>(s)] && --row_count[static_cast<std::size_t>(s)] == 1) row_stack.push_back(s);
    }
  };

  while (!col_stack.empty() || !row_stack.empty()) {
    if (!col_stack.empty()) {
      const int p = col_stack.back();
      col_stack.pop_back();
      if (!pos_active[static_cast<std::size_t>(p)] || col_count[static_cast<std::size_t>(p)] != 1) continue;
      int r = -1;
      double v = 0.0;
      for (int k = f.col_start[static_cast<std::size_t>(p)]; k < f.col_start[static_cast<std::size_t>(p) + 1]; ++k) {
        if (row_active[static_cast<std::size_t>(f.col_row[static_cast<std::size_t>(k)])]) {
          r = f.col_row[static_cast<std::size_t>(k)];
          v = f.col_val[static_cast<std::size_t>(k)];
        }
      }
      if (std::abs(v) < kSingletonTol) continue;
      f.col_pivots.push_back({r, p, v});
      f.pos_role[static_cast<std::size_t>(p)] = kColPivot;
      f.row_role[static_cast<std::size_t>(r)] = kColPivot;
      deactivate(r, p);
    } else {
      const int r = row_stack.back();
      row_stack.pop_back();
      if (!row_active[static_cast<std::size_t>(r)] || row_count[static_cast<std::size_t>(r)] != 1) continue;
      int p = -1;
      double v = 0.0;
      for (int k = f.row_start[static_cast<std::size_t>(r)]; k < f.row_start[static_cast<std::size_t>(r) + 1]; ++k) {
        if (pos_active[static_cast<std::size_t>(f.row_pos[static_cast<std::size_t>(k)])]) {
          p = f.row_pos[static_cast<std::size_t>(k)];
          v = f.row_val[static_cast<std::size_t>(k)];
        }
      }
      if (std::abs(v) < kSingletonTol) continue;
      f.row_pivots.push_back({r, p, v});
      f.pos_role[static_cast<std::size_t>(p)] = kRowPivot;
      f.row_role[static_cast<std::size_t>(r)] = kRowPivot;
      deactivate(r, p);
    }
  }

  for (int r = 0; r < m; ++r)
    if (row_active[static_cast<std::size_t>(r)]) f.bump_rows.push_back(r);
  for (int p = 0; p < m; ++p)
    if (pos_active[static_cast<std::size_t>(p)]) f.bump_pos.push_back(p);

  std::vector<std::pair<int, int>> repairs;
  const auto nb = static_cast<Eigen::Index>(f.bump_pos.size());
  if (nb == 0) return repairs;

  std::vector<int> local_row(um, -1);
  for (Eigen::Index i = 0; i < nb; ++i) local_row[static_cast<std::size_t>(f.bump_rows[static_cast<std::size_t>(i)])] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index jj = 0; jj < nb; ++jj) {
    const int p = f.bump_pos[static_cast<std::size_t>(jj)];
    for (int k = f.col_start[static_cast<std::size_t>(p)]; k < f.col_start[static_cast<std::size_t>(p) + 1]; ++k) {
      const int li = local_row[static_cast<std::size_t>(f.col_row[static_cast<std::size_t>(k)])];
      if (li >= 0) trips.emplace_back(li, static_cast<int>(jj), f.col_val[static_cast<std::size_t>(k)]);
    }
  }
  Eigen::SparseMatrix<double> sparse(nb, nb);
  sparse.setFromTriplets(trips.begin(), trips.end());
  sparse.makeCompressed();
  f.dense = false;
  f.sparse_lu.compute(sparse);
  if (f.sparse_lu.info() == Eigen::Success) return repairs;

  f.dense = true;
  f.dense_lu.setThreshold(1e-11);
  f.dense_lu.compute(Eigen::MatrixXd(sparse));
  const Eigen::Index rank = f.dense_lu.rank();
  if (rank < nb) {
    const auto& q = f.dense_lu.permutationQ().indices();
    const auto& pr = f.dense_lu.permutationP().indices();
    std::vector<int> row_at(static_cast<std::size_t>(nb));
    for (Eigen::Index i = 0; i < nb; ++i) row_at[static_cast<std::size_t>(pr(i))] = static_cast<int>(i);
    for (Eigen::Index k = rank; k < nb; ++k) {
      repairs.emplace_back(f.bump_pos[static_cast<std::size_t>(q(k))], f.bump_rows[static_cast<std::size_t>(row_at[static_cast<std::size_t>(k)])]);
    }
  }
  return repairs;
}

void BasisFactor::Impl::base_ftran(const std::vector<double>& y, std::vector<double>& x) const {
  x.assign(static_cast<std::size_t>(m), 0.0);
  for (const Pivot& pv : row_pivots) {
    double s = y[static_cast<std::size_t>(pv.row)];
    for (int k = row_start[static_cast<std::size_t>(pv.row)]; k < row_start[static_cast<std::size_t>(pv.row) + 1]; ++k) {
      const int q = row_pos[static_cast<std::size_t>(k)];
      if (q != pv.pos) s -= row_val[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(q)];
    }
    x[static_cast<std::size_t>(pv.pos)] = s / pv.value;
  }
  if (!bump_pos.empty()) {
    const auto nb = static_cast<Eigen::Index>(bump_pos.size());
    Eigen::VectorXd rhs(nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      const int r = bump_rows[static_cast<std::size_t>(i)];
      double s = y[static_cast<std::size_t>(r)];
      for (int k = row_start[static_cast<std::size_t>(r)]; k < row_start[static_cast<std::size_t>(r) + 1]; ++k) {
        const int q = row_pos[static_cast<std::size_t>(k)];
        if (pos_role[static_cast<std::size_t>(q)] == kRowPivot) s -= row_val[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(q)];
      }
      rhs(i) = s;
    }
    const Eigen::VectorXd sol = dense ? Eigen::VectorXd(dense_lu.solve(rhs)) : Eigen::VectorXd(sparse_lu.solve(rhs));
    for (Eigen::Index i = 0; i < nb; ++i) x[static_cast<std::size_t>(bump_pos[static_cast<std::size_t>(i)])] = sol(i);
  }
  for (auto it = col_pivots.rbegin(); it != col_pivots.rend(); ++it) {
    double s = y[static_cast<std::size_t>(it->row)];
    for (int k = row_start[static_cast<std::size_t>(it->row)]; k < row_start[static_cast<std::size_t>(it->row) + 1]; ++k) {
      const int q = row_pos[static_cast<std::size_t>(k)];
      if (q != it->pos) s -= row_val[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(q)];
    }
    x[static_cast<std::size_t>(it->pos)] = s / it->value;
  }
}

void BasisFactor::Impl::base_btran(const std::vector<double>& z, std::vector<double>& pi) const {
  pi.assign(static_cast<std::size_t>(m), 0.0);
  for (const Pivot& pv : col_pivots) {
    double s = z[static_cast<std::size_t>(pv.pos)];
    for (int k = col_start[static_cast<std::size_t>(pv.pos)]; k < col_start[static_cast<std::size_t>(pv.pos) + 1]; ++k) {
      const int r = col_row[static_cast<std::size_t>(k)];
      if (r != pv.row) s -= col_val[static_cast<std::size_t>(k)] * pi[static_cast<std::size_t>(r)];
    }
    pi[static_cast<std::size_t>(pv.row)] = s / pv.value;
  }
  if (!bump_pos.empty()) {
    const auto nb = static_cast<Eigen::Index>(bump_pos.size());
    Eigen::VectorXd rhs(nb);
    for (Eigen::Index j = 0; j < nb; ++j) {
      const int p = bump_pos[static_cast<std::size_t>(j)];
      double s = z[static_cast<std::size_t>(p)];
      for (int k = col_start[static_cast<std::size_t>(p)]; k < col_start[static_cast<std::size_t>(p) + 1]; ++k) {
        const int r = col_row[static_cast<std::size_t>(k)];
        if (row_role[static_cast<std::size_t>(r)] == kColPivot) s -= col_val[static_cast<std::size_t>(k)] * pi[static_cast<std::size_t>(r)];
      }
      rhs(j) = s;
    }
    const Eigen::VectorXd sol =
        dense ? Eigen::VectorXd(dense_lu.transpose().solve(rhs)) : Eigen::VectorXd(sparse_lu.transpose().solve(rhs));
    for (Eigen::Index i = 0; i < nb; ++i) pi[static_cast<std::size_t>(bump_rows[static_cast<std::size_t>(i)])] = sol(i);
  }
  for (auto it = row_pivots.rbegin(); it != row_pivots.rend(); ++it) {
    double s = z[static_cast<std::size_t>(it->pos)];
    for (int k = col_start[static_cast<std::size_t>(it->pos)]; k < col_start[static_cast<std::size_t>(it->pos) + 1]; ++k) {
      const int r = col_row[static_cast<std::size_t>(k)];
      if (r != it->row) s -= col_val[static_cast<std::size_t>(k)] * pi[static_cast<std::size_t>(r)];
    }
    pi[static_cast<std::size_t>(it->row)] = s / it->value;
  }
}

void BasisFactor::ftran(std::vector<double>& y) const {
  std::vector<double> x;
  impl_->base_ftran(y, x);
  for (const Eta& e : impl_->etas) {
    const double xp = x[static_cast<std::size_t>(e.pos)] / e.pivot;
    x[static_cast<std::size_t>(e.pos)] = xp;
    if (xp == 0.0) continue;
    for (std::size_t k = 0; k < e.index.size(); ++k) x[static_cast<std::size_t>(e.index[k])] -= e.value[k] * xp;
  }
  y.swap(x);
}

void BasisFactor::btran(std::vector<double>& z) const {
  for (auto it = impl_->etas.rbegin(); it != impl_->etas.rend(); ++it) {
    double s = z[static_cast<std::size_t>(it->pos)];
    for (std::size_t k = 0; k < it->index.size(); ++k) s -= it->value[k] * z[static_cast<std::size_t>(it->index[k])];
    z[static_cast<std::size_t>(it->pos)] = s / it->pivot;
  }
  std::vector<double> pi;
  impl_->base_btran(z, pi);
  z.swap(pi);
}

void BasisFactor::update(int position, const std::vector<double>& alpha) {
  Eta e;
  e.pos = position;
  e.pivot = alpha[static_cast<std::size_t>(position)];
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (static_cast<int>(i) != position && std::abs(alpha[i]) > kEtaDrop) {
      e.index.push_back(static_cast<int>(i));
      e.value.push_back(alpha[i]);
    }
  }
  impl_->etas.push_back(std::move(e));
}

}  // namespace potts_forge::detail
