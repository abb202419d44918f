#include "nckit/linalg.hpp"

namespace nckit {

Matrix Matrix::identity(unsigned n, const CycloField* f) {
  Matrix m(n, n, f);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = CycloScalar::one(f);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::BadInput, "matrix shape mismatch in product");
  Matrix r(rows_, o.cols_, field_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned k = 0; k < cols_; ++k) {
      const CycloScalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (unsigned j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::BadInput, "matrix shape mismatch in sum");
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::BadInput, "matrix shape mismatch in difference");
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::scaled(const CycloScalar& c) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

Matrix Matrix::transposed() const {
  Matrix r(cols_, rows_, field_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

int Matrix::cmp(const Matrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_ ? -1 : 1;
  if (cols_ != o.cols_) return cols_ < o.cols_ ? -1 : 1;
  for (size_t i = 0; i < a_.size(); ++i) {
    int c = a_[i].cmp(o.a_[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

unsigned rref_in_place(Matrix& m, std::vector<unsigned>* pivots) {
  if (pivots) pivots->clear();
  unsigned row = 0;
  for (unsigned col = 0; col < m.cols() && row < m.rows(); ++col) {
    unsigned r = row;
    while (r < m.rows() && m.at(r, col).is_zero()) ++r;
    if (r == m.rows()) continue;
    if (r != row)
      for (unsigned j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(row, j));
    CycloScalar inv = m.at(row, col).inverse();
    for (unsigned j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (unsigned i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      CycloScalar c = m.at(i, col);
      for (unsigned j = col; j < m.cols(); ++j) m.at(i, j) -= c * m.at(row, j);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;
}

unsigned rank(Matrix m) { return rref_in_place(m); }

Matrix nullspace(Matrix m) {
  std::vector<unsigned> pivots;
  unsigned rk = rref_in_place(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (unsigned p : pivots) is_pivot[p] = true;
  unsigned nullity = m.cols() - rk;
  Matrix basis(m.cols(), nullity, m.field());
  unsigned bcol = 0;
  for (unsigned j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    basis.at(j, bcol) = CycloScalar::one(m.field());
    for (unsigned i = 0; i < rk; ++i)
      basis.at(pivots[i], bcol) = -m.at(i, j);
    ++bcol;
  }
  return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(ErrorKind::BadInput, "solve shape mismatch");
  Matrix aug(a.rows(), a.cols() + b.cols(), a.field());
  for (unsigned i = 0; i < a.rows(); ++i) {
    for (unsigned j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    for (unsigned j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
  }
  std::vector<unsigned> pivots;
  unsigned rk = rref_in_place(aug, &pivots);
  // Any pivot inside the augmented block means inconsistency.
  for (unsigned p : pivots)
    if (p >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols(), a.field());
  for (unsigned i = 0; i < rk; ++i)
    for (unsigned j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = aug.at(i, a.cols() + j);
  return x;
}

CycloScalar det(Matrix m) {
  if (m.rows() != m.cols()) fail(ErrorKind::BadInput, "determinant of non-square matrix");
  const CycloField* f = m.field();
  CycloScalar d = CycloScalar::one(f);
  for (unsigned col = 0; col < m.cols(); ++col) {
    unsigned r = col;
    while (r < m.rows() && m.at(r, col).is_zero()) ++r;
    if (r == m.rows()) return CycloScalar::zero(f);
    if (r != col) {
      for (unsigned j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    CycloScalar inv = m.at(col, col).inverse();
    for (unsigned i = col + 1; i < m.rows(); ++i) {
      if (m.at(i, col).is_zero()) continue;
      CycloScalar c = m.at(i, col) * inv;
      for (unsigned j = col; j < m.cols(); ++j) m.at(i, j) -= c * m.at(col, j);
    }
  }
  return d;
}

CycloScalar trace(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::BadInput, "trace of non-square matrix");
  CycloScalar t = CycloScalar::zero(m.field());
  for (unsigned i = 0; i < m.rows(); ++i) t += m.at(i, i);
  return t;
}

Matrix from_columns(unsigned len, const std::vector<std::vector<CycloScalar>>& cols,
                    const CycloField* f) {
  Matrix m(len, static_cast<unsigned>(cols.size()), f);
  for (unsigned j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != len) fail(ErrorKind::BadInput, "column length mismatch");
    for (unsigned i = 0; i < len; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

}  // namespace nckit
