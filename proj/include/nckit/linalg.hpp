#pragma once

#include <optional>
#include <vector>

#include "nckit/cyclo.hpp"

namespace nckit {

// Dense matrix over a fixed cyclotomic field, row major.  All algorithms are
// exact Gaussian elimination with first-nonzero pivoting, so results (RREF,
// nullspace bases, chosen solutions) are deterministic.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), field_(CycloField::get(1)) {}
  Matrix(unsigned rows, unsigned cols, const CycloField* f)
      : rows_(rows), cols_(cols), field_(f),
        a_(static_cast<size_t>(rows) * cols, CycloScalar::zero(f)) {}

  static Matrix identity(unsigned n, const CycloField* f);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  const CycloField* field() const { return field_; }

  CycloScalar& at(unsigned i, unsigned j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const CycloScalar& at(unsigned i, unsigned j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const CycloScalar& c) const;
  Matrix transposed() const;

  bool operator==(const Matrix& o) const { return cmp(o) == 0; }
  bool operator!=(const Matrix& o) const { return cmp(o) != 0; }
  // Total order: shape first, then entries lexicographically.
  int cmp(const Matrix& o) const;

  bool is_zero() const;
  bool is_identity() const;

 private:
  unsigned rows_, cols_;
  const CycloField* field_;
  std::vector<CycloScalar> a_;
};

// Reduce in place to reduced row echelon form; returns the rank and, if
// requested, the pivot column of each of the first `rank` rows.
unsigned rref_in_place(Matrix& m, std::vector<unsigned>* pivots = nullptr);

unsigned rank(Matrix m);

// Columns form the canonical RREF basis of the right nullspace.
Matrix nullspace(Matrix m);

// Solve A * X = B.  Returns std::nullopt when inconsistent; free variables
// are set to zero, so the solution is deterministic.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

CycloScalar det(Matrix m);

CycloScalar trace(const Matrix& m);

// Matrix whose columns are the given vectors (all of length `len`).
Matrix from_columns(unsigned len, const std::vector<std::vector<CycloScalar>>& cols,
                    const CycloField* f);

}  // namespace nckit
