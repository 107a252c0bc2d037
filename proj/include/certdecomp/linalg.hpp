// Minimal dense real linear algebra shared by every module: row-major
// matrices over std::vector<double> and the few vector helpers the
// solver needs. No sparse formats, no factorization reuse.
#pragma once

#include <initializer_list>
#include <vector>

#include "certdecomp/errors.hpp"

namespace certdecomp {

using Vector = std::vector<double>;

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // row-major, a.size() == rows*cols

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows_init);

  double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// y = A x
Vector matvec(const Matrix& A, const Vector& x);

// y = A^T x
Vector transpose_matvec(const Matrix& A, const Vector& y);

struct Norms {
  double l1 = 0;
  double linf = 0;
};

// l1 and sup norm in one pass; both 0 for the empty vector.
Norms norms(const Vector& x);

double dot(const Vector& a, const Vector& b);
Vector vec_add(const Vector& a, const Vector& b);
Vector vec_sub(const Vector& a, const Vector& b);
Vector vec_scale(double s, const Vector& a);
void vec_axpy(Vector& y, double s, const Vector& x);  // y += s*x
Vector vec_concat(const Vector& a, const Vector& b);
Vector vec_slice(const Vector& v, int offset, int len);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace certdecomp
