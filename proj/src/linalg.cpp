#include "certdecomp/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace certdecomp {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows_init) {
  Matrix m;
  m.rows = static_cast<int>(rows_init.size());
  m.cols = m.rows == 0 ? 0 : static_cast<int>(rows_init.begin()->size());
  m.a.reserve(static_cast<size_t>(m.rows) * m.cols);
  for (const auto& r : rows_init) {
    if (static_cast<int>(r.size()) != m.cols)
      throw DimensionError("Matrix::from_rows: ragged row lengths");
    for (double v : r) m.a.push_back(v);
  }
  return m;
}

Vector matvec(const Matrix& A, const Vector& x) {
  if (A.cols != static_cast<int>(x.size()))
    throw DimensionError("matvec: matrix is " + std::to_string(A.rows) + "x" +
                         std::to_string(A.cols) + " but vector has dim " +
                         std::to_string(x.size()));
  Vector y(A.rows, 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    const double* row = A.a.data() + static_cast<size_t>(i) * A.cols;
    for (int j = 0; j < A.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector transpose_matvec(const Matrix& A, const Vector& y) {
  if (A.rows != static_cast<int>(y.size()))
    throw DimensionError("transpose_matvec: matrix is " + std::to_string(A.rows) + "x" +
                         std::to_string(A.cols) + " but vector has dim " +
                         std::to_string(y.size()));
  Vector x(A.cols, 0.0);
  for (int i = 0; i < A.rows; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    const double* row = A.a.data() + static_cast<size_t>(i) * A.cols;
    for (int j = 0; j < A.cols; ++j) x[j] += row[j] * yi;
  }
  return x;
}

Norms norms(const Vector& x) {
  Norms n;
  for (double v : x) {
    const double av = std::abs(v);
    n.l1 += av;
    if (av > n.linf) n.linf = av;
  }
  return n;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw DimensionError("dot: dims " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector vec_add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("vec_add: dim mismatch");
  Vector r(a);
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Vector vec_sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("vec_sub: dim mismatch");
  Vector r(a);
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vector vec_scale(double s, const Vector& a) {
  Vector r(a);
  for (double& v : r) v *= s;
  return r;
}

void vec_axpy(Vector& y, double s, const Vector& x) {
  if (y.size() != x.size()) throw DimensionError("vec_axpy: dim mismatch");
  for (size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vector vec_concat(const Vector& a, const Vector& b) {
  Vector r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Vector vec_slice(const Vector& v, int offset, int len) {
  if (offset < 0 || len < 0 || offset + len > static_cast<int>(v.size()))
    throw DimensionError("vec_slice: range [" + std::to_string(offset) + "," +
                         std::to_string(offset + len) + ") out of dim " +
                         std::to_string(v.size()));
  return Vector(v.begin() + offset, v.begin() + offset + len);
}

bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  for (double x : m.a)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace certdecomp
