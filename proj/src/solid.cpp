#include "certdecomp/solid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace certdecomp {

Solid Solid::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size()) throw DimensionError("Solid::box: bound dims differ");
  for (size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i])
      throw Error("Solid::box: lower > upper at coordinate " + std::to_string(i));
  return Solid{Box{std::move(lower), std::move(upper)}};
}

Solid Solid::cube(int dim, double lower, double upper) {
  return Solid::box(Vector(dim, lower), Vector(dim, upper));
}

Solid Solid::simplex(int dim, double L) {
  if (dim < 0 || L < 0) throw Error("Solid::simplex: need dim >= 0 and L >= 0");
  return Solid{ScaledSimplex{dim, L}};
}

Solid Solid::product(std::vector<Solid> factors) {
  return Solid{Product{std::move(factors)}};
}

int Solid::dim() const {
  if (const Box* b = as_box()) return static_cast<int>(b->lower.size());
  if (const ScaledSimplex* s = as_simplex()) return s->dim;
  const Product& p = std::get<Product>(v);
  int d = 0;
  for (const Solid& f : p.factors) d += f.dim();
  return d;
}

SupportResult Solid::support(const Vector& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("Solid::support: vector dim " + std::to_string(g.size()) +
                         " vs solid dim " + std::to_string(dim()));
  SupportResult r;
  if (const Box* b = as_box()) {
    r.argmax.resize(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
      const double z = g[i] > 0 ? b->upper[i] : b->lower[i];
      r.argmax[i] = z;
      r.value += g[i] * z;
    }
    return r;
  }
  if (const ScaledSimplex* s = as_simplex()) {
    r.argmax.assign(s->dim, 0.0);
    if (s->dim == 0) return r;
    int best = 0;
    for (int i = 1; i < s->dim; ++i)
      if (g[i] > g[best]) best = i;
    if (g[best] > 0) {
      r.value = s->L * g[best];
      r.argmax[best] = s->L;
    }
    return r;
  }
  const Product& p = std::get<Product>(v);
  int off = 0;
  for (const Solid& f : p.factors) {
    const int d = f.dim();
    SupportResult sub = f.support(vec_slice(g, off, d));
    r.value += sub.value;
    r.argmax.insert(r.argmax.end(), sub.argmax.begin(), sub.argmax.end());
    off += d;
  }
  return r;
}

bool Solid::contains(const Vector& x, double tol) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  if (const Box* b = as_box()) {
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < b->lower[i] - tol || x[i] > b->upper[i] + tol) return false;
    return true;
  }
  if (const ScaledSimplex* s = as_simplex()) {
    double sum = 0;
    for (double v : x) {
      if (v < -tol) return false;
      sum += v;
    }
    return sum <= s->L + tol;
  }
  const Product& p = std::get<Product>(v);
  int off = 0;
  for (const Solid& f : p.factors) {
    const int d = f.dim();
    if (!f.contains(vec_slice(x, off, d), tol)) return false;
    off += d;
  }
  return true;
}

namespace {

// Projection onto {y >= 0, sum y <= L}: clip to the orthant first; if the
// sum still exceeds L the projection lies on the face sum = L and equals
// the classical sorted-threshold simplex projection of the original point.
Vector project_scaled_simplex(const Vector& x, double L) {
  Vector p(x);
  for (double& v : p) v = std::max(v, 0.0);
  double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (sum <= L) return p;

  Vector sorted(x);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cum = 0, tau = 0;
  const int n = static_cast<int>(sorted.size());
  for (int k = 1; k <= n; ++k) {
    cum += sorted[k - 1];
    const double t = (cum - L) / k;
    if (k == n || sorted[k] <= t) {
      tau = t;
      break;
    }
  }
  Vector r(x);
  for (double& v : r) v = std::max(v - tau, 0.0);
  return r;
}

}  // namespace

Vector Solid::project(const Vector& x) const {
  if (static_cast<int>(x.size()) != dim())
    throw DimensionError("Solid::project: dim mismatch");
  if (const Box* b = as_box()) {
    Vector r(x);
    for (size_t i = 0; i < r.size(); ++i)
      r[i] = std::min(std::max(r[i], b->lower[i]), b->upper[i]);
    return r;
  }
  if (const ScaledSimplex* s = as_simplex()) return project_scaled_simplex(x, s->L);
  const Product& p = std::get<Product>(v);
  Vector r;
  int off = 0;
  for (const Solid& f : p.factors) {
    const int d = f.dim();
    Vector sub = f.project(vec_slice(x, off, d));
    r.insert(r.end(), sub.begin(), sub.end());
    off += d;
  }
  return r;
}

Vector Solid::center() const {
  if (const Box* b = as_box()) {
    Vector r(b->lower.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = 0.5 * (b->lower[i] + b->upper[i]);
    return r;
  }
  if (const ScaledSimplex* s = as_simplex()) {
    if (s->dim == 0) return {};
    return Vector(s->dim, s->L / (2.0 * s->dim));
  }
  const Product& p = std::get<Product>(v);
  Vector r;
  for (const Solid& f : p.factors) {
    Vector sub = f.center();
    r.insert(r.end(), sub.begin(), sub.end());
  }
  return r;
}

double Solid::diameter() const {
  if (const Box* b = as_box()) {
    double s = 0;
    for (size_t i = 0; i < b->lower.size(); ++i) {
      const double d = b->upper[i] - b->lower[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  if (const ScaledSimplex* s = as_simplex()) {
    if (s->dim == 0) return 0;
    return s->dim >= 2 ? s->L * std::sqrt(2.0) : s->L;
  }
  const Product& p = std::get<Product>(v);
  double s = 0;
  for (const Solid& f : p.factors) {
    const double d = f.diameter();
    s += d * d;
  }
  return std::sqrt(s);
}

std::optional<Vector> Solid::separate(const Vector& x, double tol) const {
  if (static_cast<int>(x.size()) != dim())
    throw DimensionError("Solid::separate: dim mismatch");
  if (const Box* b = as_box()) {
    double worst = tol;
    int idx = -1;
    double sign = 1;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] - b->upper[i] > worst) {
        worst = x[i] - b->upper[i];
        idx = static_cast<int>(i);
        sign = 1;
      }
      if (b->lower[i] - x[i] > worst) {
        worst = b->lower[i] - x[i];
        idx = static_cast<int>(i);
        sign = -1;
      }
    }
    if (idx < 0) return std::nullopt;
    Vector e(x.size(), 0.0);
    e[idx] = sign;
    return e;
  }
  if (const ScaledSimplex* s = as_simplex()) {
    double worst = tol;
    int neg_idx = -1;
    for (int i = 0; i < s->dim; ++i) {
      if (-x[i] > worst) {
        worst = -x[i];
        neg_idx = i;
      }
    }
    const double sum = std::accumulate(x.begin(), x.end(), 0.0);
    if (sum - s->L > worst) {
      return Vector(s->dim, 1.0);
    }
    if (neg_idx >= 0) {
      Vector e(s->dim, 0.0);
      e[neg_idx] = -1.0;
      return e;
    }
    return std::nullopt;
  }
  const Product& p = std::get<Product>(v);
  int off = 0;
  for (const Solid& f : p.factors) {
    const int d = f.dim();
    if (auto sub = f.separate(vec_slice(x, off, d), tol)) {
      Vector e(x.size(), 0.0);
      for (int i = 0; i < d; ++i) e[off + i] = (*sub)[i];
      return e;
    }
    off += d;
  }
  return std::nullopt;
}

namespace {

void flatten_into(const Solid& s, int offset, FlatSolid& out) {
  if (const Box* b = s.as_box()) {
    for (size_t i = 0; i < b->lower.size(); ++i)
      out.box_coords.push_back({offset + static_cast<int>(i), b->lower[i], b->upper[i]});
    return;
  }
  if (const ScaledSimplex* sx = s.as_simplex()) {
    if (sx->dim > 0) out.simplex_factors.push_back({offset, sx->dim, sx->L});
    return;
  }
  const Product& p = std::get<Product>(s.v);
  int off = offset;
  for (const Solid& f : p.factors) {
    flatten_into(f, off, out);
    off += f.dim();
  }
}

}  // namespace

FlatSolid flatten(const Solid& s) {
  FlatSolid out;
  out.dim = s.dim();
  flatten_into(s, 0, out);
  return out;
}

Solid inflate(const Solid& s, double factor) {
  if (factor < 1.0) throw Error("inflate: factor must be >= 1");
  if (const Box* b = s.as_box()) {
    Vector lo(b->lower), hi(b->upper);
    for (size_t i = 0; i < lo.size(); ++i) {
      const double c = 0.5 * (lo[i] + hi[i]);
      const double h = 0.5 * (hi[i] - lo[i]) * factor;
      lo[i] = c - h;
      hi[i] = c + h;
    }
    return Solid::box(std::move(lo), std::move(hi));
  }
  if (const ScaledSimplex* sx = s.as_simplex()) return Solid::simplex(sx->dim, sx->L * factor);
  const Product& p = std::get<Product>(s.v);
  std::vector<Solid> fs;
  fs.reserve(p.factors.size());
  for (const Solid& f : p.factors) fs.push_back(inflate(f, factor));
  return Solid::product(std::move(fs));
}

}  // namespace certdecomp
