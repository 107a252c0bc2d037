#include "certdecomp/lp_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace certdecomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivTol = 1e-11;

// Dense LU with partial pivoting, row-swap list convention (getrf style).
struct Lu {
  int n = 0;
  std::vector<double> a;  // col-major factors
  std::vector<int> piv;
};

Lu lu_factor(int n, std::vector<double> a /*col-major*/) {
  Lu f;
  f.n = n;
  f.a = std::move(a);
  f.piv.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(f.a[k + k * n]);
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(f.a[i + k * n]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    f.piv[k] = p;
    if (best < 1e-300) throw SolverError("lp_kernel: singular basis matrix");
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(f.a[k + j * n], f.a[p + j * n]);
    const double inv = 1.0 / f.a[k + k * n];
    for (int i = k + 1; i < n; ++i) f.a[i + k * n] *= inv;
    for (int j = k + 1; j < n; ++j) {
      const double akj = f.a[k + j * n];
      if (akj == 0.0) continue;
      for (int i = k + 1; i < n; ++i) f.a[i + j * n] -= f.a[i + k * n] * akj;
    }
  }
  return f;
}

// Solves B z = rhs in place.
void lu_solve(const Lu& f, Vector& rhs) {
  const int n = f.n;
  for (int k = 0; k < n; ++k)
    if (f.piv[k] != k) std::swap(rhs[k], rhs[f.piv[k]]);
  for (int j = 0; j < n; ++j) {
    const double v = rhs[j];
    if (v == 0.0) continue;
    for (int i = j + 1; i < n; ++i) rhs[i] -= f.a[i + j * n] * v;
  }
  for (int j = n - 1; j >= 0; --j) {
    rhs[j] /= f.a[j + j * n];
    const double v = rhs[j];
    if (v == 0.0) continue;
    for (int i = 0; i < j; ++i) rhs[i] -= f.a[i + j * n] * v;
  }
}

// Solves B' z = rhs in place.
void lu_solve_t(const Lu& f, Vector& rhs) {
  const int n = f.n;
  // U' w = rhs (forward), then L' z = w (backward), then unpermute.
  for (int j = 0; j < n; ++j) {
    double v = rhs[j];
    for (int i = 0; i < j; ++i) v -= f.a[i + j * n] * rhs[i];
    rhs[j] = v / f.a[j + j * n];
  }
  for (int j = n - 1; j >= 0; --j) {
    double v = rhs[j];
    for (int i = j + 1; i < n; ++i) v -= f.a[i + j * n] * rhs[i];
    rhs[j] = v;
  }
  for (int k = n - 1; k >= 0; --k)
    if (f.piv[k] != k) std::swap(rhs[k], rhs[f.piv[k]]);
}

enum class VarState : unsigned char { AtLower, AtUpper, Basic };

// Bounded-variable revised simplex over the equality system G z = b,
// lo <= z <= hi, with per-phase costs. Columns are stored col-major.
struct Simplex {
  int m = 0, ncols = 0;
  std::vector<double> G;  // m x ncols, col-major
  Vector b, lo, hi;
  Vector cost;
  std::vector<int> basis;
  std::vector<VarState> state;
  Vector val;
  Vector pi;
  int iterations = 0;

  const double* col(int j) const { return G.data() + static_cast<size_t>(j) * m; }

  void refresh_values(const Lu& f) {
    Vector rhs = b;
    for (int j = 0; j < ncols; ++j) {
      if (state[j] == VarState::Basic || val[j] == 0.0) continue;
      const double* gj = col(j);
      for (int i = 0; i < m; ++i) rhs[i] -= gj[i] * val[j];
    }
    lu_solve(f, rhs);
    for (int i = 0; i < m; ++i) val[basis[i]] = rhs[i];
  }

  Lu factor_basis() const {
    std::vector<double> B(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      const double* gj = col(basis[i]);
      for (int r = 0; r < m; ++r) B[r + static_cast<size_t>(i) * m] = gj[r];
    }
    return lu_factor(m, std::move(B));
  }

  void compute_duals(const Lu& f) {
    pi.resize(m);
    for (int i = 0; i < m; ++i) pi[i] = cost[basis[i]];
    lu_solve_t(f, pi);
  }

  double reduced_cost(int j) const {
    const double* gj = col(j);
    double d = cost[j];
    for (int i = 0; i < m; ++i) d -= pi[i] * gj[i];
    return d;
  }

  // Runs Bland-rule iterations to optimality. Throws on the iteration cap.
  void optimize(double opt_tol, int cap) {
    for (;;) {
      if (++iterations > cap)
        throw SolverError("lp_kernel: simplex iteration cap of " + std::to_string(cap) +
                          " exceeded");
      Lu f = factor_basis();
      refresh_values(f);
      compute_duals(f);

      int enter = -1;
      double dir = 0.0;
      for (int j = 0; j < ncols; ++j) {
        if (state[j] == VarState::Basic) continue;
        if (hi[j] - lo[j] <= 0.0) continue;  // fixed variable
        const double d = reduced_cost(j);
        if (state[j] == VarState::AtLower && d < -opt_tol) {
          enter = j;
          dir = 1.0;
          break;  // Bland: smallest eligible index
        }
        if (state[j] == VarState::AtUpper && d > opt_tol) {
          enter = j;
          dir = -1.0;
          break;
        }
      }
      if (enter < 0) return;

      Vector w(col(enter), col(enter) + m);
      lu_solve(f, w);

      // Ratio test; the entering variable's bound flip competes as a
      // candidate with index == enter (Bland tie-break on variable index).
      double theta = std::isfinite(hi[enter]) && std::isfinite(lo[enter])
                         ? hi[enter] - lo[enter]
                         : kInf;
      int leave = -1;            // basis position, -1 = bound flip
      bool leave_to_upper = false;
      int leave_var = enter;
      for (int i = 0; i < m; ++i) {
        const double rate = -dir * w[i];
        const int bi = basis[i];
        double ti;
        bool to_upper;
        if (rate > kPivTol) {
          if (!std::isfinite(hi[bi])) continue;
          ti = (hi[bi] - val[bi]) / rate;
          to_upper = true;
        } else if (rate < -kPivTol) {
          ti = (val[bi] - lo[bi]) / (-rate);
          to_upper = false;
        } else {
          continue;
        }
        if (ti < 0.0) ti = 0.0;
        if (ti < theta - 1e-12 || (ti <= theta + 1e-12 && bi < leave_var)) {
          theta = std::min(theta, ti);
          leave = i;
          leave_to_upper = to_upper;
          leave_var = bi;
        }
      }
      if (!std::isfinite(theta))
        throw SolverError("lp_kernel: unbounded improving direction (invalid bounds?)");

      val[enter] += dir * theta;
      for (int i = 0; i < m; ++i) val[basis[i]] -= dir * theta * w[i];

      if (leave < 0) {
        state[enter] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
        val[enter] = dir > 0 ? hi[enter] : lo[enter];
      } else {
        const int out = basis[leave];
        state[out] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
        val[out] = leave_to_upper ? hi[out] : lo[out];
        basis[leave] = enter;
        state[enter] = VarState::Basic;
      }
    }
  }
};

void check_lp_input(const StandardLP& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int m = static_cast<int>(lp.b.size());
  if (lp.A.rows != m || lp.A.cols != n)
    throw DimensionError("solve_lp: A is " + std::to_string(lp.A.rows) + "x" +
                         std::to_string(lp.A.cols) + ", expected " + std::to_string(m) + "x" +
                         std::to_string(n));
  if (static_cast<int>(lp.lower.size()) != n || static_cast<int>(lp.upper.size()) != n)
    throw DimensionError("solve_lp: bound dims do not match variable count");
  if (!all_finite(lp.c) || !all_finite(lp.b) || !all_finite(lp.A) || !all_finite(lp.lower) ||
      !all_finite(lp.upper))
    throw Error("solve_lp: non-finite input");
  for (int j = 0; j < n; ++j)
    if (lp.lower[j] > lp.upper[j])
      throw Error("solve_lp: lower > upper at variable " + std::to_string(j));
}

}  // namespace

LPResult solve_lp(const StandardLP& lp, const KernelOptions& opts) {
  check_lp_input(lp);
  const int n = static_cast<int>(lp.c.size());
  const int m = static_cast<int>(lp.b.size());
  LPResult res;

  if (m == 0) {
    res.x.resize(n);
    res.reduced = lp.c;
    for (int j = 0; j < n; ++j) res.x[j] = lp.c[j] > 0 ? lp.lower[j] : lp.upper[j];
    res.objective = dot(lp.c, res.x);
    res.dual_objective = res.objective;
    return res;
  }

  const double bscale = 1.0 + norms(lp.b).linf;
  const double feas_tol = opts.feas_tol * bscale;

  if (n == 0) {
    double worst = 0;
    int worst_i = -1;
    for (int i = 0; i < m; ++i)
      if (-lp.b[i] > worst) {
        worst = -lp.b[i];
        worst_i = i;
      }
    if (worst_i >= 0 && worst > feas_tol) {
      res.status = LPStatus::Infeasible;
      res.farkas.assign(m, 0.0);
      res.farkas[worst_i] = 1.0;
      return res;
    }
    res.y.assign(m, 0.0);
    return res;
  }

  // Columns: [x (n) | t (1) | slacks (m)], system A x - t 1 + s = b.
  Simplex sx;
  sx.m = m;
  sx.ncols = n + 1 + m;
  sx.G.assign(static_cast<size_t>(sx.m) * sx.ncols, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) sx.G[i + static_cast<size_t>(j) * m] = lp.A(i, j);
  for (int i = 0; i < m; ++i) sx.G[i + static_cast<size_t>(n) * m] = -1.0;
  for (int i = 0; i < m; ++i) sx.G[i + static_cast<size_t>(n + 1 + i) * m] = 1.0;
  sx.b = lp.b;

  sx.lo.assign(sx.ncols, 0.0);
  sx.hi.assign(sx.ncols, kInf);
  for (int j = 0; j < n; ++j) {
    sx.lo[j] = lp.lower[j];
    sx.hi[j] = lp.upper[j];
  }

  sx.val.assign(sx.ncols, 0.0);
  sx.state.assign(sx.ncols, VarState::AtLower);
  for (int j = 0; j < n; ++j) sx.val[j] = lp.lower[j];

  Vector r = lp.b;
  for (int j = 0; j < n; ++j)
    if (sx.val[j] != 0.0)
      for (int i = 0; i < m; ++i) r[i] -= lp.A(i, j) * sx.val[j];
  double t0 = 0.0;
  for (int i = 0; i < m; ++i) t0 = std::max(t0, -r[i]);

  const int t_col = n;
  sx.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    sx.basis[i] = n + 1 + i;
    sx.state[n + 1 + i] = VarState::Basic;
    sx.val[n + 1 + i] = r[i] + t0;
  }

  const int cap = opts.max_iters > 0 ? opts.max_iters : 10000 + 200 * sx.ncols;

  sx.cost.assign(sx.ncols, 0.0);
  if (t0 > feas_tol) {
    // Phase 1: minimize t starting from t nonbasic at its upper bound t0.
    sx.hi[t_col] = t0;
    sx.val[t_col] = t0;
    sx.state[t_col] = VarState::AtUpper;
    sx.cost[t_col] = 1.0;
    sx.optimize(opts.opt_tol, cap);

    const double t_star = sx.val[t_col];
    if (t_star > feas_tol) {
      Lu f = sx.factor_basis();
      sx.compute_duals(f);
      Vector y(m);
      for (int i = 0; i < m; ++i) y[i] = std::max(0.0, -sx.pi[i]);
      const double ymax = norms(y).linf;
      if (ymax <= 0.0) throw SolverError("lp_kernel: empty infeasibility certificate");
      for (double& v : y) v /= ymax;
      // Certificate sanity: max over the box of y'(b - Ax) must be < 0.
      Vector mAty = transpose_matvec(lp.A, y);
      for (double& v : mAty) v = -v;
      const double viol = dot(y, lp.b) + Solid::box(lp.lower, lp.upper).support(mAty).value;
      if (viol >= 0.0)
        throw SolverError("lp_kernel: infeasibility certificate failed validation (residual " +
                          std::to_string(viol) + ")");
      res.status = LPStatus::Infeasible;
      res.farkas = std::move(y);
      res.iterations = sx.iterations;
      return res;
    }
    sx.cost[t_col] = 0.0;
  }

  // Phase 2 with t pinned to zero.
  sx.hi[t_col] = 0.0;
  sx.lo[t_col] = 0.0;
  if (sx.state[t_col] != VarState::Basic) {
    sx.state[t_col] = VarState::AtLower;
    sx.val[t_col] = 0.0;
  }
  for (int j = 0; j < n; ++j) sx.cost[j] = lp.c[j];
  sx.optimize(opts.opt_tol, cap);

  Lu f = sx.factor_basis();
  sx.compute_duals(f);

  res.x.resize(n);
  for (int j = 0; j < n; ++j)
    res.x[j] = std::min(std::max(sx.val[j], lp.lower[j]), lp.upper[j]);
  res.y.resize(m);
  for (int i = 0; i < m; ++i) res.y[i] = std::max(0.0, -sx.pi[i]);
  res.reduced = vec_add(lp.c, transpose_matvec(lp.A, res.y));
  res.objective = dot(lp.c, res.x);
  res.dual_objective = -dot(res.y, lp.b);
  for (int j = 0; j < n; ++j)
    res.dual_objective +=
        std::min(res.reduced[j] * lp.lower[j], res.reduced[j] * lp.upper[j]);
  res.iterations = sx.iterations;
  return res;
}

SaddlePoint solve_bilinear_saddle(const Vector& c, const Matrix& A, const Vector& b,
                                  const Box& xbox, const Solid& ysolid,
                                  const KernelOptions& opts) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(b.size());
  if (A.rows != m || A.cols != n)
    throw DimensionError("solve_bilinear_saddle: A is " + std::to_string(A.rows) + "x" +
                         std::to_string(A.cols) + ", expected " + std::to_string(m) + "x" +
                         std::to_string(n));
  if (static_cast<int>(xbox.lower.size()) != n)
    throw DimensionError("solve_bilinear_saddle: xbox dim mismatch");
  if (ysolid.dim() != m) throw DimensionError("solve_bilinear_saddle: ysolid dim mismatch");

  const Box* ybox = ysolid.as_box();
  const ScaledSimplex* ysimplex = ysolid.as_simplex();
  if (ybox) {
    for (double l : ybox->lower)
      if (l != 0.0) throw Error("solve_bilinear_saddle: y box must have lower bound 0");
  } else if (!ysimplex) {
    throw Error("solve_bilinear_saddle: y solid must be a box or a scaled simplex");
  }

  SaddlePoint sp;
  const Solid xsolid = Solid::box(xbox.lower, xbox.upper);

  if (m == 0) {
    sp.x_star.resize(n);
    for (int j = 0; j < n; ++j) sp.x_star[j] = c[j] > 0 ? xbox.lower[j] : xbox.upper[j];
    sp.value = dot(c, sp.x_star);
    return sp;
  }

  // Row slack head-room: s_i never needs to exceed max over the box of
  // (Ax)_i minus b_i.
  Vector srow_cap(m);
  for (int i = 0; i < m; ++i) {
    Vector row(n);
    for (int j = 0; j < n; ++j) row[j] = A(i, j);
    srow_cap[i] = std::max(0.0, xsolid.support(row).value - b[i]) + 1.0;
  }

  StandardLP lp;
  const int naux = ybox ? m : 1;
  lp.c.assign(n + naux, 0.0);
  lp.lower.assign(n + naux, 0.0);
  lp.upper.assign(n + naux, 0.0);
  for (int j = 0; j < n; ++j) {
    lp.c[j] = c[j];
    lp.lower[j] = xbox.lower[j];
    lp.upper[j] = xbox.upper[j];
  }
  lp.A = Matrix(m, n + naux);
  lp.b = b;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) lp.A(i, j) = A(i, j);

  if (ybox) {
    // min c'x + u's  s.t.  Ax - s <= b, 0 <= s.
    for (int i = 0; i < m; ++i) {
      lp.c[n + i] = ybox->upper[i];
      lp.upper[n + i] = srow_cap[i];
      lp.A(i, n + i) = -1.0;
    }
  } else {
    // min c'x + L w  s.t.  A_i x - w <= b_i, 0 <= w.
    double wcap = 1.0;
    for (int i = 0; i < m; ++i) wcap = std::max(wcap, srow_cap[i]);
    lp.c[n] = ysimplex->L;
    lp.upper[n] = wcap;
    for (int i = 0; i < m; ++i) lp.A(i, n) = -1.0;
  }

  LPResult r = solve_lp(lp, opts);
  if (r.status != LPStatus::Optimal)
    throw SolverError("solve_bilinear_saddle: reformulated LP reported infeasible");

  sp.x_star = vec_slice(r.x, 0, n);
  sp.y_star = r.y;
  // Clamp the recovered multipliers into the solid (duals can exceed it by
  // roundoff only).
  if (ybox) {
    for (int i = 0; i < m; ++i)
      sp.y_star[i] = std::min(std::max(sp.y_star[i], 0.0), ybox->upper[i]);
  } else {
    double sum = 0;
    for (double& v : sp.y_star) {
      v = std::max(v, 0.0);
      sum += v;
    }
    if (sum > ysimplex->L && sum > 0) {
      const double sc = ysimplex->L / sum;
      for (double& v : sp.y_star) v *= sc;
    }
  }
  sp.value = r.objective;

  // Two-sided gap at the returned pair, in closed form.
  Vector resid = matvec(A, sp.x_star);
  vec_axpy(resid, -1.0, b);
  const double up = dot(c, sp.x_star) + ysolid.support(resid).value;
  Vector g = vec_add(c, transpose_matvec(A, sp.y_star));
  for (double& v : g) v = -v;
  const double down = -dot(sp.y_star, b) - xsolid.support(g).value;
  sp.gap = up - down;
  if (sp.gap > opts.saddle_tol * (1.0 + std::abs(sp.value)))
    throw SolverError("solve_bilinear_saddle: saddle gap " + std::to_string(sp.gap) +
                      " exceeds tolerance");
  return sp;
}

BlockSaddleResult block_saddle(const BlockLPInstance& inst, const Vector& x2,
                               const Vector& y2, const Vector& y1_upper,
                               const KernelOptions& opts) {
  if (static_cast<int>(x2.size()) != inst.n2()) throw DimensionError("block_saddle: x2 dim");
  if (static_cast<int>(y2.size()) != inst.m2()) throw DimensionError("block_saddle: y2 dim");
  if (static_cast<int>(y1_upper.size()) != inst.m1())
    throw DimensionError("block_saddle: y1_upper dim");

  BlockSaddleResult out;
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& blk = inst.blocks[k];
    const int n1k = blk.A11.cols, m1k = blk.A11.rows;
    Vector ck = vec_add(blk.c1, transpose_matvec(blk.A21, y2));
    Vector bk = vec_sub(blk.b1, matvec(blk.A12, x2));
    const Vector uk = vec_slice(y1_upper, inst.block_row_offset(k), m1k);
    Box xb{Vector(n1k, -inst.R), Vector(n1k, inst.R)};
    SaddlePoint sp =
        solve_bilinear_saddle(ck, blk.A11, bk, xb, Solid::box(Vector(m1k, 0.0), uk), opts);
    out.x1.insert(out.x1.end(), sp.x_star.begin(), sp.x_star.end());
    out.y1.insert(out.y1.end(), sp.y_star.begin(), sp.y_star.end());
    out.value += sp.value;
  }
  return out;
}

}  // namespace certdecomp
