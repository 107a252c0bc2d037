#include "certdecomp/oracles.hpp"

#include <cmath>
#include <string>

namespace certdecomp {

Domains make_domains(const BlockLPInstance& inst, Solid y2) {
  if (y2.dim() != inst.m2())
    throw DimensionError("make_domains: Y2 dim " + std::to_string(y2.dim()) +
                         " vs m2 = " + std::to_string(inst.m2()));
  Domains d{Box{Vector(inst.n1(), -inst.R), Vector(inst.n1(), inst.R)},
            Box{Vector(inst.n2(), -inst.R), Vector(inst.n2(), inst.R)},
            Box{Vector(inst.m1(), 0.0), y1_upper_bounds(inst)}, std::move(y2)};
  return d;
}

double psi_value(const BlockLPInstance& inst, const Vector& x1, const Vector& x2,
                 const Vector& y1, const Vector& y2) {
  Vector r1 = apply_A11(inst, x1);
  vec_axpy(r1, 1.0, apply_A12(inst, x2));
  vec_axpy(r1, -1.0, inst.full_b1());
  Vector r2 = apply_A21(inst, x1);
  vec_axpy(r2, 1.0, apply_A22(inst, x2));
  vec_axpy(r2, -1.0, inst.b2);
  return dot(inst.full_c1(), x1) + dot(inst.c2, x2) + dot(y1, r1) + dot(y2, r2);
}

PsiGradients psi_gradients(const BlockLPInstance& inst, const Vector& x1, const Vector& x2,
                           const Vector& y1, const Vector& y2) {
  PsiGradients g;
  g.gx1 = inst.full_c1();
  vec_axpy(g.gx1, 1.0, apply_A11T(inst, y1));
  vec_axpy(g.gx1, 1.0, apply_A21T(inst, y2));
  g.gx2 = inst.c2;
  vec_axpy(g.gx2, 1.0, apply_A12T(inst, y1));
  vec_axpy(g.gx2, 1.0, apply_A22T(inst, y2));
  g.gy1 = apply_A11(inst, x1);
  vec_axpy(g.gy1, 1.0, apply_A12(inst, x2));
  vec_axpy(g.gy1, -1.0, inst.full_b1());
  g.gy2 = apply_A21(inst, x1);
  vec_axpy(g.gy2, 1.0, apply_A22(inst, x2));
  vec_axpy(g.gy2, -1.0, inst.b2);
  return g;
}

BendersResponse benders_oracle(const BlockLPInstance& inst, const Vector& x2,
                               const KernelOptions& opts) {
  if (static_cast<int>(x2.size()) != inst.n2())
    throw DimensionError("benders_oracle: x2 dim mismatch");
  BendersResponse out;
  Vector x1, y1;
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& blk = inst.blocks[k];
    const int n1k = blk.A11.cols, m1k = blk.A11.rows;
    StandardLP lp;
    lp.c = blk.c1;
    lp.A = blk.A11;
    lp.b = vec_sub(blk.b1, matvec(blk.A12, x2));
    lp.lower.assign(n1k, -inst.R);
    lp.upper.assign(n1k, inst.R);
    LPResult r = solve_lp(lp, opts);
    if (r.status == LPStatus::Infeasible) {
      // First infeasible block wins: its certificate separates x2.
      out.productive = false;
      out.e = transpose_matvec(blk.A12, r.farkas);
      if (norms(out.e).linf <= 1e-12)
        throw Error("benders_oracle: block " + std::to_string(k) +
                    " is infeasible for every x2 (instance-level infeasibility)");
      out.farkas_y1.assign(inst.m1(), 0.0);
      for (int i = 0; i < m1k; ++i) out.farkas_y1[inst.block_row_offset(k) + i] = r.farkas[i];
      return out;
    }
    x1.insert(x1.end(), r.x.begin(), r.x.end());
    y1.insert(y1.end(), r.y.begin(), r.y.end());
  }
  out.productive = true;
  out.f = dot(inst.full_c1(), x1) + dot(inst.c2, x2);
  out.g = vec_add(apply_A12T(inst, y1), inst.c2);
  out.x1 = std::move(x1);
  out.y1 = std::move(y1);
  return out;
}

LagrangeResponse lagrange_oracle(const BlockLPInstance& inst, const Vector& y2,
                                 const KernelOptions& opts) {
  if (static_cast<int>(y2.size()) != inst.m2())
    throw DimensionError("lagrange_oracle: y2 dim mismatch");
  Vector x1;
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& blk = inst.blocks[k];
    StandardLP lp;
    // max -d'x1 == min d'x1 with d = c1_k + A21_k'y2.
    lp.c = vec_add(blk.c1, transpose_matvec(blk.A21, y2));
    lp.A = blk.A11;
    lp.b = blk.b1;
    lp.lower.assign(blk.A11.cols, -inst.R);
    lp.upper.assign(blk.A11.cols, inst.R);
    LPResult r = solve_lp(lp, opts);
    if (r.status != LPStatus::Optimal)
      throw SolverError("lagrange_oracle: block " + std::to_string(k) +
                        " infeasible; the dual function requires feasible blocks");
    x1.insert(x1.end(), r.x.begin(), r.x.end());
  }
  LagrangeResponse out;
  Vector d = vec_add(inst.full_c1(), apply_A21T(inst, y2));
  out.f = -dot(d, x1) + dot(inst.b2, y2);
  out.g = vec_sub(inst.b2, apply_A21(inst, x1));
  out.x1 = std::move(x1);
  return out;
}

PhiResponse phi_oracle(const BlockLPInstance& inst, const Domains& dom, const Vector& x2,
                       const Vector& y2, const KernelOptions& opts) {
  BlockSaddleResult inner = block_saddle(inst, x2, y2, dom.y1.upper, opts);
  PhiResponse out;
  out.e_x = inst.c2;
  vec_axpy(out.e_x, 1.0, apply_A12T(inst, inner.y1));
  vec_axpy(out.e_x, 1.0, apply_A22T(inst, y2));
  out.e_y = apply_A21(inst, inner.x1);
  vec_axpy(out.e_y, 1.0, apply_A22(inst, x2));
  vec_axpy(out.e_y, -1.0, inst.b2);
  for (double& v : out.e_y) v = -v;
  out.x1 = std::move(inner.x1);
  out.y1 = std::move(inner.y1);
  return out;
}

double induced_value(const BlockLPInstance& inst, const Domains& dom, int side,
                     const Vector& xi, const Vector& yi, const KernelOptions& opts) {
  if (side == 2) {
    // Fixed (x2, y2); inner saddle over (x1, y1) solves per block and the
    // caller-side terms are added here.
    BlockSaddleResult inner = block_saddle(inst, xi, yi, dom.y1.upper, opts);
    return inner.value + dot(inst.c2, xi) + dot(yi, vec_sub(apply_A22(inst, xi), inst.b2));
  }
  if (side == 1) {
    // Fixed (x1, y1); inner over (x2, y2) is one bilinear saddle with
    // c~ = c2 + A12'y1, A~ = A22, b~ = b2 - A21 x1.
    Vector ct = vec_add(inst.c2, apply_A12T(inst, yi));
    Vector bt = vec_sub(inst.b2, apply_A21(inst, xi));
    SaddlePoint sp = solve_bilinear_saddle(ct, inst.A22, bt, dom.x2, dom.y2, opts);
    const double cst =
        dot(inst.full_c1(), xi) + dot(yi, vec_sub(apply_A11(inst, xi), inst.full_b1()));
    return sp.value + cst;
  }
  throw Error("induced_value: side must be 1 or 2");
}

double eps_sad(const BlockLPInstance& inst, const Domains& dom, const Vector& x1,
               const Vector& x2, const Vector& y1, const Vector& y2) {
  PsiGradients g = psi_gradients(inst, x1, x2, y1, y2);
  const double cx = dot(inst.full_c1(), x1) + dot(inst.c2, x2);

  // max over Y of Psi(x_hat, .)
  const Solid y1s = Solid::box(dom.y1.lower, dom.y1.upper);
  const double up = cx + y1s.support(g.gy1).value + dom.y2.support(g.gy2).value;

  // min over X of Psi(., y_hat)
  const Solid x1s = Solid::box(dom.x1.lower, dom.x1.upper);
  const Solid x2s = Solid::box(dom.x2.lower, dom.x2.upper);
  const double cy = -dot(y1, inst.full_b1()) - dot(y2, inst.b2);
  const double down = cy - x1s.support(vec_scale(-1.0, g.gx1)).value -
                      x2s.support(vec_scale(-1.0, g.gx2)).value;
  return up - down;
}

PartialSaddleResult partial_saddle(const BlockLPInstance& inst, const Domains& dom,
                                   const PartialSaddleSpec& spec, const KernelOptions& opts) {
  const int n1 = inst.n1(), n2 = inst.n2(), m1 = inst.m1(), m2 = inst.m2();
  const bool fx1 = spec.x1.has_value(), fx2 = spec.x2.has_value();
  const bool fy1 = spec.y1.has_value(), fy2 = spec.y2.has_value();
  if (fx1 && static_cast<int>(spec.x1->size()) != n1)
    throw DimensionError("partial_saddle: x1 dim");
  if (fx2 && static_cast<int>(spec.x2->size()) != n2)
    throw DimensionError("partial_saddle: x2 dim");
  if (fy1 && static_cast<int>(spec.y1->size()) != m1)
    throw DimensionError("partial_saddle: y1 dim");
  if (fy2 && static_cast<int>(spec.y2->size()) != m2)
    throw DimensionError("partial_saddle: y2 dim");

  PartialSaddleResult out;
  if (fx1 && fx2 && fy1 && fy2) {
    out.value = psi_value(inst, *spec.x1, *spec.x2, *spec.y1, *spec.y2);
    out.x1 = *spec.x1;
    out.x2 = *spec.x2;
    out.y1 = *spec.y1;
    out.y2 = *spec.y2;
    return out;
  }

  const ScaledSimplex* y2simplex = dom.y2.as_simplex();
  const Box* y2box = dom.y2.as_box();
  if (!y2simplex && !y2box)
    throw Error("partial_saddle: Y2 must be a box or a scaled simplex");

  // Column layout: [x1 | x2 | s1 (m1, y1 free) | s2 (m2 or 1, y2 free)].
  const int off_x1 = 0;
  const int off_x2 = fx1 ? 0 : n1;
  const int nx = (fx1 ? 0 : n1) + (fx2 ? 0 : n2);
  const int off_s1 = nx;
  const int ns1 = fy1 ? 0 : m1;
  const int off_s2 = nx + ns1;
  const int ns2 = fy2 ? 0 : (y2box ? m2 : 1);
  const int ncols = nx + ns1 + ns2;

  const int rows1 = fy1 ? 0 : m1;
  const int rows2 = fy2 ? 0 : m2;
  const int nrows = rows1 + rows2;

  StandardLP lp;
  lp.c.assign(ncols, 0.0);
  lp.lower.assign(ncols, 0.0);
  lp.upper.assign(ncols, 0.0);
  lp.A = Matrix(nrows, ncols);
  lp.b.assign(nrows, 0.0);
  double constant = 0.0;

  // Objective and constant from the fixed groups.
  Vector cost_x1 = inst.full_c1();
  Vector cost_x2 = inst.c2;
  if (fy1) {
    vec_axpy(cost_x1, 1.0, apply_A11T(inst, *spec.y1));
    vec_axpy(cost_x2, 1.0, apply_A12T(inst, *spec.y1));
    constant -= dot(*spec.y1, inst.full_b1());
  }
  if (fy2) {
    vec_axpy(cost_x1, 1.0, apply_A21T(inst, *spec.y2));
    vec_axpy(cost_x2, 1.0, apply_A22T(inst, *spec.y2));
    constant -= dot(*spec.y2, inst.b2);
  }
  if (fx1) {
    constant += dot(cost_x1, *spec.x1);
  } else {
    for (int j = 0; j < n1; ++j) {
      lp.c[off_x1 + j] = cost_x1[j];
      lp.lower[off_x1 + j] = dom.x1.lower[j];
      lp.upper[off_x1 + j] = dom.x1.upper[j];
    }
  }
  if (fx2) {
    constant += dot(cost_x2, *spec.x2);
  } else {
    for (int j = 0; j < n2; ++j) {
      lp.c[off_x2 + j] = cost_x2[j];
      lp.lower[off_x2 + j] = dom.x2.lower[j];
      lp.upper[off_x2 + j] = dom.x2.upper[j];
    }
  }

  // Residual rows for the free y-groups: s >= A.. x - b.. with fixed parts
  // folded into the right-hand side.
  auto row_cap = [&](double rhs, int row, int ncols_used) {
    // Loose upper bound on the positive part of the residual.
    double cap = std::abs(rhs) + 1.0;
    for (int j = 0; j < ncols_used; ++j)
      cap += std::abs(lp.A(row, j)) *
             std::max(std::abs(lp.lower[j]), std::abs(lp.upper[j]));
    return cap;
  };

  if (!fy1) {
    Vector rhs = inst.full_b1();
    if (fx1) vec_axpy(rhs, -1.0, apply_A11(inst, *spec.x1));
    if (fx2) vec_axpy(rhs, -1.0, apply_A12(inst, *spec.x2));
    for (int k = 0; k < inst.num_blocks(); ++k) {
      const InstanceBlock& blk = inst.blocks[k];
      const int ro = inst.block_row_offset(k), co = inst.block_col_offset(k);
      for (int i = 0; i < blk.A11.rows; ++i) {
        const int row = ro + i;
        if (!fx1)
          for (int j = 0; j < blk.A11.cols; ++j) lp.A(row, off_x1 + co + j) = blk.A11(i, j);
        if (!fx2)
          for (int j = 0; j < n2; ++j) lp.A(row, off_x2 + j) = blk.A12(i, j);
        lp.A(row, off_s1 + row) = -1.0;
        lp.b[row] = rhs[row];
      }
    }
    for (int i = 0; i < m1; ++i) {
      lp.c[off_s1 + i] = dom.y1.upper[i];
      lp.upper[off_s1 + i] = row_cap(lp.b[i], i, nx);
    }
  }
  if (!fy2) {
    Vector rhs = inst.b2;
    if (fx1) vec_axpy(rhs, -1.0, apply_A21(inst, *spec.x1));
    if (fx2) vec_axpy(rhs, -1.0, apply_A22(inst, *spec.x2));
    for (int i = 0; i < m2; ++i) {
      const int row = rows1 + i;
      if (!fx1)
        for (int k = 0; k < inst.num_blocks(); ++k) {
          const InstanceBlock& blk = inst.blocks[k];
          const int co = inst.block_col_offset(k);
          for (int j = 0; j < blk.A21.cols; ++j) lp.A(row, off_x1 + co + j) = blk.A21(i, j);
        }
      if (!fx2)
        for (int j = 0; j < n2; ++j) lp.A(row, off_x2 + j) = inst.A22(i, j);
      lp.A(row, off_s2 + (y2box ? i : 0)) = -1.0;
      lp.b[row] = rhs[i];
    }
    if (y2box) {
      for (int i = 0; i < m2; ++i) {
        lp.c[off_s2 + i] = y2box->upper[i];
        lp.upper[off_s2 + i] = row_cap(lp.b[rows1 + i], rows1 + i, nx);
      }
    } else if (ns2 == 1) {
      lp.c[off_s2] = y2simplex->L;
      double cap = 1.0;
      for (int i = 0; i < m2; ++i) cap = std::max(cap, row_cap(lp.b[rows1 + i], rows1 + i, nx));
      lp.upper[off_s2] = cap;
    }
  }

  LPResult r = solve_lp(lp, opts);
  if (r.status != LPStatus::Optimal)
    throw SolverError("partial_saddle: penalty LP reported infeasible");

  out.value = r.objective + constant;
  out.x1 = fx1 ? *spec.x1 : vec_slice(r.x, off_x1, n1);
  out.x2 = fx2 ? *spec.x2 : vec_slice(r.x, off_x2, n2);
  if (fy1) {
    out.y1 = *spec.y1;
  } else {
    out.y1 = vec_slice(r.y, 0, m1);
    for (int i = 0; i < m1; ++i)
      out.y1[i] = std::min(std::max(out.y1[i], 0.0), dom.y1.upper[i]);
  }
  if (fy2) {
    out.y2 = *spec.y2;
  } else {
    out.y2 = vec_slice(r.y, rows1, m2);
    for (double& v : out.y2) v = std::max(v, 0.0);
    if (y2box) {
      for (int i = 0; i < m2; ++i) out.y2[i] = std::min(out.y2[i], y2box->upper[i]);
    } else {
      double sum = 0;
      for (double v : out.y2) sum += v;
      if (sum > y2simplex->L && sum > 0)
        for (double& v : out.y2) v *= y2simplex->L / sum;
    }
  }
  return out;
}

PartialSaddleResult direct_saddle(const BlockLPInstance& inst, const Domains& dom,
                                  const KernelOptions& opts) {
  return partial_saddle(inst, dom, PartialSaddleSpec{}, opts);
}

double induced_gap(const BlockLPInstance& inst, const Domains& dom, int side,
                   const Vector& xi, const Vector& yi, const KernelOptions& opts) {
  PartialSaddleSpec up, down;
  if (side == 1) {
    up.x1 = xi;    // max_{y1} Psi_1(x1, .) == min_{x2} max_{y1,y2} Psi(x1, ...)
    down.y1 = yi;  // min_{x1} Psi_1(., y1) == min_{x1,x2} max_{y2} Psi(..., y1, .)
  } else if (side == 2) {
    up.x2 = xi;
    down.y2 = yi;
  } else {
    throw Error("induced_gap: side must be 1 or 2");
  }
  return partial_saddle(inst, dom, up, opts).value - partial_saddle(inst, dom, down, opts).value;
}

}  // namespace certdecomp
