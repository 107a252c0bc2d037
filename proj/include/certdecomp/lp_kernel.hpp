// Dense LP kernel: primal bounded-variable simplex with Bland's rule and a
// big-M-free two-phase start. Returns optimal primal/dual pairs or a
// box-aware Farkas infeasibility certificate. Also solves the bilinear
// saddle problems  min_{x in X} max_{y in Y} <c,x> + <y, Ax - b>  for box
// or scaled-simplex Y by LP reformulation.
#pragma once

#include "certdecomp/linalg.hpp"
#include "certdecomp/model.hpp"
#include "certdecomp/solid.hpp"

namespace certdecomp {

enum class LPStatus { Optimal, Infeasible };

struct LPResult {
  LPStatus status = LPStatus::Optimal;
  Vector x;        // primal solution (Optimal)
  Vector y;        // row duals, >= 0 (Optimal)
  Vector reduced;  // signed reduced costs c + A'y; the box-bound multipliers
  double objective = 0.0;
  double dual_objective = 0.0;  // -b'y + sum_j min over [l_j,u_j] of reduced_j * x_j
  Vector farkas;   // Infeasible: f >= 0 with max norm 1 and
                   // max over the box of f'(b - Ax) < 0
  int iterations = 0;
};

struct KernelOptions {
  double feas_tol = 1e-8;   // feasibility / infeasibility threshold
  double opt_tol = 1e-10;   // reduced-cost entering threshold
  double saddle_tol = 1e-7; // bilinear saddle gap acceptance
  int max_iters = 0;        // 0 = automatic cap
};

// Requires finite box bounds on every variable (so Unbounded cannot occur).
LPResult solve_lp(const StandardLP& lp, const KernelOptions& opts = {});

struct SaddlePoint {
  Vector x_star;
  Vector y_star;
  double value = 0.0;
  double gap = 0.0;  // measured two-sided saddle gap at (x_star, y_star)
};

// min_{x in xbox} max_{y in ysolid} [ <c,x> + <y, Ax - b> ].
// ysolid must be a Box with lower bound 0 or a ScaledSimplex.
SaddlePoint solve_bilinear_saddle(const Vector& c, const Matrix& A, const Vector& b,
                                  const Box& xbox, const Solid& ysolid,
                                  const KernelOptions& opts = {});

struct BlockSaddleResult {
  Vector x1;
  Vector y1;
  double value = 0.0;  // sum of per-block saddle values
};

// Per-block inner saddle of the Lagrange function at fixed (x2, y2):
// block k solves min max <c1_k + A21_k'y2, x1k> + <y1k, A11_k x1k - (b1_k - A12_k x2)>
// over |x1k|_inf <= R and 0 <= y1k <= y1_upper.
BlockSaddleResult block_saddle(const BlockLPInstance& inst, const Vector& x2,
                               const Vector& y2, const Vector& y1_upper,
                               const KernelOptions& opts = {});

}  // namespace certdecomp
