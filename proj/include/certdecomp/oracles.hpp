// First-order and separation oracles for the three decomposition regimes,
// evaluation of the Lagrange function
//
//   Psi(x1,x2,y1,y2) = c1'x1 + c2'x2 + <y1, A11 x1 + A12 x2 - b1>
//                                    + <y2, A21 x1 + A22 x2 - b2>
//
// over X1 x X2 x Y1 x Y2, the induced small saddle problems, and exact
// duality-gap (eps_sad) measurement.
#pragma once

#include <optional>

#include "certdecomp/lp_kernel.hpp"
#include "certdecomp/model.hpp"
#include "certdecomp/solid.hpp"

namespace certdecomp {

// The four solids the saddle problem lives on. X1, X2 are +-R boxes, Y1 is
// the per-block dual box [0, R_k], Y2 is a configurable solid.
struct Domains {
  Box x1;
  Box x2;
  Box y1;
  Solid y2;
};

Domains make_domains(const BlockLPInstance& inst, Solid y2);

double psi_value(const BlockLPInstance& inst, const Vector& x1, const Vector& x2,
                 const Vector& y1, const Vector& y2);

struct PsiGradients {
  Vector gx1;  // c1 + A11'y1 + A21'y2
  Vector gx2;  // c2 + A12'y1 + A22'y2
  Vector gy1;  // A11 x1 + A12 x2 - b1
  Vector gy2;  // A21 x1 + A22 x2 - b2
};

PsiGradients psi_gradients(const BlockLPInstance& inst, const Vector& x1, const Vector& x2,
                           const Vector& y1, const Vector& y2);

// Case A (m2 = 0): value/subgradient of f(x2) = min over the inner LP, or a
// separating linear form when the inner problem is infeasible at x2.
struct BendersResponse {
  bool productive = false;
  // productive
  double f = 0.0;
  Vector g;   // subgradient A12'y1 + c2
  Vector x1;  // inner argmin
  Vector y1;  // inner duals
  // separator
  Vector e;          // A12_k' (block farkas), nonzero
  Vector farkas_y1;  // the block certificate, lifted to m1
};

BendersResponse benders_oracle(const BlockLPInstance& inst, const Vector& x2,
                               const KernelOptions& opts = {});

// Case B (n2 = 0): value/gradient of the dual function
// f(y2) = max_{x1} { -[c1 + A21'y2]'x1 : A11 x1 <= b1, |x1| <= R } + b2'y2.
struct LagrangeResponse {
  double f = 0.0;
  Vector g;   // b2 - A21 x1
  Vector x1;  // inner argmax
};

LagrangeResponse lagrange_oracle(const BlockLPInstance& inst, const Vector& y2,
                                 const KernelOptions& opts = {});

// General case: solves the inner saddle at (x2, y2) and returns the
// monotone-map value of the reduced problem.
struct PhiResponse {
  Vector x1;   // inner saddle
  Vector y1;
  Vector e_x;  // c2 + A12'y1 + A22'y2
  Vector e_y;  // -(A21 x1 + A22 x2 - b2)
};

PhiResponse phi_oracle(const BlockLPInstance& inst, const Domains& dom, const Vector& x2,
                       const Vector& y2, const KernelOptions& opts = {});

// Psi_1(x1,y1) = min_{x2} max_{y2} Psi,  Psi_2(x2,y2) = min_{x1} max_{y1} Psi.
// side selects which pair is held fixed at `point` = (x_i, y_i).
double induced_value(const BlockLPInstance& inst, const Domains& dom, int side,
                     const Vector& xi, const Vector& yi, const KernelOptions& opts = {});

// Exact duality gap max_{y in Y} Psi(x_hat, y) - min_{x in X} Psi(x, y_hat),
// evaluated in closed form through the domain support functions.
double eps_sad(const BlockLPInstance& inst, const Domains& dom, const Vector& x1,
               const Vector& x2, const Vector& y1, const Vector& y2);

// min over the free x-groups, max over the free y-groups of Psi, with the
// remaining groups fixed. The inner maxima are folded into LP penalties, so
// one kernel solve gives the exact value (and, for free groups, the argmin /
// recovered multipliers). Fixing everything degenerates to psi_value.
struct PartialSaddleSpec {
  std::optional<Vector> x1;
  std::optional<Vector> x2;
  std::optional<Vector> y1;
  std::optional<Vector> y2;
};

struct PartialSaddleResult {
  double value = 0.0;
  Vector x1, x2, y1, y2;  // free groups solved, fixed groups echoed
};

PartialSaddleResult partial_saddle(const BlockLPInstance& inst, const Domains& dom,
                                   const PartialSaddleSpec& spec,
                                   const KernelOptions& opts = {});

// Saddle value and point of the master problem over X x Y (all groups free).
PartialSaddleResult direct_saddle(const BlockLPInstance& inst, const Domains& dom,
                                  const KernelOptions& opts = {});

// Gap of the induced problem Psi_i at (x_i, y_i): both envelope sides are
// evaluated through partial_saddle.
double induced_gap(const BlockLPInstance& inst, const Domains& dom, int side,
                   const Vector& xi, const Vector& yi, const KernelOptions& opts = {});

}  // namespace certdecomp
