// Block-angular LP instance model:
//
//   min  c1'x1 + c2'x2
//   s.t. A11 x1 + A12 x2 <= b1        (A11 block-diagonal, K blocks)
//        A21 x1 + A22 x2 <= b2        (m2 linking rows)
//        |x|_inf <= R
//
// plus validation, assembly to a plain dense LP, a feasible-by-construction
// random generator, and full-precision file I/O.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "certdecomp/linalg.hpp"

namespace certdecomp {

struct InstanceBlock {
  Matrix A11;  // m1k x n1k
  Matrix A12;  // m1k x n2
  Matrix A21;  // m2 x n1k
  Vector c1;   // n1k
  Vector b1;   // m1k
};

struct BlockLPInstance {
  std::vector<InstanceBlock> blocks;
  Matrix A22;  // m2 x n2
  Vector c2;   // n2
  Vector b2;   // m2
  double R = 0.0;
  // Per-block dual box radii R_k for Y1 (generator metadata; empty means
  // "use the default 10*(1+|c1|_1)").
  Vector dual_box;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int n1() const;
  int m1() const;
  int n2() const { return static_cast<int>(c2.size()); }
  int m2() const { return static_cast<int>(b2.size()); }
  int block_col_offset(int k) const;  // offset of block k inside x1
  int block_row_offset(int k) const;  // offset of block k inside b1

  Vector full_c1() const;
  Vector full_b1() const;
};

// minimize c'x s.t. Ax <= b, lower <= x <= upper
struct StandardLP {
  Vector c;
  Matrix A;
  Vector b;
  Vector lower;
  Vector upper;
};

// Every structural invariant checked; violations are data, not errors.
std::vector<std::string> validate(const BlockLPInstance& inst);

// Variables ordered [x1 blocks; x2], rows [b1 blocks; b2], bounds +-R.
StandardLP assemble_full(const BlockLPInstance& inst);

struct GenerateConfig {
  int K = 1;
  int n1k = 2;
  int m1k = 2;
  int n2 = 0;
  int m2 = 0;
  double R = 10.0;
  double density = 1.0;  // in (0,1]
  std::uint64_t seed = 0;
  // Shrinks two rows of block 0 so that part of the x2 box is infeasible
  // for the inner problem (exercises the separation path); needs m1k >= 2
  // and n2 >= 1. The instance stays feasible.
  bool force_infeasible_x2 = false;
};

// Deterministic given seed; feasible and bounded by construction: an
// interior point x0 with |x0|_inf <= R/2 is sampled and b = A x0 + s with
// slacks s in [0.1, 1].
BlockLPInstance generate(const GenerateConfig& cfg);

BlockLPInstance load_instance(const std::string& path);
void save_instance(const BlockLPInstance& inst, const std::string& path);

// Block-structure products (A21 is the horizontal concatenation of the
// per-block A21_k, A12 the vertical stack of A12_k).
Vector apply_A11(const BlockLPInstance& inst, const Vector& x1);    // m1
Vector apply_A11T(const BlockLPInstance& inst, const Vector& y1);   // n1
Vector apply_A12(const BlockLPInstance& inst, const Vector& x2);    // m1
Vector apply_A12T(const BlockLPInstance& inst, const Vector& y1);   // n2
Vector apply_A21(const BlockLPInstance& inst, const Vector& x1);    // m2
Vector apply_A21T(const BlockLPInstance& inst, const Vector& y2);   // n1
Vector apply_A22(const BlockLPInstance& inst, const Vector& x2);    // m2
Vector apply_A22T(const BlockLPInstance& inst, const Vector& y2);   // n2

// Y1 upper bounds expanded to one entry per b1 row, from dual_box when
// present, else the default radius 10*(1+|c1|_1) for every block.
Vector y1_upper_bounds(const BlockLPInstance& inst);

}  // namespace certdecomp
