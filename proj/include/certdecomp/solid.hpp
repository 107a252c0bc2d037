// Compact convex domains with closed-form support function, membership,
// Euclidean projection, and separation: boxes, scaled nonnegative
// simplices {y >= 0, sum y <= L}, and direct products of those.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "certdecomp/linalg.hpp"

namespace certdecomp {

struct Solid;

struct Box {
  Vector lower;
  Vector upper;
};

struct ScaledSimplex {
  int dim = 0;
  double L = 0.0;
};

struct Product {
  std::vector<Solid> factors;
};

struct SupportResult {
  double value = 0.0;
  Vector argmax;
};

struct Solid {
  std::variant<Box, ScaledSimplex, Product> v;

  static Solid box(Vector lower, Vector upper);
  static Solid cube(int dim, double lower, double upper);  // uniform bounds
  static Solid simplex(int dim, double L);
  static Solid product(std::vector<Solid> factors);

  int dim() const;

  // max_{z in S} <g,z>; Box ties (g_i == 0) resolve to the lower bound,
  // simplex argmax is L*e_{i*} for the first maximal coordinate, or 0.
  SupportResult support(const Vector& g) const;

  bool contains(const Vector& x, double tol = 1e-9) const;

  // Euclidean projection onto the solid.
  Vector project(const Vector& x) const;

  // An interior point (box midpoint, simplex L/(2 dim) * ones).
  Vector center() const;

  // Exact diameter for boxes, L*sqrt(2) (dim>=2) or L (dim 1) for the
  // simplex, Euclidean combination for products.
  double diameter() const;

  // If x is outside the solid, a vector e with <e, z> < <e, x> for every
  // interior z of the solid; nullopt when x is inside (within tol).
  std::optional<Vector> separate(const Vector& x, double tol = 1e-9) const;

  const Box* as_box() const { return std::get_if<Box>(&v); }
  const ScaledSimplex* as_simplex() const { return std::get_if<ScaledSimplex>(&v); }
  const Product* as_product() const { return std::get_if<Product>(&v); }
};

// Flat view of a solid's structure, used to write support functions as
// linear programs (one auxiliary per box coordinate or simplex factor).
struct FlatSolid {
  struct BoxCoord {
    int idx;
    double lo, hi;
  };
  struct SimplexFactor {
    int offset;
    int dim;
    double L;
  };
  std::vector<BoxCoord> box_coords;
  std::vector<SimplexFactor> simplex_factors;
  int dim = 0;
};

FlatSolid flatten(const Solid& s);

// Scales the solid about its center (box) or its apex (simplex) by
// factor >= 1, producing a solid that contains the original.
Solid inflate(const Solid& s, double factor);

}  // namespace certdecomp
