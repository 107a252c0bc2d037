// Black-box engines producing execution protocols (projected subgradient
// and ellipsoid), the three decomposition drivers, and the recovery
// procedures with bound verification.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "certdecomp/certify.hpp"
#include "certdecomp/oracles.hpp"

namespace certdecomp {

enum class Method { Subgradient, Ellipsoid };
enum class StepRule { Constant, Divergent };

struct RunConfig {
  Method method = Method::Subgradient;
  int max_steps = 1000;
  double target_eps = 0.0;  // > 0 enables periodic certificate checks
  StepRule step_rule = StepRule::Divergent;
  double gamma0 = 0.0;  // step length scale; 0 = domain diameter
  std::uint64_t seed = 0;
};

// One oracle answer inside a run: first-order data (productive) or a
// separator. payloads carry the inner solutions the recovery needs.
struct EngineStep {
  bool productive = false;
  double fvalue = 0.0;
  bool has_fvalue = false;
  Vector e;  // subgradient / monotone-map value / separator
  Vector payload_x1;
  Vector payload_y1;
};

using EngineOracle = std::function<EngineStep(const Vector&)>;

// Runs the configured method from the domain center, recording every step.
// A vanishing e on a productive step terminates the run (exact optimum).
ExecutionProtocol run_convex(const EngineOracle& oracle, const Solid& domain,
                             const RunConfig& cfg);

// Same engine treating e as the monotone-map value of a saddle problem.
ExecutionProtocol run_saddle(const EngineOracle& phi, const Solid& domain,
                             const RunConfig& cfg);

struct DirectSolveResult {
  LPStatus status = LPStatus::Optimal;
  double opt = 0.0;
  Vector x;
  Vector y;        // all row duals
  Vector ytilde2;  // duals of the linking rows (last m2)
  Vector farkas;
};

DirectSolveResult solve_direct(const BlockLPInstance& inst, const KernelOptions& opts = {});

struct BendersResult {
  Vector x2;
  Vector x1;
  double obj = 0.0;
  double eps = 0.0;
  ExecutionProtocol protocol;
  Certificate cert;
  double max_violation = 0.0;  // of [x1;x2] against the full instance
  bool infeasible_evidence = false;
  Vector last_separator;
};

// Case A driver: subgradient/ellipsoid on f(x2) over the +-R box; the
// returned iterate is the productive step with minimal f.
BendersResult solve_benders(const BlockLPInstance& inst, const RunConfig& cfg,
                            const KernelOptions& opts = {});

struct LagrangianBounds {
  double b1_feas = 0.0;           // max residual of A11 x1_hat - b1
  double box_feas = 0.0;          // max residual of |x1_hat| - R
  Vector b2_bound_rhs;            // second-line right-hand side
  Vector b2_violation;            // A21 x1_hat - b2_bound_rhs
  double obj = 0.0;               // c1'x1_hat
  double obj_bound = 0.0;         // opt_ref + eps
  double opt_ref = 0.0;
  std::string opt_source;         // "direct" or "certified"
};

struct LagrangianResult {
  Vector x1_hat;
  LagrangianBounds bounds;
  Vector y2_best;
  double dual_obj = 0.0;  // certified lower bound -min f
  double eps = 0.0;
  ExecutionProtocol protocol;
  Certificate cert;
};

// Case B driver over the scaled simplex B_L. opt_ref, when supplied, is the
// direct-solve optimum; otherwise a certified stand-in is used and labeled.
LagrangianResult solve_lagrangian(const BlockLPInstance& inst, double L, const RunConfig& cfg,
                                  std::optional<double> opt_ref = std::nullopt,
                                  const KernelOptions& opts = {});

struct RefinedBoundCheck {
  double ell = 0.0;
  bool applicable = false;
  bool holds = false;
  double slack = 0.0;  // min over rows of rhs - A21 x1_hat
};

// Optimal-multiplier refinement: with ell = L - |ytilde2|_1 > 0, checks
// A21 x1_hat <= b2 + eps/ell componentwise.
RefinedBoundCheck check_refined_bound(const BlockLPInstance& inst, const Vector& x1_hat,
                                      double eps_cert_value, double L, const Vector& ytilde2);

struct SaddleSolution {
  Vector x1_hat, x2_hat, y1_hat, y2_hat;
  double eps_cert = 0.0;
  double eps_sad_measured = 0.0;
  double eps_sad_induced_1 = 0.0;
  double eps_sad_induced_2 = 0.0;
};

// Weighted recovery of Theorem-style solutions from a protocol whose steps
// carry inner payloads; measures the exact gaps against eps_cert.
SaddleSolution recover_saddle(const BlockLPInstance& inst, const Domains& dom,
                              const ExecutionProtocol& protocol, const Certificate& cert,
                              double eps_cert_value, const KernelOptions& opts = {});

struct SaddleGeneralResult {
  SaddleSolution best;     // from the optimal certificate
  SaddleSolution uniform;  // from uniform weights over productive steps
  ExecutionProtocol protocol;
  Certificate cert_best;
  Certificate cert_uniform;
  double obj = 0.0;            // c'[x1_hat; x2_hat] (best certificate)
  double max_violation = 0.0;  // against the full instance
  bool y2_on_boundary = false;
};

// General driver on the reduced saddle problem over X2 x Y2; b_inflate >= 1
// grows the certificate solid B beyond the domain.
SaddleGeneralResult solve_saddle_general(const BlockLPInstance& inst, const Solid& y2,
                                         const RunConfig& cfg, double b_inflate = 1.0,
                                         const KernelOptions& opts = {});

// Largest violation of [x1;x2] against rows and box of the instance.
double full_point_violation(const BlockLPInstance& inst, const Vector& x1, const Vector& x2);

}  // namespace certdecomp
