// Execution protocols and accuracy certificates.
//
// A protocol records the ordered search points z^t and oracle vectors e^t
// of a black-box run, split into productive steps (first-order output) and
// non-productive steps (separators). A certificate is a nonnegative weight
// vector, normalized to sum 1 over the productive steps; its resolution
// over a solid B is
//
//   eps_cert(zeta | P, B) = max_{z in B} sum_t zeta_t <e^t, z^t - z>,
//
// evaluated exactly through the support function of B.
#pragma once

#include <string>
#include <vector>

#include "certdecomp/lp_kernel.hpp"
#include "certdecomp/solid.hpp"

namespace certdecomp {

struct ProtocolStep {
  Vector z;
  Vector e;
  bool productive = false;
  double fvalue = 0.0;     // objective at productive steps of convex runs
  bool has_fvalue = false;
  Vector payload_x1;       // inner x1 (Case B and saddle runs)
  Vector payload_y1;       // inner y1 (saddle runs)
};

struct ExecutionProtocol {
  std::vector<ProtocolStep> steps;

  int size() const { return static_cast<int>(steps.size()); }
  int productive_count() const;
};

struct Certificate {
  Vector weights;  // aligned with protocol steps
};

// Empty result means valid; otherwise human-readable violation messages.
std::vector<std::string> check_certificate(const Certificate& cert,
                                           const ExecutionProtocol& protocol);

// Resolution of the certificate over B. All z^t are expected to lie in B.
double eps_cert(const Certificate& cert, const ExecutionProtocol& protocol, const Solid& B);

struct BestCertificate {
  Certificate cert;
  double eps = 0.0;
};

// Minimizes eps_cert over certificates with weights in [0,1], sum 1 over
// productive steps, by solving one LP (box coordinates and simplex factors
// of B enter as hinge rows). Requires at least one productive step.
BestCertificate best_certificate(const ExecutionProtocol& protocol, const Solid& B,
                                 const KernelOptions& opts = {});

// Classical zeta_t = gamma_t / sum of productive gammas.
Certificate step_weight_certificate(const ExecutionProtocol& protocol,
                                    const Vector& stepsizes);

// Protocol dump consumed by the verify command. `domain` is an opaque
// JSON-encoded context block the engines fill in.
void save_protocol(const ExecutionProtocol& protocol, const Certificate& cert,
                   const std::string& mode, const std::string& domain_json,
                   const std::string& path);

struct LoadedProtocol {
  ExecutionProtocol protocol;
  Certificate cert;
  std::string mode;
  std::string domain_json;
};

LoadedProtocol load_protocol(const std::string& path);

}  // namespace certdecomp
