#include "certdecomp/certify.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace certdecomp {

using nlohmann::json;

int ExecutionProtocol::productive_count() const {
  int n = 0;
  for (const auto& s : steps) n += s.productive ? 1 : 0;
  return n;
}

std::vector<std::string> check_certificate(const Certificate& cert,
                                           const ExecutionProtocol& protocol) {
  std::vector<std::string> out;
  if (cert.weights.size() != protocol.steps.size()) {
    out.push_back("certificate has " + std::to_string(cert.weights.size()) +
                  " weights for " + std::to_string(protocol.steps.size()) + " steps");
    return out;
  }
  double psum = 0.0;
  int pcount = 0;
  for (size_t t = 0; t < cert.weights.size(); ++t) {
    if (!(cert.weights[t] >= 0.0))
      out.push_back("weight " + std::to_string(t) + " is negative (" +
                    std::to_string(cert.weights[t]) + ")");
    if (protocol.steps[t].productive) {
      psum += cert.weights[t];
      ++pcount;
    }
  }
  if (pcount == 0) out.push_back("protocol has no productive step");
  if (pcount > 0 && std::abs(psum - 1.0) > 1e-12)
    out.push_back("productive weights sum to " + std::to_string(psum) + ", expected 1");
  return out;
}

double eps_cert(const Certificate& cert, const ExecutionProtocol& protocol, const Solid& B) {
  const auto bad = check_certificate(cert, protocol);
  if (!bad.empty()) throw Error("eps_cert: invalid certificate: " + bad.front());
  const int d = B.dim();
  Vector weighted_e(d, 0.0);
  double a = 0.0;
  for (size_t t = 0; t < protocol.steps.size(); ++t) {
    const ProtocolStep& s = protocol.steps[t];
    const double w = cert.weights[t];
    if (w == 0.0) continue;
    if (static_cast<int>(s.z.size()) != d || static_cast<int>(s.e.size()) != d)
      throw DimensionError("eps_cert: step " + std::to_string(t) + " dim mismatch with B");
    a += w * dot(s.e, s.z);
    vec_axpy(weighted_e, -w, s.e);
  }
  return a + B.support(weighted_e).value;
}

BestCertificate best_certificate(const ExecutionProtocol& protocol, const Solid& B,
                                 const KernelOptions& opts) {
  const int tau = protocol.size();
  const int d = B.dim();
  if (protocol.productive_count() == 0)
    throw Error("best_certificate: protocol has no productive step");
  for (int t = 0; t < tau; ++t)
    if (static_cast<int>(protocol.steps[t].z.size()) != d ||
        static_cast<int>(protocol.steps[t].e.size()) != d)
      throw DimensionError("best_certificate: step " + std::to_string(t) +
                           " dim mismatch with B");

  const FlatSolid fb = flatten(B);
  const int n_wbox = static_cast<int>(fb.box_coords.size());
  const int n_wsim = static_cast<int>(fb.simplex_factors.size());
  const int ncols = tau + n_wbox + n_wsim;

  // Rows: per box coordinate two hinges, per simplex factor one hinge per
  // coordinate, plus the two-sided normalization of the productive weights.
  int nrows = 2 * n_wbox + 2;
  for (const auto& sf : fb.simplex_factors) nrows += sf.dim;

  StandardLP lp;
  lp.c.assign(ncols, 0.0);
  lp.lower.assign(ncols, 0.0);
  lp.upper.assign(ncols, 0.0);
  lp.A = Matrix(nrows, ncols);
  lp.b.assign(nrows, 0.0);

  // zeta_t in [0,1] with cost <e^t, z^t>.
  for (int t = 0; t < tau; ++t) {
    lp.c[t] = dot(protocol.steps[t].e, protocol.steps[t].z);
    lp.upper[t] = 1.0;
  }

  int row = 0;
  // w_i >= l_i * g_i and w_i >= u_i * g_i with g = -sum_t zeta_t e^t:
  // l_i * (-sum zeta e_i) - w_i <= 0.
  for (int q = 0; q < n_wbox; ++q) {
    const auto& bc = fb.box_coords[q];
    const int wcol = tau + q;
    lp.c[wcol] = 1.0;
    double wmax = 1.0;
    for (int t = 0; t < tau; ++t)
      wmax += std::abs(protocol.steps[t].e[bc.idx]) *
              std::max(std::abs(bc.lo), std::abs(bc.hi));
    lp.lower[wcol] = -wmax;
    lp.upper[wcol] = wmax;
    for (int t = 0; t < tau; ++t) lp.A(row, t) = -bc.lo * protocol.steps[t].e[bc.idx];
    lp.A(row, wcol) = -1.0;
    ++row;
    for (int t = 0; t < tau; ++t) lp.A(row, t) = -bc.hi * protocol.steps[t].e[bc.idx];
    lp.A(row, wcol) = -1.0;
    ++row;
  }
  // Simplex factor: w >= 0 (bounds) and w >= L * g_i for each coordinate.
  for (int q = 0; q < n_wsim; ++q) {
    const auto& sf = fb.simplex_factors[q];
    const int wcol = tau + n_wbox + q;
    lp.c[wcol] = 1.0;
    double wmax = 1.0;
    for (int t = 0; t < tau; ++t) {
      double emax = 0.0;
      for (int i = 0; i < sf.dim; ++i)
        emax = std::max(emax, std::abs(protocol.steps[t].e[sf.offset + i]));
      wmax += sf.L * emax;
    }
    lp.upper[wcol] = wmax;
    for (int i = 0; i < sf.dim; ++i) {
      for (int t = 0; t < tau; ++t)
        lp.A(row, t) = -sf.L * protocol.steps[t].e[sf.offset + i];
      lp.A(row, wcol) = -1.0;
      ++row;
    }
  }
  // sum over productive zeta = 1 as two inequalities.
  for (int t = 0; t < tau; ++t)
    if (protocol.steps[t].productive) lp.A(row, t) = 1.0;
  lp.b[row] = 1.0;
  ++row;
  for (int t = 0; t < tau; ++t)
    if (protocol.steps[t].productive) lp.A(row, t) = -1.0;
  lp.b[row] = -1.0;
  ++row;

  LPResult r = solve_lp(lp, opts);
  if (r.status != LPStatus::Optimal)
    throw SolverError("best_certificate: weight LP reported infeasible");

  BestCertificate out;
  out.cert.weights.assign(tau, 0.0);
  double psum = 0.0;
  for (int t = 0; t < tau; ++t) {
    out.cert.weights[t] = std::max(0.0, r.x[t]);
    if (protocol.steps[t].productive) psum += out.cert.weights[t];
  }
  if (psum <= 0.0) throw SolverError("best_certificate: degenerate weight normalization");
  for (int t = 0; t < tau; ++t)
    if (protocol.steps[t].productive) out.cert.weights[t] /= psum;
  out.eps = eps_cert(out.cert, protocol, B);
  return out;
}

Certificate step_weight_certificate(const ExecutionProtocol& protocol,
                                    const Vector& stepsizes) {
  if (stepsizes.size() != protocol.steps.size())
    throw DimensionError("step_weight_certificate: stepsizes/steps size mismatch");
  double psum = 0.0;
  for (size_t t = 0; t < stepsizes.size(); ++t) {
    if (!(stepsizes[t] > 0.0)) throw Error("step_weight_certificate: stepsizes must be > 0");
    if (protocol.steps[t].productive) psum += stepsizes[t];
  }
  if (psum <= 0.0) throw Error("step_weight_certificate: all steps are non-productive");
  Certificate cert;
  cert.weights.resize(stepsizes.size());
  for (size_t t = 0; t < stepsizes.size(); ++t) cert.weights[t] = stepsizes[t] / psum;
  return cert;
}

void save_protocol(const ExecutionProtocol& protocol, const Certificate& cert,
                   const std::string& mode, const std::string& domain_json,
                   const std::string& path) {
  json j;
  j["version"] = 1;
  j["mode"] = mode;
  j["domain"] = json::parse(domain_json);
  json steps = json::array();
  for (const ProtocolStep& s : protocol.steps) {
    json js{{"z", s.z}, {"e", s.e}, {"productive", s.productive}};
    if (s.has_fvalue) js["f"] = s.fvalue;
    if (!s.payload_x1.empty()) js["x1"] = s.payload_x1;
    if (!s.payload_y1.empty()) js["y1"] = s.payload_y1;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["certificate"] = cert.weights;

  std::ofstream out(path);
  if (!out) throw Error("save_protocol: cannot open '" + path + "' for writing");
  out << j.dump(1) << "\n";
}

LoadedProtocol load_protocol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_protocol: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("load_protocol: '" + path + "': " + e.what());
  }
  LoadedProtocol out;
  if (!j.contains("mode") || !j.contains("steps") || !j.contains("certificate"))
    throw ParseError("load_protocol: missing field 'mode', 'steps' or 'certificate'");
  out.mode = j["mode"].get<std::string>();
  out.domain_json = j.contains("domain") ? j["domain"].dump() : "{}";
  for (const auto& js : j["steps"]) {
    ProtocolStep s;
    if (!js.contains("z") || !js.contains("e") || !js.contains("productive"))
      throw ParseError("load_protocol: step missing field 'z', 'e' or 'productive'");
    s.z = js["z"].get<Vector>();
    s.e = js["e"].get<Vector>();
    s.productive = js["productive"].get<bool>();
    if (js.contains("f")) {
      s.fvalue = js["f"].get<double>();
      s.has_fvalue = true;
    }
    if (js.contains("x1")) s.payload_x1 = js["x1"].get<Vector>();
    if (js.contains("y1")) s.payload_y1 = js["y1"].get<Vector>();
    out.protocol.steps.push_back(std::move(s));
  }
  out.cert.weights = j["certificate"].get<Vector>();
  return out;
}

}  // namespace certdecomp
