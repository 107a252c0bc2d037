#include "certdecomp/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "certdecomp/rng.hpp"
#include "json.hpp"

namespace certdecomp {

using nlohmann::json;

int BlockLPInstance::n1() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.c1.size());
  return n;
}

int BlockLPInstance::m1() const {
  int m = 0;
  for (const auto& b : blocks) m += static_cast<int>(b.b1.size());
  return m;
}

int BlockLPInstance::block_col_offset(int k) const {
  int off = 0;
  for (int i = 0; i < k; ++i) off += static_cast<int>(blocks[i].c1.size());
  return off;
}

int BlockLPInstance::block_row_offset(int k) const {
  int off = 0;
  for (int i = 0; i < k; ++i) off += static_cast<int>(blocks[i].b1.size());
  return off;
}

Vector BlockLPInstance::full_c1() const {
  Vector c;
  for (const auto& b : blocks) c.insert(c.end(), b.c1.begin(), b.c1.end());
  return c;
}

Vector BlockLPInstance::full_b1() const {
  Vector b;
  for (const auto& blk : blocks) b.insert(b.end(), blk.b1.begin(), blk.b1.end());
  return b;
}

std::vector<std::string> validate(const BlockLPInstance& inst) {
  std::vector<std::string> out;
  const int n2 = inst.n2();
  const int m2 = inst.m2();

  if (!(inst.R > 0.0) || !std::isfinite(inst.R))
    out.push_back("R must be positive and finite, got " + std::to_string(inst.R));

  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& b = inst.blocks[k];
    const int n1k = static_cast<int>(b.c1.size());
    const int m1k = static_cast<int>(b.b1.size());
    const std::string tag = "block " + std::to_string(k) + ": ";
    if (b.A11.rows != m1k || b.A11.cols != n1k)
      out.push_back(tag + "A11 is " + std::to_string(b.A11.rows) + "x" +
                    std::to_string(b.A11.cols) + ", expected " + std::to_string(m1k) + "x" +
                    std::to_string(n1k));
    if (b.A12.rows != m1k || b.A12.cols != n2)
      out.push_back(tag + "A12 is " + std::to_string(b.A12.rows) + "x" +
                    std::to_string(b.A12.cols) + ", expected " + std::to_string(m1k) + "x" +
                    std::to_string(n2));
    if (b.A21.rows != m2 || b.A21.cols != n1k)
      out.push_back(tag + "A21 is " + std::to_string(b.A21.rows) + "x" +
                    std::to_string(b.A21.cols) + ", expected " + std::to_string(m2) + "x" +
                    std::to_string(n1k));
    if (!all_finite(b.A11) || !all_finite(b.A12) || !all_finite(b.A21) ||
        !all_finite(b.c1) || !all_finite(b.b1))
      out.push_back(tag + "non-finite entry");
  }

  if (inst.A22.rows != m2 || inst.A22.cols != n2)
    out.push_back("A22 is " + std::to_string(inst.A22.rows) + "x" +
                  std::to_string(inst.A22.cols) + ", expected " + std::to_string(m2) + "x" +
                  std::to_string(n2));
  if (!all_finite(inst.A22) || !all_finite(inst.c2) || !all_finite(inst.b2))
    out.push_back("non-finite entry in linking data");

  if (!inst.dual_box.empty()) {
    if (static_cast<int>(inst.dual_box.size()) != inst.num_blocks())
      out.push_back("dual_box has " + std::to_string(inst.dual_box.size()) +
                    " entries, expected one per block (" + std::to_string(inst.num_blocks()) +
                    ")");
    for (double r : inst.dual_box)
      if (!(r > 0.0) || !std::isfinite(r)) out.push_back("dual_box entries must be positive");
  }
  return out;
}

StandardLP assemble_full(const BlockLPInstance& inst) {
  const auto violations = validate(inst);
  if (!violations.empty()) {
    std::string msg = "assemble_full: invalid instance:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(msg);
  }

  const int n1 = inst.n1(), m1 = inst.m1(), n2 = inst.n2(), m2 = inst.m2();
  StandardLP lp;
  lp.A = Matrix(m1 + m2, n1 + n2);
  lp.b.resize(m1 + m2);
  lp.c.resize(n1 + n2);
  lp.lower.assign(n1 + n2, -inst.R);
  lp.upper.assign(n1 + n2, inst.R);

  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& blk = inst.blocks[k];
    const int ro = inst.block_row_offset(k);
    const int co = inst.block_col_offset(k);
    const int m1k = blk.A11.rows, n1k = blk.A11.cols;
    for (int i = 0; i < m1k; ++i) {
      for (int j = 0; j < n1k; ++j) lp.A(ro + i, co + j) = blk.A11(i, j);
      for (int j = 0; j < n2; ++j) lp.A(ro + i, n1 + j) = blk.A12(i, j);
      lp.b[ro + i] = blk.b1[i];
    }
    for (int i = 0; i < m2; ++i)
      for (int j = 0; j < n1k; ++j) lp.A(m1 + i, co + j) = blk.A21(i, j);
    for (int j = 0; j < n1k; ++j) lp.c[co + j] = blk.c1[j];
  }
  for (int i = 0; i < m2; ++i) {
    for (int j = 0; j < n2; ++j) lp.A(m1 + i, n1 + j) = inst.A22(i, j);
    lp.b[m1 + i] = inst.b2[i];
  }
  for (int j = 0; j < n2; ++j) lp.c[n1 + j] = inst.c2[j];
  return lp;
}

namespace {

Matrix sample_matrix(Rng& rng, int rows, int cols, double density) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng.uniform() <= density) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

Vector sample_vector(Rng& rng, int n, double lo, double hi) {
  Vector v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace

BlockLPInstance generate(const GenerateConfig& cfg) {
  if (cfg.K < 1) throw Error("generate: K must be >= 1");
  if (cfg.n1k < 0 || cfg.m1k < 0 || cfg.n2 < 0 || cfg.m2 < 0)
    throw Error("generate: dimensions must be nonnegative");
  if (!(cfg.R > 0.0)) throw Error("generate: R must be positive");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0)) throw Error("generate: density must be in (0,1]");
  if (cfg.force_infeasible_x2 && (cfg.m1k < 2 || cfg.n2 < 1 || cfg.n1k < 1))
    throw Error("generate: --force-infeasible-x2 needs m1k >= 2, n1k >= 1 and n2 >= 1");

  Rng rng(cfg.seed);
  BlockLPInstance inst;
  inst.R = cfg.R;
  inst.blocks.resize(cfg.K);
  for (InstanceBlock& b : inst.blocks) {
    b.A11 = sample_matrix(rng, cfg.m1k, cfg.n1k, cfg.density);
    b.A12 = sample_matrix(rng, cfg.m1k, cfg.n2, cfg.density);
    b.A21 = sample_matrix(rng, cfg.m2, cfg.n1k, cfg.density);
    b.c1 = sample_vector(rng, cfg.n1k, -1.0, 1.0);
    b.b1.assign(cfg.m1k, 0.0);
  }
  inst.A22 = sample_matrix(rng, cfg.m2, cfg.n2, cfg.density);
  inst.c2 = sample_vector(rng, cfg.n2, -1.0, 1.0);
  inst.b2.assign(cfg.m2, 0.0);

  const int n1 = cfg.K * cfg.n1k;
  Vector x0 = sample_vector(rng, n1 + cfg.n2, -cfg.R / 2.0, cfg.R / 2.0);
  const Vector x0_1 = vec_slice(x0, 0, n1);
  const Vector x0_2 = vec_slice(x0, n1, cfg.n2);

  if (cfg.force_infeasible_x2) {
    // Rows 0 and 1 of block 0 become  x1_0 + x2_0 <= u  and  -x1_0 + x2_0 <= v
    // with u + v = 2*x0_2[0] + 1: any x2 with x2_0 > x0_2[0] + 0.5 leaves the
    // inner problem infeasible while x0 keeps slack 0.5 on both rows.
    InstanceBlock& b = inst.blocks[0];
    for (int j = 0; j < cfg.n1k; ++j) b.A11(0, j) = b.A11(1, j) = 0.0;
    for (int j = 0; j < cfg.n2; ++j) b.A12(0, j) = b.A12(1, j) = 0.0;
    b.A11(0, 0) = 1.0;
    b.A11(1, 0) = -1.0;
    b.A12(0, 0) = 1.0;
    b.A12(1, 0) = 1.0;
  }

  Vector slack = sample_vector(rng, cfg.K * cfg.m1k + cfg.m2, 0.1, 1.0);
  if (cfg.force_infeasible_x2) slack[0] = slack[1] = 0.5;

  for (int k = 0; k < cfg.K; ++k) {
    InstanceBlock& b = inst.blocks[k];
    const Vector x1k = vec_slice(x0_1, inst.block_col_offset(k), cfg.n1k);
    Vector r = matvec(b.A11, x1k);
    vec_axpy(r, 1.0, matvec(b.A12, x0_2));
    for (int i = 0; i < cfg.m1k; ++i) b.b1[i] = r[i] + slack[k * cfg.m1k + i];
  }
  if (cfg.m2 > 0) {
    Vector r = apply_A21(inst, x0_1);
    vec_axpy(r, 1.0, matvec(inst.A22, x0_2));
    for (int i = 0; i < cfg.m2; ++i) inst.b2[i] = r[i] + slack[cfg.K * cfg.m1k + i];
  }

  const double rk = 10.0 * (1.0 + norms(inst.full_c1()).l1);
  inst.dual_box.assign(cfg.K, rk);
  return inst;
}

// ---------------------------------------------------------------------------
// File I/O. A single JSON document; numbers round-trip exactly.

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", std::move(rows)}};
}

const json& require_field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + path + key + "'");
  return *it;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError("field '" + path + "' is not a matrix object");
  Matrix m;
  m.rows = require_field(j, "rows", path + ".").get<int>();
  m.cols = require_field(j, "cols", path + ".").get<int>();
  if (m.rows < 0 || m.cols < 0) throw ParseError("field '" + path + "': negative dimension");
  const json& data = require_field(j, "data", path + ".");
  if (static_cast<int>(data.size()) != m.rows)
    throw ParseError("field '" + path + ".data': expected " + std::to_string(m.rows) +
                     " rows, got " + std::to_string(data.size()));
  m.a.reserve(static_cast<size_t>(m.rows) * m.cols);
  for (int i = 0; i < m.rows; ++i) {
    const json& row = data[i];
    if (static_cast<int>(row.size()) != m.cols)
      throw ParseError("field '" + path + ".data[" + std::to_string(i) + "]': expected " +
                       std::to_string(m.cols) + " entries, got " + std::to_string(row.size()));
    for (const auto& v : row) m.a.push_back(v.get<double>());
  }
  return m;
}

Vector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("field '" + path + "' is not an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

}  // namespace

void save_instance(const BlockLPInstance& inst, const std::string& path) {
  json j;
  j["version"] = 1;
  j["R"] = inst.R;
  json blocks = json::array();
  for (const InstanceBlock& b : inst.blocks) {
    blocks.push_back(json{{"A11", matrix_to_json(b.A11)},
                          {"A12", matrix_to_json(b.A12)},
                          {"A21", matrix_to_json(b.A21)},
                          {"c1", b.c1},
                          {"b1", b.b1}});
  }
  j["blocks"] = std::move(blocks);
  j["A22"] = matrix_to_json(inst.A22);
  j["c2"] = inst.c2;
  j["b2"] = inst.b2;
  if (!inst.dual_box.empty()) j["dual_box"] = inst.dual_box;

  std::ofstream out(path);
  if (!out) throw Error("save_instance: cannot open '" + path + "' for writing");
  out << j.dump(1) << "\n";
  if (!out) throw Error("save_instance: write to '" + path + "' failed");
}

BlockLPInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_instance: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("load_instance: '" + path + "': " + e.what());
  }

  const int version = require_field(j, "version", "").get<int>();
  if (version != 1)
    throw ParseError("load_instance: unsupported version " + std::to_string(version));

  BlockLPInstance inst;
  inst.R = require_field(j, "R", "").get<double>();
  const json& blocks = require_field(j, "blocks", "");
  if (!blocks.is_array()) throw ParseError("field 'blocks' is not an array");
  inst.blocks.reserve(blocks.size());
  for (size_t k = 0; k < blocks.size(); ++k) {
    const std::string bp = "blocks[" + std::to_string(k) + "].";
    const json& bj = blocks[k];
    InstanceBlock b;
    b.A11 = matrix_from_json(require_field(bj, "A11", bp), bp + "A11");
    b.A12 = matrix_from_json(require_field(bj, "A12", bp), bp + "A12");
    b.A21 = matrix_from_json(require_field(bj, "A21", bp), bp + "A21");
    b.c1 = vector_from_json(require_field(bj, "c1", bp), bp + "c1");
    b.b1 = vector_from_json(require_field(bj, "b1", bp), bp + "b1");
    inst.blocks.push_back(std::move(b));
  }
  inst.A22 = matrix_from_json(require_field(j, "A22", ""), "A22");
  inst.c2 = vector_from_json(require_field(j, "c2", ""), "c2");
  inst.b2 = vector_from_json(require_field(j, "b2", ""), "b2");
  if (j.contains("dual_box")) inst.dual_box = vector_from_json(j["dual_box"], "dual_box");

  const auto violations = validate(inst);
  if (!violations.empty()) {
    std::string msg = "load_instance: '" + path + "' fails validation:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(msg);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Block-structure products.

Vector apply_A11(const BlockLPInstance& inst, const Vector& x1) {
  if (static_cast<int>(x1.size()) != inst.n1()) throw DimensionError("apply_A11: x1 dim");
  Vector out;
  out.reserve(inst.m1());
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& b = inst.blocks[k];
    Vector r = matvec(b.A11, vec_slice(x1, inst.block_col_offset(k), b.A11.cols));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Vector apply_A11T(const BlockLPInstance& inst, const Vector& y1) {
  if (static_cast<int>(y1.size()) != inst.m1()) throw DimensionError("apply_A11T: y1 dim");
  Vector out;
  out.reserve(inst.n1());
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& b = inst.blocks[k];
    Vector r = transpose_matvec(b.A11, vec_slice(y1, inst.block_row_offset(k), b.A11.rows));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Vector apply_A12(const BlockLPInstance& inst, const Vector& x2) {
  if (static_cast<int>(x2.size()) != inst.n2()) throw DimensionError("apply_A12: x2 dim");
  Vector out;
  out.reserve(inst.m1());
  for (const InstanceBlock& b : inst.blocks) {
    Vector r = matvec(b.A12, x2);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Vector apply_A12T(const BlockLPInstance& inst, const Vector& y1) {
  if (static_cast<int>(y1.size()) != inst.m1()) throw DimensionError("apply_A12T: y1 dim");
  Vector out(inst.n2(), 0.0);
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& b = inst.blocks[k];
    Vector r = transpose_matvec(b.A12, vec_slice(y1, inst.block_row_offset(k), b.A12.rows));
    vec_axpy(out, 1.0, r);
  }
  return out;
}

Vector apply_A21(const BlockLPInstance& inst, const Vector& x1) {
  if (static_cast<int>(x1.size()) != inst.n1()) throw DimensionError("apply_A21: x1 dim");
  Vector out(inst.m2(), 0.0);
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const InstanceBlock& b = inst.blocks[k];
    Vector r = matvec(b.A21, vec_slice(x1, inst.block_col_offset(k), b.A21.cols));
    vec_axpy(out, 1.0, r);
  }
  return out;
}

Vector apply_A21T(const BlockLPInstance& inst, const Vector& y2) {
  if (static_cast<int>(y2.size()) != inst.m2()) throw DimensionError("apply_A21T: y2 dim");
  Vector out;
  out.reserve(inst.n1());
  for (const InstanceBlock& b : inst.blocks) {
    Vector r = transpose_matvec(b.A21, y2);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Vector apply_A22(const BlockLPInstance& inst, const Vector& x2) {
  return matvec(inst.A22, x2);
}

Vector apply_A22T(const BlockLPInstance& inst, const Vector& y2) {
  return transpose_matvec(inst.A22, y2);
}

Vector y1_upper_bounds(const BlockLPInstance& inst) {
  const double def = 10.0 * (1.0 + norms(inst.full_c1()).l1);
  Vector out;
  out.reserve(inst.m1());
  for (int k = 0; k < inst.num_blocks(); ++k) {
    const double rk = inst.dual_box.empty() ? def : inst.dual_box[k];
    out.insert(out.end(), inst.blocks[k].b1.size(), rk);
  }
  return out;
}

}  // namespace certdecomp
