#include "matnum/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

namespace matnum {

Json to_json(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return v.convert_to<long long>();
  return v.str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw InputError("expected an integer (number or decimal string)");
}

Json to_json(const VecZ& v) {
  Json arr = Json::array();
  for (const Int& x : v) arr.push_back(to_json(x));
  return arr;
}

VecZ vecz_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer vector (JSON array)");
  VecZ v;
  for (const Json& x : j) v.push_back(int_from_json(x));
  return v;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < m.dim(); ++jj) row.push_back(to_json(m.at(i, jj)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix literal must be an array of rows");
  std::vector<VecZ> rows;
  for (const Json& row : j) rows.push_back(vecz_from_json(row));
  return IntMatrix::from_rows(rows);
}

Json to_json(const ScaledVector& v) {
  return Json{{"num", to_json(v.num)}, {"denominator_exp", v.k}};
}

ScaledVector scaled_from_json(const Json& j) {
  ScaledVector v;
  v.num = vecz_from_json(j.at("num"));
  v.k = j.at("denominator_exp").get<int>();
  return v;
}

Json digitset_to_json(const DigitSet& ds, const Json& provenance) {
  Json j;
  j["format"] = "matnum-digitset";
  j["version"] = 1;
  j["frame"] = digit_frame_name(ds.frame);
  j["dim"] = ds.dim;
  j["zero_index"] = ds.zero_index;
  Json digits = Json::array();
  for (const VecZ& d : ds.digits) digits.push_back(to_json(d));
  j["digits"] = digits;
  if (!provenance.is_null()) j["provenance"] = provenance;
  return j;
}

DigitSet digitset_from_json(const Json& j) {
  DigitSet ds;
  ds.dim = j.at("dim").get<int>();
  std::string frame = j.value("frame", "M");
  if (frame == "M") {
    ds.frame = DigitFrame::MCoordinates;
  } else if (frame == "lattice-preimage") {
    ds.frame = DigitFrame::LatticePreimage;
  } else {
    ds.frame = DigitFrame::JordanInteger;
  }
  for (const Json& d : j.at("digits")) ds.digits.push_back(vecz_from_json(d));
  ds.zero_index = j.value("zero_index", 0);
  if (ds.zero_index < 0 || ds.zero_index >= static_cast<int>(ds.digits.size()) ||
      !is_zero_vec(ds.digits[ds.zero_index])) {
    throw InputError("digit set file: zero_index does not point at the zero digit");
  }
  return ds;
}

namespace {

Json matrix_to_json_doubles(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json_doubles(const Json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int jj = 0; jj < cols; ++jj) m(i, jj) = j[i][jj].get<double>();
  return m;
}

const char* kind_string(BlockKind k) { return block_kind_name(k); }

BlockKind kind_from_string(const std::string& s) {
  if (s == "expanding") return BlockKind::Expanding;
  if (s == "unimodular-complex") return BlockKind::UnimodularComplex;
  if (s == "unimodular-real") return BlockKind::UnimodularReal;
  if (s == "contracting") return BlockKind::Contracting;
  throw InputError("unknown block kind: " + s);
}

}  // namespace

Json plan_to_json(const JordanPlan& plan) {
  Json j;
  j["format"] = "matnum-jordanplan";
  j["version"] = 1;
  Json blocks = Json::array();
  for (const BlockDescriptor& b : plan.blocks) {
    blocks.push_back(Json{{"kind", kind_string(b.kind)},
                          {"size", b.size},
                          {"lambda", Json::array({b.lambda.real(), b.lambda.imag()})},
                          {"is_complex", b.is_complex},
                          {"offset", b.offset}});
  }
  j["blocks"] = blocks;
  j["P"] = matrix_to_json_doubles(plan.P);
  j["alpha"] = plan.alpha;
  j["residual"] = plan.residual;
  j["tol"] = plan.tol;
  j["rounding_bound"] = plan.rounding_bound;
  j["sampled_max_deviation"] = plan.sampled_max_deviation;
  j["closeness_certified"] = plan.closeness_certified;
  return j;
}

JordanPlan plan_from_json(const Json& j) {
  if (j.value("format", "") != "matnum-jordanplan") {
    throw InputError("not a jordan plan document");
  }
  JordanPlan plan;
  for (const Json& b : j.at("blocks")) {
    BlockDescriptor d;
    d.kind = kind_from_string(b.at("kind").get<std::string>());
    d.size = b.at("size").get<int>();
    d.lambda = {b.at("lambda")[0].get<double>(), b.at("lambda")[1].get<double>()};
    d.is_complex = b.at("is_complex").get<bool>();
    d.offset = b.at("offset").get<int>();
    plan.blocks.push_back(d);
  }
  plan.P = matrix_from_json_doubles(j.at("P"));
  plan.dim = static_cast<int>(plan.P.rows());
  plan.Pinv = plan.P.inverse();
  plan.alpha = j.at("alpha").get<double>();
  plan.residual = j.at("residual").get<double>();
  plan.tol = j.value("tol", 0.0);
  plan.rounding_bound = j.value("rounding_bound", 0.0);
  plan.sampled_max_deviation = j.value("sampled_max_deviation", 0.0);
  plan.closeness_certified = j.value("closeness_certified", false);
  // J reassembled from the block descriptors
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(plan.dim, plan.dim);
  for (const BlockDescriptor& b : plan.blocks) {
    Eigen::MatrixXd sub = block_jordan_matrix(b);
    jm.block(b.offset, b.offset, b.size, b.size) = sub;
  }
  plan.J = jm;
  return plan;
}

Json representation_to_json(const IntMatrix& m, const Representation& rep,
                            const DigitSet& alphabet) {
  Json j;
  j["matrix"] = to_json(m);
  Json digits = Json::array();
  for (const VecZ& d : alphabet.digits) digits.push_back(to_json(d));
  j["alphabet"] = digits;
  Json terms = Json::array();
  for (const auto& [k, idx] : rep.terms) {
    terms.push_back(Json::array({k, to_json(alphabet.digits[idx])}));
  }
  j["terms"] = terms;
  return j;
}

RepresentationFile representation_from_json(const Json& j) {
  RepresentationFile f;
  f.matrix = matrix_from_json(j.at("matrix"));
  f.alphabet.dim = f.matrix.dim();
  f.alphabet.frame = DigitFrame::MCoordinates;
  for (const Json& d : j.at("alphabet")) f.alphabet.digits.push_back(vecz_from_json(d));
  f.alphabet.zero_index = -1;
  for (std::size_t i = 0; i < f.alphabet.digits.size(); ++i) {
    if (is_zero_vec(f.alphabet.digits[i])) {
      f.alphabet.zero_index = static_cast<int>(i);
      break;
    }
  }
  if (f.alphabet.zero_index < 0) throw InputError("representation file: alphabet lacks the zero digit");
  DigitIndex index(f.alphabet);
  f.rep.alphabet_id = f.alphabet.id();
  for (const Json& t : j.at("terms")) {
    int k = t.at(0).get<int>();
    VecZ d = vecz_from_json(t.at(1));
    int idx = index.find(d);
    if (idx < 0) throw InputError("representation file: term digit not in the alphabet");
    if (f.rep.terms.count(k)) throw InputError("representation file: duplicate exponent");
    f.rep.terms[k] = idx;
  }
  if (f.rep.terms.empty()) throw InputError("representation file: no terms");
  return f;
}

Json verdict_to_json(const EqualityVerdict& v) {
  Json j;
  j["delta"] = to_json(v.delta);
  if (v.equal()) {
    j["verdict"] = "equal";
    j["witness"] = Json{{"ell", v.ell}};
  } else {
    j["verdict"] = "proper-subset";
    j["witness"] = Json{{"prime", to_json(v.bad_prime)},
                        {"matrix_power_dim_mod_prime", to_json(v.residue_power)}};
  }
  return j;
}

Json system_provenance(const NumerationSystem& sys) {
  Json blocks = Json::array();
  for (const BlockPlan& bp : sys.block_plans) {
    Json b;
    b["kind"] = kind_string(bp.block.kind);
    b["size"] = bp.block.size;
    b["lambda"] = Json::array({bp.block.lambda.real(), bp.block.lambda.imag()});
    b["C"] = bp.C;
    if (!bp.pairs.empty()) {
      Json ks = Json::array(), qs = Json::array();
      for (const PairConstants& pc : bp.pairs) {
        ks.push_back(pc.K);
        qs.push_back(pc.q);
      }
      b["K"] = ks;
      b["q"] = qs;
    }
    if (bp.block.kind == BlockKind::Contracting) {
      b["beta"] = bp.beta;
      b["delta_weight"] = bp.delta;
      b["gamma"] = bp.gamma;
      b["E_c"] = bp.e_c;
      b["C_k"] = bp.c_k;
    }
    if (bp.block.kind == BlockKind::Expanding) {
      b["box_radius"] = bp.box_radius;
    }
    blocks.push_back(b);
  }
  Json j;
  j["matrix"] = to_json(sys.M);
  j["C"] = sys.C;
  j["alpha"] = sys.plan.alpha;
  j["residual"] = sys.plan.residual;
  j["rounding_bound"] = sys.plan.rounding_bound;
  j["blocks"] = blocks;
  j["digit_counts"] = Json{{"jordan", sys.d_tilde.size()},
                           {"lattice", sys.lattice_digits.size()},
                           {"alphabet", sys.alphabet.size()}};
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw InputError("cannot move " + tmp + " into place");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

}  // namespace matnum
