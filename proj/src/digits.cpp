#include "matnum/digits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace matnum {

const char* digit_frame_name(DigitFrame f) {
  switch (f) {
    case DigitFrame::MCoordinates: return "M";
    case DigitFrame::LatticePreimage: return "lattice-preimage";
    case DigitFrame::JordanInteger: return "jordan";
  }
  return "?";
}

void canonicalize(DigitSet& ds) {
  std::sort(ds.digits.begin(), ds.digits.end(), lex_less);
  ds.digits.erase(std::unique(ds.digits.begin(), ds.digits.end()), ds.digits.end());
  VecZ zero(ds.dim, Int(0));
  auto it = std::find(ds.digits.begin(), ds.digits.end(), zero);
  if (it != ds.digits.end()) {
    ds.digits.erase(it);
  }
  ds.digits.insert(ds.digits.begin(), zero);
  ds.zero_index = 0;
}

std::string DigitSet::id() const {
  // FNV-1a over the decimal content
  unsigned long long h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix(std::to_string(dim));
  mix(digit_frame_name(frame));
  for (const VecZ& d : digits) mix(to_string(d));
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

DigitIndex::DigitIndex(const DigitSet& ds) {
  map_.reserve(ds.digits.size() * 2);
  for (std::size_t i = 0; i < ds.digits.size(); ++i) {
    map_.emplace(ds.digits[i], static_cast<int>(i));
  }
}

int DigitIndex::find(const VecZ& d) const {
  auto it = map_.find(d);
  return it == map_.end() ? -1 : it->second;
}

DigitSet claim1_digits(long q) {
  if (q < 1) throw InputError("claim1_digits: q must be positive");
  DigitSet ds;
  ds.dim = 2;
  ds.frame = DigitFrame::JordanInteger;
  ds.digits = {vecz({0, 0}), vecz({3 * q, 0}), vecz({0, 3 * q}), vecz({-3 * q, 0}),
               vecz({0, -3 * q})};
  canonicalize(ds);
  return ds;
}

VecZ claim1_select(double z1, double z2, long q) {
  const double threshold = 3.0 * static_cast<double>(q);
  double a1 = std::abs(z1), a2 = std::abs(z2);
  double dominant = std::max(a1, a2);
  if (dominant < threshold) return vecz({0, 0});
  VecZ best;
  if (a1 == dominant) best = z1 >= 0 ? vecz({3 * q, 0}) : vecz({-3 * q, 0});
  if (a2 == dominant) {
    VecZ cand = z2 >= 0 ? vecz({0, 3 * q}) : vecz({0, -3 * q});
    if (best.empty() || lex_less(cand, best)) best = cand;
  }
  return best;
}

Claim2Result claim2_constants(double c1) {
  if (c1 < 0) throw InputError("claim2_constants: c1 must be non-negative");
  Claim2Result r;
  r.q = static_cast<long>(std::ceil(c1 + 1.0));
  r.c2 = 6.0 * static_cast<double>(r.q) + 0.5;
  r.digits = claim1_digits(r.q);
  return r;
}

namespace {

// stacked Cartesian product of per-level digit lists
std::vector<VecZ> stack_product(const std::vector<std::vector<VecZ>>& levels) {
  std::vector<VecZ> out{VecZ{}};
  for (const auto& level : levels) {
    std::vector<VecZ> next;
    next.reserve(out.size() * level.size());
    for (const VecZ& prefix : out) {
      for (const VecZ& d : level) {
        VecZ v = prefix;
        v.insert(v.end(), d.begin(), d.end());
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

BlockPlan unit_complex_block_plan(const BlockDescriptor& block) {
  if (block.kind != BlockKind::UnimodularComplex || block.size % 2 != 0) {
    throw InputError("unit_complex_block_plan: block must be unimodular complex");
  }
  const int ell = block.size / 2;
  BlockPlan bp;
  bp.block = block;
  bp.pairs.resize(ell);
  std::vector<std::vector<VecZ>> levels(ell);
  double c1 = 0.0;
  for (int p = ell - 1; p >= 0; --p) {
    Claim2Result r = claim2_constants(c1);
    bp.pairs[p] = {r.c2, r.q};
    levels[p] = r.digits.digits;
    c1 = r.c2;
  }
  bp.digits.dim = block.size;
  bp.digits.frame = DigitFrame::JordanInteger;
  bp.digits.digits = stack_product(levels);
  canonicalize(bp.digits);
  bp.C = bp.pairs[0].K;
  return bp;
}

DigitSet unit_real_block_digits(int size) {
  DigitSet ds;
  ds.dim = size;
  ds.frame = DigitFrame::JordanInteger;
  std::vector<std::vector<VecZ>> levels(size, {vecz({-1}), vecz({0}), vecz({1})});
  ds.digits = stack_product(levels);
  canonicalize(ds);
  return ds;
}

BlockPlan unit_real_block_plan(const BlockDescriptor& block) {
  if (block.kind != BlockKind::UnimodularReal) {
    throw InputError("unit_real_block_plan: block must be unimodular real");
  }
  BlockPlan bp;
  bp.block = block;
  bp.pairs.resize(block.size);
  // one-dimensional claim-2 analogue: c2 = 2q + 1/2 with q >= c1 + 1
  double c1 = 0.0;
  for (int p = block.size - 1; p >= 0; --p) {
    long q = static_cast<long>(std::ceil(c1 + 1.0));
    double c2 = 2.0 * static_cast<double>(q) + 0.5;
    bp.pairs[p] = {c2, q};
    c1 = c2;
  }
  bp.digits = unit_real_block_digits(block.size);
  bp.C = bp.pairs[0].K;
  return bp;
}

BlockPlan contract_block_plan(const BlockDescriptor& block) {
  if (block.kind != BlockKind::Contracting) {
    throw InputError("contract_block_plan: block must be contracting");
  }
  BlockPlan bp;
  bp.block = block;
  const double mod = block.modulus();
  bp.beta = (1.0 + mod) / 2.0;
  bp.delta = bp.beta - mod;  // = (1 - |lambda|)/2
  const int len = block.chain_length();
  const double pair_eps = block.is_complex ? std::sqrt(2.0) / 3.0 : 1.0 / 3.0;
  bp.e_c = pair_eps * std::pow(bp.delta, -(len - 1));
  bp.gamma = (0.5 + bp.e_c) / (1.0 - bp.beta);
  // ||x||_inf <= ||x||_c because the weights delta^{-j} are >= 1
  bp.c_k = bp.gamma;
  bp.digits.dim = block.size;
  bp.digits.frame = DigitFrame::JordanInteger;
  bp.digits.digits = {VecZ(block.size, Int(0))};
  bp.digits.zero_index = 0;
  bp.C = bp.c_k;
  return bp;
}

DigitSet expand_block_digits(const BlockDescriptor& block) {
  BlockPlan bp = expand_block_plan(block);
  return bp.digits;
}

BlockPlan expand_block_plan(const BlockDescriptor& block) {
  if (block.kind != BlockKind::Expanding) {
    throw InputError("expand_block_plan: block must be expanding");
  }
  BlockPlan bp;
  bp.block = block;
  const double e_inf = 1.0 / 3.0;
  double bound = 2.0 * block.modulus() + 2.0 + e_inf;
  // ||Jx||_inf <= (2|lambda|+1) ||x||_inf is claimed by the construction;
  // check the actual row sums and widen the box if they say otherwise.
  Eigen::MatrixXd j = block_jordan_matrix(block);
  double rowsum = j.cwiseAbs().rowwise().sum().maxCoeff();
  if (rowsum > 2.0 * block.modulus() + 1.0) {
    bound = rowsum + 1.0 + e_inf;
  }
  bp.box_radius = static_cast<long>(std::floor(bound));
  bp.digits.dim = block.size;
  bp.digits.frame = DigitFrame::JordanInteger;
  std::vector<VecZ> level;
  for (long v = -bp.box_radius; v <= bp.box_radius; ++v) level.push_back(vecz({v}));
  bp.digits.digits = stack_product(std::vector<std::vector<VecZ>>(block.size, level));
  canonicalize(bp.digits);
  bp.C = 1.0;
  return bp;
}

BlockPlan make_block_plan(const BlockDescriptor& block) {
  switch (block.kind) {
    case BlockKind::Expanding: return expand_block_plan(block);
    case BlockKind::UnimodularComplex: return unit_complex_block_plan(block);
    case BlockKind::UnimodularReal: return unit_real_block_plan(block);
    case BlockKind::Contracting: return contract_block_plan(block);
  }
  throw InputError("make_block_plan: unknown block kind");
}

Eigen::MatrixXd block_jordan_matrix(const BlockDescriptor& b) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(b.size, b.size);
  if (!b.is_complex) {
    for (int i = 0; i < b.size; ++i) {
      j(i, i) = b.lambda.real();
      if (i + 1 < b.size) j(i, i + 1) = 1.0;
    }
  } else {
    double a = b.lambda.real(), bb = b.lambda.imag();
    for (int p = 0; p < b.size / 2; ++p) {
      int o = 2 * p;
      j(o, o) = a;
      j(o, o + 1) = -bb;
      j(o + 1, o) = bb;
      j(o + 1, o + 1) = a;
      if (o + 3 < b.size) {
        j(o, o + 2) = 1.0;
        j(o + 1, o + 3) = 1.0;
      }
    }
  }
  return j;
}

double contracting_norm(const BlockPlan& bp, const Eigen::VectorXd& x) {
  const int len = bp.block.chain_length();
  const int cell = bp.block.is_complex ? 2 : 1;
  double best = 0.0;
  double weight = 1.0;
  for (int jpos = 0; jpos < len; ++jpos) {
    double rho = 0.0;
    for (int c = 0; c < cell; ++c) rho += x[jpos * cell + c] * x[jpos * cell + c];
    rho = std::sqrt(rho);
    best = std::max(best, weight * rho);
    weight /= bp.delta;
  }
  return best;
}

double unit_block_level_norm(const Eigen::VectorXd& x, const BlockPlan& bp, int level) {
  const int cell = bp.block.is_complex ? 2 : 1;
  double rho = 0.0;
  for (int c = 0; c < cell; ++c) {
    double v = x[(level - 1) * cell + c];
    rho += v * v;
  }
  return std::sqrt(rho);
}

int unit_block_ind(const BlockPlan& bp, const Eigen::VectorXd& x) {
  int ind = 0;
  for (int level = 1; level <= static_cast<int>(bp.pairs.size()); ++level) {
    if (unit_block_level_norm(x, bp, level) >= bp.pairs[level - 1].K) ind = level;
  }
  return ind;
}

VecZ select_block_digit(const BlockPlan& bp, const Eigen::VectorXd& xblock) {
  Eigen::VectorXd w = block_jordan_matrix(bp.block) * xblock;
  VecZ d(bp.block.size, Int(0));
  switch (bp.block.kind) {
    case BlockKind::Contracting:
      break;
    case BlockKind::Expanding: {
      for (int i = 0; i < bp.block.size; ++i) {
        long v = std::llround(w[i]);
        v = std::max(-bp.box_radius, std::min(bp.box_radius, v));
        d[i] = v;
      }
      break;
    }
    case BlockKind::UnimodularComplex: {
      int ind = unit_block_ind(bp, xblock);
      for (int p = 0; p < bp.block.size / 2; ++p) {
        if (p + 1 < ind) continue;  // below the index: zero digit
        VecZ b = claim1_select(w[2 * p], w[2 * p + 1], bp.pairs[p].q);
        d[2 * p] = b[0];
        d[2 * p + 1] = b[1];
      }
      break;
    }
    case BlockKind::UnimodularReal: {
      int ind = unit_block_ind(bp, xblock);
      for (int i = 0; i < bp.block.size; ++i) {
        if (i + 1 < ind) continue;
        if (w[i] >= 1.0) {
          d[i] = 1;
        } else if (w[i] <= -1.0) {
          d[i] = -1;
        }
      }
      break;
    }
  }
  return d;
}

std::pair<DigitSet, double> compose_alphabet(const std::vector<BlockPlan>& plans,
                                             const JordanPlan& plan) {
  std::vector<std::vector<VecZ>> levels;
  double c = 0.0;
  int dim = 0;
  for (const BlockPlan& bp : plans) {
    levels.push_back(bp.digits.digits);
    c = std::max(c, bp.C);
    dim += bp.block.size;
  }
  if (dim != plan.dim) throw InputError("compose_alphabet: plans do not cover the blocks");
  DigitSet ds;
  ds.dim = plan.dim;
  ds.frame = DigitFrame::JordanInteger;
  ds.digits = stack_product(levels);
  canonicalize(ds);
  return {ds, c};
}

VecZ round_digit_to_lattice(const JordanPlan& plan, const VecZ& d_tilde) {
  Eigen::VectorXd target = to_eigen(d_tilde);
  VecZ c = nearest_lattice_preimage(plan, target);
  double dev = (lattice_point(plan, c) - target).cwiseAbs().maxCoeff();
  if (dev < 1.0 / 3.0) return c;
  // local search around the rounded preimage
  std::function<bool(int, VecZ&)> walk = [&](int pos, VecZ& cur) -> bool {
    if (pos == plan.dim) {
      return (lattice_point(plan, cur) - target).cwiseAbs().maxCoeff() < 1.0 / 3.0;
    }
    for (int off : {0, 1, -1}) {
      cur[pos] += off;
      if (walk(pos + 1, cur)) return true;
      cur[pos] -= off;
    }
    return false;
  };
  VecZ cur = c;
  if (walk(0, cur)) return cur;
  throw CloseLatticeViolation("no lattice point within 1/3 of digit " + to_string(d_tilde));
}

DigitSet round_to_lattice(const DigitSet& d_tilde, const JordanPlan& plan) {
  if (!plan.closeness_certified) {
    throw CloseLatticeViolation("round_to_lattice requires a certified plan");
  }
  DigitSet out;
  out.dim = d_tilde.dim;
  out.frame = DigitFrame::LatticePreimage;
  for (const VecZ& d : d_tilde.digits) out.digits.push_back(round_digit_to_lattice(plan, d));
  if (out.digits.empty()) return out;
  canonicalize(out);
  return out;
}

// B = { c : ||P c||_inf <= C } enumerated over the integer bounding box,
// with the image P c maintained incrementally.
static std::vector<std::vector<long>> lattice_ball(const JordanPlan& plan, double C) {
  const int n = plan.dim;
  const double tol = 1e-9;
  std::vector<long> bounds(n);
  for (int i = 0; i < n; ++i) {
    double b = 0;
    for (int jj = 0; jj < n; ++jj) b += std::abs(plan.Pinv(i, jj));
    bounds[i] = static_cast<long>(std::floor(b * C + tol));
  }
  std::vector<std::vector<long>> ball;
  std::vector<long> cur(n, 0);
  std::function<void(int, Eigen::VectorXd)> walk = [&](int pos, Eigen::VectorXd partial) {
    if (pos == n) {
      if (partial.cwiseAbs().maxCoeff() <= C + tol) ball.push_back(cur);
      return;
    }
    Eigen::VectorXd base = partial - static_cast<double>(bounds[pos] + 1) * plan.P.col(pos);
    for (long v = -bounds[pos]; v <= bounds[pos]; ++v) {
      base += plan.P.col(pos);
      cur[pos] = v;
      walk(pos + 1, base);
    }
    cur[pos] = 0;
  };
  walk(0, Eigen::VectorXd::Zero(n));
  return ball;
}

DigitSet final_alphabet(const DigitSet& lattice_digits, double C, const JordanPlan& plan) {
  const int n = plan.dim;
  std::vector<std::vector<long>> ball = lattice_ball(plan, C);

  // D + B is collected in a dense bitmap over the enlarged integer box; the
  // row-major sweep emits the sums already in lexicographic order.
  std::vector<long> lo(n, 0), hi(n, 0);
  std::vector<std::vector<long>> digits_l;
  digits_l.reserve(lattice_digits.digits.size());
  for (const VecZ& d : lattice_digits.digits) {
    std::vector<long> dl(n);
    for (int i = 0; i < n; ++i) dl[i] = d[i].convert_to<long>();
    digits_l.push_back(std::move(dl));
  }
  std::vector<long> dmin(n, 0), dmax(n, 0), bmin(n, 0), bmax(n, 0);
  for (const auto& d : digits_l) {
    for (int i = 0; i < n; ++i) {
      dmin[i] = std::min(dmin[i], d[i]);
      dmax[i] = std::max(dmax[i], d[i]);
    }
  }
  for (const auto& b : ball) {
    for (int i = 0; i < n; ++i) {
      bmin[i] = std::min(bmin[i], b[i]);
      bmax[i] = std::max(bmax[i], b[i]);
    }
  }
  for (int i = 0; i < n; ++i) {
    lo[i] = dmin[i] + bmin[i];
    hi[i] = dmax[i] + bmax[i];
  }

  std::vector<std::size_t> stride(n, 1);
  std::size_t cells = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = cells;
    cells *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
    if (cells > (std::size_t{1} << 33)) {
      throw EnumerationCapExceeded("final_alphabet: digit box too large to enumerate");
    }
  }
  std::vector<bool> marked(cells, false);
  auto pack = [&](const std::vector<long>& d, const std::vector<long>& b) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      idx += static_cast<std::size_t>(d[i] + b[i] - lo[i]) * stride[i];
    }
    return idx;
  };
  for (const auto& d : digits_l) {
    for (const auto& b : ball) marked[pack(d, b)] = true;
  }

  DigitSet out;
  out.dim = n;
  out.frame = DigitFrame::MCoordinates;
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (!marked[idx]) continue;
    std::size_t rest = idx;
    VecZ v(n);
    for (int i = 0; i < n; ++i) {
      long off = static_cast<long>(rest / stride[i]);
      rest %= stride[i];
      v[i] = lo[i] + off;
    }
    out.digits.push_back(std::move(v));
  }
  canonicalize(out);
  return out;
}

NumerationSystem synthesize(const IntMatrix& m, const SynthesizeOptions& opts) {
  NumerationSystem sys;
  sys.M = m;
  sys.split = classify(char_poly(m), ClassifyOptions{opts.budget_bits});
  sys.plan = scale_lattice(real_jordan(m, sys.split, opts.jordan_tol), opts.seed);
  for (const BlockDescriptor& b : sys.plan.blocks) {
    sys.block_plans.push_back(make_block_plan(b));
  }
  auto [dt, c] = compose_alphabet(sys.block_plans, sys.plan);
  sys.d_tilde = dt;
  sys.C = c;
  sys.lattice_by_tilde.reserve(dt.digits.size());
  for (const VecZ& d : dt.digits) {
    sys.lattice_by_tilde.push_back(round_digit_to_lattice(sys.plan, d));
  }
  sys.lattice_digits.dim = sys.plan.dim;
  sys.lattice_digits.frame = DigitFrame::LatticePreimage;
  sys.lattice_digits.digits = sys.lattice_by_tilde;
  canonicalize(sys.lattice_digits);
  sys.alphabet = final_alphabet(sys.lattice_digits, sys.C, sys.plan);
  return sys;
}

}  // namespace matnum
