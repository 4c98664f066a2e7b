#include "matnum/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace matnum {

Representation canonical_zero(const DigitSet& alphabet) {
  Representation rep;
  rep.terms[0] = alphabet.zero_index;
  rep.alphabet_id = alphabet.id();
  return rep;
}

bool is_zero_representation(const Representation& rep, const DigitSet& alphabet) {
  return rep.terms.size() == 1 && rep.terms.count(0) == 1 &&
         rep.terms.at(0) == alphabet.zero_index;
}

ScaledVector decode(const IntMatrix& m, const Representation& rep, const DigitSet& alphabet) {
  if (rep.terms.empty()) throw InputError("decode: empty representation");
  if (!rep.alphabet_id.empty() && rep.alphabet_id != alphabet.id()) {
    throw AlphabetMismatch("decode: representation references a different digit set");
  }
  int min_k = rep.terms.begin()->first;
  int n = std::max(0, -min_k);
  VecZ acc(m.dim(), Int(0));
  for (const auto& [k, idx] : rep.terms) {
    if (idx < 0 || idx >= static_cast<int>(alphabet.digits.size())) {
      throw AlphabetMismatch("decode: digit index out of range");
    }
    VecZ term = m.pow(static_cast<unsigned long>(k + n)).apply(alphabet.digits[idx]);
    acc = add(acc, term);
  }
  ScaledVector out = sv_from(std::move(acc));
  for (int i = 0; i < n; ++i) out = apply_inverse(m, out);
  return out;
}

LiftResult lift_fractional(const IntMatrix& m, const ScaledVector& v) {
  LiftResult res;
  if (v.k == 0) {
    res.representable = true;
    res.z = v.num;
    res.shift = 0;
    return res;
  }
  Int delta = m.det();
  if (delta == 0) throw SingularMatrixError("lift_fractional: singular matrix");
  Int modulus = 1;
  for (int i = 0; i < v.k; ++i) modulus *= delta;
  if (modulus < 0) modulus = -modulus;

  auto step = [&](const VecZ& x) {
    VecZ y = m.apply(x);
    for (Int& c : y) {
      c %= modulus;
      if (c < 0) c += modulus;
    }
    return y;
  };
  VecZ start(v.num);
  for (Int& c : start) {
    c %= modulus;
    if (c < 0) c += modulus;
  }

  // Floyd cycle detection on the residue sequence, scanning for zero.
  VecZ tortoise = start, hare = start;
  int mu = 0, lambda = 0;
  do {
    tortoise = step(tortoise);
    hare = step(step(hare));
  } while (tortoise != hare);
  // find cycle entry
  tortoise = start;
  while (tortoise != hare) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }
  lambda = 1;
  hare = step(tortoise);
  while (hare != tortoise) {
    hare = step(hare);
    ++lambda;
  }

  VecZ cur = start;
  for (int n = 0; n < mu + lambda; ++n) {
    if (is_zero_vec(cur)) {
      VecZ z = m.pow(static_cast<unsigned long>(n)).apply(v.num);
      for (Int& c : z) {
        Int d = 1;
        for (int i = 0; i < v.k; ++i) d *= delta;
        c /= d;
      }
      res.representable = true;
      res.z = std::move(z);
      res.shift = n;
      return res;
    }
    cur = step(cur);
  }
  res.representable = false;
  NotRepresentableWitness w;
  w.prefix_length = mu;
  w.cycle_length = lambda;
  w.entry_state = tortoise;
  w.modulus = modulus;
  res.witness = w;
  return res;
}

Representation shift(const Representation& rep, int t, const DigitSet& alphabet) {
  if (is_zero_representation(rep, alphabet)) return rep;
  Representation out;
  out.alphabet_id = rep.alphabet_id;
  for (const auto& [k, idx] : rep.terms) out.terms[k + t] = idx;
  return out;
}

long default_iteration_cap(const NumerationSystem& sys, const ScaledVector& z) {
  Int maxabs = 0;
  for (const Int& c : z.num) maxabs = std::max(maxabs, Int(abs(c)));
  long bits = 1;
  while (maxabs > 0) {
    ++bits;
    maxabs >>= 1;
  }
  return 1000L * sys.plan.dim + 10L * bits;
}

namespace {

EncodeResult encode_constructive(const NumerationSystem& sys, const VecZ& z,
                                 const EncodeOptions& opts) {
  const IntMatrix& m = sys.M;
  const JordanPlan& plan = sys.plan;
  const Int delta = m.det();
  EncodeResult res;
  res.trace.strategy = Strategy::Constructive;

  DigitIndex dtilde_index(sys.d_tilde);
  DigitIndex alphabet_index(sys.alphabet);

  const long cap =
      opts.iteration_cap > 0 ? opts.iteration_cap : default_iteration_cap(sys, sv_from(z));

  // (1) smallest j with the expanding coordinates of J^{-j} P z inside the
  // unit box; decided in floating point with a safety margin.
  std::vector<std::pair<const BlockDescriptor*, Eigen::MatrixXd>> expanding_inverses;
  for (const BlockDescriptor& b : plan.blocks) {
    if (b.kind == BlockKind::Expanding) {
      expanding_inverses.emplace_back(&b, block_jordan_matrix(b).inverse());
    }
  }
  int j = 0;
  if (!expanding_inverses.empty()) {
    Eigen::VectorXd x = plan.P * to_eigen(z);
    auto expanding_norm = [&]() {
      double v = 0;
      for (auto& [b, inv] : expanding_inverses) {
        v = std::max(v, x.segment(b->offset, b->size).cwiseAbs().maxCoeff());
      }
      return v;
    };
    while (expanding_norm() >= 1.0 - 1e-6) {
      for (auto& [b, inv] : expanding_inverses) {
        x.segment(b->offset, b->size) = inv * x.segment(b->offset, b->size);
      }
      if (++j > cap) throw EncodeBudgetExceeded("expanding pre-shift exceeded the iteration cap");
    }
  }
  res.trace.j = j;

  // (2) exact dynamics c -> M c - a with floating digit decisions
  ScaledVector c = sv_from(z);
  for (int i = 0; i < j; ++i) c = apply_inverse(m, c);

  std::vector<VecZ> emitted;  // lattice digits a_1 .. a_N
  const double stop_tol = 1e-9;
  long n = 0;
  for (;; ++n) {
    if (n >= j && c.k == 0) {
      Eigen::VectorXd pc = plan.P * to_eigen(c.num);
      if (pc.cwiseAbs().maxCoeff() <= sys.C + stop_tol) break;
    }
    if (n >= cap) throw EncodeBudgetExceeded("encode iteration cap reached");

    std::vector<double> xd = sv_to_double(c, delta);
    Eigen::VectorXd x = plan.P * Eigen::Map<Eigen::VectorXd>(xd.data(), plan.dim);

    VecZ d_tilde(plan.dim, Int(0));
    EncodeStep step;
    for (std::size_t bi = 0; bi < plan.blocks.size(); ++bi) {
      const BlockDescriptor& b = plan.blocks[bi];
      const BlockPlan& bp = sys.block_plans[bi];
      Eigen::VectorXd xb = x.segment(b.offset, b.size);
      VecZ db = select_block_digit(bp, xb);
      for (int i = 0; i < b.size; ++i) d_tilde[b.offset + i] = db[i];
      if (b.kind == BlockKind::UnimodularComplex || b.kind == BlockKind::UnimodularReal) {
        UnimodularTraceEntry entry;
        entry.ind = unit_block_ind(bp, xb);
        entry.level_norm = entry.ind > 0 ? unit_block_level_norm(xb, bp, entry.ind) : 0.0;
        step.unimodular.push_back(entry);
      }
    }
    int idx = dtilde_index.find(d_tilde);
    if (idx < 0) throw AlphabetMismatch("selected digit is outside the synthesized digit set");
    step.dtilde_index = idx;
    res.trace.steps.push_back(step);

    const VecZ& a = sys.lattice_by_tilde[idx];
    emitted.push_back(a);
    c = sv_sub_int(sv_apply(m, c), a, delta);
  }

  res.trace.iterations = static_cast<int>(n);
  res.trace.remainder = c.num;

  // (3) fold the remainder into the last digit and shift exponents by j
  Representation rep;
  rep.alphabet_id = sys.alphabet.id();
  if (emitted.empty()) {
    int idx = alphabet_index.find(c.num);
    if (idx < 0) throw AlphabetMismatch("remainder is not a digit of the final alphabet");
    rep.terms[j] = idx;
  } else {
    emitted.back() = add(emitted.back(), c.num);
    for (std::size_t i = 0; i < emitted.size(); ++i) {
      if (is_zero_vec(emitted[i])) continue;
      int idx = alphabet_index.find(emitted[i]);
      if (idx < 0) throw AlphabetMismatch("emitted digit is not in the final alphabet");
      rep.terms[j - static_cast<int>(i) - 1] = idx;
    }
  }
  if (rep.terms.empty()) rep = canonical_zero(sys.alphabet);
  res.outcome = EncodeOutcome::Found;
  res.rep = std::move(rep);
  return res;
}

struct MemoKey {
  int level = 0;
  int terms_left = 0;
  VecZ w;
  bool operator==(const MemoKey& o) const {
    return level == o.level && terms_left == o.terms_left && w == o.w;
  }
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = VecZHash{}(k.w);
    h ^= std::hash<int>{}(k.level) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(k.terms_left) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct SearchContext {
  const IntMatrix& m;
  const DigitSet& alphabet;
  const SearchBudget& budget;
  IntMatrix adj;
  Int delta;
  int window = 0;
  long long nodes = 0;
  std::vector<double> power_norms;  // ||M^r||_inf for r = 0..window
  double digit_norm = 0;
  std::unordered_set<MemoKey, MemoKeyHash> failed;
  static constexpr std::size_t kMemoCap = 2'000'000;

  SearchContext(const IntMatrix& mm, const DigitSet& a, const SearchBudget& b)
      : m(mm), alphabet(a), budget(b), adj(adjugate(mm)), delta(mm.det()) {
    window = b.k_hi - b.k_lo + 1;
    Eigen::MatrixXd md = to_eigen(mm);
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(mm.dim(), mm.dim());
    for (int r = 0; r <= window; ++r) {
      power_norms.push_back(std::max(1.0, p.cwiseAbs().rowwise().sum().maxCoeff()));
      p = md * p;
    }
    for (const VecZ& d : a.digits) {
      double n = 0;
      for (const Int& x : d) n = std::max(n, std::abs(Rat(x).convert_to<double>()));
      digit_norm = std::max(digit_norm, n);
    }
  }

  // Sound upper bound for ||w||_inf of any tail sum_{r < R} M^r d with at
  // most tl nonzero digits.
  bool norm_prune(const VecZ& w, int level, int terms_left) const {
    int remaining = window - level;
    double bound_full = 0, bound_max = 0;
    for (int r = 0; r < remaining; ++r) {
      bound_full += power_norms[r];
      bound_max = std::max(bound_max, power_norms[r]);
    }
    double bound = std::min(bound_full, bound_max * terms_left) * digit_norm;
    bound = bound * (1.0 + 1e-9) + 1e-6;
    for (const Int& x : w) {
      if (std::abs(Rat(x).convert_to<double>()) > bound) return true;
    }
    return false;
  }

  // digits at exponents k_lo + level upward; exact per-level division by M
  bool dfs(int level, const VecZ& w, int terms_left, std::vector<std::pair<int, int>>* out) {
    if (is_zero_vec(w) && terms_left == 0) return true;
    if (level == window) return false;
    if (terms_left == 0) return false;  // w != 0 but no terms available
    if (++nodes > budget.node_cap) {
      throw EncodeBudgetExceeded("search node cap exceeded");
    }
    if (norm_prune(w, level, terms_left)) return false;
    MemoKey key{level, terms_left, w};
    if (failed.count(key)) return false;
    for (std::size_t di = 0; di < alphabet.digits.size(); ++di) {
      const VecZ& d = alphabet.digits[di];
      bool nonzero = di != static_cast<std::size_t>(alphabet.zero_index);
      VecZ r = sub(w, d);
      VecZ next = adj.apply(r);
      bool divisible = true;
      for (Int& x : next) {
        if (x % delta != 0) {
          divisible = false;
          break;
        }
        x /= delta;
      }
      if (!divisible) continue;
      if (dfs(level + 1, next, terms_left - (nonzero ? 1 : 0), out)) {
        if (nonzero) out->emplace_back(budget.k_lo + level, static_cast<int>(di));
        return true;
      }
    }
    if (failed.size() < kMemoCap) failed.insert(std::move(key));
    return false;
  }
};

}  // namespace

EncodeResult encode_search(const IntMatrix& m, const ScaledVector& z, const DigitSet& alphabet,
                           const SearchBudget& budget) {
  if (budget.k_lo > 0 || budget.k_hi < 0 || budget.max_terms < 1) {
    throw InputError("encode_search: budget must satisfy k_lo <= 0 <= k_hi, max_terms >= 1");
  }
  EncodeResult res;
  res.trace.strategy = Strategy::Search;
  ScaledVector zn = normalize(z, m.det());
  if (is_zero_vec(zn.num)) {
    res.outcome = EncodeOutcome::Found;
    res.rep = canonical_zero(alphabet);
    return res;
  }

  // any window value lies in M^{k_lo} Z^m
  ScaledVector w = zn;
  for (int i = 0; i < -budget.k_lo; ++i) w = sv_apply(m, w);
  if (w.k != 0) {
    res.outcome = EncodeOutcome::NotFound;
    return res;
  }

  SearchContext ctx(m, alphabet, budget);
  for (int t = 1; t <= budget.max_terms; ++t) {
    std::vector<std::pair<int, int>> terms;
    if (ctx.dfs(0, w.num, t, &terms)) {
      Representation rep;
      rep.alphabet_id = alphabet.id();
      for (const auto& [k, idx] : terms) rep.terms[k] = idx;
      res.outcome = EncodeOutcome::Found;
      res.rep = std::move(rep);
      res.trace.nodes_visited = ctx.nodes;
      return res;
    }
  }
  res.outcome = EncodeOutcome::NotFound;
  res.trace.nodes_visited = ctx.nodes;
  return res;
}

EncodeResult encode(const NumerationSystem& sys, const ScaledVector& z, const EncodeOptions& opts) {
  ScaledVector zn = normalize(z, sys.M.det());
  if (is_zero_vec(zn.num)) {
    EncodeResult res;
    res.outcome = EncodeOutcome::Found;
    res.rep = canonical_zero(sys.alphabet);
    res.trace.strategy = opts.strategy == Strategy::Search ? Strategy::Search : Strategy::Constructive;
    return res;
  }

  if (zn.k > 0) {
    LiftResult lift = lift_fractional(sys.M, zn);
    if (!lift.representable) {
      EncodeResult res;
      res.outcome = EncodeOutcome::NotRepresentable;
      res.witness = lift.witness;
      return res;
    }
    EncodeResult inner = encode(sys, sv_from(lift.z), opts);
    if (inner.outcome == EncodeOutcome::Found) {
      inner.rep = shift(inner.rep, -lift.shift, sys.alphabet);
    }
    return inner;
  }

  Strategy strategy = opts.strategy;
  if (strategy == Strategy::Auto) {
    strategy = sys.plan.closeness_certified && !sys.alphabet.digits.empty()
                   ? Strategy::Constructive
                   : Strategy::Search;
  }
  if (strategy == Strategy::Constructive) {
    return encode_constructive(sys, zn.num, opts);
  }
  return encode_search(sys.M, zn, sys.alphabet, opts.budget);
}

}  // namespace matnum
