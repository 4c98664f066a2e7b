#include "matnum/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace matnum {

namespace {

ScaledVector scaled_value(const IntMatrix& m, const VecZ& u, int base_exponent) {
  if (base_exponent >= 0) {
    return sv_from(m.pow(static_cast<unsigned long>(base_exponent)).apply(u));
  }
  ScaledVector v = sv_from(u);
  for (int i = 0; i < -base_exponent; ++i) v = apply_inverse(m, v);
  return v;
}

ScaledVector sv_sub(const ScaledVector& a, const ScaledVector& b, const Int& delta) {
  ScaledVector neg{negate(b.num), b.k};
  return sv_add(a, neg, delta);
}

struct HalfEntry {
  ScaledVector value;
  int terms = 0;
  std::vector<std::pair<int, int>> digits;  // (exponent, digit index), nonzero only
};

// Enumerate all digit strings over exponents [lo, hi] with at most max_terms
// nonzero digits, in canonical order: the lowest exponent is the most
// significant comparison position and the zero digit sorts first.  Calls
// sink once per complete string.
void enumerate_half(const IntMatrix& m, const DigitSet& alphabet, int lo, int hi, int max_terms,
                    long long node_cap, long long* nodes,
                    const std::function<void(HalfEntry&&)>& sink) {
  std::vector<IntMatrix> powers;
  powers.push_back(IntMatrix::identity(m.dim()));
  for (int r = 0; r < hi - lo; ++r) powers.push_back(m * powers.back());

  std::vector<std::pair<int, int>> chosen;
  std::function<void(int, const VecZ&, int)> walk = [&](int k, const VecZ& acc, int terms) {
    if (++(*nodes) > node_cap) {
      throw EnumerationCapExceeded("oracle enumeration cap exceeded");
    }
    if (k > hi) {
      HalfEntry e;
      e.value = scaled_value(m, acc, lo);
      e.terms = terms;
      e.digits = chosen;
      sink(std::move(e));
      return;
    }
    for (std::size_t di = 0; di < alphabet.digits.size(); ++di) {
      bool nonzero = di != static_cast<std::size_t>(alphabet.zero_index);
      if (nonzero && terms >= max_terms) continue;
      VecZ next = nonzero ? add(acc, powers[k - lo].apply(alphabet.digits[di])) : acc;
      if (nonzero) chosen.emplace_back(k, static_cast<int>(di));
      walk(k + 1, next, terms + (nonzero ? 1 : 0));
      if (nonzero) chosen.pop_back();
    }
  };
  walk(lo, VecZ(m.dim(), Int(0)), 0);
}

}  // namespace

std::vector<ScaledVector> brute_force_reachable(const IntMatrix& m, const DigitSet& alphabet,
                                                const SearchBudget& budget) {
  if (budget.k_lo > 0 || budget.k_hi < 0 || budget.max_terms < 1) {
    throw InputError("brute_force_reachable: budget must satisfy k_lo <= 0 <= k_hi");
  }
  std::unordered_set<ScaledVector, ScaledVectorHash> seen;
  long long nodes = 0;
  double bound = budget.state_norm_bound;
  std::function<void(HalfEntry &&)> sink = [&](HalfEntry&& e) {
    if (bound > 0) {
      for (const Int& x : e.value.num) {
        if (abs(Rat(x)).convert_to<double>() > bound) return;
      }
    }
    seen.insert(std::move(e.value));
  };
  enumerate_half(m, alphabet, budget.k_lo, budget.k_hi, budget.max_terms, budget.node_cap, &nodes,
                 sink);
  std::vector<ScaledVector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const ScaledVector& a, const ScaledVector& b) {
    if (a.k != b.k) return a.k < b.k;
    return lex_less(a.num, b.num);
  });
  return out;
}

EncodeResult brute_force_encode(const IntMatrix& m, const ScaledVector& z,
                                const DigitSet& alphabet, const SearchBudget& budget) {
  if (budget.k_lo > 0 || budget.k_hi < 0 || budget.max_terms < 1) {
    throw InputError("brute_force_encode: budget must satisfy k_lo <= 0 <= k_hi");
  }
  EncodeResult res;
  res.trace.strategy = Strategy::Search;
  const Int delta = m.det();
  ScaledVector zn = normalize(z, delta);
  if (is_zero_vec(zn.num)) {
    res.outcome = EncodeOutcome::Found;
    res.rep = canonical_zero(alphabet);
    return res;
  }

  // every value over the window lies in M^{k_lo} Z^m
  {
    ScaledVector w = zn;
    for (int i = 0; i < -budget.k_lo; ++i) w = sv_apply(m, w);
    if (w.k != 0) {
      res.outcome = EncodeOutcome::NotFound;
      return res;
    }
  }

  const int window = budget.k_hi - budget.k_lo + 1;
  const int left_len = window / 2;
  const int mid = budget.k_lo + left_len - 1;  // left: [k_lo, mid], right: (mid, k_hi]
  long long nodes = 0;

  // the left half holds the most significant comparison positions; the
  // right half is hashed with the first (lex-min) string per term count
  std::unordered_map<ScaledVector, std::unordered_map<int, std::vector<std::pair<int, int>>>,
                     ScaledVectorHash>
      right;
  {
    std::function<void(HalfEntry &&)> sink = [&](HalfEntry&& e) {
      auto& slot = right[e.value];
      slot.emplace(e.terms, std::move(e.digits));
    };
    enumerate_half(m, alphabet, mid + 1, budget.k_hi, budget.max_terms, budget.node_cap, &nodes,
                   sink);
  }

  std::vector<HalfEntry> left;
  if (left_len > 0) {
    std::function<void(HalfEntry &&)> sink = [&](HalfEntry&& e) { left.push_back(std::move(e)); };
    enumerate_half(m, alphabet, budget.k_lo, mid, budget.max_terms, budget.node_cap, &nodes, sink);
  } else {
    HalfEntry empty;
    empty.value = sv_from(VecZ(m.dim(), Int(0)));
    left.push_back(std::move(empty));
  }
  res.trace.nodes_visited = nodes;

  for (int t = 1; t <= budget.max_terms; ++t) {
    for (const HalfEntry& l : left) {
      if (l.terms > t) continue;
      ScaledVector need = sv_sub(zn, l.value, delta);
      auto it = right.find(need);
      if (it == right.end()) continue;
      auto jt = it->second.find(t - l.terms);
      if (jt == it->second.end()) continue;
      Representation rep;
      rep.alphabet_id = alphabet.id();
      for (const auto& [k, idx] : l.digits) rep.terms[k] = idx;
      for (const auto& [k, idx] : jt->second) rep.terms[k] = idx;
      res.outcome = EncodeOutcome::Found;
      res.rep = std::move(rep);
      return res;
    }
  }
  res.outcome = EncodeOutcome::NotFound;
  return res;
}

}  // namespace matnum
