#include "matnum/decider.hpp"

#include <random>

namespace matnum {

namespace {

std::vector<std::pair<Int, int>> factor_by_trial_division(Int n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Int, int>> factors;
  Int p = 2;
  const Int bound = 1000000;
  while (p * p <= n) {
    if (p > bound) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
    p += (p == 2 ? 1 : 2);
  }
  if (n > 1) {
    if (n > bound * bound) {
      throw FactorizationLimitExceeded("determinant has a factor beyond the trial-division bound");
    }
    factors.emplace_back(n, 1);
  }
  return factors;
}

}  // namespace

EqualityVerdict decide_equality(const IntMatrix& m) {
  EqualityVerdict v;
  v.delta = m.det();
  if (v.delta == 0) throw SingularMatrixError("decide_equality: singular matrix");
  Int abs_delta = v.delta < 0 ? Int(-v.delta) : v.delta;
  if (abs_delta == 1) {
    v.verdict = Equality::Equal;
    v.ell = 0;
    return v;
  }

  auto factors = factor_by_trial_division(abs_delta);
  const unsigned long dim = static_cast<unsigned long>(m.dim());
  int max_exponent = 0;
  for (const auto& [p, e] : factors) {
    // nilpotency over F_p is equivalent to M^dim = 0 mod p (Cayley-Hamilton
    // forces the characteristic polynomial of a nilpotent matrix to x^dim)
    IntMatrix power = mat_pow_mod(m, dim, p);
    if (!power.is_zero()) {
      v.verdict = Equality::ProperSubset;
      v.bad_prime = p;
      v.residue_power = power;
      return v;
    }
    max_exponent = std::max(max_exponent, e);
  }

  // M^dim = 0 mod p lifts to M^(dim*e) = 0 mod p^e; minimize downward
  long ell = static_cast<long>(dim) * max_exponent;
  while (ell > 1 && mat_pow_mod(m, static_cast<unsigned long>(ell - 1), abs_delta).is_zero()) {
    --ell;
  }
  if (!mat_pow_mod(m, static_cast<unsigned long>(ell), abs_delta).is_zero()) {
    throw InputError("decide_equality: internal witness verification failed");
  }
  v.verdict = Equality::Equal;
  v.ell = ell;
  return v;
}

BasisVectorResult basis_vector_condition(const IntMatrix& m, int i) {
  BasisVectorResult r;
  Int delta = m.det();
  if (delta == 0) throw SingularMatrixError("basis_vector_condition: singular matrix");
  Int modulus = delta < 0 ? Int(-delta) : delta;
  if (modulus == 1) {
    r.ok = true;
    r.ell = 0;
    return r;
  }

  auto step = [&](const VecZ& x) {
    VecZ y = m.apply(x);
    for (Int& c : y) {
      c %= modulus;
      if (c < 0) c += modulus;
    }
    return y;
  };
  VecZ start(m.dim(), Int(0));
  start[i] = 1 % modulus;

  VecZ tortoise = start, hare = start;
  do {
    tortoise = step(tortoise);
    hare = step(step(hare));
  } while (tortoise != hare);
  int mu = 0;
  tortoise = start;
  while (tortoise != hare) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }
  int lambda = 1;
  hare = step(tortoise);
  while (hare != tortoise) {
    hare = step(hare);
    ++lambda;
  }

  VecZ cur = start;
  for (int n = 0; n < mu + lambda; ++n) {
    if (is_zero_vec(cur)) {
      r.ok = true;
      r.ell = n;
      return r;
    }
    cur = step(cur);
  }
  r.ok = false;
  r.cycle_start = mu;
  r.cycle_length = lambda;
  return r;
}

ClosureReport check_fin_properties(const NumerationSystem& sys, int samples, unsigned long seed) {
  ClosureReport report;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-8, 8);

  auto encodable = [&](const ScaledVector& v, const std::string& what) {
    EncodeResult r = encode(sys, v);
    if (r.outcome != EncodeOutcome::Found) {
      ++report.failures;
      report.notes.push_back(what + ": encode failed for " + sv_to_string(v));
      return;
    }
    ScaledVector back = decode(sys.M, r.rep, sys.alphabet);
    if (!(back == normalize(v, sys.M.det()))) {
      ++report.failures;
      report.notes.push_back(what + ": roundtrip mismatch for " + sv_to_string(v));
    }
  };

  for (int t = 0; t < samples; ++t) {
    VecZ a(sys.plan.dim), b(sys.plan.dim);
    for (int i = 0; i < sys.plan.dim; ++i) {
      a[i] = coord(rng);
      b[i] = coord(rng);
    }
    encodable(sv_from(add(a, b)), "sum");
    encodable(sv_from(sub(a, b)), "difference");
    encodable(sv_from(sys.M.apply(a)), "M*z");
    encodable(apply_inverse(sys.M, sv_from(a)), "M^{-1}*z");
  }
  return report;
}

}  // namespace matnum
