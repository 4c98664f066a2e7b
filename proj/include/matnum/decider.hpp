#pragma once

#include "matnum/encoder.hpp"
#include "matnum/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace matnum {

// Does Fin_D(M) exhaust the Delta-adic hull U_k Delta^{-k} Z^m?  Equal iff
// some power of M vanishes mod Delta.
enum class Equality { Equal, ProperSubset };

struct EqualityVerdict {
  Equality verdict = Equality::ProperSubset;
  Int delta;
  // Equal: smallest witness exponent with M^ell = 0 mod |Delta|
  long ell = -1;
  // ProperSubset: a prime p | Delta together with M^m mod p != 0 evidence
  Int bad_prime;
  IntMatrix residue_power;  // M^m mod bad_prime

  bool equal() const { return verdict == Equality::Equal; }
};

// Factor |Delta| by trial division (bound 10^6), test nilpotency mod every
// prime via M^m, assemble and minimize the witness exponent.
EqualityVerdict decide_equality(const IntMatrix& m);

struct BasisVectorResult {
  bool ok = false;
  long ell = -1;  // smallest exponent with column i of M^ell = 0 mod Delta
  int cycle_start = 0, cycle_length = 0;  // certificate when the condition fails
};

// Claim "C1" per basis vector: (1/Delta) e_i in M^{-ell_i} Z^m.
BasisVectorResult basis_vector_condition(const IntMatrix& m, int i);

struct ClosureReport {
  int samples = 0;
  int failures = 0;
  std::vector<std::string> notes;
  bool all_passed() const { return failures == 0; }
};

// Sampled closure checks of Fin: sums, differences and M^{+-1} images of
// representable vectors stay encodable.
ClosureReport check_fin_properties(const NumerationSystem& sys, int samples,
                                   unsigned long seed = 12345);

}  // namespace matnum
