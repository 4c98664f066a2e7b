#pragma once

#include "matnum/digits.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace matnum {

enum class Strategy { Constructive, Search, Auto };

// Finite map k -> digit index: the value sum_k M^k d_k.  Zero digits are
// dropped; the zero vector itself is represented canonically by the single
// term (0, zero digit) so the position set stays non-empty.
struct Representation {
  std::map<int, int> terms;
  std::string alphabet_id;

  bool operator==(const Representation& o) const {
    return terms == o.terms && alphabet_id == o.alphabet_id;
  }
};

Representation canonical_zero(const DigitSet& alphabet);
bool is_zero_representation(const Representation& rep, const DigitSet& alphabet);

struct UnimodularTraceEntry {
  int ind = 0;
  double level_norm = 0.0;  // tracked pair norm at the index level (0 when ind = 0)
};

struct EncodeStep {
  std::vector<UnimodularTraceEntry> unimodular;  // one entry per unimodular block
  int dtilde_index = -1;
};

struct EncodeTrace {
  Strategy strategy = Strategy::Constructive;
  int j = 0;           // pre-shift exponent
  int iterations = 0;  // N
  std::vector<EncodeStep> steps;
  VecZ remainder;
  long long nodes_visited = 0;  // search strategy
};

// Certified witness that M^n v never becomes integral: the residue sequence
// M^n num mod Delta^k enters a cycle that avoids zero.
struct NotRepresentableWitness {
  int prefix_length = 0;
  int cycle_length = 0;
  VecZ entry_state;
  Int modulus;
};

enum class EncodeOutcome { Found, NotFound, NotRepresentable };

struct EncodeResult {
  EncodeOutcome outcome = EncodeOutcome::NotFound;
  Representation rep;
  std::optional<NotRepresentableWitness> witness;
  EncodeTrace trace;
};

struct SearchBudget {
  int k_lo = -8;
  int k_hi = 8;
  int max_terms = 8;
  long long node_cap = 20'000'000;
  double state_norm_bound = 0;  // 0 = disabled (oracle partial-state prune)
};

// Exact value of a representation; all arithmetic on integers, with the
// final division by Delta^n via the adjugate.
ScaledVector decode(const IntMatrix& m, const Representation& rep, const DigitSet& alphabet);

struct LiftResult {
  bool representable = false;
  VecZ z;          // integer vector with v = M^{-shift} z
  int shift = 0;   // smallest n >= 0 with M^n v integral
  std::optional<NotRepresentableWitness> witness;
};

// Route a denominator out of v by cycle detection on M^n num mod Delta^k.
LiftResult lift_fractional(const IntMatrix& m, const ScaledVector& v);

Representation shift(const Representation& rep, int t, const DigitSet& alphabet);

struct EncodeOptions {
  Strategy strategy = Strategy::Auto;
  SearchBudget budget;     // used by the search strategy
  long iteration_cap = 0;  // 0 = default 1000 m + 10 bits(||z||)
};

// Encode against a synthesized system (constructive strategy available) or
// via bounded search.  decode(encode(z)) = z exactly whenever Found.
EncodeResult encode(const NumerationSystem& sys, const ScaledVector& z,
                    const EncodeOptions& opts = {});

// Iterative-deepening exact search over digit strings in the exponent
// window; complete at the given budget.
EncodeResult encode_search(const IntMatrix& m, const ScaledVector& z, const DigitSet& alphabet,
                           const SearchBudget& budget);

long default_iteration_cap(const NumerationSystem& sys, const ScaledVector& z);

}  // namespace matnum
