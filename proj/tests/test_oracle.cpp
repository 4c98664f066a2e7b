#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "matnum/oracle.hpp"
#include "support/corpus.hpp"

#include <algorithm>

using namespace matnum;
using namespace matnum::testsupport;

namespace {

DigitSet small_alphabet(int dim, std::vector<VecZ> digits) {
  DigitSet ds;
  ds.dim = dim;
  ds.frame = DigitFrame::MCoordinates;
  ds.digits = std::move(digits);
  canonicalize(ds);
  return ds;
}

bool reachable_contains(const std::vector<ScaledVector>& set, const ScaledVector& v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

}  // namespace

TEST_CASE("brute_force_reachable: rotation window") {
  DigitSet a = small_alphabet(2, {vecz({0, 0}), vecz({1, 0})});
  SearchBudget budget;
  budget.k_lo = 0;
  budget.k_hi = 7;
  budget.max_terms = 8;
  auto set = brute_force_reachable(rotation90(), a, budget);
  CHECK(reachable_contains(set, sv_from(vecz({1, 1}))));  // terms at k = 4 and k = 7
  CHECK(reachable_contains(set, sv_from(vecz({0, 0}))));
  CHECK(reachable_contains(set, sv_from(vecz({2, 2}))));
}

TEST_CASE("brute_force_reachable: zero alphabet") {
  DigitSet zero = small_alphabet(2, {vecz({0, 0})});
  SearchBudget budget;
  budget.k_lo = -2;
  budget.k_hi = 2;
  budget.max_terms = 3;
  auto set = brute_force_reachable(m1(), zero, budget);
  REQUIRE(set.size() == 1);
  CHECK(is_zero_vec(set[0].num));
}

TEST_CASE("brute_force_reachable: synthesized alphabet covers the small box") {
  NumerationSystem sys = synthesize(m1());
  SearchBudget budget;
  budget.k_lo = -2;
  budget.k_hi = 2;
  budget.max_terms = 1;
  budget.node_cap = 50'000'000;
  auto set = brute_force_reachable(sys.M, sys.alphabet, budget);
  for (long x = -1; x <= 1; ++x) {
    for (long y = -1; y <= 1; ++y) {
      CHECK(reachable_contains(set, sv_from(vecz({x, y}))));
    }
  }
}

TEST_CASE("brute_force_encode worked examples") {
  DigitSet a3 = small_alphabet(3, {vecz({0, 0, 0}), vecz({1, 0, 0})});
  SearchBudget b3;
  b3.k_lo = -2;
  b3.k_hi = 2;
  b3.max_terms = 3;
  EncodeResult direct = brute_force_encode(tribonacci(), sv_from(vecz({1, 0, 0})), a3, b3);
  REQUIRE(direct.outcome == EncodeOutcome::Found);
  REQUIRE(direct.rep.terms.size() == 1);
  CHECK(direct.rep.terms.count(0) == 1);

  DigitSet a2 = small_alphabet(2, {vecz({0, 0}), vecz({1, 0})});
  SearchBudget b2;
  b2.k_lo = 0;
  b2.k_hi = 11;
  b2.max_terms = 4;
  EncodeResult two = brute_force_encode(rotation90(), sv_from(vecz({2, 0})), a2, b2);
  REQUIRE(two.outcome == EncodeOutcome::Found);
  REQUIRE(two.rep.terms.size() == 2);
  CHECK(two.rep.terms.count(4) == 1);
  CHECK(two.rep.terms.count(8) == 1);
  CHECK(decode(rotation90(), two.rep, a2) == sv_from(vecz({2, 0})));

  // (1/2, 0) is never representable for M2, any window
  NumerationSystem sys2 = synthesize(m2());
  SearchBudget bw;
  bw.k_lo = -3;
  bw.k_hi = 3;
  bw.max_terms = 6;
  EncodeResult nf = brute_force_encode(m2(), ScaledVector{vecz({1, 0}), 1}, sys2.alphabet, bw);
  CHECK(nf.outcome == EncodeOutcome::NotFound);
}

TEST_CASE("oracle values decode to themselves") {
  DigitSet a = small_alphabet(2, {vecz({0, 0}), vecz({1, 0}), vecz({0, 1})});
  SearchBudget budget;
  budget.k_lo = -1;
  budget.k_hi = 2;
  budget.max_terms = 2;
  auto set = brute_force_reachable(m1(), a, budget);
  for (const ScaledVector& v : set) {
    EncodeResult r = brute_force_encode(m1(), v, a, budget);
    REQUIRE(r.outcome == EncodeOutcome::Found);
    CHECK(decode(m1(), r.rep, a) == v);
  }
}

TEST_CASE("budget monotonicity") {
  DigitSet a = small_alphabet(2, {vecz({0, 0}), vecz({1, 0})});
  SearchBudget small;
  small.k_lo = -1;
  small.k_hi = 2;
  small.max_terms = 2;
  SearchBudget big = small;
  big.k_hi = 4;
  big.max_terms = 3;
  auto s1 = brute_force_reachable(rotation90(), a, small);
  auto s2 = brute_force_reachable(rotation90(), a, big);
  CHECK(s2.size() >= s1.size());
  for (const ScaledVector& v : s1) CHECK(reachable_contains(s2, v));
}

TEST_CASE("whenever the oracle finds, the search encoder finds") {
  DigitSet a = small_alphabet(2, {vecz({0, 0}), vecz({1, 0})});
  SearchBudget budget;
  budget.k_lo = -2;
  budget.k_hi = 3;
  budget.max_terms = 3;
  auto set = brute_force_reachable(rotation90(), a, budget);
  for (const ScaledVector& v : set) {
    EncodeResult s = encode_search(rotation90(), v, a, budget);
    CHECK(s.outcome == EncodeOutcome::Found);
  }
}

TEST_CASE("enumeration cap is enforced") {
  NumerationSystem sys = synthesize(m1());
  SearchBudget budget;
  budget.k_lo = -3;
  budget.k_hi = 3;
  budget.max_terms = 7;
  budget.node_cap = 1000;
  CHECK_THROWS_AS(brute_force_reachable(sys.M, sys.alphabet, budget), EnumerationCapExceeded);
}
