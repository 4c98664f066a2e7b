// Acceptance suite: runs every criterion end to end, prints one PASS/FAIL
// line per criterion with its runtime, exits nonzero when anything fails.

#include "matnum/decider.hpp"
#include "matnum/encoder.hpp"
#include "matnum/json_io.hpp"
#include "matnum/oracle.hpp"

#include "support/corpus.hpp"
#include "support/lemma_properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

using namespace matnum;
using namespace matnum::testsupport;

namespace {

struct Criterion {
  const char* name;
  const char* description;
  double limit_seconds;
  std::function<bool(std::string&)> run;
};

bool run_all(const std::vector<Criterion>& criteria) {
  bool all_ok = true;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::printf("%s %-4s %-60s (%.2fs, limit %.0fs)%s%s\n", ok ? "PASS" : "FAIL", c.name,
                c.description, secs, c.limit_seconds, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok;
}

DigitSet tiny_alphabet(int dim, std::vector<VecZ> digits) {
  DigitSet ds;
  ds.dim = dim;
  ds.frame = DigitFrame::MCoordinates;
  ds.digits = std::move(digits);
  canonicalize(ds);
  return ds;
}

// ---------------------------------------------------------------- criteria

bool ac1_equality_m1(std::string& detail) {
  EqualityVerdict v = decide_equality(m1());
  if (!v.equal() || v.ell != 2) {
    detail = "expected Equal with ell = 2";
    return false;
  }
  if (!mat_pow_mod(m1(), 2, 2).is_zero()) {
    detail = "witness re-verification failed";
    return false;
  }
  return true;
}

bool ac2_m2_proper_subset(std::string& detail) {
  EqualityVerdict v = decide_equality(m2());
  if (v.equal()) {
    detail = "expected ProperSubset";
    return false;
  }
  LiftResult lift = lift_fractional(m2(), ScaledVector{vecz({1, 0}), 1});
  if (lift.representable || !lift.witness) {
    detail = "expected certified NotRepresentable";
    return false;
  }
  NumerationSystem sys = synthesize(m2());
  SearchBudget budget;
  budget.k_lo = -6;
  budget.k_hi = 6;
  budget.max_terms = 8;
  EncodeResult oracle = brute_force_encode(m2(), ScaledVector{vecz({1, 0}), 1}, sys.alphabet, budget);
  if (oracle.outcome != EncodeOutcome::NotFound) {
    detail = "oracle should report NotFound for (1/2, 0)";
    return false;
  }
  return true;
}

bool ac3_rotation_search(std::string& detail) {
  IntMatrix m = rotation90();
  DigitSet a = tiny_alphabet(2, {vecz({0, 0}), vecz({1, 0})});
  SearchBudget budget;
  budget.k_lo = 0;
  budget.k_hi = 23;
  budget.max_terms = 12;
  for (long x = -5; x <= 5; ++x) {
    for (long y = -5; y <= 5; ++y) {
      ScaledVector z = sv_from(vecz({x, y}));
      EncodeResult r = encode_search(m, z, a, budget);
      if (r.outcome != EncodeOutcome::Found) {
        detail = "no representation for (" + std::to_string(x) + "," + std::to_string(y) + ")";
        return false;
      }
      if (!(decode(m, r.rep, a) == z)) {
        detail = "roundtrip mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")";
        return false;
      }
    }
  }
  // the paper's closed form for (a,b) = (2,3): sum M^{4k} e1 (k=1,2) +
  // sum M^{4k+3} e1 (k=1..3)
  Representation closed;
  closed.alphabet_id = a.id();
  int e1 = DigitIndex(a).find(vecz({1, 0}));
  for (int k : {4, 8}) closed.terms[k] = e1;
  for (int k : {7, 11, 15}) closed.terms[k] = e1;
  if (!(decode(m, closed, a) == sv_from(vecz({2, 3})))) {
    detail = "closed-form decode mismatch";
    return false;
  }
  return true;
}

bool ac4_tribonacci_small_alphabet(std::string& detail) {
  IntMatrix t = tribonacci();
  DigitSet a = tiny_alphabet(3, {vecz({0, 0, 0}), vecz({1, 0, 0})});
  SearchBudget budget;
  budget.k_lo = -10;
  budget.k_hi = 14;
  budget.max_terms = 25;
  budget.node_cap = 100'000'000;
  for (long x = -1; x <= 1; ++x) {
    for (long y = -1; y <= 1; ++y) {
      for (long w = -1; w <= 1; ++w) {
        ScaledVector z = sv_from(vecz({x, y, w}));
        EncodeResult r = brute_force_encode(t, z, a, budget);
        if (r.outcome != EncodeOutcome::Found) {
          detail = "no representation for (" + std::to_string(x) + "," + std::to_string(y) + "," +
                   std::to_string(w) + ")";
          return false;
        }
        if (!(decode(t, r.rep, a) == z)) {
          detail = "roundtrip mismatch";
          return false;
        }
      }
    }
  }
  return true;
}

bool ac5_roundtrip_fuzz(std::string& detail) {
  std::mt19937_64 rng(20240801);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> coord(-10, 10);
  for (int t = 0; t < 100; ++t) {
    int dim = 1 + t % 3;
    IntMatrix m(dim);
    do {
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = entry(rng);
    } while (m.det() == 0);
    NumerationSystem sys = synthesize(m);
    for (int s = 0; s < 20; ++s) {
      VecZ z(dim);
      for (int i = 0; i < dim; ++i) z[i] = coord(rng);
      EncodeResult r = encode(sys, sv_from(z));
      if (r.outcome != EncodeOutcome::Found) {
        detail = "encode failed at matrix " + to_json(m).dump() + " z " + to_string(z);
        return false;
      }
      if (!(decode(m, r.rep, sys.alphabet) == sv_from(z))) {
        detail = "roundtrip mismatch at matrix " + to_json(m).dump() + " z " + to_string(z);
        return false;
      }
    }
  }
  return true;
}

bool ac6_lemma_suites(std::string& detail) {
  for (long q : {1L, 2L, 3L}) {
    if (claim1_violations(q) != 0) {
      detail = "claim 1 violated at q = " + std::to_string(q);
      return false;
    }
  }
  std::mt19937_64 rng(424242);
  for (double phi : {0.1, std::acos(-1.0) / 4, 2.0}) {
    if (claim2_violations(phi, 0.0, rng) != 0 || claim2_violations(phi, 6.5, rng) != 0) {
      detail = "claim 2 violated at phi = " + std::to_string(phi);
      return false;
    }
  }
  // 10^4 (x, eps) trials per block shape
  if (lemma_unit_violations(1, 0.9, 500, 20, rng) != 0 ||
      lemma_unit_violations(2, 2.2, 500, 20, rng) != 0) {
    detail = "lemma unit violated";
    return false;
  }
  BlockDescriptor half;
  half.kind = BlockKind::Contracting;
  half.size = 1;
  half.lambda = {0.5, 0};
  BlockDescriptor chain;
  chain.kind = BlockKind::Contracting;
  chain.size = 3;
  chain.lambda = {-0.6, 0};
  BlockDescriptor cpair;
  cpair.kind = BlockKind::Contracting;
  cpair.size = 2;
  cpair.is_complex = true;
  cpair.lambda = {0.419, 0.606};
  for (const BlockDescriptor& b : {half, chain, cpair}) {
    if (lemma_contract_violations(b, 10000, rng) != 0) {
      detail = "lemma contract violated";
      return false;
    }
  }
  BlockDescriptor etwo;
  etwo.kind = BlockKind::Expanding;
  etwo.size = 1;
  etwo.lambda = {2, 0};
  if (lemma_expand_violations(etwo, 0.05, 100, rng) != 0) {
    detail = "lemma expand violated (1x1)";
    return false;
  }
  BlockDescriptor epair;
  epair.kind = BlockKind::Expanding;
  epair.size = 2;
  epair.is_complex = true;
  epair.lambda = {1.2, 0.9};
  if (lemma_expand_violations(epair, 0.1, 25, rng) != 0) {
    detail = "lemma expand violated (complex pair)";
    return false;
  }
  return true;
}

bool ac7_decider_validation(std::string& detail) {
  std::mt19937_64 rng(777777);
  for (int t = 0; t < 500; ++t) {
    int dim = 1 + static_cast<int>(rng() % 3);
    IntMatrix m = random_matrix(rng, dim, -4, 4);
    for (long p : {2L, 3L, 5L}) {
      bool criterion = mat_pow_mod(m, static_cast<unsigned long>(dim), p).is_zero();
      bool direct = false;
      IntMatrix cur = mat_pow_mod(m, 1, p);
      std::vector<IntMatrix> seen;
      for (;;) {
        if (cur.is_zero()) {
          direct = true;
          break;
        }
        bool repeated = false;
        for (const IntMatrix& s : seen) {
          if (s == cur) {
            repeated = true;
            break;
          }
        }
        if (repeated) break;
        seen.push_back(cur);
        cur = mat_pow_mod(cur * mat_pow_mod(m, 1, p), 1, p);
      }
      if (criterion != direct) {
        detail = "nilpotency criterion disagreement at " + to_json(m).dump() + " p = " +
                 std::to_string(p);
        return false;
      }
    }
    if (m.det() != 0) {
      bool all_ok = true;
      for (int i = 0; i < dim; ++i) {
        if (!basis_vector_condition(m, i).ok) all_ok = false;
      }
      if (decide_equality(m).equal() != all_ok) {
        detail = "claim C1 disagreement at " + to_json(m).dump();
        return false;
      }
    }
  }
  return true;
}

bool ac8_unimodular_corpus(std::string& detail) {
  std::mt19937_64 rng(99999);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int t = 0; t < 50; ++t) {
    int dim = 1 + t % 3;
    IntMatrix m = random_unimodular(rng, dim, 6 + static_cast<int>(rng() % 7));
    Int d = m.det();
    if (d != 1 && d != -1) {
      detail = "corpus generator produced |det| != 1";
      return false;
    }
    NumerationSystem sys = synthesize(m);
    for (int s = 0; s < 10; ++s) {
      VecZ z(dim);
      for (int i = 0; i < dim; ++i) z[i] = coord(rng);
      EncodeResult r = encode(sys, sv_from(z));
      if (r.outcome != EncodeOutcome::Found) {
        detail = "encode failed on unimodular matrix " + to_json(m).dump();
        return false;
      }
      ScaledVector back = decode(m, r.rep, sys.alphabet);
      if (back.k != 0 || !(back == sv_from(z))) {
        detail = "denominator exponent nonzero or mismatch";
        return false;
      }
    }
    // random representations decode into Z^m
    std::uniform_int_distribution<int> expo(-3, 3);
    std::uniform_int_distribution<std::size_t> digit(0, sys.alphabet.digits.size() - 1);
    for (int s = 0; s < 10; ++s) {
      Representation rep;
      rep.alphabet_id = sys.alphabet.id();
      int terms = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < terms; ++i) rep.terms[expo(rng)] = static_cast<int>(digit(rng));
      ScaledVector v = decode(m, rep, sys.alphabet);
      if (v.k != 0) {
        detail = "random representation decoded outside Z^m";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"AC1", "M1 decide: Equal with witness ell = 2, re-verified", 1.0, ac1_equality_m1},
      {"AC2", "M2: ProperSubset, certified NotRepresentable, oracle NotFound", 30.0,
       ac2_m2_proper_subset},
      {"AC3", "rotation: search over |a|,|b| <= 5 and closed-form decode", 60.0,
       ac3_rotation_search},
      {"AC4", "tribonacci alphabet {0,e1}: all of {-1,0,1}^3 in [-10,14]", 300.0,
       ac4_tribonacci_small_alphabet},
      {"AC5", "roundtrip fuzz: 100 random systems x 20 vectors", 600.0, ac5_roundtrip_fuzz},
      {"AC6", "lemma-level property suites, zero violations", 120.0, ac6_lemma_suites},
      {"AC7", "decider validation: nilpotency and claim C1 equivalences", 120.0,
       ac7_decider_validation},
      {"AC8", "det +-1 corpus: exponent-0 decodes throughout", 600.0, ac8_unimodular_corpus},
  };
  bool ok = run_all(criteria);
  std::printf("%s\n", ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
  return ok ? 0 : 1;
}
