#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "matnum/spectrum.hpp"
#include "support/corpus.hpp"

#include <cmath>
#include <random>

using namespace matnum;
using namespace matnum::testsupport;

namespace {

IntPolynomial poly(std::initializer_list<long long> ascending) {
  std::vector<Int> c;
  for (long long x : ascending) c.emplace_back(x);
  return IntPolynomial(std::move(c));
}

int total_mult(const SpectralSplit& s) { return s.dims[0] + s.dims[1] + s.dims[2]; }

}  // namespace

TEST_CASE("unimodular_factor") {
  CHECK(unimodular_factor(poly({1, 0, 1})) == poly({1, 0, 1}));  // x^2+1 self-reciprocal
  CHECK(unimodular_factor(poly({-2, 1})).degree() == 0);         // x-2
  CHECK(unimodular_factor(char_poly(tribonacci())).degree() == 0);
  // x^2-3x+1 is self-reciprocal yet has no unit-circle roots; the gcd is a
  // superset filter and classify must separate it
  CHECK(unimodular_factor(poly({1, -3, 1})) == poly({1, -3, 1}));
}

TEST_CASE("classify the rotation matrix: all unimodular") {
  SpectralSplit s = classify(char_poly(rotation90()));
  CHECK(s.dims == std::array<int, 3>{0, 2, 0});
  REQUIRE(s.unimodular.size() == 2);
  bool found_quarter_turn = false;
  for (const RootEntry& e : s.unimodular) {
    CHECK(std::abs(std::norm(e.lambda) - 1.0) < 1e-12);
    if (std::abs(e.angle - std::acos(-1.0) / 2) < 1e-12) found_quarter_turn = true;
  }
  CHECK(found_quarter_turn);
}

TEST_CASE("classify the tribonacci matrix") {
  SpectralSplit s = classify(char_poly(tribonacci()));
  CHECK(s.dims == std::array<int, 3>{1, 0, 2});
  REQUIRE(s.expanding.size() == 1);
  CHECK(s.expanding[0].is_real);
  CHECK(s.expanding[0].lambda.real() == doctest::Approx(-1.8392867552).epsilon(1e-9));
  REQUIRE(s.contracting.size() == 2);
  CHECK(s.contracting[0].lambda.imag() != 0.0);
}

TEST_CASE("classify a repeated expanding eigenvalue") {
  SpectralSplit s = classify(poly({4, -4, 1}));  // (x-2)^2
  CHECK(s.dims == std::array<int, 3>{2, 0, 0});
  REQUIRE(s.expanding.size() == 1);
  CHECK(s.expanding[0].multiplicity == 2);
  CHECK(s.expanding[0].is_integer);
  CHECK(s.expanding[0].integer_value == 2);
}

TEST_CASE("self-reciprocal polynomial with off-circle roots") {
  // x^2-3x+1: roots (3 +- sqrt 5)/2, a reciprocal pair straddling the circle
  SpectralSplit s = classify(poly({1, -3, 1}));
  CHECK(s.dims == std::array<int, 3>{1, 0, 1});
  CHECK(s.expanding[0].lambda.real() == doctest::Approx(2.6180339887).epsilon(1e-9));
  CHECK(s.contracting[0].lambda.real() == doctest::Approx(0.3819660113).epsilon(1e-9));
}

TEST_CASE("cyclotomic factors land exactly on the circle") {
  SpectralSplit s = classify(poly({1, -1, 1}));  // roots e^{+-i pi/3}
  CHECK(s.dims == std::array<int, 3>{0, 2, 0});
  for (const RootEntry& e : s.unimodular) {
    CHECK(std::abs(std::norm(e.lambda) - 1.0) < 1e-12);
  }
  // repeated unimodular real root
  SpectralSplit t = classify(poly({1, 2, 1}));  // (x+1)^2
  CHECK(t.dims == std::array<int, 3>{0, 2, 0});
  REQUIRE(t.unimodular.size() == 1);
  CHECK(t.unimodular[0].multiplicity == 2);
  CHECK(t.unimodular[0].integer_value == -1);
}

TEST_CASE("constructed expanding/contracting products recover multiplicities") {
  // p_e with roots 2, -3, 2 (all modulus >= 2), p_c = 6x^2-x-1 with roots
  // 1/2 and -1/3 (modulus <= 1/2)
  IntPolynomial pe = poly_mul(poly({-6, 1, 1}), poly({-2, 1}));
  IntPolynomial pc = poly({-1, -1, 6});
  IntPolynomial prod = poly_mul(pe, pc);
  SpectralSplit s = classify(prod);
  CHECK(s.dims == std::array<int, 3>{3, 0, 2});
}

TEST_CASE("multiplicity sum equals the degree on random products") {
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 25; ++t) {
    int dim = 1 + static_cast<int>(rng() % 4);
    IntMatrix m = random_nonsingular(rng, dim, -4, 4);
    SpectralSplit s = classify(char_poly(m));
    CHECK(total_mult(s) == dim);
    for (const RootEntry& e : s.unimodular) {
      CHECK(std::abs(std::norm(e.lambda) - 1.0) < 1e-12);
    }
    // complex roots appear in conjugate pairs
    for (const auto* list : {&s.expanding, &s.unimodular, &s.contracting}) {
      for (const RootEntry& e : *list) {
        if (e.is_real) continue;
        bool has_conj = false;
        for (const RootEntry& f : *list) {
          if (std::abs(f.lambda - std::conj(e.lambda)) < 1e-9 && f.multiplicity == e.multiplicity)
            has_conj = true;
        }
        CHECK(has_conj);
      }
    }
  }
}

TEST_CASE("dim V_e + dim V_u > 0 for integer non-singular matrices") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 40; ++t) {
    int dim = 1 + static_cast<int>(rng() % 3);
    IntMatrix m = random_nonsingular(rng, dim, -3, 3);
    SpectralSplit s = classify(char_poly(m));
    CHECK(s.dims[0] + s.dims[1] > 0);
  }
}

TEST_CASE("polynomial toolkit details") {
  // square-free decomposition of (x-1)^2 (x+2)
  auto sf = squarefree_decomposition(poly_mul(poly({1, -2, 1}), poly({2, 1})));
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].second == 1);
  CHECK(sf[0].first == poly({2, 1}));
  CHECK(sf[1].second == 2);
  CHECK(sf[1].first == poly({-1, 1}));

  // y-transform of x^2+1 is y; of x^4+1 is y^2-2
  CHECK(palindromic_to_y(poly({1, 0, 1})) == poly({0, 1}));
  CHECK(palindromic_to_y(poly({1, 0, 0, 0, 1})) == poly({-2, 0, 1}));

  CHECK(sturm_count_all(poly({-2, 0, 1})) == 2);          // y^2-2
  CHECK(sturm_count(poly({-2, 0, 1}), Rat(0), Rat(2)) == 1);
  // y-image of x^2-3x+1 is y-3: no root lands in (-2,2), hence no
  // unimodular eigenvalue despite self-reciprocity
  CHECK(palindromic_to_y(poly({1, -3, 1})) == poly({-3, 1}));
  CHECK(sturm_count(poly({-3, 1}), Rat(-2), Rat(2)) == 0);
}
