#pragma once

#include "matnum/polynomial.hpp"

#include <array>
#include <complex>
#include <vector>

namespace matnum {

struct RootEntry {
  std::complex<double> lambda;
  int multiplicity = 1;
  bool is_real = false;
  bool is_integer = false;  // exact integer eigenvalue (rational roots of a monic
                            // integer polynomial are integers)
  long integer_value = 0;
  double angle = 0.0;  // atan2(Im, Re)
};

// Eigenvalue classification into expanding (|l|>1), unimodular (|l|=1) and
// contracting (|l|<1).  Complex roots appear in conjugate pairs; dims sum
// the multiplicities per class and add up to deg p.
struct SpectralSplit {
  std::vector<RootEntry> expanding;
  std::vector<RootEntry> unimodular;
  std::vector<RootEntry> contracting;
  std::array<int, 3> dims{0, 0, 0};
};

struct ClassifyOptions {
  int budget_bits = 256;
};

// gcd(p, x^deg p(1/x)) in primitive integer form; contains every root of p
// on the unit circle (and possibly reciprocal off-circle pairs, which
// classify() separates exactly).
IntPolynomial unimodular_factor(const IntPolynomial& p);

// Complete certified classification of the roots of p (monic, p(0) != 0).
// Unimodular roots are decided exactly: the palindromic part of each
// square-free factor is transformed by y = x + 1/x and its real roots in
// (-2, 2) are counted and isolated with Sturm chains; everything else is
// certified off-circle by exact disk bounds.
SpectralSplit classify(const IntPolynomial& p, const ClassifyOptions& opts = {});

}  // namespace matnum
