#pragma once

#include "matnum/int_matrix.hpp"
#include "matnum/types.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace matnum {

// Exact polynomial utilities over Z and Q used by the spectral classifier.
// Integer polynomials are kept primitive with positive leading coefficient
// wherever they represent factors.

using RatPoly = std::vector<Rat>;  // ascending coefficients

Int poly_content(const IntPolynomial& p);
IntPolynomial poly_primitive(const IntPolynomial& p);  // positive leading coefficient
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);
Int poly_eval(const IntPolynomial& p, const Int& x);
Rat poly_eval(const IntPolynomial& p, const Rat& x);
IntPolynomial poly_derivative(const IntPolynomial& p);

// Exact quotient; throws InputError when the division leaves a remainder.
IntPolynomial poly_div_exact(const IntPolynomial& p, const IntPolynomial& q);

// Primitive gcd with positive leading coefficient (Euclid over Q).
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

// Yun square-free decomposition: p ~ prod f_i^{m_i} with f_i square-free,
// pairwise coprime, returned as (f_i, m_i) with m_i ascending.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);

// x^deg(p) * p(1/x): coefficient reversal.
IntPolynomial poly_reciprocal(const IntPolynomial& p);

// For palindromic u of even degree 2k with u(0) != 0, the unique integer v
// of degree k with u(x) = x^k v(x + 1/x).
IntPolynomial palindromic_to_y(const IntPolynomial& u);

// Number of distinct real roots of a square-free p in the open interval
// (a, b), by Sturm chains over exact rationals.
int sturm_count(const IntPolynomial& p, const Rat& a, const Rat& b);
int sturm_count_all(const IntPolynomial& p);

struct RootInterval {
  Rat lo, hi;  // open isolating interval, p(lo) != 0 != p(hi)
  Rat mid() const { return (lo + hi) / 2; }
  double mid_double() const { return mid().convert_to<double>(); }
};

// Isolating intervals for all real roots of square-free p, refined by
// bisection until hi - lo <= width.  Sorted ascending.
std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p, const Rat& width);

// Cauchy root bound: all complex roots have |z| < bound.
Rat cauchy_bound(const IntPolynomial& p);

// --- certified complex disks -------------------------------------------------

struct QComplex {
  Rat re, im;
};

struct CertifiedDisk {
  std::complex<double> center;
  double radius;            // double upper bound, display only
  QComplex exact_center;
  Rat radius2_upper;        // exact rational upper bound on radius^2
  bool outside_unit_circle; // certified |root| > 1 (else certified < 1)
};

// Certify the non-real (or all, when include_real) roots of a square-free
// integer polynomial h that is known to have no roots on the unit circle:
// returns pairwise-disjoint disks, each containing exactly one root and each
// certified on one side of the unit circle.  Newton-refines the starting
// approximations in exact rational arithmetic, doubling the working dyadic
// precision until the checks pass or budget_bits is exhausted
// (ClassificationBudgetExceeded).
std::vector<CertifiedDisk> certify_offcircle_roots(const IntPolynomial& h,
                                                   const std::vector<std::complex<double>>& seeds,
                                                   int budget_bits);

// Numerical seeds: eigenvalues of the companion matrix.
std::vector<std::complex<double>> numeric_roots(const IntPolynomial& p);

// Rational t with t*t >= s (resp. <= s), close to sqrt(s).
Rat sqrt_upper_bound(const Rat& s);
Rat sqrt_lower_bound(const Rat& s);

}  // namespace matnum
