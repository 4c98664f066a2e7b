#pragma once

#include "matnum/errors.hpp"
#include "matnum/types.hpp"

#include <vector>

namespace matnum {

// Square integer matrix with arbitrary-precision entries.  All arithmetic
// is exact; the determinant is cached after the first computation.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim, Int(0)) {}

  static IntMatrix identity(int dim);
  static IntMatrix from_rows(const std::vector<VecZ>& rows);

  int dim() const { return dim_; }

  Int& at(int i, int j) {
    det_cached_ = false;
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }
  const Int& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }

  VecZ apply(const VecZ& v) const;
  VecZ column(int j) const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const {
    return dim_ == other.dim_ && entries_ == other.entries_;
  }

  IntMatrix pow(unsigned long e) const;
  bool is_zero() const;

  // Exact determinant, fraction-free Bareiss elimination.
  const Int& det() const;

 private:
  int dim_ = 0;
  std::vector<Int> entries_;
  mutable Int det_;
  mutable bool det_cached_ = false;
};

// A vector of U_k Delta^{-k} Z^m stored exactly as integer numerator and
// Delta-power denominator exponent: value = num / Delta^k.
struct ScaledVector {
  VecZ num;
  int k = 0;

  bool operator==(const ScaledVector& other) const { return k == other.k && num == other.num; }
};

struct ScaledVectorHash {
  std::size_t operator()(const ScaledVector& v) const;
};

// Integer-coefficient polynomial, coefficients ascending by degree.
// The zero polynomial has an empty coefficient list.
struct IntPolynomial {
  std::vector<Int> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const Int& leading() const { return coeffs.back(); }
  Int at(int i) const { return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[i] : Int(0); }
  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  bool operator==(const IntPolynomial& other) const { return coeffs == other.coeffs; }

  std::string pretty() const;  // human form, e.g. "x^3 + x^2 - x + 1"
};

Int det(const IntMatrix& m);

// A with M*A = A*M = det(M)*I, integer entries (cofactor transpose).
IntMatrix adjugate(const IntMatrix& m);

// M^e with entries reduced into [0, n); requires n >= 2.
IntMatrix mat_pow_mod(const IntMatrix& m, unsigned long e, const Int& n);

// Exact monic characteristic polynomial det(xI - M) via the
// Faddeev-LeVerrier recurrence (all divisions exact).
IntPolynomial char_poly(const IntMatrix& m);

// Canonical form: k = 0 or num not divisible by delta componentwise.
ScaledVector normalize(ScaledVector v, const Int& delta);

// M^{-1} v, exactly: numerator adjugate(M)*num, exponent k+1, normalized.
ScaledVector apply_inverse(const IntMatrix& m, const ScaledVector& v);

ScaledVector sv_from(VecZ v);
ScaledVector sv_apply(const IntMatrix& m, const ScaledVector& v);
ScaledVector sv_sub_int(const ScaledVector& v, const VecZ& a, const Int& delta);
ScaledVector sv_add(const ScaledVector& a, const ScaledVector& b, const Int& delta);
std::vector<double> sv_to_double(const ScaledVector& v, const Int& delta);
std::string sv_to_string(const ScaledVector& v);

}  // namespace matnum
