#include "matnum/int_matrix.hpp"

#include <sstream>

namespace matnum {

IntMatrix IntMatrix::identity(int dim) {
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<VecZ>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw InputError("matrix rows must form a square array");
    }
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

VecZ IntMatrix::apply(const VecZ& v) const {
  VecZ r(dim_, Int(0));
  for (int i = 0; i < dim_; ++i) {
    Int acc = 0;
    for (int j = 0; j < dim_; ++j) acc += at(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

VecZ IntMatrix::column(int j) const {
  VecZ c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = at(i, j);
  return c;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += a * other.at(k, j);
    }
  }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = at(i, j) + other.at(i, j);
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = at(i, j) - other.at(i, j);
  return r;
}

IntMatrix IntMatrix::pow(unsigned long e) const {
  IntMatrix result = identity(dim_);
  IntMatrix base = *this;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool IntMatrix::is_zero() const {
  for (const Int& x : entries_)
    if (x != 0) return false;
  return true;
}

const Int& IntMatrix::det() const {
  if (det_cached_) return det_;
  // Bareiss fraction-free elimination: every division below is exact.
  const int n = dim_;
  if (n == 0) {
    det_ = 1;
    det_cached_ = true;
    return det_;
  }
  std::vector<Int> a = entries_;
  auto e = [&](int i, int j) -> Int& { return a[static_cast<std::size_t>(i) * n + j]; };
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (e(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i) {
        if (e(i, k) != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) {
        det_ = 0;
        det_cached_ = true;
        return det_;
      }
      for (int j = 0; j < n; ++j) std::swap(e(k, j), e(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        e(i, j) = (e(k, k) * e(i, j) - e(i, k) * e(k, j)) / prev;
      }
      e(i, k) = 0;
    }
    prev = e(k, k);
  }
  det_ = sign * e(n - 1, n - 1);
  det_cached_ = true;
  return det_;
}

Int det(const IntMatrix& m) { return m.det(); }

namespace {

Int minor_det(const IntMatrix& m, int drop_row, int drop_col) {
  const int n = m.dim();
  IntMatrix sub(n - 1);
  int si = 0;
  for (int i = 0; i < n; ++i) {
    if (i == drop_row) continue;
    int sj = 0;
    for (int j = 0; j < n; ++j) {
      if (j == drop_col) continue;
      sub.at(si, sj) = m.at(i, j);
      ++sj;
    }
    ++si;
  }
  return sub.det();
}

}  // namespace

IntMatrix adjugate(const IntMatrix& m) {
  const int n = m.dim();
  IntMatrix adj(n);
  if (n == 1) {
    adj.at(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Int c = minor_det(m, i, j);
      if ((i + j) % 2 != 0) c = -c;
      adj.at(j, i) = c;
    }
  }
  return adj;
}

namespace {

Int mod_reduce(const Int& x, const Int& n) {
  Int r = x % n;
  if (r < 0) r += n;
  return r;
}

IntMatrix mat_mod(const IntMatrix& m, const Int& n) {
  IntMatrix r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r.at(i, j) = mod_reduce(m.at(i, j), n);
  return r;
}

}  // namespace

IntMatrix mat_pow_mod(const IntMatrix& m, unsigned long e, const Int& n) {
  if (n < 2) throw InputError("mat_pow_mod requires modulus >= 2");
  IntMatrix result = mat_mod(IntMatrix::identity(m.dim()), n);
  IntMatrix base = mat_mod(m, n);
  while (e > 0) {
    if (e & 1UL) result = mat_mod(result * base, n);
    base = mat_mod(base * base, n);
    e >>= 1;
  }
  return result;
}

IntPolynomial char_poly(const IntMatrix& m) {
  // Faddeev-LeVerrier: c_{m-k} = -tr(M * B_{k-1}) / k, with B_k = M*B_{k-1} + c_{m-k} I.
  // The divisions are exact over the integers.
  const int n = m.dim();
  std::vector<Int> c(static_cast<std::size_t>(n) + 1, Int(0));
  c[n] = 1;
  IntMatrix b = IntMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    IntMatrix mb = m * b;
    Int tr = 0;
    for (int i = 0; i < n; ++i) tr += mb.at(i, i);
    Int ck = -tr / k;
    c[n - k] = ck;
    b = mb;
    for (int i = 0; i < n; ++i) b.at(i, i) += ck;
  }
  return IntPolynomial(std::move(c));
}

ScaledVector normalize(ScaledVector v, const Int& delta) {
  if (delta == 0) throw SingularMatrixError("normalize: zero determinant");
  while (v.k > 0) {
    bool divisible = true;
    for (const Int& x : v.num) {
      if (x % delta != 0) {
        divisible = false;
        break;
      }
    }
    if (!divisible) break;
    for (Int& x : v.num) x /= delta;
    --v.k;
  }
  return v;
}

ScaledVector apply_inverse(const IntMatrix& m, const ScaledVector& v) {
  if (m.det() == 0) throw SingularMatrixError("apply_inverse: singular matrix");
  ScaledVector r;
  r.num = adjugate(m).apply(v.num);
  r.k = v.k + 1;
  return normalize(std::move(r), m.det());
}

std::size_t ScaledVectorHash::operator()(const ScaledVector& v) const {
  std::size_t h = VecZHash{}(v.num);
  h ^= std::hash<int>{}(v.k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

ScaledVector sv_from(VecZ v) { return ScaledVector{std::move(v), 0}; }

ScaledVector sv_apply(const IntMatrix& m, const ScaledVector& v) {
  return normalize(ScaledVector{m.apply(v.num), v.k}, m.det());
}

ScaledVector sv_sub_int(const ScaledVector& v, const VecZ& a, const Int& delta) {
  Int scale = 1;
  for (int i = 0; i < v.k; ++i) scale *= delta;
  ScaledVector r;
  r.k = v.k;
  r.num.resize(v.num.size());
  for (std::size_t i = 0; i < v.num.size(); ++i) r.num[i] = v.num[i] - scale * a[i];
  return normalize(std::move(r), delta);
}

ScaledVector sv_add(const ScaledVector& a, const ScaledVector& b, const Int& delta) {
  const ScaledVector* lo = &a;
  const ScaledVector* hi = &b;
  if (lo->k > hi->k) std::swap(lo, hi);
  Int scale = 1;
  for (int i = 0; i < hi->k - lo->k; ++i) scale *= delta;
  ScaledVector r;
  r.k = hi->k;
  r.num.resize(a.num.size());
  for (std::size_t i = 0; i < a.num.size(); ++i) r.num[i] = hi->num[i] + scale * lo->num[i];
  return normalize(std::move(r), delta);
}

std::vector<double> sv_to_double(const ScaledVector& v, const Int& delta) {
  Rat scale = 1;
  for (int i = 0; i < v.k; ++i) scale *= Rat(delta);
  std::vector<double> r(v.num.size());
  for (std::size_t i = 0; i < v.num.size(); ++i) {
    r[i] = (Rat(v.num[i]) / scale).convert_to<double>();
  }
  return r;
}

std::string sv_to_string(const ScaledVector& v) {
  std::ostringstream os;
  os << to_string(v.num);
  if (v.k > 0) os << " / Delta^" << v.k;
  return os.str();
}

std::string IntPolynomial::pretty() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs[i];
    if (c == 0) continue;
    Int a = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || a != 1) os << a;
    if (i > 0) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace matnum
