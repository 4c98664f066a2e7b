#include "matnum/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace matnum {

namespace {

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

RatPoly to_rat(const IntPolynomial& p) {
  RatPoly r(p.coeffs.size());
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) r[i] = Rat(p.coeffs[i]);
  return r;
}

void rat_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rat rat_eval(const RatPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Remainder of a by b over Q.
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  rat_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    rat_trim(a);
  }
  return a;
}

IntPolynomial from_rat(const RatPoly& p) {
  // Clear denominators, then take the primitive part.
  Int lcm = 1;
  for (const Rat& c : p) {
    Int d = denominator(c);
    lcm = lcm / int_gcd(lcm, d) * d;
  }
  std::vector<Int> coeffs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat scaled = p[i] * Rat(lcm);
    coeffs[i] = numerator(scaled);
  }
  return poly_primitive(IntPolynomial(std::move(coeffs)));
}

}  // namespace

Int poly_content(const IntPolynomial& p) {
  Int g = 0;
  for (const Int& c : p.coeffs) g = int_gcd(g, c);
  return g;
}

IntPolynomial poly_primitive(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Int g = poly_content(p);
  if (p.leading() < 0) g = -g;
  IntPolynomial r = p;
  for (Int& c : r.coeffs) c /= g;
  return r;
}

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<Int> c(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return IntPolynomial(std::move(c));
}

Int poly_eval(const IntPolynomial& p, const Int& x) {
  Int acc = 0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat poly_eval(const IntPolynomial& p, const Rat& x) { return rat_eval(to_rat(p), x); }

IntPolynomial poly_derivative(const IntPolynomial& p) {
  if (p.degree() <= 0) return IntPolynomial();
  std::vector<Int> c(p.coeffs.size() - 1);
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) c[i - 1] = p.coeffs[i] * static_cast<long>(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial poly_div_exact(const IntPolynomial& p, const IntPolynomial& q) {
  if (q.is_zero()) throw InputError("poly_div_exact: division by zero polynomial");
  RatPoly a = to_rat(p.coeffs.empty() ? IntPolynomial() : p);
  RatPoly b = to_rat(q);
  RatPoly quot(p.coeffs.size(), Rat(0));
  rat_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    rat_trim(a);
  }
  if (!a.empty()) throw InputError("poly_div_exact: nonzero remainder");
  rat_trim(quot);
  std::vector<Int> coeffs(quot.size());
  for (std::size_t i = 0; i < quot.size(); ++i) {
    if (denominator(quot[i]) != 1) throw InputError("poly_div_exact: non-integer quotient");
    coeffs[i] = numerator(quot[i]);
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  RatPoly x = to_rat(a);
  RatPoly y = to_rat(b);
  rat_trim(x);
  rat_trim(y);
  if (x.empty()) return poly_primitive(b);
  if (y.empty()) return poly_primitive(a);
  while (!y.empty()) {
    RatPoly r = rat_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return from_rat(x);
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p_in) {
  std::vector<std::pair<IntPolynomial, int>> out;
  IntPolynomial p = poly_primitive(p_in);
  if (p.degree() <= 0) return out;
  // Yun's algorithm.
  IntPolynomial dp = poly_derivative(p);
  IntPolynomial g = poly_gcd(p, dp);
  IntPolynomial w = poly_div_exact(p, g);
  IntPolynomial y = poly_div_exact(dp, g);
  int i = 1;
  while (w.degree() > 0) {
    IntPolynomial wd = poly_derivative(w);
    std::vector<Int> zc(std::max(y.coeffs.size(), wd.coeffs.size()), Int(0));
    for (std::size_t j = 0; j < y.coeffs.size(); ++j) zc[j] += y.coeffs[j];
    for (std::size_t j = 0; j < wd.coeffs.size(); ++j) zc[j] -= wd.coeffs[j];
    IntPolynomial z(std::move(zc));
    IntPolynomial fi = poly_gcd(w, z);
    if (fi.degree() > 0) out.emplace_back(fi, i);
    w = poly_div_exact(w, fi);
    y = poly_div_exact(z, fi);
    ++i;
  }
  return out;
}

IntPolynomial poly_reciprocal(const IntPolynomial& p) {
  std::vector<Int> c(p.coeffs.rbegin(), p.coeffs.rend());
  return IntPolynomial(std::move(c));
}

IntPolynomial palindromic_to_y(const IntPolynomial& u) {
  const int deg = u.degree();
  if (deg < 0 || deg % 2 != 0) throw InputError("palindromic_to_y: degree must be even");
  const int k = deg / 2;
  for (int j = 0; j <= deg; ++j) {
    if (u.coeffs[j] != u.coeffs[deg - j]) throw InputError("palindromic_to_y: not palindromic");
  }
  // u(x)/x^k = u_k + sum_{j>=1} u_{k+j} (x^j + x^-j); substitute the
  // Chebyshev-like basis t_j(y) = x^j + x^-j: t_0 = 2, t_1 = y,
  // t_{j+1} = y t_j - t_{j-1}.
  std::vector<Int> v(static_cast<std::size_t>(k) + 1, Int(0));
  v[0] = u.coeffs[k];
  std::vector<Int> t_prev{Int(2)};
  std::vector<Int> t_cur{Int(0), Int(1)};
  for (int j = 1; j <= k; ++j) {
    // invariant: t_prev = t_{j-1}, t_cur = t_j
    for (std::size_t idx = 0; idx < t_cur.size(); ++idx) v[idx] += u.coeffs[k + j] * t_cur[idx];
    // advance: t_next = y*t_cur - t_prev
    std::vector<Int> t_next(t_cur.size() + 1, Int(0));
    for (std::size_t idx = 0; idx < t_cur.size(); ++idx) t_next[idx + 1] += t_cur[idx];
    for (std::size_t idx = 0; idx < t_prev.size(); ++idx) t_next[idx] -= t_prev[idx];
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return IntPolynomial(std::move(v));
}

namespace {

struct SturmChain {
  std::vector<RatPoly> seq;

  explicit SturmChain(const IntPolynomial& p) {
    RatPoly a = to_rat(p);
    RatPoly b;
    {
      IntPolynomial dp = poly_derivative(p);
      b = to_rat(dp);
    }
    rat_trim(a);
    rat_trim(b);
    seq.push_back(a);
    if (!b.empty()) seq.push_back(b);
    while (seq.size() >= 2) {
      RatPoly r = rat_rem(seq[seq.size() - 2], seq.back());
      if (r.empty()) break;
      for (Rat& c : r) c = -c;
      seq.push_back(std::move(r));
    }
  }

  int variations_at(const Rat& x) const {
    int var = 0, prev = 0;
    for (const RatPoly& q : seq) {
      Rat v = rat_eval(q, x);
      int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++var;
      prev = s;
    }
    return var;
  }

  int variations_at_inf(int sign_dir) const {  // +1 for +inf, -1 for -inf
    int var = 0, prev = 0;
    for (const RatPoly& q : seq) {
      if (q.empty()) continue;
      int s = q.back() > 0 ? 1 : -1;
      if (sign_dir < 0 && (q.size() - 1) % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++var;
      prev = s;
    }
    return var;
  }
};

}  // namespace

int sturm_count(const IntPolynomial& p, const Rat& a, const Rat& b) {
  if (poly_eval(p, a) == 0 || poly_eval(p, b) == 0) {
    throw InputError("sturm_count: endpoint is a root");
  }
  SturmChain chain(p);
  return chain.variations_at(a) - chain.variations_at(b);
}

int sturm_count_all(const IntPolynomial& p) {
  SturmChain chain(p);
  return chain.variations_at_inf(-1) - chain.variations_at_inf(+1);
}

Rat cauchy_bound(const IntPolynomial& p) {
  Rat m = 0;
  const Int& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Rat c = Rat(p.coeffs[i]) / Rat(lead);
    if (c < 0) c = -c;
    if (c > m) m = c;
  }
  return m + 1;
}

namespace {

// A point near x where p does not vanish (p has finitely many roots).
Rat non_root_near(const IntPolynomial& p, Rat x, const Rat& step) {
  Rat d = step;
  while (poly_eval(p, x) == 0) {
    x += d;
    d /= 3;
  }
  return x;
}

void refine_interval(const IntPolynomial& p, const SturmChain& chain, RootInterval& iv,
                     const Rat& width) {
  while (iv.hi - iv.lo > width) {
    Rat mid = non_root_near(p, (iv.lo + iv.hi) / 2, (iv.hi - iv.lo) / 64);
    if (mid <= iv.lo || mid >= iv.hi) break;
    if (chain.variations_at(iv.lo) - chain.variations_at(mid) == 1) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p, const Rat& width) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  SturmChain chain(p);
  Rat bound = cauchy_bound(p);
  Rat lo = non_root_near(p, -bound, Rat(1, 7));
  Rat hi = non_root_near(p, bound, Rat(1, 7));
  std::vector<RootInterval> stack{{lo, hi}};
  while (!stack.empty()) {
    RootInterval iv = stack.back();
    stack.pop_back();
    int count = chain.variations_at(iv.lo) - chain.variations_at(iv.hi);
    if (count == 0) continue;
    if (count == 1) {
      refine_interval(p, chain, iv, width);
      out.push_back(iv);
      continue;
    }
    Rat mid = non_root_near(p, (iv.lo + iv.hi) / 2, (iv.hi - iv.lo) / 64);
    stack.push_back({iv.lo, mid});
    stack.push_back({mid, iv.hi});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<std::complex<double>> numeric_roots(const IntPolynomial& p) {
  const int d = p.degree();
  std::vector<std::complex<double>> roots;
  if (d <= 0) return roots;
  if (d == 1) {
    double c0 = Rat(p.coeffs[0]).convert_to<double>();
    double c1 = Rat(p.coeffs[1]).convert_to<double>();
    roots.emplace_back(-c0 / c1, 0.0);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  double lead = Rat(p.leading()).convert_to<double>();
  for (int i = 0; i < d; ++i) {
    companion(i, d - 1) = -Rat(p.coeffs[i]).convert_to<double>() / lead;
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  for (int i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()[i]);
  std::sort(roots.begin(), roots.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

Rat sqrt_upper_bound(const Rat& s) {
  if (s < 0) throw InputError("sqrt_upper_bound: negative argument");
  if (s == 0) return Rat(0);
  double approx = std::sqrt(s.convert_to<double>());
  Rat t(approx > 0 ? approx : 1e-300);
  if (t <= 0) t = Rat(1);
  while (t * t < s) t *= Rat(1048577, 1048576);
  // tighten while staying an upper bound
  for (int i = 0; i < 4; ++i) {
    Rat cand = (t + s / t) / 2;  // Newton from above stays above sqrt(s)
    if (cand * cand >= s && cand < t) t = cand;
  }
  return t;
}

Rat sqrt_lower_bound(const Rat& s) {
  if (s <= 0) return Rat(0);
  Rat up = sqrt_upper_bound(s);
  Rat lo = s / up;  // (s/up)^2 <= s since up^2 >= s
  return lo;
}

namespace {


QComplex qc_sub(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
QComplex qc_mul(const QComplex& a, const QComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rat qc_norm2(const QComplex& a) { return a.re * a.re + a.im * a.im; }
QComplex qc_div(const QComplex& a, const QComplex& b) {
  Rat n = qc_norm2(b);
  QComplex prod = qc_mul(a, QComplex{b.re, -b.im});
  return {prod.re / n, prod.im / n};
}

QComplex qc_eval(const IntPolynomial& p, const QComplex& z) {
  QComplex acc{Rat(0), Rat(0)};
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = qc_mul(acc, z);
    acc.re += Rat(*it);
  }
  return acc;
}

Rat round_dyadic(const Rat& x, int bits) {
  Int scale = Int(1) << bits;
  Rat scaled = x * Rat(scale);
  Int n = numerator(scaled), d = denominator(scaled);
  // round to nearest integer
  Int q = (2 * n + (n >= 0 ? d : -d)) / (2 * d);
  return Rat(q, scale);
}

QComplex qc_round(const QComplex& z, int bits) {
  return {round_dyadic(z.re, bits), round_dyadic(z.im, bits)};
}

std::complex<double> qc_to_double(const QComplex& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

}  // namespace

std::vector<CertifiedDisk> certify_offcircle_roots(const IntPolynomial& h,
                                                   const std::vector<std::complex<double>>& seeds,
                                                   int budget_bits) {
  const int d = h.degree();
  std::vector<CertifiedDisk> result;
  if (d <= 0) return result;
  if (static_cast<int>(seeds.size()) != d) {
    throw InputError("certify_offcircle_roots: seed count must equal degree");
  }
  IntPolynomial dh = poly_derivative(h);
  std::vector<QComplex> zs(d);
  for (int i = 0; i < d; ++i) zs[i] = {Rat(seeds[i].real()), Rat(seeds[i].imag())};

  int bits = 64;
  while (true) {
    for (int i = 0; i < d; ++i) zs[i] = qc_round(zs[i], bits);
    std::vector<Rat> radius2(d);
    std::vector<Rat> radius_up(d);
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      QComplex e = qc_eval(h, zs[i]);
      QComplex dv = qc_eval(dh, zs[i]);
      Rat dn = qc_norm2(dv);
      if (dn == 0) {
        ok = false;
        break;
      }
      // min distance to a root of h is at most d*|h(z)/h'(z)|
      radius2[i] = Rat(d) * Rat(d) * qc_norm2(e) / dn;
      radius_up[i] = sqrt_upper_bound(radius2[i]);
    }
    if (ok) {
      // pairwise disjoint disks
      for (int i = 0; i < d && ok; ++i) {
        for (int j = i + 1; j < d && ok; ++j) {
          Rat dist2 = qc_norm2(qc_sub(zs[i], zs[j]));
          Rat rhs = radius2[i] + radius2[j] + 2 * radius_up[i] * radius_up[j];
          if (dist2 <= rhs) ok = false;
        }
      }
    }
    std::vector<bool> outside(d, false);
    if (ok) {
      for (int i = 0; i < d && ok; ++i) {
        Rat s = qc_norm2(zs[i]);
        if (s > 1) {
          Rat slo = sqrt_lower_bound(s);
          if (slo <= 1 || (slo - 1) * (slo - 1) <= radius2[i]) ok = false;
          outside[i] = true;
        } else {
          Rat shi = sqrt_upper_bound(s);
          if (shi >= 1 || (1 - shi) * (1 - shi) <= radius2[i]) ok = false;
          outside[i] = false;
        }
      }
    }
    if (ok) {
      for (int i = 0; i < d; ++i) {
        CertifiedDisk disk;
        disk.exact_center = zs[i];
        disk.center = qc_to_double(zs[i]);
        disk.radius2_upper = radius2[i];
        disk.radius = std::sqrt(std::max(0.0, radius2[i].convert_to<double>()));
        disk.outside_unit_circle = outside[i];
        result.push_back(disk);
      }
      return result;
    }
    if (bits >= budget_bits) {
      throw ClassificationBudgetExceeded(
          "root certification did not converge within the precision budget");
    }
    // Newton-refine every approximation, then continue at doubled precision.
    for (int i = 0; i < d; ++i) {
      QComplex dv = qc_eval(dh, zs[i]);
      if (qc_norm2(dv) == 0) {
        zs[i].re += Rat(1, Int(1) << bits);
        dv = qc_eval(dh, zs[i]);
        if (qc_norm2(dv) == 0) continue;
      }
      QComplex step = qc_div(qc_eval(h, zs[i]), dv);
      zs[i] = qc_sub(zs[i], step);
    }
    bits = std::min(budget_bits, bits * 2);
  }
}

}  // namespace matnum
