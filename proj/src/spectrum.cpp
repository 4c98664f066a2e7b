#include "matnum/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace matnum {

IntPolynomial unimodular_factor(const IntPolynomial& p) {
  if (p.degree() < 0 || p.at(0) == 0) {
    throw InputError("unimodular_factor: requires p(0) != 0");
  }
  return poly_gcd(p, poly_reciprocal(p));
}

namespace {

RootEntry make_real_entry(double lambda, int mult, bool is_integer, long iv) {
  RootEntry e;
  e.lambda = {lambda, 0.0};
  e.multiplicity = mult;
  e.is_real = true;
  e.is_integer = is_integer;
  e.integer_value = iv;
  e.angle = lambda >= 0 ? 0.0 : std::acos(-1.0);
  return e;
}

RootEntry make_complex_entry(std::complex<double> lambda, int mult) {
  RootEntry e;
  e.lambda = lambda;
  e.multiplicity = mult;
  e.is_real = false;
  e.is_integer = false;
  e.angle = std::atan2(lambda.imag(), lambda.real());
  return e;
}

// true iff the isolated root lies left of the non-root boundary b
bool root_below(const IntPolynomial& p, const RootInterval& iv, const Rat& b) {
  if (iv.hi <= b) return true;
  if (iv.lo >= b) return false;
  return sturm_count(p, iv.lo, b) == 1;
}

void sort_entries(std::vector<RootEntry>& v) {
  std::sort(v.begin(), v.end(), [](const RootEntry& a, const RootEntry& b) {
    double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
    if (ma != mb) return ma > mb;
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
}

// exact integer root detection: the candidate must lie strictly inside the
// isolating interval, otherwise a nearby integer root of the same factor
// could be mistaken for this (irrational) one
bool integer_root_at(const IntPolynomial& p, const RootInterval& iv, long* out) {
  long n = std::lround(iv.mid_double());
  if (Rat(n) <= iv.lo || Rat(n) >= iv.hi) return false;
  if (poly_eval(p, Int(n)) != 0) return false;
  *out = n;
  return true;
}

}  // namespace

SpectralSplit classify(const IntPolynomial& p, const ClassifyOptions& opts) {
  if (p.degree() < 1) throw InputError("classify: constant polynomial");
  if (p.at(0) == 0) throw InputError("classify: p(0) = 0 (singular matrix)");

  SpectralSplit split;
  const Rat width(1, Int(1) << 80);

  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    IntPolynomial f1 = f;
    if (poly_eval(f1, Int(1)) == 0) {
      split.unimodular.push_back(make_real_entry(1.0, mult, true, 1));
      f1 = poly_div_exact(f1, IntPolynomial({Int(-1), Int(1)}));
    }
    if (poly_eval(f1, Int(-1)) == 0) {
      split.unimodular.push_back(make_real_entry(-1.0, mult, true, -1));
      f1 = poly_div_exact(f1, IntPolynomial({Int(1), Int(1)}));
    }
    if (f1.degree() == 0) continue;

    IntPolynomial g = poly_gcd(f1, poly_reciprocal(f1));
    IntPolynomial h = poly_div_exact(f1, g);

    if (g.degree() > 0) {
      // Roots of g are closed under inversion; decide circle membership via
      // y = x + 1/x.  Real y in (-2,2) <=> a unimodular conjugate pair.
      IntPolynomial v = palindromic_to_y(g);
      auto real_y = isolate_real_roots(v, width);
      for (const RootInterval& iv : real_y) {
        double y = iv.mid_double();
        bool below_two = root_below(v, iv, Rat(2));
        bool above_minus_two = !root_below(v, iv, Rat(-2));
        if (below_two && above_minus_two) {
          double re = y / 2.0;
          double im = std::sqrt(std::max(0.0, 1.0 - re * re));
          split.unimodular.push_back(make_complex_entry({re, im}, mult));
          split.unimodular.push_back(make_complex_entry({re, -im}, mult));
        } else {
          // real reciprocal pair off the circle
          double s = std::sqrt(y * y - 4.0);
          double big = (std::abs(y) + s) / 2.0 * (y > 0 ? 1.0 : -1.0);
          double small = 1.0 / big;
          split.expanding.push_back(make_real_entry(big, mult, false, 0));
          split.contracting.push_back(make_real_entry(small, mult, false, 0));
        }
      }
      int complex_y = v.degree() - static_cast<int>(real_y.size());
      if (complex_y > 0) {
        // each conjugate pair of complex y gives a quadruple l, conj l,
        // 1/l, 1/conj l with |l| != 1
        auto ys = numeric_roots(v);
        std::vector<std::complex<double>> complex_ys;
        std::vector<bool> used(ys.size(), false);
        for (const RootInterval& iv : real_y) {
          double target = iv.mid_double();
          int best = -1;
          double best_d = 0;
          for (std::size_t i = 0; i < ys.size(); ++i) {
            if (used[i]) continue;
            double d = std::abs(ys[i] - std::complex<double>(target, 0.0));
            if (best < 0 || d < best_d) {
              best = static_cast<int>(i);
              best_d = d;
            }
          }
          if (best >= 0) used[best] = true;
        }
        for (std::size_t i = 0; i < ys.size(); ++i) {
          if (!used[i] && ys[i].imag() > 0) complex_ys.push_back(ys[i]);
        }
        for (std::complex<double> y : complex_ys) {
          std::complex<double> s = std::sqrt(y * y - 4.0);
          std::complex<double> a = (y + s) / 2.0;
          std::complex<double> b = (y - s) / 2.0;
          if (std::abs(a) < std::abs(b)) std::swap(a, b);
          split.expanding.push_back(make_complex_entry(a, mult));
          split.expanding.push_back(make_complex_entry(std::conj(a), mult));
          split.contracting.push_back(make_complex_entry(b, mult));
          split.contracting.push_back(make_complex_entry(std::conj(b), mult));
        }
      }
    }

    if (h.degree() > 0) {
      // h has no unit-circle roots by construction; certified disks decide
      // each root's side, exact isolation decides which roots are real.
      auto real_ivs = isolate_real_roots(h, width);
      auto disks = certify_offcircle_roots(h, numeric_roots(h), opts.budget_bits);
      std::vector<bool> used(disks.size(), false);
      for (const RootInterval& iv : real_ivs) {
        double target = iv.mid_double();
        int best = -1;
        double best_d = 0;
        for (std::size_t i = 0; i < disks.size(); ++i) {
          if (used[i]) continue;
          double d = std::abs(disks[i].center - std::complex<double>(target, 0.0));
          if (best < 0 || d < best_d) {
            best = static_cast<int>(i);
            best_d = d;
          }
        }
        used[best] = true;
        bool expanding_exact = !root_below(h, iv, Rat(1)) || root_below(h, iv, Rat(-1));
        if (expanding_exact != disks[best].outside_unit_circle) {
          throw ClassificationBudgetExceeded(
              "disk certificate disagrees with exact interval classification");
        }
        long n = 0;
        bool is_int = integer_root_at(h, iv, &n);
        double lam = is_int ? static_cast<double>(n) : iv.mid_double();
        auto entry = make_real_entry(lam, mult, is_int, n);
        if (expanding_exact) {
          split.expanding.push_back(entry);
        } else {
          split.contracting.push_back(entry);
        }
      }
      for (std::size_t i = 0; i < disks.size(); ++i) {
        if (used[i]) continue;
        auto entry = make_complex_entry(disks[i].center, mult);
        if (disks[i].outside_unit_circle) {
          split.expanding.push_back(entry);
        } else {
          split.contracting.push_back(entry);
        }
      }
    }
  }

  sort_entries(split.expanding);
  sort_entries(split.unimodular);
  sort_entries(split.contracting);
  auto dim_of = [](const std::vector<RootEntry>& v) {
    int d = 0;
    for (const RootEntry& e : v) d += e.multiplicity;
    return d;
  };
  split.dims = {dim_of(split.expanding), dim_of(split.unimodular), dim_of(split.contracting)};
  if (split.dims[0] + split.dims[1] + split.dims[2] != p.degree()) {
    throw ClassificationBudgetExceeded("classification lost roots (internal inconsistency)");
  }
  return split;
}

}  // namespace matnum
