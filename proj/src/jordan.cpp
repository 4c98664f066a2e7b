#include "matnum/jordan.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace matnum {

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::Expanding: return "expanding";
    case BlockKind::UnimodularComplex: return "unimodular-complex";
    case BlockKind::UnimodularReal: return "unimodular-real";
    case BlockKind::Contracting: return "contracting";
  }
  return "?";
}

bool JordanPlan::has_block(BlockKind k) const {
  for (const auto& b : blocks)
    if (b.kind == k) return true;
  return false;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXd r(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = Rat(m.at(i, j)).convert_to<double>();
  return r;
}

Eigen::VectorXd to_eigen(const VecZ& v) {
  Eigen::VectorXd r(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r[static_cast<int>(i)] = Rat(v[i]).convert_to<double>();
  return r;
}

namespace {

// ---- exact rational linear algebra (local; only chain construction needs it)

struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rat(0)) {}
  Rat& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  RatMat operator*(const RatMat& o) const {
    RatMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    std::vector<Rat> r(rows, Rat(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
  }
};

// Kernel basis of a rational matrix via Gauss-Jordan.
std::vector<std::vector<Rat>> rat_kernel(RatMat m) {
  const int rows = m.rows, cols = m.cols;
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (int j = 0; j < cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = 0; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col_of_row) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t row = 0; row < pivot_col_of_row.size(); ++row) {
      v[pivot_col_of_row[row]] = -m.at(static_cast<int>(row), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incremental exact span for independence tests (row-reduced basis).
struct RatSpan {
  int cols;
  std::vector<std::vector<Rat>> rows;  // reduced, leading entry 1

  explicit RatSpan(int c) : cols(c) {}

  // reduce v against the span; returns true (and absorbs v) when independent
  bool try_add(std::vector<Rat> v) {
    for (const auto& row : rows) {
      int lead = 0;
      while (lead < cols && row[lead] == 0) ++lead;
      if (lead < cols && v[lead] != 0) {
        Rat f = v[lead];
        for (int j = 0; j < cols; ++j) v[j] -= f * row[j];
      }
    }
    int lead = 0;
    while (lead < cols && v[lead] == 0) ++lead;
    if (lead == cols) return false;
    Rat inv = Rat(1) / v[lead];
    for (int j = 0; j < cols; ++j) v[j] *= inv;
    rows.push_back(std::move(v));
    return true;
  }
};

struct Chain {
  std::vector<Eigen::VectorXcd> vectors;  // bottom (eigenvector) first
};

struct Site {
  std::complex<double> lambda;
  int mult = 1;
  bool is_real = true;
  bool is_integer = false;
  long integer_value = 0;
  BlockKind kind = BlockKind::Expanding;
};

std::vector<Chain> exact_integer_chains(const IntMatrix& m, long lambda, int mult) {
  const int n = m.dim();
  RatMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = Rat(m.at(i, j)) - (i == j ? Rat(lambda) : Rat(0));

  std::vector<RatMat> powers{RatMat::identity(n)};
  std::vector<std::vector<std::vector<Rat>>> kernels{{}};  // kernels[j] = ker(A^j)
  int max_j = 0;
  for (int j = 1; j <= n; ++j) {
    powers.push_back(powers.back() * a);
    kernels.push_back(rat_kernel(powers[j]));
    if (static_cast<int>(kernels[j].size()) == mult) {
      max_j = j;
      break;
    }
  }
  if (max_j == 0) throw JordanUnstable("exact chain construction: nullity never reached multiplicity");

  struct Top {
    std::vector<Rat> v;
    int height;
  };
  std::vector<Top> tops;
  for (int j = max_j; j >= 1; --j) {
    // exclude ker(A^{j-1}) plus the height-j images of taller chains
    RatSpan level(n);
    for (const auto& base : kernels[j - 1]) level.try_add(base);
    for (const Top& t : tops) {
      level.try_add(powers[t.height - j].apply(t.v));
    }
    for (const auto& cand : kernels[j]) {
      if (level.try_add(cand)) tops.push_back({cand, j});
    }
  }

  std::vector<Chain> chains;
  for (const Top& t : tops) {
    Chain c;
    for (int h = t.height - 1; h >= 0; --h) {
      std::vector<Rat> vec = powers[h].apply(t.v);
      Eigen::VectorXcd col(n);
      for (int i = 0; i < n; ++i) col[i] = std::complex<double>(vec[i].convert_to<double>(), 0.0);
      c.vectors.push_back(col);
    }
    chains.push_back(std::move(c));
  }
  std::sort(chains.begin(), chains.end(),
            [](const Chain& x, const Chain& y) { return x.vectors.size() > y.vectors.size(); });
  return chains;
}

// deterministic phase fix: rotate/scale so the largest component is 1
void canonicalize_vector(Eigen::VectorXcd& v) {
  int imax = 0;
  double best = -1;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      imax = i;
    }
  }
  if (best <= 0) return;
  v /= v[imax];
  v /= v.norm();
}

Eigen::VectorXcd smallest_singular_vector(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  Eigen::VectorXcd v = svd.matrixV().col(a.cols() - 1);
  canonicalize_vector(v);
  return v;
}

int guarded_numerical_nullity(const Eigen::MatrixXcd& a, std::vector<Eigen::VectorXcd>* kernel) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  const int n = static_cast<int>(sv.size());
  double scale = std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  double tau = 1e-8 * scale;
  int rank = 0;
  while (rank < n && sv[rank] >= tau) ++rank;
  // the decision must be backed by a clear spectral gap
  if (rank > 0 && rank < n && sv[rank - 1] / std::max(sv[rank], 1e-300) < 1e4) {
    throw JordanUnstable("numerical rank decision is ambiguous");
  }
  if (kernel) {
    kernel->clear();
    for (int i = rank; i < n; ++i) {
      Eigen::VectorXcd v = svd.matrixV().col(i);
      canonicalize_vector(v);
      kernel->push_back(v);
    }
  }
  return n - rank;
}

std::vector<Chain> numerical_chains(const Eigen::MatrixXcd& md, std::complex<double> lambda,
                                    int mult) {
  const int n = static_cast<int>(md.rows());
  Eigen::MatrixXcd a = md - lambda * Eigen::MatrixXcd::Identity(n, n);
  std::vector<Eigen::MatrixXcd> powers{Eigen::MatrixXcd::Identity(n, n)};
  std::vector<std::vector<Eigen::VectorXcd>> kernels{{}};
  int max_j = 0;
  for (int j = 1; j <= n; ++j) {
    powers.push_back(powers.back() * a);
    std::vector<Eigen::VectorXcd> ker;
    int nullity = guarded_numerical_nullity(powers[j], &ker);
    kernels.push_back(std::move(ker));
    if (nullity == mult) {
      max_j = j;
      break;
    }
    if (nullity > mult) throw JordanUnstable("numerical nullity exceeded the multiplicity");
  }
  if (max_j == 0) throw JordanUnstable("numerical nullity never reached the multiplicity");

  struct Top {
    Eigen::VectorXcd v;
    int height;
  };
  std::vector<Top> tops;
  for (int j = max_j; j >= 1; --j) {
    // orthonormal basis of the span to exclude: ker(A^{j-1}) + images of taller tops
    std::vector<Eigen::VectorXcd> span;
    auto add_to_span = [&](Eigen::VectorXcd v) -> bool {
      for (const auto& s : span) v -= s.dot(v) * s;
      double r = v.norm();
      if (r < 1e-6) return false;
      if (r < 1e-2) throw JordanUnstable("chain independence decision is ambiguous");
      span.push_back(v / r);
      return true;
    };
    for (const auto& b : kernels[j - 1]) add_to_span(b);
    for (const Top& t : tops) add_to_span(powers[t.height - j] * t.v);
    for (const auto& cand : kernels[j]) {
      Eigen::VectorXcd c = cand;
      if (add_to_span(c)) tops.push_back({cand, j});
    }
  }
  std::vector<Chain> chains;
  for (const Top& t : tops) {
    Chain c;
    for (int h = t.height - 1; h >= 0; --h) {
      Eigen::VectorXcd col = powers[h] * t.v;
      c.vectors.push_back(col);
    }
    chains.push_back(std::move(c));
  }
  std::sort(chains.begin(), chains.end(),
            [](const Chain& x, const Chain& y) { return x.vectors.size() > y.vectors.size(); });
  return chains;
}

struct PendingBlock {
  BlockDescriptor desc;
  std::vector<Eigen::VectorXd> columns;
};

int kind_rank(BlockKind k) {
  switch (k) {
    case BlockKind::Expanding: return 0;
    case BlockKind::UnimodularComplex:
    case BlockKind::UnimodularReal: return 1;
    case BlockKind::Contracting: return 2;
  }
  return 3;
}

}  // namespace

JordanPlan real_jordan(const IntMatrix& m, const SpectralSplit& split, double tol) {
  const int n = m.dim();
  if (m.det() == 0) throw SingularMatrixError("real_jordan: singular matrix");
  if (split.dims[0] + split.dims[1] + split.dims[2] != n) {
    throw InputError("real_jordan: split does not match the matrix dimension");
  }

  std::vector<Site> sites;
  auto collect = [&](const std::vector<RootEntry>& list, BlockKind real_kind, BlockKind complex_kind) {
    for (const RootEntry& e : list) {
      if (!e.is_real && e.lambda.imag() <= 0) continue;  // one site per conjugate pair
      Site s;
      s.lambda = e.lambda;
      s.mult = e.multiplicity;
      s.is_real = e.is_real;
      s.is_integer = e.is_integer;
      s.integer_value = e.integer_value;
      s.kind = e.is_real ? real_kind : complex_kind;
      sites.push_back(s);
    }
  };
  collect(split.expanding, BlockKind::Expanding, BlockKind::Expanding);
  collect(split.unimodular, BlockKind::UnimodularReal, BlockKind::UnimodularComplex);
  collect(split.contracting, BlockKind::Contracting, BlockKind::Contracting);

  Eigen::MatrixXd md = to_eigen(m);
  Eigen::MatrixXcd mc = md.cast<std::complex<double>>();

  std::vector<PendingBlock> pending;
  for (const Site& site : sites) {
    std::vector<Chain> chains;
    if (site.is_integer) {
      chains = exact_integer_chains(m, site.integer_value, site.mult);
    } else if (site.mult == 1) {
      Chain c;
      Eigen::MatrixXcd a = mc - site.lambda * Eigen::MatrixXcd::Identity(n, n);
      c.vectors.push_back(smallest_singular_vector(a));
      chains.push_back(std::move(c));
    } else {
      chains = numerical_chains(mc, site.lambda, site.mult);
    }
    for (const Chain& chain : chains) {
      PendingBlock blk;
      blk.desc.lambda = site.lambda;
      blk.desc.kind = site.kind;
      blk.desc.is_complex = !site.is_real;
      const int h = static_cast<int>(chain.vectors.size());
      blk.desc.size = site.is_real ? h : 2 * h;
      for (const Eigen::VectorXcd& v : chain.vectors) {
        if (site.is_real) {
          blk.columns.push_back(v.real());
        } else {
          blk.columns.push_back(v.imag());
          blk.columns.push_back(v.real());
        }
      }
      // one common scale per block keeps the chain relations intact
      double maxnorm = 0;
      for (const auto& col : blk.columns) maxnorm = std::max(maxnorm, col.norm());
      if (maxnorm <= 0) throw JordanUnstable("degenerate chain vector");
      for (auto& col : blk.columns) col /= maxnorm;
      pending.push_back(std::move(blk));
    }
  }

  std::sort(pending.begin(), pending.end(), [](const PendingBlock& a, const PendingBlock& b) {
    int ra = kind_rank(a.desc.kind), rb = kind_rank(b.desc.kind);
    if (ra != rb) return ra < rb;
    double ma = a.desc.modulus(), mb = b.desc.modulus();
    if (ma != mb) return ma > mb;
    if (a.desc.size != b.desc.size) return a.desc.size > b.desc.size;
    if (a.desc.lambda.real() != b.desc.lambda.real()) return a.desc.lambda.real() < b.desc.lambda.real();
    return a.desc.lambda.imag() < b.desc.lambda.imag();
  });

  JordanPlan plan;
  plan.dim = n;
  plan.tol = tol;
  Eigen::MatrixXd pinv(n, n);
  int offset = 0;
  for (PendingBlock& blk : pending) {
    blk.desc.offset = offset;
    for (const auto& col : blk.columns) {
      if (offset >= n) throw JordanUnstable("chain columns exceed the dimension");
      pinv.col(offset++) = col;
    }
    plan.blocks.push_back(blk.desc);
  }
  if (offset != n) throw JordanUnstable("chain columns do not fill the dimension");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(pinv);
  if (!lu.isInvertible()) throw JordanUnstable("Jordan basis is numerically singular");
  plan.Pinv = pinv;
  plan.P = lu.inverse();

  // J assembled exactly from the block descriptors
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (const BlockDescriptor& b : plan.blocks) {
    if (!b.is_complex) {
      for (int i = 0; i < b.size; ++i) {
        j(b.offset + i, b.offset + i) = b.lambda.real();
        if (i + 1 < b.size) j(b.offset + i, b.offset + i + 1) = 1.0;
      }
    } else {
      double a = b.lambda.real(), bb = b.lambda.imag();
      for (int p = 0; p < b.size / 2; ++p) {
        int o = b.offset + 2 * p;
        j(o, o) = a;
        j(o, o + 1) = -bb;
        j(o + 1, o) = bb;
        j(o + 1, o + 1) = a;
        if (2 * (p + 1) < b.size) {
          j(o, o + 2) = 1.0;
          j(o + 1, o + 3) = 1.0;
        }
      }
    }
  }
  plan.J = j;

  Eigen::MatrixXd res = plan.P * md * plan.Pinv - j;
  plan.residual = res.cwiseAbs().rowwise().sum().maxCoeff();
  if (plan.residual > tol) {
    throw JordanUnstable("Jordan residual exceeds tolerance");
  }
  return plan;
}

JordanPlan scale_lattice(JordanPlan plan, unsigned long seed) {
  const int n = plan.dim;
  double opnorm = plan.P.cwiseAbs().rowwise().sum().maxCoeff();
  if (opnorm <= 0) throw JordanUnstable("scale_lattice: degenerate P");
  // rounding bound: a coordinate-rounded preimage lands within
  // (alpha/2)*||P||_inf of any target; shrink below 1/3 with safety margin
  double alpha = (2.0 / 3.0) * (1.0 - 1e-6) / opnorm;
  plan.P *= alpha;
  plan.Pinv /= alpha;
  plan.alpha *= alpha;
  plan.rounding_bound = alpha * opnorm / 2.0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-100, 100);
  double maxdev = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z[i] = coord(rng);
    Eigen::VectorXd c = plan.Pinv * z;
    for (int i = 0; i < n; ++i) c[i] = std::llround(c[i]);
    double dev = (z - plan.P * c).cwiseAbs().maxCoeff();
    maxdev = std::max(maxdev, dev);
  }
  plan.sampled_max_deviation = maxdev;
  plan.closeness_certified = plan.rounding_bound < 1.0 / 3.0 && maxdev < 1.0 / 3.0;
  if (!plan.closeness_certified) {
    throw CloseLatticeViolation("scale_lattice failed to certify closeness");
  }
  return plan;
}

Eigen::VectorXd project(const JordanPlan& plan, const Eigen::VectorXd& x, SubspacePart part) {
  Eigen::VectorXd y = plan.P * x;
  for (const BlockDescriptor& b : plan.blocks) {
    bool keep = (part == SubspacePart::Expanding && b.kind == BlockKind::Expanding) ||
                (part == SubspacePart::Unimodular && (b.kind == BlockKind::UnimodularComplex ||
                                                      b.kind == BlockKind::UnimodularReal)) ||
                (part == SubspacePart::Contracting && b.kind == BlockKind::Contracting);
    if (!keep) {
      for (int i = 0; i < b.size; ++i) y[b.offset + i] = 0.0;
    }
  }
  return plan.Pinv * y;
}

VecZ nearest_lattice_preimage(const JordanPlan& plan, const Eigen::VectorXd& target) {
  Eigen::VectorXd c = plan.Pinv * target;
  VecZ out(plan.dim);
  for (int i = 0; i < plan.dim; ++i) out[i] = static_cast<long long>(std::llround(c[i]));
  return out;
}

Eigen::VectorXd lattice_point(const JordanPlan& plan, const VecZ& c) {
  return plan.P * to_eigen(c);
}

}  // namespace matnum
