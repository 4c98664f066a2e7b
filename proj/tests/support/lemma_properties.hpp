#pragma once

// Property harnesses for the digit-selection guarantees.  Shared between the
// unit tests and the acceptance suite; each returns the number of violations
// observed (zero expected: the inequalities carry slack by construction).

#include "matnum/digits.hpp"

#include <cmath>
#include <random>

namespace matnum::testsupport {

inline Eigen::VectorXd random_eps(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> d(-1.0 / 3.0 + 1e-9, 1.0 / 3.0 - 1e-9);
  Eigen::VectorXd e(dim);
  for (int i = 0; i < dim; ++i) e[i] = d(rng);
  return e;
}

// Claim 1 disjunction on the grid [-10q, 10q]^2 with step q/4.
inline long claim1_violations(long q) {
  long bad = 0;
  const double step = static_cast<double>(q) / 4.0;
  const double lim = 10.0 * static_cast<double>(q);
  for (double z1 = -lim; z1 <= lim + 1e-9; z1 += step) {
    for (double z2 = -lim; z2 <= lim + 1e-9; z2 += step) {
      VecZ b = claim1_select(z1, z2, q);
      double b1 = b[0].convert_to<double>(), b2 = b[1].convert_to<double>();
      double dist = std::hypot(z1 - b1, z2 - b2);
      double norm = std::hypot(z1, z2);
      bool ok = dist <= 6.0 * q + 1e-12 || dist <= norm - q + 1e-12;
      if (!ok) ++bad;
    }
  }
  return bad;
}

// Claim 2 disjunction: z = R u + v with ||v|| <= c1, digit from claim 1.
inline long claim2_violations(double phi, double c1, std::mt19937_64& rng) {
  long bad = 0;
  Claim2Result cr = claim2_constants(c1);
  const double c2 = cr.c2;
  const long q = cr.q;
  std::uniform_real_distribution<double> angle(0, 2 * std::acos(-1.0));
  std::uniform_real_distribution<double> radius(0, c1);
  const double lim = 3.0 * c2;
  const double step = c2 / 6.0;
  for (double u1 = -lim; u1 <= lim + 1e-9; u1 += step) {
    for (double u2 = -lim; u2 <= lim + 1e-9; u2 += step) {
      double a = angle(rng), r = c1 > 0 ? radius(rng) : 0.0;
      double v1 = r * std::cos(a), v2 = r * std::sin(a);
      double z1 = std::cos(phi) * u1 - std::sin(phi) * u2 + v1;
      double z2 = std::sin(phi) * u1 + std::cos(phi) * u2 + v2;
      VecZ b = claim1_select(z1, z2, q);
      double b1 = b[0].convert_to<double>(), b2 = b[1].convert_to<double>();
      double dist = std::hypot(z1 - b1, z2 - b2);
      double unorm = std::hypot(u1, u2);
      bool ok = dist < c2 - 0.5 + 1e-12 || dist < unorm - 1.0 + 1e-12;
      if (!ok) ++bad;
    }
  }
  return bad;
}

inline BlockDescriptor unimodular_complex_block(int ell, double phi) {
  BlockDescriptor b;
  b.kind = BlockKind::UnimodularComplex;
  b.size = 2 * ell;
  b.is_complex = true;
  b.lambda = {std::cos(phi), std::sin(phi)};
  return b;
}

// Lemma "unit": index monotone, and a >= 1/2 decrease of the tracked pair
// norm on plateaus.
inline long lemma_unit_violations(int ell, double phi, int trials, int eps_per_trial,
                                  std::mt19937_64& rng) {
  BlockPlan bp = unit_complex_block_plan(unimodular_complex_block(ell, phi));
  Eigen::MatrixXd j = block_jordan_matrix(bp.block);
  std::uniform_real_distribution<double> coord(-3.0 * bp.pairs[0].K, 3.0 * bp.pairs[0].K);
  long bad = 0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(2 * ell);
    for (int i = 0; i < 2 * ell; ++i) x[i] = coord(rng);
    VecZ d = select_block_digit(bp, x);
    Eigen::VectorXd dd(2 * ell);
    for (int i = 0; i < 2 * ell; ++i) dd[i] = d[i].convert_to<double>();
    int ind_x = unit_block_ind(bp, x);
    for (int e = 0; e < eps_per_trial; ++e) {
      Eigen::VectorXd y = j * x - dd + random_eps(rng, 2 * ell);
      int ind_y = unit_block_ind(bp, y);
      if (ind_y > ind_x) {
        ++bad;
        continue;
      }
      if (ind_y == ind_x && ind_x > 0) {
        double ny = unit_block_level_norm(y, bp, ind_x);
        double nx = unit_block_level_norm(x, bp, ind_x);
        if (ny > nx - 0.5 + 1e-9) ++bad;
      }
    }
  }
  return bad;
}

// Lemma "contract": gamma absorbs, and the norm drops by 1/2 above gamma.
inline long lemma_contract_violations(const BlockDescriptor& block, int trials,
                                      std::mt19937_64& rng) {
  BlockPlan bp = contract_block_plan(block);
  Eigen::MatrixXd j = block_jordan_matrix(block);
  std::uniform_real_distribution<double> coord(-3.0 * bp.gamma, 3.0 * bp.gamma);
  long bad = 0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(block.size);
    for (int i = 0; i < block.size; ++i) x[i] = coord(rng);
    Eigen::VectorXd y = j * x + random_eps(rng, block.size);
    double nx = contracting_norm(bp, x);
    double ny = contracting_norm(bp, y);
    if (nx <= bp.gamma) {
      if (ny > bp.gamma + 1e-9) ++bad;
    } else {
      if (ny > nx - 0.5 + 1e-9) ++bad;
    }
  }
  return bad;
}

// Lemma "expand": the box digit keeps ||x|| <= 1 invariant under any eps.
inline long lemma_expand_violations(const BlockDescriptor& block, double grid_step,
                                    int eps_per_point, std::mt19937_64& rng) {
  BlockPlan bp = expand_block_plan(block);
  Eigen::MatrixXd j = block_jordan_matrix(block);
  long bad = 0;
  std::vector<Eigen::VectorXd> grid;
  Eigen::VectorXd cur(block.size);
  std::function<void(int)> walk = [&](int pos) {
    if (pos == block.size) {
      grid.push_back(cur);
      return;
    }
    for (double v = -1.0; v <= 1.0 + 1e-9; v += grid_step) {
      cur[pos] = v;
      walk(pos + 1);
    }
  };
  walk(0);
  for (const Eigen::VectorXd& x : grid) {
    VecZ d = select_block_digit(bp, x);
    Eigen::VectorXd dd(block.size);
    for (int i = 0; i < block.size; ++i) dd[i] = d[i].convert_to<double>();
    for (int e = 0; e < eps_per_point; ++e) {
      Eigen::VectorXd y = j * x - dd + random_eps(rng, block.size);
      if (y.cwiseAbs().maxCoeff() > 1.0 + 1e-12) ++bad;
    }
  }
  return bad;
}

}  // namespace matnum::testsupport
