#pragma once

#include "matnum/spectrum.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace matnum {

enum class BlockKind { Expanding, UnimodularComplex, UnimodularReal, Contracting };

const char* block_kind_name(BlockKind k);

struct BlockDescriptor {
  BlockKind kind = BlockKind::Expanding;
  int size = 1;                       // real dimension of the block
  std::complex<double> lambda{0, 0};  // eigenvalue (a, b); b > 0 for complex blocks
  bool is_complex = false;            // built from 2x2 rotation-scaling cells
  int offset = 0;                     // first Jordan coordinate owned by the block

  double modulus() const { return std::abs(lambda); }
  double angle() const { return std::atan2(lambda.imag(), lambda.real()); }
  int chain_length() const { return is_complex ? size / 2 : size; }
};

// Fixed perturbation budgets: the paper's eps ball is open of radius 1/3 in
// the sup norm, which caps each coordinate pair at 1/2 in the Euclidean norm.
struct PerturbationBudget {
  double eps_bound = 1.0 / 3.0;
  double e_inf = 1.0 / 3.0;
  double e2 = 0.5;
  double e_c = 0.0;  // contracting-norm value, filled per block by the digits module
};

struct JordanPlan {
  int dim = 0;
  std::vector<BlockDescriptor> blocks;
  Eigen::MatrixXd P;     // lattice is P Z^m (alpha already folded into P)
  Eigen::MatrixXd Pinv;
  Eigen::MatrixXd J;     // block diagonal, assembled from the descriptors
  double residual = 0.0;  // induced sup-norm of P M P^{-1} - J
  double tol = 0.0;
  double alpha = 1.0;
  bool closeness_certified = false;
  double rounding_bound = 0.0;         // a-priori deviation bound, < 1/3 once scaled
  double sampled_max_deviation = 0.0;  // over the randomized certificate sample

  bool has_block(BlockKind k) const;
};

// Real Jordan form J = P M P^{-1} with block order expanding, unimodular,
// contracting.  Chain structure for integer eigenvalues comes from exact
// ranks over the rationals; simple irrational eigenvalues use SVD null
// vectors; defective irrational eigenvalues go through a guarded numerical
// construction that throws JordanUnstable when rank decisions are ambiguous
// or the residual exceeds tol.
JordanPlan real_jordan(const IntMatrix& m, const SpectralSplit& split, double tol = 1e-8);

// Rescale P so that the lattice P Z^m is close to Z^m: every integer vector
// within sup-distance < 1/3 of the lattice.  Establishes the rounding-bound
// certificate and a randomized sample of deviations.
JordanPlan scale_lattice(JordanPlan plan, unsigned long seed = 12345);

enum class SubspacePart { Expanding, Unimodular, Contracting };

// pi_e / pi_u / pi_c: zero all Jordan coordinates outside the requested class.
Eigen::VectorXd project(const JordanPlan& plan, const Eigen::VectorXd& x, SubspacePart part);

// Integer preimage c of the lattice point P c nearest to the target (by
// coordinate rounding; within the certified bound when the plan is scaled).
VecZ nearest_lattice_preimage(const JordanPlan& plan, const Eigen::VectorXd& target);
Eigen::VectorXd lattice_point(const JordanPlan& plan, const VecZ& c);

Eigen::MatrixXd to_eigen(const IntMatrix& m);
Eigen::VectorXd to_eigen(const VecZ& v);

}  // namespace matnum
