#pragma once

#include "matnum/jordan.hpp"

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace matnum {

enum class DigitFrame { MCoordinates, LatticePreimage, JordanInteger };

const char* digit_frame_name(DigitFrame f);

// Finite list of integer digit vectors.  Canonical order: the zero digit at
// index 0, the rest sorted lexicographically; this keeps serialization and
// golden files stable.
struct DigitSet {
  int dim = 0;
  std::vector<VecZ> digits;
  int zero_index = 0;
  DigitFrame frame = DigitFrame::MCoordinates;

  std::size_t size() const { return digits.size(); }
  const VecZ& zero() const { return digits[zero_index]; }
  std::string id() const;  // short content hash used as alphabet reference
};

void canonicalize(DigitSet& ds);

// Hash-backed digit -> index lookup.
class DigitIndex {
 public:
  explicit DigitIndex(const DigitSet& ds);
  int find(const VecZ& d) const;  // -1 when absent

 private:
  std::unordered_map<VecZ, int, VecZHash> map_;
};

struct PairConstants {
  double K = 0;  // index-function threshold
  long q = 0;    // claim-1 digit scale backing this threshold
};

// Per-block synthesis data: thresholds for unimodular blocks, the weighted
// contraction norm data for contracting blocks, the box radius for
// expanding blocks, and the block-local digit set in Jordan coordinates.
struct BlockPlan {
  BlockDescriptor block;
  std::vector<PairConstants> pairs;  // index 0 = topmost pair/coordinate (largest K)
  double beta = 0, delta = 0, gamma = 0, e_c = 0, c_k = 0;
  long box_radius = 0;
  DigitSet digits;
  double C = 0;  // remainder bound contributed by this block
};

// The five digits (0,0), (+-3q,0), (0,+-3q).
DigitSet claim1_digits(long q);

// Digit b with ||z-b|| <= 6q or ||z-b|| <= ||z|| - q: the aligned digit of
// the dominant coordinate when it reaches 3q, the zero digit otherwise;
// dominant ties resolved toward the lexicographically smallest digit.
VecZ claim1_select(double z1, double z2, long q);

struct Claim2Result {
  long q = 0;
  double c2 = 0;
  DigitSet digits;
};

// q = smallest integer >= c1 + 1 and c2 = 6q + 1/2, with claim-1 digits.
Claim2Result claim2_constants(double c1);

// Backward recursion K_l (from c1 = 0) up to K_1, five digits per pair.
BlockPlan unit_complex_block_plan(const BlockDescriptor& block);

// All 3^m sign vectors.
DigitSet unit_real_block_digits(int size);

// One-dimensional analogue of the claim-2 recursion for lambda = +-1.
BlockPlan unit_real_block_plan(const BlockDescriptor& block);

// beta = (1+|lambda|)/2, weighted pairwise norm with geometric weights,
// gamma = (1/2 + E)/(1 - beta), digit set {0}.
BlockPlan contract_block_plan(const BlockDescriptor& block);

// All integer vectors in the sup-norm box of radius 2|lambda| + 2 + E.
DigitSet expand_block_digits(const BlockDescriptor& block);
BlockPlan expand_block_plan(const BlockDescriptor& block);

BlockPlan make_block_plan(const BlockDescriptor& block);

// Jordan block matrix of a descriptor (used for digit decisions).
Eigen::MatrixXd block_jordan_matrix(const BlockDescriptor& block);

// Weighted contraction norm ||x||_c = max_j delta^{-j} rho_j(x).
double contracting_norm(const BlockPlan& bp, const Eigen::VectorXd& x);

// Index function of Definition "ind": largest pair/coordinate position whose
// tracked norm reaches its threshold K_i (1-based; 0 when all are below).
int unit_block_ind(const BlockPlan& bp, const Eigen::VectorXd& x);
double unit_block_level_norm(const Eigen::VectorXd& x, const BlockPlan& bp, int level);

// Digit selection for one block of the constructive encoder, given the
// block's Jordan coordinates of the current state.
VecZ select_block_digit(const BlockPlan& bp, const Eigen::VectorXd& xblock);

// Cartesian composition of the per-block digit sets plus C = max_k C_k.
std::pair<DigitSet, double> compose_alphabet(const std::vector<BlockPlan>& plans,
                                             const JordanPlan& plan);

// Replace each integer digit by the preimage of a lattice point within
// sup-distance < 1/3; duplicates merged.
DigitSet round_to_lattice(const DigitSet& d_tilde, const JordanPlan& plan);
VecZ round_digit_to_lattice(const JordanPlan& plan, const VecZ& d_tilde);

// A = D + B with B = lattice points in the sup-norm ball of radius C,
// returned as integer preimage vectors: the digits actually used with M.
DigitSet final_alphabet(const DigitSet& lattice_digits, double C, const JordanPlan& plan);

// Everything the constructive encoder needs, bundled.
struct NumerationSystem {
  IntMatrix M;
  SpectralSplit split;
  JordanPlan plan;
  std::vector<BlockPlan> block_plans;
  DigitSet d_tilde;                      // composed Jordan-frame digits
  std::vector<VecZ> lattice_by_tilde;    // lattice preimage per d_tilde index
  DigitSet lattice_digits;               // canonical deduped preimage set
  DigitSet alphabet;                     // final alphabet, frame M
  double C = 0;
};

struct SynthesizeOptions {
  double jordan_tol = 1e-8;
  unsigned long seed = 12345;
  int budget_bits = 256;
};

NumerationSystem synthesize(const IntMatrix& m, const SynthesizeOptions& opts = {});

}  // namespace matnum
