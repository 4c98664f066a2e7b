#pragma once

#include "matnum/encoder.hpp"

#include <optional>
#include <vector>

namespace matnum {

// Exhaustive ground truth at desk scale; used to validate the encoders and
// the decider, and by the CLI verify command.

// All values sum_{k in window} M^k d_k with at most max_terms nonzero
// digits, decoded exactly and deduplicated.  Sorted canonically.
std::vector<ScaledVector> brute_force_reachable(const IntMatrix& m, const DigitSet& alphabet,
                                                const SearchBudget& budget);

// First representation of z in the canonical enumeration order (term count,
// then digit string read from the highest exponent down), or NotFound within
// the budget.  Meet-in-the-middle over the exponent window.
EncodeResult brute_force_encode(const IntMatrix& m, const ScaledVector& z,
                                const DigitSet& alphabet, const SearchBudget& budget);

}  // namespace matnum
