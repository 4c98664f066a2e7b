#pragma once

#include "matnum/decider.hpp"
#include "matnum/digits.hpp"
#include "matnum/encoder.hpp"

#include "json.hpp"

#include <string>

namespace matnum {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers when they fit 64 bits and as decimal
// strings beyond that; both forms parse back.
Json to_json(const Int& v);
Int int_from_json(const Json& j);
Json to_json(const VecZ& v);
VecZ vecz_from_json(const Json& j);

// Matrix literal: JSON array of rows, e.g. [[2,1],[2,2]].
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json to_json(const ScaledVector& v);
ScaledVector scaled_from_json(const Json& j);

Json digitset_to_json(const DigitSet& ds, const Json& provenance = Json());
DigitSet digitset_from_json(const Json& j);

Json plan_to_json(const JordanPlan& plan);
JordanPlan plan_from_json(const Json& j);

// Representation file: { "matrix": rows, "alphabet": digit list,
// "terms": [[k, digit-vector], ...] }; decode is exact from this file.
Json representation_to_json(const IntMatrix& m, const Representation& rep,
                            const DigitSet& alphabet);

struct RepresentationFile {
  IntMatrix matrix;
  DigitSet alphabet;
  Representation rep;
};
RepresentationFile representation_from_json(const Json& j);

Json verdict_to_json(const EqualityVerdict& v);

// Synthesis provenance: the constants behind the alphabet (K_i, beta, gamma,
// C, alpha, residual, per-block digit data).
Json system_provenance(const NumerationSystem& sys);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace matnum
