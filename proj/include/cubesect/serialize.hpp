#pragma once

#include <json.hpp>

#include "cubesect/casework.hpp"
#include "cubesect/criticality.hpp"
#include "cubesect/density.hpp"
#include "cubesect/oracles.hpp"
#include "cubesect/search.hpp"
#include "cubesect/section.hpp"

// JSON conversions. Doubles are written with round-trip precision, so
// from_json(to_json(x)) reproduces x exactly. None of these types is
// default-constructible, hence the adl_serializer specializations.

namespace nlohmann {

#define CUBESECT_JSON_SERIALIZER(Type)         \
  template <>                                  \
  struct adl_serializer<Type> {                \
    static void to_json(json& j, const Type& x); \
    static Type from_json(const json& j);      \
  }

CUBESECT_JSON_SERIALIZER(cubesect::WeightVector);
CUBESECT_JSON_SERIALIZER(cubesect::PiecewisePolynomial);
CUBESECT_JSON_SERIALIZER(cubesect::SectionReport);
CUBESECT_JSON_SERIALIZER(cubesect::CriticalityReport);
CUBESECT_JSON_SERIALIZER(cubesect::CriticalPoint);
CUBESECT_JSON_SERIALIZER(cubesect::QuadratureEstimate);
CUBESECT_JSON_SERIALIZER(cubesect::MonteCarloEstimate);
CUBESECT_JSON_SERIALIZER(cubesect::UnequalRoot);
CUBESECT_JSON_SERIALIZER(cubesect::TripleRoot);
CUBESECT_JSON_SERIALIZER(cubesect::CaseTag);

#undef CUBESECT_JSON_SERIALIZER

}  // namespace nlohmann

namespace cubesect {

cubesect::Verdict verdict_from_string(const std::string& s);
cubesect::Classification classification_from_string(const std::string& s);
cubesect::N4Case case_from_string(const std::string& s);

}  // namespace cubesect
