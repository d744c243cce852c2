#include "cubesect/serialize.hpp"

#include <string>

#include "cubesect/error.hpp"

namespace cubesect {

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::critical, Verdict::not_critical, Verdict::degenerate_min, Verdict::degenerate_max}) {
    if (s == to_string(v)) return v;
  }
  throw InvalidInput("unknown verdict '" + s + "'");
}

Classification classification_from_string(const std::string& s) {
  for (Classification c : {Classification::global_min, Classification::global_max, Classification::local_max,
                           Classification::local_min, Classification::saddle, Classification::undetermined}) {
    if (s == to_string(c)) return c;
  }
  throw InvalidInput("unknown classification '" + s + "'");
}

N4Case case_from_string(const std::string& s) {
  for (N4Case c : {N4Case::A, N4Case::B, N4Case::C, N4Case::D}) {
    if (s == to_string(c)) return c;
  }
  throw InvalidInput("unknown case '" + s + "'");
}

}  // namespace cubesect

namespace nlohmann {

using namespace cubesect;

void adl_serializer<WeightVector>::to_json(json& j, const WeightVector& x) {
  j = std::vector<double>(x.coords().begin(), x.coords().end());
}

WeightVector adl_serializer<WeightVector>::from_json(const json& j) {
  return WeightVector(j.get<std::vector<double>>());
}

void adl_serializer<PiecewisePolynomial>::to_json(json& j, const PiecewisePolynomial& x) {
  j = json{{"breakpoints", std::vector<double>(x.breakpoints().begin(), x.breakpoints().end())},
           {"pieces", x.pieces()},
           {"basis", "midpoint-local"}};
}

PiecewisePolynomial adl_serializer<PiecewisePolynomial>::from_json(const json& j) {
  if (j.value("basis", std::string("midpoint-local")) != "midpoint-local") {
    throw InvalidInput("unsupported polynomial basis");
  }
  return PiecewisePolynomial(j.at("breakpoints").get<std::vector<double>>(),
                             j.at("pieces").get<std::vector<std::vector<double>>>());
}

void adl_serializer<SectionReport>::to_json(json& j, const SectionReport& x) {
  json slabs = json::array();
  for (const auto& s : x.slab_checks) {
    slabs.push_back(s ? json{{"lhs", s->lhs}, {"rhs", s->rhs}} : json(nullptr));
  }
  j = json{{"direction", x.direction},
           {"volume", x.volume},
           {"sigma", x.sigma},
           {"cone_volumes", x.cone_volumes},
           {"facet_section_volumes", x.facet_section_volumes},
           {"degenerate_facets", x.degenerate_facets},
           {"slab_checks", slabs}};
}

SectionReport adl_serializer<SectionReport>::from_json(const json& j) {
  SectionReport r{j.at("direction").get<WeightVector>()};
  r.volume = j.at("volume").get<double>();
  r.sigma = j.at("sigma").get<double>();
  r.cone_volumes = j.at("cone_volumes").get<std::vector<double>>();
  r.facet_section_volumes = j.at("facet_section_volumes").get<std::vector<double>>();
  r.degenerate_facets = j.at("degenerate_facets").get<std::vector<bool>>();
  for (const auto& s : j.at("slab_checks")) {
    if (s.is_null()) {
      r.slab_checks.emplace_back();
    } else {
      r.slab_checks.emplace_back(SlabCheck{s.at("lhs").get<double>(), s.at("rhs").get<double>()});
    }
  }
  return r;
}

void adl_serializer<CriticalityReport>::to_json(json& j, const CriticalityReport& x) {
  j = json{{"direction", x.direction},
           {"sigma", x.sigma},
           {"lambda", x.lambda},
           {"mu", x.mu},
           {"residuals", x.residuals},
           {"max_residual", x.max_residual},
           {"interior", x.interior},
           {"verdict", to_string(x.verdict)},
           {"tolerance", x.tolerance},
           {"zero_coordinates", x.zero_coordinates}};
}

CriticalityReport adl_serializer<CriticalityReport>::from_json(const json& j) {
  CriticalityReport r{j.at("direction").get<WeightVector>()};
  r.sigma = j.at("sigma").get<double>();
  r.lambda = j.at("lambda").get<double>();
  r.mu = j.at("mu").get<double>();
  r.residuals = j.at("residuals").get<std::vector<double>>();
  r.max_residual = j.at("max_residual").get<double>();
  r.interior = j.at("interior").get<bool>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.tolerance = j.at("tolerance").get<double>();
  r.zero_coordinates = j.at("zero_coordinates").get<std::vector<std::size_t>>();
  return r;
}

void adl_serializer<CriticalPoint>::to_json(json& j, const CriticalPoint& x) {
  j = json{{"canonical", x.canonical},
           {"sigma", x.sigma},
           {"volume", x.volume},
           {"classification", to_string(x.classification)},
           {"basin_count", x.basin_count},
           {"diagonal_k", x.diagonal_k ? json(*x.diagonal_k) : json(nullptr)},
           {"seeds", x.seeds},
           {"hessian_eigenvalues", x.hessian_eigenvalues},
           {"iterations", x.iterations}};
}

CriticalPoint adl_serializer<CriticalPoint>::from_json(const json& j) {
  CriticalPoint p{j.at("canonical").get<WeightVector>()};
  p.sigma = j.at("sigma").get<double>();
  p.volume = j.at("volume").get<double>();
  p.classification = classification_from_string(j.at("classification").get<std::string>());
  p.basin_count = j.at("basin_count").get<std::size_t>();
  if (!j.at("diagonal_k").is_null()) p.diagonal_k = j.at("diagonal_k").get<std::size_t>();
  p.seeds = j.at("seeds").get<std::vector<std::size_t>>();
  p.hessian_eigenvalues = j.at("hessian_eigenvalues").get<std::vector<double>>();
  p.iterations = j.at("iterations").get<int>();
  return p;
}

void adl_serializer<QuadratureEstimate>::to_json(json& j, const QuadratureEstimate& x) {
  j = json{{"value", x.value},
           {"truncation", x.truncation},
           {"panels", x.panels},
           {"tail_bound", x.tail_bound},
           {"tail_correction", x.tail_correction}};
}

QuadratureEstimate adl_serializer<QuadratureEstimate>::from_json(const json& j) {
  return {j.at("value").get<double>(), j.at("truncation").get<double>(), j.at("panels").get<std::size_t>(),
          j.at("tail_bound").get<double>(), j.at("tail_correction").get<double>()};
}

void adl_serializer<MonteCarloEstimate>::to_json(json& j, const MonteCarloEstimate& x) {
  j = json{{"mean", x.mean},
           {"std_error", x.std_error},
           {"samples", x.samples},
           {"slab_halfwidth", x.slab_halfwidth}};
}

MonteCarloEstimate adl_serializer<MonteCarloEstimate>::from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("std_error").get<double>(), j.at("samples").get<std::uint64_t>(),
          j.at("slab_halfwidth").get<double>()};
}

void adl_serializer<UnequalRoot>::to_json(json& j, const UnequalRoot& x) {
  j = json{{"a1", x.a1}, {"a3", x.a3}, {"a4", x.a4}, {"residuals", x.residuals}};
}

UnequalRoot adl_serializer<UnequalRoot>::from_json(const json& j) {
  return {j.at("a1").get<double>(), j.at("a3").get<double>(), j.at("a4").get<double>(),
          j.at("residuals").get<std::array<double, 3>>()};
}

void adl_serializer<TripleRoot>::to_json(json& j, const TripleRoot& x) {
  j = json{{"a1", x.a1}, {"a4", x.a4}, {"residuals", x.residuals}, {"satisfies_bound", x.satisfies_bound}};
}

TripleRoot adl_serializer<TripleRoot>::from_json(const json& j) {
  return {j.at("a1").get<double>(), j.at("a4").get<double>(), j.at("residuals").get<std::array<double, 2>>(),
          j.at("satisfies_bound").get<bool>()};
}

void adl_serializer<CaseTag>::to_json(json& j, const CaseTag& x) {
  json cases = json::array();
  for (N4Case c : x.cases) cases.push_back(to_string(c));
  j = json{{"cases", cases}, {"sum_gap", x.sum_gap}, {"cross_gap", x.cross_gap}};
}

CaseTag adl_serializer<CaseTag>::from_json(const json& j) {
  CaseTag t;
  for (const auto& c : j.at("cases")) t.cases.push_back(case_from_string(c.get<std::string>()));
  t.sum_gap = j.at("sum_gap").get<double>();
  t.cross_gap = j.at("cross_gap").get<double>();
  return t;
}

}  // namespace nlohmann
