#pragma once

#include <json.hpp>

#include "kapranov/forgetful.hpp"
#include "kapranov/geomcheck.hpp"
#include "kapranov/numerics.hpp"
#include "kapranov/picard.hpp"

namespace kapranov {

// Output uses nlohmann::json, whose objects keep keys sorted.
using Json = nlohmann::json;

Json to_json(const IndexSet& s);
Json to_json(const BoundaryLabel& l);
Json to_json(const DivisorClass& d);
Json to_json(const ForgetfulMorphism& m);
Json to_json(const CurveNumerics& c);
Json to_json(const LinearSubspace& s);
Json to_json(const RationalConfig& c);
Json to_json(const LinearForm& f);
Json to_json(const FiberDescriptor& d);
Json to_json(const Vec& v);

/// Readers throw Error(Errc::Parse) on schema violations.
IndexSet index_set_from_json(int n, const Json& j);
ForgetfulMorphism morphism_from_json(const Json& j);
/// Only reads the sets; validation is left to the caller.
std::vector<std::vector<int>> sets_from_json(const Json& j);
CurveNumerics numerics_from_json(const Json& j);
RationalConfig config_from_json(const Json& j);
Vec point_from_json(const Json& j);

}  // namespace kapranov
