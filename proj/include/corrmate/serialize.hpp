#pragma once

#include <string>

#include "json.hpp"

#include "corrmate/builders.hpp"
#include "corrmate/conjugacy.hpp"
#include "corrmate/mateability.hpp"
#include "corrmate/regular_set.hpp"
#include "corrmate/signature.hpp"
#include "corrmate/variety.hpp"

namespace corrmate {

using Json = nlohmann::ordered_json;

Json complex_json(cplx z);
Json point_json(const ComplexPoint& z);  // null for infinity
Json matrix_json(const MobiusMap& m);    // [[a, b], [c, d]], row-major

Json to_json(const DerivedInvariants& inv);
Json to_json(const OrbifoldSignature& sig);
Json to_json(const MateabilityReport& report);
Json to_json(const GroupData& group);
Json to_json(const PiecewiseMoebiusMap& map);
Json to_json(const CanonicalExtensionData& ext);
Json to_json(const CriticalPointData& crit);
Json to_json(const ConjugacyResult& result);
Json to_json(const MatingModel& model);
Json to_json(const VarietyPoint& point);
Json to_json(const VarietySolution& solution);
Json to_json(const CorrespondenceInstance& inst);
Json to_json(const OrbitCloud& cloud);
Json to_json(const ComponentMap& map);
Json to_json(const FundamentalCurve& curve);

// Reads {n, a[]} (entries as numbers or [re, im]); beta and residuals are ignored.
ReducedFamilyParams params_from_json(const Json& j);

// Pretty printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace corrmate
