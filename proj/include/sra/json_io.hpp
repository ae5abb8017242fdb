#pragma once

#include <json.hpp>

#include <optional>

#include "sra/continuation.hpp"
#include "sra/wreath.hpp"

namespace sra {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"order": l, "coeffs": ["p/q", ...]}; plain "p/q" accepted (and emitted)
// for rational values.
Json cyclo_json(const Cyclotomic& v);
Cyclotomic cyclo_from_json(const Json& j, long long expected_order);

Json root_json(const RootVec& v);
RootVec root_from_json(const Json& j);

Json quiver_json(const Quiver& q);
Json lambda_json(const LambdaVector& l);
LambdaVector lambda_from_json(const Json& j, long long ell);
Json class_param_json(const ClassParameter& c);

Json matrix_json(const CMatrix& m);
Json simple_json(const SimpleModule& m);
Json hyperplane_json(const Hyperplane& h, long long ell);
Json subspace_json(const AffineSubspace& s);
Json linear_form_json(const LinearFormKC& f);
Json relation_report_json(const RelationReport& r);
Json deformation_report_json(const DeformationReport& r, const CyclicGroup& g);
Json continuation_json(const ContinuationResult& r);

// Job description for the composite deform / trace-check / continue commands:
// { "ell": l, "lambda": [...], "composition": [...], "partitions": [[...]...],
//   "roots": [[...]...], "step"?: float, "direction"?: [...] }
struct DeformJob {
    long long ell = 2;
    LambdaVector lambda;
    std::vector<long long> composition;
    std::vector<Partition> partitions;
    std::vector<RootVec> roots;
    std::optional<double> step;
    std::optional<std::vector<Cyclotomic>> direction;
};

DeformJob deform_job_from_json(const Json& j);  // throws usage errors on schema violations
Json deform_job_json(const DeformJob& job);

}  // namespace sra
