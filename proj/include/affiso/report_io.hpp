#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "affiso/demo.hpp"
#include "affiso/functionals.hpp"
#include "affiso/measures.hpp"
#include "affiso/positioning.hpp"
#include "affiso/transforms.hpp"
#include "affiso/verify.hpp"

namespace affiso::cli {

using Json = nlohmann::ordered_json;

/// 17 significant digits, so values round-trip.
std::string format_number(double x);

/// Pretty-printed JSON with every double written by format_number and
/// arrays of scalars kept on one line. Non-finite numbers become null.
void write_json(std::ostream& out, const Json& value);

Json samples_json(const CircleFunction& f);
Json to_json(const BodyFunctionals& f);
Json to_json(const InequalityReport& r, double tol);
Json to_json(const PositionResult& r);
Json to_json(const Residual& r);
Json to_json(const InvarianceReport& r);
Json to_json(const SupportDecomposition& d, const CircleFunction& f);

void write_trace_csv(std::ostream& out, const std::vector<DemoStep>& steps);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace affiso::cli
