#pragma once

#include <string>

#include "isomono/connection.hpp"
#include "isomono/curve.hpp"
#include "isomono/derham.hpp"
#include "isomono/galois.hpp"
#include "isomono/problem.hpp"

namespace isomono {

enum class ReportFormat { human, json };

/// JSON: two-space indent, keys sorted. Human: indented "key: value" lines
/// with matrices one row per line. Both are deterministic.
std::string emit_report(const Json& report, ReportFormat format);

Json to_json(const IntegrabilityReport& r);
Json to_json(const H1Class& c);
Json to_json(const ReductionResult& r);
Json to_json(const TelescoperResult& r);
Json to_json(const CurveClass& c);
Json to_json(const PicardFuchsResult& r);
Json to_json(const GaloisDescriptor& d);
/// Matrices of the system in the stored convention.
Json to_json(const ConnectionSystem& s, bool dual);
Json to_json(const FlattenResult& r, bool dual);

const char* to_string(CheckMode m);
const char* to_string(FlattenResult::Status s);

}  // namespace isomono
