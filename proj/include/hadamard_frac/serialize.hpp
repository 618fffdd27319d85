#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hadamard_frac/criterion.hpp"
#include "hadamard_frac/estimate_probe.hpp"
#include "hadamard_frac/frac_kernels.hpp"
#include "hadamard_frac/initial_data.hpp"
#include "hadamard_frac/verify.hpp"

namespace hfrac {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hadamard-frac/1";

/// {"schema": ...} followed by nothing else; callers append their fields in order.
Json schema_object();

Json to_json(const ProblemParams& pp);
Json to_json(const CriterionReport& r);
Json to_json(const ProbeRow& row);
Json to_json(const SweepResult& s);
Json to_json(const VerifyReport& r);
Json to_json(const RadialIntegral& r);
Json to_json(const WeakResiduals& w);

/// Pretty JSON with doubles printed as %.17g (non-finite values become null).
std::string dump_json(const Json& j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

const std::vector<std::string>& probe_csv_header();
/// Header row plus one line per row, CRLF line endings.
std::string probe_csv(const std::vector<ProbeRow>& rows);

}  // namespace hfrac
