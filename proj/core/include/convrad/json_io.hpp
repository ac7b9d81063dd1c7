#pragma once

#include <convrad/cyclic_op.hpp>
#include <convrad/field.hpp>
#include <convrad/index.hpp>
#include <convrad/profile.hpp>
#include <convrad/skeleton.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace convrad {

using ordered_json = nlohmann::ordered_json;

// One instance file: a field, a skeleton, exactly one of a profile or a
// cyclic operator, equation flags, and optionally a growth rule and puncture
// declarations.
struct Instance {
    FieldConfig field;
    CurveSkeleton skeleton;
    std::optional<MultiRadiusProfile> profile;
    std::optional<CyclicOperator> op;
    EquationFlags flags;
    std::optional<GrowthRule> growth;
    std::vector<Puncture> punctures;
};

Instance parse_instance(const std::string& text);
// Canonical serialization: fixed key order, elements sorted by id,
// rationals as "p/q". Deterministic: equal instances serialize
// byte-identically, and parse(serialize(x)) round-trips exactly.
std::string serialize_instance(const Instance& inst);

ordered_json plf_to_json(const PLFunction& f);
PLFunction plf_from_json(const ordered_json& j, const PLDomain& dom);

ordered_json index_report_to_json(const IndexReport& rep);
ordered_json wsh_report_to_json(const WshReport& rep);
ordered_json violations_to_json(const std::vector<Violation>& v);

}  // namespace convrad
