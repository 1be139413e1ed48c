#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "expd/analysis.hpp"
#include "expd/measure.hpp"
#include "expd/tuple.hpp"

namespace expd {

inline constexpr const char* kEngineVersion = "0.1.0";

// A tuple together with its variable names, the unit of file I/O.
// Schema: {"vars": ["x","y"], "entries": ["x^2*y", "x*y^2"]} with an
// optional "meta" object on outputs.
struct NamedTuple {
    std::vector<std::string> vars;
    PolyTuple tuple;
};

NamedTuple tuple_from_json(const nlohmann::json& j);
NamedTuple read_tuple_file(const std::string& path);

nlohmann::json tuple_to_json(const PolyTuple& t, const std::vector<std::string>& vars,
                             nlohmann::json meta = nlohmann::json());

/// Resolves "x" or a numeric index against the variable list.
Direction parse_direction(const std::string& token, const std::vector<std::string>& vars);

/// Comma-separated direction path, e.g. "x,y".
MixedDirection parse_path(const std::string& text, const std::vector<std::string>& vars);

/// Box syntax "x:0:1,y:-1/2:3".
BoxDomain parse_box(const std::string& text, const std::vector<std::string>& vars);

/// Spot list syntax "(1,0,0);(0,1,0);(0,0,1)".
std::vector<Spot> parse_spots(const std::string& text);

nlohmann::json inequality_report_to_json(const InequalityReport& rep);

std::string path_to_string(const MixedDirection& m, const std::vector<std::string>& vars);

} // namespace expd
