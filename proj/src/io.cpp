#include "expd/io.hpp"

#include <fstream>

#include "expd/parse.hpp"

namespace expd {

NamedTuple tuple_from_json(const nlohmann::json& j) {
    if (!j.contains("vars") || !j.contains("entries"))
        throw std::invalid_argument("tuple file needs 'vars' and 'entries'");
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::vector<Polynomial> entries;
    for (const auto& e : j.at("entries"))
        entries.push_back(parse_poly(e.get<std::string>(), vars));
    return NamedTuple{std::move(vars), PolyTuple(std::move(entries))};
}

NamedTuple read_tuple_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tuple file: " + path);
    nlohmann::json j;
    in >> j;
    return tuple_from_json(j);
}

nlohmann::json tuple_to_json(const PolyTuple& t, const std::vector<std::string>& vars,
                             nlohmann::json meta) {
    nlohmann::json j;
    j["vars"] = vars;
    auto entries = nlohmann::json::array();
    for (int i = 0; i < t.size(); ++i) entries.push_back(t[i].format(vars));
    j["entries"] = entries;
    if (!meta.is_null()) j["meta"] = std::move(meta);
    return j;
}

Direction parse_direction(const std::string& token, const std::vector<std::string>& vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == token) return Direction{static_cast<int>(i)};
    try {
        std::size_t used = 0;
        int idx = std::stoi(token, &used);
        if (used == token.size() && idx >= 0 && idx < static_cast<int>(vars.size()))
            return Direction{idx};
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("unknown direction '" + token + "'");
}

static std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(sep, start);
        if (end == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

MixedDirection parse_path(const std::string& text, const std::vector<std::string>& vars) {
    MixedDirection m;
    for (const auto& tok : split(text, ','))
        if (!tok.empty()) m.push_back(parse_direction(tok, vars));
    if (m.empty()) throw std::invalid_argument("empty direction path");
    return m;
}

BoxDomain parse_box(const std::string& text, const std::vector<std::string>& vars) {
    BoxDomain box;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) continue;
        auto fields = split(part, ':');
        if (fields.size() != 3)
            throw std::invalid_argument("box entry must be dir:lo:hi, got '" + part + "'");
        Direction d = parse_direction(fields[0], vars);
        box.limits.push_back({d.var, rational_from_string(fields[1]),
                              rational_from_string(fields[2])});
    }
    if (box.limits.empty()) throw std::invalid_argument("empty box");
    return box;
}

std::vector<Spot> parse_spots(const std::string& text) {
    std::vector<Spot> spots;
    for (const auto& part : split(text, ';')) {
        if (part.empty()) continue;
        std::string body = part;
        if (body.front() == '(') body.erase(0, 1);
        if (!body.empty() && body.back() == ')') body.pop_back();
        Spot s;
        for (const auto& c : split(body, ',')) s.coords.push_back(rational_from_string(c));
        if (s.coords.empty()) throw std::invalid_argument("empty spot in '" + part + "'");
        spots.push_back(std::move(s));
    }
    if (spots.empty()) throw std::invalid_argument("empty spot list");
    return spots;
}

nlohmann::json inequality_report_to_json(const InequalityReport& rep) {
    nlohmann::json j;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["margin"] = rep.margin;
    j["holds"] = rep.holds;
    j["quadrature_error_estimate"] = rep.quadrature_error_estimate;
    j["applicable"] = rep.applicable;
    j["approximate"] = rep.approximate;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

std::string path_to_string(const MixedDirection& m, const std::vector<std::string>& vars) {
    std::string out;
    for (Direction d : m) {
        if (!out.empty()) out += ",";
        out += vars[d.var];
    }
    return out;
}

} // namespace expd
