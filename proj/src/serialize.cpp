#include "a2lab/serialize.hpp"

#include <nlohmann/json.hpp>

namespace a2lab {

using nlohmann::json;

std::string orientation_name(Orientation o) {
    return o == Orientation::ascending ? "ascending" : "descending";
}

Orientation orientation_from_name(const std::string& name) {
    if (name == "ascending") return Orientation::ascending;
    if (name == "descending") return Orientation::descending;
    throw std::invalid_argument("unknown orientation: " + name);
}

json to_json(const PiecewisePowerFn& f) {
    json pieces = json::array();
    for (const Piece& p : f.pieces()) {
        pieces.push_back({{"l", p.span.lo},
                          {"r", p.span.hi},
                          {"log2_coeff", p.term.coeff.log2_value()},
                          {"offset", p.term.offset},
                          {"exponent", p.term.exponent},
                          {"orientation", orientation_name(p.term.orient)}});
    }
    return json{{"pieces", std::move(pieces)}};
}

PiecewisePowerFn piecewise_from_json(const json& j) {
    std::vector<Piece> pieces;
    for (const json& p : j.at("pieces")) {
        Piece piece;
        piece.span = Interval(p.at("l").get<double>(), p.at("r").get<double>());
        piece.term.coeff = LogPos::from_log2(p.at("log2_coeff").get<double>());
        piece.term.offset = p.at("offset").get<double>();
        piece.term.exponent = p.at("exponent").get<double>();
        piece.term.orient = orientation_from_name(p.at("orientation").get<std::string>());
        pieces.push_back(piece);
    }
    return PiecewisePowerFn(std::move(pieces));
}

json to_json(const StepFn& s) {
    json edges = json::array();
    for (double e : s.edges()) edges.push_back(e);
    json values = json::array();
    for (std::size_t i = 0; i < s.cells(); ++i) {
        const LogPos& v = s.cell_value(i);
        if (v.is_zero())
            values.push_back(nullptr);
        else
            values.push_back(v.log2_value());
    }
    return json{{"breakpoints", std::move(edges)}, {"log2_values", std::move(values)}};
}

StepFn step_from_json(const json& j) {
    std::vector<double> edges;
    for (const json& e : j.at("breakpoints")) edges.push_back(e.get<double>());
    std::vector<LogPos> values;
    for (const json& v : j.at("log2_values")) {
        if (v.is_null())
            values.emplace_back();
        else
            values.push_back(LogPos::from_log2(v.get<double>()));
    }
    return StepFn(std::move(edges), std::move(values));
}

} // namespace a2lab
