#pragma once

// Scenario file: robust parameters plus per-period, per-line weather that overrides
// (or supplies) the weather stored in the case.
//
//   {"schema": "gridxpand-scenario/1",
//    "robust": {"phi": 0.05, "mu": 0.01, "reliability": 0.05},
//    "weather": [{"period": "d1", "lines": {"*": {...}, "L3": {...}}}],
//    "natural_convection_coeff": 0.5, "ohmic_tangents": 32}

#include <optional>
#include <string>
#include <vector>

#include "core_model.hpp"
#include "error.hpp"
#include "uncertainty.hpp"

namespace gridxpand {

inline constexpr std::string_view kScenarioSchema = "gridxpand-scenario/1";
inline constexpr int kDefaultOhmicTangents = 32;

struct WeatherOverride {
    std::string period;
    std::optional<WeatherRecord> all_lines;  // "*"
    std::map<std::string, WeatherRecord> lines;
};

struct Scenario {
    std::string name;
    RobustParams robust = RobustParams::deterministic();
    std::vector<WeatherOverride> weather;
    std::optional<double> natural_convection_coeff;
    int ohmic_tangents = kDefaultOhmicTangents;
};

inline Scenario parse_scenario(const json& doc, const std::string& source = "<scenario>") {
    detail::Reader r(source);
    if (!doc.is_object()) r.fail("$", "scenario document must be an object");
    const std::string schema = r.str(doc, "schema", "$");
    if (schema != kScenarioSchema) r.fail("$.schema", "expected \"" + std::string(kScenarioSchema) + "\", got \"" + schema + "\"");
    Scenario s;
    s.name = doc.value("name", std::string{});
    if (doc.contains("robust")) {
        const auto& rb = doc.at("robust");
        const double phi = r.num(rb, "phi", "$.robust");
        const double mu = r.num(rb, "mu", "$.robust");
        const double rel = r.num(rb, "reliability", "$.robust");
        try {
            s.robust = RobustParams(phi, mu, rel);
        } catch (const ModelError& e) {
            r.fail("$.robust", e.what());
        }
    }
    if (doc.contains("weather")) {
        const auto& arr = r.array(doc, "weather", "$");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = "$.weather[" + std::to_string(i) + "]";
            WeatherOverride o;
            o.period = r.str(arr[i], "period", w);
            const auto& lines = r.at(arr[i], "lines", w);
            if (!lines.is_object()) r.fail(w + ".lines", "must be an object keyed by line id or \"*\"");
            for (const auto& [key, rec] : lines.items()) {
                auto wr = parse_weather(rec, w + ".lines." + key, source);
                if (key == "*") o.all_lines = wr;
                else o.lines.emplace(key, wr);
            }
            s.weather.push_back(std::move(o));
        }
    }
    if (doc.contains("natural_convection_coeff"))
        s.natural_convection_coeff = r.num(doc, "natural_convection_coeff", "$");
    if (doc.contains("ohmic_tangents")) {
        const double n = r.num(doc, "ohmic_tangents", "$");
        if (!(n >= 2 && n <= 1024 && n == static_cast<int>(n))) r.fail("$.ohmic_tangents", "must be an integer in [2, 1024]");
        s.ohmic_tangents = static_cast<int>(n);
    }
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    const std::string text = read_text_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": byte " + std::to_string(e.byte), e.what());
    }
    return parse_scenario(doc, path);
}

/// The case with the scenario's weather merged in; per-line entries beat "*".
inline CaseSystem apply_scenario(const CaseSystem& c, const Scenario& s) {
    CaseSystem out = c;
    for (const auto& o : s.weather) {
        const std::size_t p = out.period_index(o.period);
        auto& target = out.periods[p].weather;
        if (o.all_lines)
            for (const auto& l : out.lines) target[l.id] = *o.all_lines;
        for (const auto& [line, rec] : o.lines) {
            out.line_index(line);  // unknown ids are an error
            target[line] = rec;
        }
    }
    return out;
}

inline json scenario_to_json(const Scenario& s) {
    json j{{"schema", kScenarioSchema},
           {"robust", {{"phi", s.robust.phi()}, {"mu", s.robust.mu()}, {"reliability", s.robust.reliability()}}},
           {"ohmic_tangents", s.ohmic_tangents}};
    if (!s.name.empty()) j["name"] = s.name;
    if (s.natural_convection_coeff) j["natural_convection_coeff"] = *s.natural_convection_coeff;
    json arr = json::array();
    for (const auto& o : s.weather) {
        json lines = json::object();
        if (o.all_lines) lines["*"] = weather_to_json(*o.all_lines);
        for (const auto& [id, w] : o.lines) lines[id] = weather_to_json(w);
        arr.push_back({{"period", o.period}, {"lines", lines}});
    }
    j["weather"] = arr;
    return j;
}

}  // namespace gridxpand
