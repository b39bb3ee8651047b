#pragma once

// Network data model: buses, lines, generators, periods, and the case-file
// reader/writer. Loads and generation are kept in MW; line susceptance,
// conductance and flow limits are per-unit on the case's s_base.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace gridxpand {

using json = nlohmann::json;

inline constexpr std::string_view kCaseSchema = "gridxpand/1";
/// 8760 h split evenly across the five load-factor periods of a study year.
inline constexpr double kDefaultPeriodHours = 8760.0 / 5.0;

struct ConductorSpec {
    double diameter = 0.0;              // m
    double air_density = 0.0;           // kg/m^3
    double air_viscosity = 0.0;         // kg/(m s)
    double thermal_conductivity = 0.0;  // W/(m K)
    double wind_angle_coeff = 1.0;
    double emissivity = 0.0;
    double radiation_coeff = 0.0;       // W/(m K^4)
    double resistance_ref = 0.0;        // ohm
    double temperature_ref = 0.0;       // K
    double thermal_resistivity = 0.0;   // ohm/K
    double elevation = 0.0;             // m
    double heat_capacity = 0.0;         // MJ/(m K); carried but unused by the steady-state model

    bool operator==(const ConductorSpec&) const = default;
};

/// Weather seen by one line in one period.
struct WeatherRecord {
    double ambient_k = 0.0;      // K
    double wind_mps = 0.0;       // m/s
    double solar_w_per_m = 0.0;  // W/m
    double kr = 0.0;             // W/(m K^4)

    bool operator==(const WeatherRecord&) const = default;
};

struct BusSpec {
    std::string id;
    double load_weight = 0.0;
    std::vector<double> ev_forecast;    // MW, one per period
    std::vector<double> wind_forecast;  // MW, one per period
    std::vector<double> pv_forecast;    // MW, one per period

    bool operator==(const BusSpec&) const = default;
};

struct LineSpec {
    std::string id;
    std::string from_bus;
    std::string to_bus;
    bool candidate = false;
    double install_cost = 0.0;        // $
    double susceptance = 0.0;         // p.u.
    double conductance = 0.0;         // p.u.
    double resistance_at_tmax = 0.0;  // ohm, whole line
    double length = 0.0;              // km
    double t_max = 0.0;               // K
    double flow_limit = 0.0;          // p.u.
    ConductorSpec conductor;

    double length_m() const { return length * 1000.0; }
    /// Resistance per metre at the maximum temperature, as used by the heat balance.
    double resistance_per_m() const { return resistance_at_tmax / length_m(); }

    bool operator==(const LineSpec&) const = default;
};

struct GeneratorSpec {
    std::string id;
    std::string bus;
    bool candidate = false;
    double install_cost = 0.0;  // $
    double op_cost = 0.0;       // $/MWh
    double p_max = 0.0;         // MW

    bool operator==(const GeneratorSpec&) const = default;
};

struct PeriodSpec {
    std::string id;
    double duration = kDefaultPeriodHours;  // h
    double load_factor = 1.0;
    std::map<std::string, WeatherRecord> weather;  // keyed by line id

    bool operator==(const PeriodSpec&) const = default;
};

struct CaseSystem {
    std::string name;
    std::vector<BusSpec> buses;
    std::vector<LineSpec> lines;
    std::vector<GeneratorSpec> generators;
    std::vector<PeriodSpec> periods;
    double peak_demand = 0.0;  // MW
    double s_base = 100.0;     // MVA
    double v_base = 132.0;     // kV

    std::size_t bus_index(std::string_view id) const { return index_of(buses, id, "bus"); }
    std::size_t line_index(std::string_view id) const { return index_of(lines, id, "line"); }
    std::size_t generator_index(std::string_view id) const { return index_of(generators, id, "generator"); }
    std::size_t period_index(std::string_view id) const { return index_of(periods, id, "period"); }

    double mw_to_pu(double mw) const { return mw / s_base; }
    double pu_to_mw(double pu) const { return pu * s_base; }
    /// Base current in A for the single-phase convention I = S / V.
    double current_base_a() const { return s_base * 1e6 / (v_base * 1e3); }

    /// Forecast base load at a bus in a period (MW).
    double base_load(std::size_t bus, std::size_t period) const {
        return peak_demand * buses.at(bus).load_weight * periods.at(period).load_factor;
    }

    bool operator==(const CaseSystem&) const = default;

private:
    template <class T>
    static std::size_t index_of(const std::vector<T>& items, std::string_view id, const char* kind) {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (items[i].id == id) return i;
        throw ModelError(std::string("unknown ") + kind + " '" + std::string(id) + "'");
    }
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string type;    // e.g. "LineSpec"
    std::string entity;  // id of the offending element, empty for case-level rules
    std::string field;
    std::string rule;

    std::string to_string() const {
        std::string s = type;
        if (!entity.empty()) s += "[" + entity + "]";
        return s + "." + field + ": " + rule;
    }
};

namespace detail {

inline void check(std::vector<Violation>& out, bool ok, std::string type, std::string entity,
                  std::string field, std::string rule) {
    if (!ok) out.push_back({std::move(type), std::move(entity), std::move(field), std::move(rule)});
}

inline void check_forecast(std::vector<Violation>& out, const BusSpec& b, const std::vector<double>& f,
                           const char* field, std::size_t periods) {
    check(out, f.size() == periods, "BusSpec", b.id, field, "one value per period required");
    bool nonneg = true;
    for (double v : f) nonneg = nonneg && std::isfinite(v) && v >= 0.0;
    check(out, nonneg, "BusSpec", b.id, field, "forecasts must be >= 0");
}

inline void check_conductor(std::vector<Violation>& out, const LineSpec& l) {
    const auto& c = l.conductor;
    const std::string t = "ConductorSpec";
    check(out, c.diameter > 0, t, l.id, "diameter", "must be > 0");
    check(out, c.air_density > 0, t, l.id, "air_density", "must be > 0");
    check(out, c.air_viscosity > 0, t, l.id, "air_viscosity", "must be > 0");
    check(out, c.thermal_conductivity > 0, t, l.id, "thermal_conductivity", "must be > 0");
    check(out, c.wind_angle_coeff > 0, t, l.id, "wind_angle_coeff", "must be > 0");
    check(out, c.emissivity > 0 && c.emissivity <= 1, t, l.id, "emissivity", "must lie in (0, 1]");
    check(out, c.radiation_coeff > 0, t, l.id, "radiation_coeff", "must be > 0");
    check(out, c.resistance_ref > 0, t, l.id, "resistance_ref", "must be > 0");
    check(out, c.temperature_ref > 0, t, l.id, "temperature_ref", "must be > 0");
    check(out, c.thermal_resistivity > 0, t, l.id, "thermal_resistivity", "must be > 0");
    check(out, c.elevation >= 0, t, l.id, "elevation", "must be >= 0");
    check(out, c.heat_capacity > 0, t, l.id, "heat_capacity", "must be > 0");
}

template <class T>
void check_unique_ids(std::vector<Violation>& out, const std::vector<T>& items, const char* type) {
    std::map<std::string, int> seen;
    for (const auto& it : items)
        if (++seen[it.id] == 2) out.push_back({type, it.id, "id", "duplicate id"});
}

}  // namespace detail

/// Every violated invariant of the case. Empty iff the case is valid.
inline std::vector<Violation> validate_case(const CaseSystem& c) {
    using detail::check;
    std::vector<Violation> v;
    check(v, c.peak_demand > 0, "CaseSystem", "", "peak_demand", "must be > 0");
    check(v, c.s_base > 0, "CaseSystem", "", "s_base", "must be > 0");
    check(v, c.v_base > 0, "CaseSystem", "", "v_base", "must be > 0");
    check(v, !c.buses.empty(), "CaseSystem", "", "buses", "at least one bus required");
    check(v, !c.periods.empty(), "CaseSystem", "", "periods", "at least one period required");
    detail::check_unique_ids(v, c.buses, "BusSpec");
    detail::check_unique_ids(v, c.lines, "LineSpec");
    detail::check_unique_ids(v, c.generators, "GeneratorSpec");
    detail::check_unique_ids(v, c.periods, "PeriodSpec");

    auto has_bus = [&](const std::string& id) {
        for (const auto& b : c.buses)
            if (b.id == id) return true;
        return false;
    };

    double weight_sum = 0.0;
    for (const auto& b : c.buses) {
        check(v, b.load_weight >= 0, "BusSpec", b.id, "load_weight", "must be >= 0");
        weight_sum += b.load_weight;
        detail::check_forecast(v, b, b.ev_forecast, "ev_forecast", c.periods.size());
        detail::check_forecast(v, b, b.wind_forecast, "wind_forecast", c.periods.size());
        detail::check_forecast(v, b, b.pv_forecast, "pv_forecast", c.periods.size());
    }
    if (!c.buses.empty())
        check(v, std::abs(weight_sum - 1.0) <= 1e-9, "BusSpec", "", "load_weight",
              "weights must sum to 1 (got " + std::to_string(weight_sum) + ")");

    for (const auto& l : c.lines) {
        const std::string t = "LineSpec";
        check(v, has_bus(l.from_bus), t, l.id, "from_bus", "undeclared bus '" + l.from_bus + "'");
        check(v, has_bus(l.to_bus), t, l.id, "to_bus", "undeclared bus '" + l.to_bus + "'");
        check(v, l.from_bus != l.to_bus, t, l.id, "to_bus", "line endpoints must differ");
        check(v, l.length > 0, t, l.id, "length", "must be > 0");
        check(v, l.t_max > 273.0, t, l.id, "t_max", "must exceed 273 K");
        check(v, l.flow_limit > 0, t, l.id, "flow_limit", "must be > 0");
        check(v, l.susceptance > 0, t, l.id, "susceptance", "must be > 0");
        check(v, l.conductance >= 0, t, l.id, "conductance", "must be >= 0");
        check(v, l.resistance_at_tmax > 0, t, l.id, "resistance_at_tmax", "must be > 0");
        check(v, l.install_cost >= 0, t, l.id, "install_cost", "must be >= 0");
        check(v, !l.candidate || l.install_cost > 0, t, l.id, "install_cost",
              "candidate lines need a positive cost");
        detail::check_conductor(v, l);
    }

    for (const auto& g : c.generators) {
        const std::string t = "GeneratorSpec";
        check(v, has_bus(g.bus), t, g.id, "bus", "undeclared bus '" + g.bus + "'");
        check(v, g.p_max > 0, t, g.id, "p_max", "must be > 0");
        check(v, g.op_cost >= 0, t, g.id, "op_cost", "must be >= 0");
        check(v, g.install_cost >= 0, t, g.id, "install_cost", "must be >= 0");
    }

    for (const auto& p : c.periods) {
        const std::string t = "PeriodSpec";
        check(v, p.duration > 0, t, p.id, "duration", "must be > 0");
        check(v, p.load_factor > 0 && p.load_factor <= 1, t, p.id, "load_factor", "must lie in (0, 1]");
        for (const auto& [line, w] : p.weather) {
            bool known = false;
            for (const auto& l : c.lines) known = known || l.id == line;
            const std::string ent = p.id + "/" + line;
            check(v, known, "WeatherRecord", ent, "line", "undeclared line");
            check(v, w.ambient_k > 0, "WeatherRecord", ent, "ambient_k", "must be > 0");
            check(v, w.wind_mps >= 0, "WeatherRecord", ent, "wind_mps", "must be >= 0");
            check(v, w.solar_w_per_m >= 0, "WeatherRecord", ent, "solar_w_per_m", "must be >= 0");
            check(v, w.kr > 0, "WeatherRecord", ent, "kr", "must be > 0");
        }
    }
    return v;
}

inline void require_valid(const CaseSystem& c) {
    auto v = validate_case(c);
    if (v.empty()) return;
    std::vector<std::string> msgs;
    for (const auto& x : v) msgs.push_back(x.to_string());
    throw ValidationError(std::move(msgs));
}

// ---------------------------------------------------------------------------
// Demand

/// Copy of `c` rescaled to a new annual peak. Bus loads follow peak x weight x load factor.
inline CaseSystem scale_to_peak(const CaseSystem& c, double peak) {
    if (!(peak > 0)) throw ModelError("peak demand must be positive");
    CaseSystem out = c;
    out.peak_demand = peak;
    return out;
}

/// Base load plus EV charging minus wind and PV, in MW. Negative at exporting buses.
inline double net_demand_forecast(const CaseSystem& c, std::size_t bus, std::size_t period) {
    if (bus >= c.buses.size()) throw ModelError("bus index out of range");
    if (period >= c.periods.size()) throw ModelError("period index out of range");
    const auto& b = c.buses[bus];
    return c.base_load(bus, period) + b.ev_forecast.at(period) - b.wind_forecast.at(period) -
           b.pv_forecast.at(period);
}

inline double net_demand_forecast(const CaseSystem& c, std::string_view bus, std::string_view period) {
    return net_demand_forecast(c, c.bus_index(bus), c.period_index(period));
}

// ---------------------------------------------------------------------------
// Case file I/O

namespace detail {

class Reader {
public:
    explicit Reader(std::string path) : path_(std::move(path)) {}

    const json& at(const json& obj, const std::string& key, const std::string& where) const {
        if (!obj.is_object()) fail(where, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(where + "." + key, "missing required field");
        return *it;
    }
    double num(const json& obj, const std::string& key, const std::string& where) const {
        const auto& v = at(obj, key, where);
        if (!v.is_number()) fail(where + "." + key, "expected a number");
        return v.get<double>();
    }
    double num_or(const json& obj, const std::string& key, const std::string& where, double dflt) const {
        if (!obj.contains(key)) return dflt;
        return num(obj, key, where);
    }
    std::string str(const json& obj, const std::string& key, const std::string& where) const {
        const auto& v = at(obj, key, where);
        if (!v.is_string()) fail(where + "." + key, "expected a string");
        return v.get<std::string>();
    }
    bool boolean_or(const json& obj, const std::string& key, const std::string& where, bool dflt) const {
        if (!obj.contains(key)) return dflt;
        const auto& v = obj.at(key);
        if (!v.is_boolean()) fail(where + "." + key, "expected true/false");
        return v.get<bool>();
    }
    const json& array(const json& obj, const std::string& key, const std::string& where) const {
        const auto& v = at(obj, key, where);
        if (!v.is_array()) fail(where + "." + key, "expected an array");
        return v;
    }
    /// A scalar (broadcast to every period) or an array with one entry per period.
    std::vector<double> series(const json& obj, const std::string& key, const std::string& where,
                               std::size_t periods) const {
        if (!obj.contains(key)) return std::vector<double>(periods, 0.0);
        const auto& v = obj.at(key);
        if (v.is_number()) return std::vector<double>(periods, v.get<double>());
        if (!v.is_array()) fail(where + "." + key, "expected a number or an array");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) fail(where + "." + key + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& where, const std::string& what) const {
        throw ParseError(path_ + ": " + where, what);
    }

private:
    std::string path_;
};

inline ConductorSpec read_conductor(const Reader& r, const json& j, const std::string& w) {
    ConductorSpec c;
    c.diameter = r.num(j, "diameter", w);
    c.air_density = r.num(j, "air_density", w);
    c.air_viscosity = r.num(j, "air_viscosity", w);
    c.thermal_conductivity = r.num(j, "thermal_conductivity", w);
    c.wind_angle_coeff = r.num_or(j, "wind_angle_coeff", w, 1.0);
    c.emissivity = r.num(j, "emissivity", w);
    c.radiation_coeff = r.num(j, "radiation_coeff", w);
    c.resistance_ref = r.num(j, "resistance_ref", w);
    c.temperature_ref = r.num(j, "temperature_ref", w);
    c.thermal_resistivity = r.num(j, "thermal_resistivity", w);
    c.elevation = r.num_or(j, "elevation", w, 0.0);
    c.heat_capacity = r.num(j, "heat_capacity", w);
    return c;
}

}  // namespace detail

/// Weather block: `{ambient_k, wind_mps, solar_w_per_m, kr}`. The solar gain may instead be
/// given as `{solar_coeff, irradiance}` together with the conductor diameter.
inline WeatherRecord parse_weather(const json& j, const std::string& where, const std::string& source,
                                   std::optional<double> diameter = std::nullopt) {
    detail::Reader r(source);
    WeatherRecord w;
    w.ambient_k = r.num(j, "ambient_k", where);
    w.wind_mps = r.num(j, "wind_mps", where);
    w.kr = r.num(j, "kr", where);
    if (j.contains("solar_w_per_m")) {
        w.solar_w_per_m = r.num(j, "solar_w_per_m", where);
    } else if (j.contains("solar_coeff") && j.contains("irradiance")) {
        if (!diameter) r.fail(where, "solar_coeff/irradiance need a conductor diameter; give solar_w_per_m");
        w.solar_w_per_m = r.num(j, "solar_coeff", where) * *diameter * r.num(j, "irradiance", where);
    } else {
        r.fail(where + ".solar_w_per_m", "missing required field");
    }
    return w;
}

inline json weather_to_json(const WeatherRecord& w) {
    return {{"ambient_k", w.ambient_k}, {"wind_mps", w.wind_mps}, {"solar_w_per_m", w.solar_w_per_m}, {"kr", w.kr}};
}

/// Parse a case document. Structural errors throw ParseError; invariants are checked separately.
inline CaseSystem parse_case(const json& doc, const std::string& source = "<case>") {
    detail::Reader r(source);
    if (!doc.is_object()) r.fail("$", "case document must be an object");
    if (r.str(doc, "schema", "$") != kCaseSchema)
        r.fail("$.schema", "unsupported schema, expected \"" + std::string(kCaseSchema) + "\"");

    CaseSystem c;
    c.name = doc.value("name", std::string{});
    const auto& sys = r.at(doc, "system", "$");
    c.peak_demand = r.num(sys, "peak_demand", "$.system");
    c.s_base = r.num(sys, "s_base_mva", "$.system");
    c.v_base = r.num(sys, "v_base_kv", "$.system");

    // Named conductor types, referenced from lines by string.
    std::map<std::string, ConductorSpec> conductors;
    if (doc.contains("conductors")) {
        const auto& cs = doc.at("conductors");
        if (!cs.is_object()) r.fail("$.conductors", "expected an object");
        for (const auto& [name, spec] : cs.items())
            conductors[name] = detail::read_conductor(r, spec, "$.conductors." + name);
    }

    const auto& periods = r.array(doc, "periods", "$");
    for (std::size_t i = 0; i < periods.size(); ++i) {
        const std::string w = "$.periods[" + std::to_string(i) + "]";
        PeriodSpec p;
        p.id = r.str(periods[i], "id", w);
        p.duration = r.num_or(periods[i], "duration", w, kDefaultPeriodHours);
        p.load_factor = r.num(periods[i], "load_factor", w);
        c.periods.push_back(std::move(p));
    }

    const auto& buses = r.array(doc, "buses", "$");
    for (std::size_t i = 0; i < buses.size(); ++i) {
        const std::string w = "$.buses[" + std::to_string(i) + "]";
        BusSpec b;
        b.id = r.str(buses[i], "id", w);
        b.load_weight = r.num_or(buses[i], "load_weight", w, 0.0);
        b.ev_forecast = r.series(buses[i], "ev_forecast", w, c.periods.size());
        b.wind_forecast = r.series(buses[i], "wind_forecast", w, c.periods.size());
        b.pv_forecast = r.series(buses[i], "pv_forecast", w, c.periods.size());
        c.buses.push_back(std::move(b));
    }

    const auto& lines = r.array(doc, "lines", "$");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string w = "$.lines[" + std::to_string(i) + "]";
        const auto& j = lines[i];
        LineSpec l;
        l.id = r.str(j, "id", w);
        l.from_bus = r.str(j, "from_bus", w);
        l.to_bus = r.str(j, "to_bus", w);
        l.candidate = r.boolean_or(j, "candidate", w, false);
        l.install_cost = r.num_or(j, "install_cost", w, 0.0);
        l.susceptance = r.num(j, "susceptance", w);
        l.conductance = r.num_or(j, "conductance", w, 0.0);
        l.resistance_at_tmax = r.num(j, "resistance_at_tmax", w);
        l.length = r.num(j, "length", w);
        l.t_max = r.num(j, "t_max", w);
        l.flow_limit = r.num(j, "flow_limit", w);
        const auto& cj = r.at(j, "conductor", w);
        if (cj.is_string()) {
            auto it = conductors.find(cj.get<std::string>());
            if (it == conductors.end()) r.fail(w + ".conductor", "unknown conductor '" + cj.get<std::string>() + "'");
            l.conductor = it->second;
        } else {
            l.conductor = detail::read_conductor(r, cj, w + ".conductor");
        }
        c.lines.push_back(std::move(l));
    }

    const auto& gens = r.array(doc, "generators", "$");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string w = "$.generators[" + std::to_string(i) + "]";
        GeneratorSpec g;
        g.id = r.str(gens[i], "id", w);
        g.bus = r.str(gens[i], "bus", w);
        g.candidate = r.boolean_or(gens[i], "candidate", w, false);
        g.install_cost = r.num_or(gens[i], "install_cost", w, 0.0);
        g.op_cost = r.num(gens[i], "op_cost", w);
        g.p_max = r.num(gens[i], "p_max", w);
        c.generators.push_back(std::move(g));
    }

    // Weather is read last so solar gains given as coefficient x irradiance can use the diameter.
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (!periods[i].contains("weather")) continue;
        const std::string w = "$.periods[" + std::to_string(i) + "].weather";
        const auto& wj = periods[i].at("weather");
        if (!wj.is_object()) r.fail(w, "expected an object keyed by line id");
        for (const auto& [line, rec] : wj.items()) {
            std::optional<double> dia;
            for (const auto& l : c.lines)
                if (l.id == line) dia = l.conductor.diameter;
            c.periods[i].weather[line] = parse_weather(rec, w + "." + line, source, dia);
        }
    }
    return c;
}

inline CaseSystem parse_case_text(std::string_view text, const std::string& source = "<case>") {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line/column location.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), e.what());
    }
    return parse_case(doc, source);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Read and validate a case file.
inline CaseSystem load_case(const std::string& path) {
    CaseSystem c = parse_case_text(read_text_file(path), path);
    require_valid(c);
    return c;
}

inline json case_to_json(const CaseSystem& c) {
    json doc;
    doc["schema"] = kCaseSchema;
    doc["name"] = c.name;
    doc["system"] = {{"peak_demand", c.peak_demand}, {"s_base_mva", c.s_base}, {"v_base_kv", c.v_base}};
    doc["buses"] = json::array();
    for (const auto& b : c.buses)
        doc["buses"].push_back({{"id", b.id},
                                {"load_weight", b.load_weight},
                                {"ev_forecast", b.ev_forecast},
                                {"wind_forecast", b.wind_forecast},
                                {"pv_forecast", b.pv_forecast}});
    doc["lines"] = json::array();
    for (const auto& l : c.lines) {
        const auto& k = l.conductor;
        doc["lines"].push_back({{"id", l.id},
                                {"from_bus", l.from_bus},
                                {"to_bus", l.to_bus},
                                {"candidate", l.candidate},
                                {"install_cost", l.install_cost},
                                {"susceptance", l.susceptance},
                                {"conductance", l.conductance},
                                {"resistance_at_tmax", l.resistance_at_tmax},
                                {"length", l.length},
                                {"t_max", l.t_max},
                                {"flow_limit", l.flow_limit},
                                {"conductor",
                                 {{"diameter", k.diameter},
                                  {"air_density", k.air_density},
                                  {"air_viscosity", k.air_viscosity},
                                  {"thermal_conductivity", k.thermal_conductivity},
                                  {"wind_angle_coeff", k.wind_angle_coeff},
                                  {"emissivity", k.emissivity},
                                  {"radiation_coeff", k.radiation_coeff},
                                  {"resistance_ref", k.resistance_ref},
                                  {"temperature_ref", k.temperature_ref},
                                  {"thermal_resistivity", k.thermal_resistivity},
                                  {"elevation", k.elevation},
                                  {"heat_capacity", k.heat_capacity}}}});
    }
    doc["generators"] = json::array();
    for (const auto& g : c.generators)
        doc["generators"].push_back({{"id", g.id},
                                     {"bus", g.bus},
                                     {"candidate", g.candidate},
                                     {"install_cost", g.install_cost},
                                     {"op_cost", g.op_cost},
                                     {"p_max", g.p_max}});
    doc["periods"] = json::array();
    for (const auto& p : c.periods) {
        json pj = {{"id", p.id}, {"duration", p.duration}, {"load_factor", p.load_factor}};
        if (!p.weather.empty()) {
            pj["weather"] = json::object();
            for (const auto& [line, w] : p.weather) pj["weather"][line] = weather_to_json(w);
        }
        doc["periods"].push_back(std::move(pj));
    }
    return doc;
}

inline std::string write_case(const CaseSystem& c) { return case_to_json(c).dump(2) + "\n"; }

inline void save_case(const CaseSystem& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << write_case(c);
}

}  // namespace gridxpand
