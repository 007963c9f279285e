#include "cavharvest/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cavharvest/errors.hpp"

namespace cavharvest {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ValidationError("unknown key \"" + key + "\" in " + where);
        }
    }
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) {
        throw ValidationError(where + " must be a number");
    }
    return v.get<double>();
}

Axis parse_axis(const json& v, const std::string& name) {
    if (v.is_number()) {
        return Axis::fixed(v.get<double>());
    }
    if (!v.is_object()) {
        throw ValidationError("axis " + name + " must be a number or an object");
    }
    if (v.contains("values")) {
        reject_unknown(v, "axis " + name, {"values"});
        const auto& vals = v.at("values");
        if (!vals.is_array()) {
            throw ValidationError("axis " + name + ".values must be an array");
        }
        std::vector<double> list;
        for (const auto& x : vals) {
            list.push_back(number(x, "axis " + name + ".values entry"));
        }
        return Axis::of(std::move(list));
    }
    reject_unknown(v, "axis " + name, {"min", "max", "count"});
    for (const char* k : {"min", "max", "count"}) {
        if (!v.contains(k)) {
            throw ValidationError("axis " + name + " grid needs \"" + k + "\"");
        }
    }
    const auto& c = v.at("count");
    if (!c.is_number_integer() || c.get<long long>() < 0) {
        throw ValidationError("axis " + name + ".count must be a non-negative integer");
    }
    return Axis::grid(number(v.at("min"), "axis " + name + ".min"), number(v.at("max"), "axis " + name + ".max"),
                      static_cast<std::size_t>(c.get<long long>()));
}

CavityConfig parse_cavity(const json& v) {
    if (!v.is_object()) {
        throw ValidationError("cavity must be an object");
    }
    reject_unknown(v, "cavity", {"length", "n_modes", "detector_frequency", "coupling"});
    CavityConfig cfg = CavityConfig::reference();
    if (v.contains("length")) {
        cfg.length = number(v.at("length"), "cavity.length");
    }
    if (v.contains("n_modes")) {
        const auto& n = v.at("n_modes");
        if (!n.is_number_integer()) {
            throw ValidationError("cavity.n_modes must be an integer");
        }
        cfg.n_modes = n.get<int>();
    }
    if (v.contains("detector_frequency")) {
        cfg.detector_frequency = number(v.at("detector_frequency"), "cavity.detector_frequency");
    }
    if (v.contains("coupling")) {
        cfg.coupling = number(v.at("coupling"), "cavity.coupling");
    }
    return cfg;
}

void parse_output(const json& v, SweepSpec& spec) {
    if (!v.is_object()) {
        throw ValidationError("output must be an object");
    }
    reject_unknown(v, "output", {"path", "format", "precision"});
    if (v.contains("path")) {
        if (!v.at("path").is_string()) {
            throw ValidationError("output.path must be a string");
        }
        spec.output = v.at("path").get<std::string>();
    }
    if (v.contains("format")) {
        const auto& f = v.at("format");
        if (f == "csv") {
            spec.format = OutputFormat::csv;
        } else if (f == "json") {
            spec.format = OutputFormat::json;
        } else {
            throw ValidationError("output.format must be \"csv\" or \"json\"");
        }
    }
    if (v.contains("precision")) {
        const auto& p = v.at("precision");
        if (!p.is_number_integer()) {
            throw ValidationError("output.precision must be an integer");
        }
        spec.precision = p.get<int>();
    }
}

}  // namespace

SweepSpec parse_sweep_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    reject_unknown(doc, "config", {"schema_version", "cavity", "t", "r", "T", "output"});
    if (!doc.contains("schema_version")) {
        throw ValidationError("config lacks schema_version");
    }
    const auto& ver = doc.at("schema_version");
    if (!ver.is_number_integer() || ver.get<int>() != kConfigSchemaVersion) {
        throw ValidationError("unsupported schema_version (expected " + std::to_string(kConfigSchemaVersion) + ")");
    }

    SweepSpec spec;
    if (doc.contains("cavity")) {
        spec.cavity = parse_cavity(doc.at("cavity"));
    }
    for (const char* k : {"t", "r", "T"}) {
        if (!doc.contains(k)) {
            throw ValidationError(std::string("config lacks axis \"") + k + "\"");
        }
    }
    spec.t = parse_axis(doc.at("t"), "t");
    spec.r = parse_axis(doc.at("r"), "r");
    spec.temperature = parse_axis(doc.at("T"), "T");
    if (doc.contains("output")) {
        parse_output(doc.at("output"), spec);
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_sweep_config(buf.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

}  // namespace cavharvest
