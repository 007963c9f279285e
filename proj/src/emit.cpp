#include "cavharvest/emit.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "cavharvest/errors.hpp"

namespace cavharvest {

namespace {

struct Field {
    const char* name;
    double CorrelationReport::*member;
};

constexpr std::array<Field, 10> kFields = {{
    {"t", &CorrelationReport::t},
    {"r", &CorrelationReport::r},
    {"T", &CorrelationReport::temperature},
    {"E_N", &CorrelationReport::log_negativity},
    {"I", &CorrelationReport::mutual_information},
    {"D", &CorrelationReport::discord},
    {"nu1", &CorrelationReport::nu1},
    {"nu2", &CorrelationReport::nu2},
    {"nu_plus", &CorrelationReport::nu_plus},
    {"nu_minus", &CorrelationReport::nu_minus},
}};

}  // namespace

std::string format_number(double value, int precision) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";  // also folds -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, precision);
    return std::string(buf.data(), res.ptr);
}

std::string to_csv(const std::vector<CorrelationReport>& reports, int precision) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& rep : reports) {
        for (std::size_t i = 0; i < kFields.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += format_number(rep.*kFields[i].member, precision);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<CorrelationReport>& reports, int precision) {
    std::string out = "[";
    for (std::size_t k = 0; k < reports.size(); ++k) {
        out += k == 0 ? "\n  {" : ",\n  {";
        for (std::size_t i = 0; i < kFields.size(); ++i) {
            const double v = reports[k].*kFields[i].member;
            if (i > 0) {
                out += ", ";
            }
            out += '"';
            out += kFields[i].name;
            out += "\": ";
            out += std::isfinite(v) ? format_number(v, precision) : "null";
        }
        out += '}';
    }
    out += reports.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<CorrelationReport> parse_json_reports(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed report JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw ValidationError("report JSON must be an array");
    }
    std::vector<CorrelationReport> out;
    out.reserve(doc.size());
    for (const auto& obj : doc) {
        if (!obj.is_object()) {
            throw ValidationError("report JSON entries must be objects");
        }
        CorrelationReport rep;
        for (const auto& f : kFields) {
            const auto it = obj.find(f.name);
            if (it == obj.end()) {
                throw ValidationError(std::string("report JSON entry lacks field ") + f.name);
            }
            if (it->is_null()) {
                rep.*f.member = std::numeric_limits<double>::quiet_NaN();
            } else if (it->is_number()) {
                rep.*f.member = it->get<double>();
            } else {
                throw ValidationError(std::string("report JSON field ") + f.name + " is not a number");
            }
        }
        out.push_back(rep);
    }
    return out;
}

std::string render(const std::vector<CorrelationReport>& reports, OutputFormat format, int precision) {
    return format == OutputFormat::csv ? to_csv(reports, precision) : to_json(reports, precision);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing output file " + path);
    }
}

void emit(const std::vector<CorrelationReport>& reports, OutputFormat format, const std::string& path,
          int precision) {
    write_text(path, render(reports, format, precision));
}

}  // namespace cavharvest
