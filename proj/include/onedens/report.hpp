// Machine-readable run reports. One document either carries table rows
// (param, mean, sigma, max) or a flat map of named scalar results.
//
// csv and json renderings are deterministic byte-for-byte for a fixed
// document; the human table adds a metadata banner (including the timestamp,
// which deliberately stays out of csv/json).
#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace onedens {

inline constexpr const char* kVersion = "0.1.0";

struct ReportRow {
    double param = 0.0;
    double mean = 0.0;
    double sigma = 0.0;
    double max = 0.0;
};

struct ReportMeta {
    std::uint64_t seed = 0;
    std::string config;
    std::string version = kVersion;
    std::string timestamp;  // table banner only
};

struct ReportDocument {
    ReportMeta meta;
    std::vector<ReportRow> rows;
    std::vector<std::pair<std::string, double>> result;  // scalar documents
};

enum class ReportFormat { table, csv, json };

inline ReportFormat parse_format(const std::string& s) {
    if (s == "table") return ReportFormat::table;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown format: " + s);
}

namespace detail {
inline std::string fmt7(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}
}  // namespace detail

inline std::string render_csv(const ReportDocument& doc) {
    std::string out;
    if (!doc.result.empty()) {
        out += "name,value\n";
        for (const auto& [name, value] : doc.result)
            out += name + "," + detail::fmt7(value) + "\n";
        return out;
    }
    out += "param,mean,sigma,max\n";
    for (const ReportRow& r : doc.rows)
        out += detail::fmt7(r.param) + "," + detail::fmt7(r.mean) + "," + detail::fmt7(r.sigma) +
               "," + detail::fmt7(r.max) + "\n";
    return out;
}

inline nlohmann::json to_json(const ReportDocument& doc) {
    nlohmann::json j;
    j["meta"] = {{"seed", doc.meta.seed}, {"config", doc.meta.config}, {"version", doc.meta.version}};
    if (!doc.result.empty()) {
        nlohmann::json res = nlohmann::json::object();
        for (const auto& [name, value] : doc.result) res[name] = value;
        j["result"] = res;
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const ReportRow& r : doc.rows)
            rows.push_back({{"param", r.param}, {"mean", r.mean}, {"sigma", r.sigma}, {"max", r.max}});
        j["rows"] = rows;
    }
    return j;
}

inline ReportDocument from_json(const nlohmann::json& j) {
    ReportDocument doc;
    doc.meta.seed = j.at("meta").at("seed").get<std::uint64_t>();
    doc.meta.config = j.at("meta").at("config").get<std::string>();
    doc.meta.version = j.at("meta").at("version").get<std::string>();
    if (j.contains("result"))
        for (const auto& [name, value] : j.at("result").items())
            doc.result.emplace_back(name, value.get<double>());
    if (j.contains("rows"))
        for (const auto& r : j.at("rows"))
            doc.rows.push_back({r.at("param").get<double>(), r.at("mean").get<double>(),
                                r.at("sigma").get<double>(), r.at("max").get<double>()});
    return doc;
}

inline std::string render_table(const ReportDocument& doc) {
    std::string out = "# seed=" + std::to_string(doc.meta.seed) + " config=" + doc.meta.config +
                      " version=" + doc.meta.version;
    if (!doc.meta.timestamp.empty()) out += " time=" + doc.meta.timestamp;
    out += "\n";
    if (!doc.result.empty()) {
        for (const auto& [name, value] : doc.result) {
            char line[128];
            std::snprintf(line, sizeof(line), "%-24s %s\n", name.c_str(),
                          detail::fmt7(value).c_str());
            out += line;
        }
        return out;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%12s %14s %14s %14s\n", "param", "mean", "sigma", "max");
    out += line;
    for (const ReportRow& r : doc.rows) {
        std::snprintf(line, sizeof(line), "%12s %14s %14s %14s\n", detail::fmt7(r.param).c_str(),
                      detail::fmt7(r.mean).c_str(), detail::fmt7(r.sigma).c_str(),
                      detail::fmt7(r.max).c_str());
        out += line;
    }
    return out;
}

inline std::string render_report(const ReportDocument& doc, ReportFormat format) {
    switch (format) {
        case ReportFormat::csv:
            return render_csv(doc);
        case ReportFormat::json:
            return to_json(doc).dump(2) + "\n";
        case ReportFormat::table:
        default:
            return render_table(doc);
    }
}

}  // namespace onedens
