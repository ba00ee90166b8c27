#include "tagnet/report.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace tagnet {

std::string format_double(double v) {
    // shortest representation that round-trips
    for (int precision : {15, 16, 17}) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CurveReport::validate() const {
    for (const auto& s : series) {
        for (std::size_t i = 1; i < s.points.size(); ++i) {
            const bool ok = scatter ? s.points[i - 1].x <= s.points[i].x
                                    : s.points[i - 1].x < s.points[i].x;
            if (!ok)
                throw ValidationError("series '" + s.name + "' x values out of order at index " +
                                      std::to_string(i));
        }
    }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path.string());
    return out;
}

}  // namespace

void write_table_tsv(const std::filesystem::path& path, const Table& table,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
    auto out = open_out(path);
    for (const auto& [key, value] : meta) out << "# " << key << "\t" << value << "\n";
    for (std::size_t j = 0; j < table.header.size(); ++j)
        out << table.header[j] << (j + 1 < table.header.size() ? '\t' : '\n');
    for (const auto& row : table.rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            out << row[j] << (j + 1 < row.size() ? '\t' : '\n');
}

void write_table_json(const std::filesystem::path& path, const Table& table,
                      const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json doc;
    for (const auto& [key, value] : meta) doc["meta"][key] = value;
    doc["columns"] = table.header;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) doc["rows"].push_back(row);
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

void write_curves_tsv(const std::filesystem::path& path, const CurveReport& report) {
    report.validate();
    auto out = open_out(path);
    out << "# title\t" << report.title << "\n";
    for (const auto& [key, value] : report.meta) out << "# " << key << "\t" << value << "\n";
    out << "series\tx\ty\n";
    for (const auto& s : report.series)
        for (const auto& p : s.points)
            out << s.name << "\t" << format_double(p.x) << "\t" << format_double(p.y) << "\n";
}

void write_curves_json(const std::filesystem::path& path, const CurveReport& report) {
    report.validate();
    nlohmann::json doc;
    doc["title"] = report.title;
    doc["scatter"] = report.scatter;
    for (const auto& [key, value] : report.meta) doc["meta"][key] = value;
    doc["series"] = nlohmann::json::array();
    for (const auto& s : report.series) {
        nlohmann::json js;
        js["name"] = s.name;
        js["x"] = nlohmann::json::array();
        js["y"] = nlohmann::json::array();
        for (const auto& p : s.points) {
            js["x"].push_back(p.x);
            js["y"].push_back(p.y);
        }
        doc["series"].push_back(js);
    }
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

}  // namespace tagnet
