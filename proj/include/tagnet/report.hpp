#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tagnet/error.hpp"

namespace tagnet {

// Shortest-round-trip decimal rendering; identical doubles always format to
// identical strings, which is what keeps replayed reports byte-identical.
std::string format_double(double v);

struct CurvePoint {
    double x;
    double y;
};

struct CurveSeries {
    std::string name;
    std::vector<CurvePoint> points;
};

// Named (x, y) series with metadata. Curve-kind series keep x strictly
// increasing; scatter-kind series are sorted by x with ties allowed.
struct CurveReport {
    std::string title;
    bool scatter = false;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<CurveSeries> series;

    void validate() const;
};

// Rows of labelled string cells under a fixed header.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_table_tsv(const std::filesystem::path& path, const Table& table,
                     const std::vector<std::pair<std::string, std::string>>& meta = {});
void write_table_json(const std::filesystem::path& path, const Table& table,
                      const std::vector<std::pair<std::string, std::string>>& meta = {});

// Three-column layout: series \t x \t y, with '#' metadata lines on top.
void write_curves_tsv(const std::filesystem::path& path, const CurveReport& report);
void write_curves_json(const std::filesystem::path& path, const CurveReport& report);

}  // namespace tagnet
