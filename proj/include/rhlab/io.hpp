// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rhlab/grid.hpp"

namespace rhlab {

// Flat view of a line-oriented configuration file. Keys inside a [section]
// are stored as "section.key"; keys before any section header keep their
// bare name. Values are the raw right-hand strings, trimmed.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

// Typed lookups with fallbacks. Conversion failures throw invalid_argument
// naming the offending key.
double config_double(const ConfigMap& map, const std::string& key, double fallback);
int config_int(const ConfigMap& map, const std::string& key, int fallback);
bool config_bool(const ConfigMap& map, const std::string& key, bool fallback);
std::string config_string(const ConfigMap& map, const std::string& key,
                          const std::string& fallback);

// Ordered section layout used when exporting a configuration to a file.
using ConfigSections =
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;

std::string format_config(const ConfigSections& sections);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

// Self-describing field container: a text header carrying the grid, the gas
// and radiation constants, and the field list, followed by the raw values of
// every field as little-endian 64-bit floats in declared order.
struct SnapshotField {
    std::string name;
    Field values;
};

struct Snapshot {
    std::string scenario = "unnamed";
    double time = 0.0;
    double gamma = 2.0;
    double c = 1.0;
    Grid grid;
    std::vector<SnapshotField> fields;
};

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

// RFC-4180 table: comma separators, CRLF row endings, quoting only where
// required. All writers emit a header row.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// Column lookup; throws invalid_argument when the header lacks the name.
std::size_t csv_column(const CsvTable& table, const std::string& name);

// Static line plot. Output is deterministic: fixed canvas, fixed palette,
// fixed tick policy, fixed number formatting.
struct PlotSeries {
    std::string label;
    std::vector<std::array<double, 2>> points;
};

struct PlotMarker {
    std::string label;
    double x = 0.0;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    std::vector<PlotMarker> markers;
    bool log_y = false;
};

void write_svg_plot(const std::string& path, const PlotSpec& spec);

// 64-bit FNV-1a content hash used by the run manifest.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);

// Writes <dir>/manifest.json listing every named file with its content hash.
// File names are relative to `dir`.
void write_manifest(const std::string& dir, const std::vector<std::string>& names);

}  // namespace rhlab
